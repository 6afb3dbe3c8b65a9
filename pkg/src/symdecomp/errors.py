"""Exception types shared by the decomposition and classification routines."""


class SymDecompError(Exception):
    """Base class for all library errors."""


class NonGeneric(SymDecompError):
    """The Majorana root degeneracy rules out a unique coherent decomposition."""

    def __init__(self, gamma: int, n_qubits: int, message: str | None = None):
        self.gamma = gamma
        self.n_qubits = n_qubits
        if message is None:
            message = (
                f"state of {n_qubits} qubits is not generic: highest Majorana "
                f"root degeneracy gamma={gamma}"
            )
        super().__init__(message)


class SolverFailure(SymDecompError):
    """No admissible decomposition was found within tolerance."""

    def __init__(self, message: str, best_residual: float = float("nan")):
        self.best_residual = best_residual
        super().__init__(f"{message} (best residual {best_residual:.3e})")


class TieBreakUnstable(SymDecompError):
    """Two coefficient magnitudes coincide, so the term ordering is ill-defined."""


class InsufficientTerms(SymDecompError):
    """The decomposition has too few terms for the requested canonical form."""


class StateFileError(SymDecompError):
    """Malformed state file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
