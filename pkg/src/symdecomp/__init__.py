"""Coherent-state decompositions and canonical forms of symmetric multiqubit states."""

from .canonical import (
    ILCanonicalForm,
    LUCanonicalForm,
    equivalent,
    form_distance,
    il_canonical,
    lu_canonical,
    parametric_relation,
    parametric_relation_residual,
)
from .decomp import (
    CoherentDecomposition,
    CoherentTerm,
    DecompositionDiagnostics,
    decompose,
    moments,
    paired_decompositions,
    reconstruct,
    verify_paper_conditions,
)
from .errors import (
    InsufficientTerms,
    NonGeneric,
    SolverFailure,
    StateFileError,
    SymDecompError,
    TieBreakUnstable,
)
from .majorana import (
    GenericityReport,
    MajoranaPoly,
    RootMultiset,
    genericity,
    majorana_polynomial,
    majorana_roots,
    mobius_on_roots,
    product_form,
)
from .measures import InvariantSet, TangleResult, hyperdeterminant, lu_invariants, schmidt_measure, three_tangle
from .symstate import (
    CollectiveMap,
    NodeState,
    SymmetricState,
    apply_collective,
    apply_collective_normalized,
    coherent_state,
    dicke_state,
    dicke_weights,
    fidelity,
    ghz_state,
    overlap,
    random_sl2,
    random_state,
    random_unitary,
    w_state,
)

__version__ = "0.1.0"
