import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from symdecomp.canonical import (
    ILCanonicalForm,
    LUCanonicalForm,
    equivalent,
    form_distance,
    forms_equal,
    il_canonical,
    lu_canonical,
    parametric_relation_residual,
)
from symdecomp.decomp import decompose
from symdecomp.errors import InsufficientTerms, NonGeneric, SolverFailure
from symdecomp.symstate import (
    NodeState,
    SymmetricState,
    apply_collective,
    apply_collective_normalized,
    coherent_state,
    dicke_state,
    fidelity,
    ghz_state,
    random_sl2,
    random_state,
    random_unitary,
    w_state,
)

from conftest import odd_n, seeds


def _or_skip(fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except SolverFailure:
        assume(False)


def test_ghz3_lu_form():
    form, _ = lu_canonical(ghz_state(3))
    assert form.y[0] == pytest.approx(1.0, abs=1e-10)
    assert form.epsilon == pytest.approx(0.0, abs=1e-10)
    assert form.A == pytest.approx(2**-0.5, abs=1e-12)
    # printed normalization A^-2 = 1 + y^2 + 2 y cos(3 phi) sin^3(eps/2)
    norm = 1 + form.y[0] ** 2 + 2 * form.y[0] * math.cos(3 * form.varphi) * math.sin(form.epsilon / 2) ** 3
    assert form.A ** -2 == pytest.approx(norm, abs=1e-10)


def test_coherent_lu_form_is_degenerate():
    form, _ = lu_canonical(coherent_state(5, NodeState(0.8, 1.9)))
    assert form.y == () and form.nodes == ()
    assert form.A == pytest.approx(1.0)


@given(seeds, st.integers(3, 9))
def test_lu_form_covariance(seed, n):
    rng = np.random.default_rng(seed)
    s = random_state(n, rng)
    f1, _ = _or_skip(lu_canonical, s)
    f2, _ = _or_skip(lu_canonical, apply_collective(random_unitary(rng), s))
    assert form_distance(f1, f2) < 1e-7


@given(seeds, st.integers(3, 9))
def test_lu_map_reaches_form(seed, n):
    s = random_state(n, np.random.default_rng(seed))
    form, u = _or_skip(lu_canonical, s)
    assert np.allclose(u.matrix @ u.matrix.conj().T, np.eye(2), atol=1e-12)
    moved = apply_collective(u, s)
    assert 1 - fidelity(moved, form.state().unit()) < 1e-9
    d, _ = decompose(moved)
    assert d.nodes[0].theta == pytest.approx(math.pi, abs=1e-10)
    again, _ = lu_canonical(moved)
    assert form_distance(form, again) < 1e-8


@given(seeds, st.integers(3, 9))
def test_lu_form_is_idempotent(seed, n):
    s = random_state(n, np.random.default_rng(seed))
    form, _ = _or_skip(lu_canonical, s)
    again, _ = lu_canonical(form.state().unit())
    assert form_distance(form, again) < 1e-10


@given(seeds, st.integers(3, 9))
def test_lu_form_conventions(seed, n):
    s = random_state(n, np.random.default_rng(seed))
    form, _ = _or_skip(lu_canonical, s)
    terms = form.terms()
    assert terms[0].node.is_south
    assert terms[0].coefficient.imag == 0 and terms[0].coefficient.real > 0
    assert terms[1].coefficient.imag == pytest.approx(0.0, abs=1e-12) and terms[1].coefficient.real > 0
    assert all(0 <= p < 2 * math.pi for p in form.phases)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_lu_parameter_count(n):
    form, _ = _or_skip(lu_canonical, random_state(n, np.random.default_rng(n)))
    # the y list, the phases and two angles per free node; A follows from normalization
    assert form.parameters().size == 2 * n - 3


def test_ghz3_il_form():
    form, g = il_canonical(ghz_state(3))
    assert form.lambdas == () and form.c is None
    assert abs(form.A) == pytest.approx(2**-0.5)
    assert abs(g.det - 1) < 1e-12


@given(seeds, odd_n)
def test_odd_il_form_invariance(seed, n):
    rng = np.random.default_rng(seed)
    s = random_state(n, rng)
    f1, g = il_canonical(s)
    f2, _ = il_canonical(apply_collective_normalized(random_sl2(rng), s)[0])
    assert form_distance(f1, f2) < 1e-6
    assert abs(g.det - 1) < 1e-12


@given(seeds, odd_n)
def test_odd_il_map_reaches_form(seed, n):
    s = random_state(n, np.random.default_rng(seed))
    form, g = il_canonical(s)
    moved, _ = apply_collective_normalized(g, s)
    assert 1 - fidelity(moved, form.state().unit()) < 1e-9
    again, _ = il_canonical(moved)
    assert form_distance(form, again) < 1e-7


@given(seeds, st.sampled_from([4, 6, 8]))
def test_even_il_parametric_relation(seed, n):
    s = random_state(n, np.random.default_rng(seed))
    form, g = _or_skip(il_canonical, s)
    assert parametric_relation_residual(form) < 1e-9
    assert abs(g.det - 1) < 1e-12
    moved, _ = apply_collective_normalized(g, s)
    assert 1 - fidelity(moved, form.state().unit()) < 1e-9


@given(seeds, st.sampled_from([4, 6, 8]))
def test_even_il_form_is_unitarily_invariant(seed, n):
    rng = np.random.default_rng(seed)
    s = random_state(n, rng)
    f1, _ = _or_skip(il_canonical, s)
    f2, _ = _or_skip(il_canonical, apply_collective(random_unitary(rng), s))
    assert form_distance(f1, f2) < 1e-6


@pytest.mark.parametrize("n, expected", [(3, 0), (5, 4), (7, 8), (4, 4), (6, 8)])
def test_il_parameter_count(n, expected):
    form, _ = _or_skip(il_canonical, random_state(n, np.random.default_rng(n)))
    assert form.parameters().size == expected


def test_equivalence_examples():
    rng = np.random.default_rng(9)
    s = random_state(5, rng)
    assert equivalent(s, apply_collective(random_unitary(rng), s), "lu")
    assert not equivalent(s, random_state(5, rng), "lu")
    assert equivalent(ghz_state(3), random_state(3, rng), "il")
    assert not equivalent(ghz_state(3), dicke_state(3, 0), "il")
    assert equivalent(dicke_state(3, 0), coherent_state(3, NodeState(1.0, 0.3)), "il")
    with pytest.raises(NonGeneric):
        equivalent(w_state(3), ghz_state(3), "il")
    with pytest.raises(ValueError):
        equivalent(ghz_state(3), ghz_state(4))


def test_separable_has_no_odd_il_form():
    with pytest.raises(InsufficientTerms):
        il_canonical(dicke_state(5, 0))


def test_forms_of_different_kind_never_match():
    lu, _ = lu_canonical(ghz_state(3))
    il, _ = il_canonical(ghz_state(3))
    assert isinstance(lu, LUCanonicalForm) and isinstance(il, ILCanonicalForm)
    assert form_distance(lu, il) == math.inf
    assert not forms_equal(lu, il)


@pytest.mark.parametrize("n", [4, 6])
def test_even_il_parameters_are_locally_independent(n):
    """The even form's parameter vector has full-rank dependence on the state, so 2N-4 reals."""
    s = random_state(n, np.random.default_rng(3))
    x0 = np.r_[s.dicke.real, s.dicke.imag]

    def params(x):
        return il_canonical(SymmetricState(x[: n + 1] + 1j * x[n + 1 :]).unit())[0].parameters()

    h = 1e-6
    jac = np.array([(params(x0 + h * e) - params(x0 - h * e)) / (2 * h) for e in np.eye(x0.size)]).T
    sv = np.linalg.svd(jac, compute_uv=False)
    assert jac.shape[0] == 2 * n - 4
    assert sv[-1] > 1e-6 * sv[0]
