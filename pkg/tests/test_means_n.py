import numpy as np
import pytest
from hypothesis import given, strategies as st

from jordanmeans import SymmetricMatrixAlgebra, random_positive
from jordanmeans.core import JordanDomainError, NotPositiveError, relative_distance
from jordanmeans.means2 import TWO_MEANS
from jordanmeans.means_n import (
    HANSEN_PROPERTIES,
    MEAN_NAMES,
    arithmetic_mean_n,
    get_mean,
    hansen_inductive,
    hansen_property_check,
    harmonic_mean_n,
    sagae_tanabe,
    simplex_weights,
    young_check,
)
from strategies import algebras, seeds

TOL_PROP = 1e-9


@st.composite
def tuples(draw, n_min=2, n_max=5, cap=100.0):
    alg = draw(algebras)
    n = draw(st.integers(n_min, n_max))
    rng = np.random.default_rng(draw(seeds))
    w = simplex_weights(rng.uniform(0.05, 1.0, size=n))
    return w, [random_positive(alg, cap, rng) for _ in range(n)]


def close(a, b, tol=1e-12):
    return relative_distance(a, b) <= tol


def test_weights_are_renormalized():
    np.testing.assert_allclose(simplex_weights([1, 1, 2]), [0.25, 0.25, 0.5])
    assert abs(simplex_weights(np.arange(1, 8)).sum() - 1.0) <= 1e-12
    for bad in ([], [1.0, 0.0], [1.0, -1.0], [np.inf, 1.0]):
        with pytest.raises(JordanDomainError):
            simplex_weights(bad)


def test_closed_form_examples():
    s2 = SymmetricMatrixAlgebra(2)
    assert close(arithmetic_mean_n([0.5, 0.5], [s2.diag([1, 1]), s2.diag([3, 3])]), s2.diag([2, 2]))
    s1 = SymmetricMatrixAlgebra(1)
    h = harmonic_mean_n([0.5, 0.5], [s1.diag([1.0]), s1.diag([3.0])])
    assert h.coordinates[0] == pytest.approx(1.5, rel=1e-15)


def test_input_validation():
    s2 = SymmetricMatrixAlgebra(2)
    one = s2.identity()
    with pytest.raises(JordanDomainError):
        arithmetic_mean_n([1.0], [one, one])
    with pytest.raises(JordanDomainError):
        sagae_tanabe([1.0], [one])
    with pytest.raises(JordanDomainError):
        hansen_inductive([1.0], [one])
    with pytest.raises(NotPositiveError):
        hansen_inductive([1, 1], [one, s2.diag([1, -1])])
    with pytest.raises(JordanDomainError):
        arithmetic_mean_n([1, 1], [one, SymmetricMatrixAlgebra(3).identity()])
    with pytest.raises(JordanDomainError):
        sagae_tanabe([1, 1], [one, one], "karcher")


@pytest.mark.parametrize("name", MEAN_NAMES)
@given(data=tuples())
def test_constant_tuples_are_fixed(name, data):
    w, tup = data
    const = [tup[0]] * len(tup)
    assert close(get_mean(name)(w, const), tup[0], TOL_PROP)


@pytest.mark.parametrize("base", sorted(TWO_MEANS))
@given(data=tuples(n_min=2, n_max=2))
def test_two_variable_base_case(base, data):
    w, (a, b) = data
    expected = TWO_MEANS[base](a, b, w[1])
    assert close(sagae_tanabe(w, [a, b], base), expected, 1e-14)
    assert close(hansen_inductive(w, [a, b], base), expected, 1e-14)


@given(tuples(n_min=3))
def test_inductive_closed_forms(data):
    w, tup = data
    a, h = arithmetic_mean_n(w, tup), harmonic_mean_n(w, tup)
    assert close(sagae_tanabe(w, tup, "arithmetic"), a, TOL_PROP)
    assert close(sagae_tanabe(w, tup, "harmonic"), h, TOL_PROP)
    assert close(hansen_inductive(w, tup, "arithmetic"), a, 1e-12)
    assert close(hansen_inductive(w, tup, "harmonic"), h, TOL_PROP)


@pytest.mark.parametrize("construction", [sagae_tanabe, hansen_inductive])
@given(st.lists(st.lists(st.floats(0.05, 20), min_size=3, max_size=3), min_size=2, max_size=5), st.data())
def test_geometric_commuting_product(construction, diags, data):
    alg = SymmetricMatrixAlgebra(3)
    w = simplex_weights(data.draw(st.lists(st.floats(0.05, 1), min_size=len(diags), max_size=len(diags))))
    expected = alg.diag(np.prod(np.array(diags) ** w[:, None], axis=0))
    assert close(construction(w, [alg.diag(d) for d in diags], "geometric"), expected, 1e-12)


def test_sagae_tanabe_is_order_dependent_but_well_defined():
    rng = np.random.default_rng(8)
    alg = SymmetricMatrixAlgebra(3)
    tup = [random_positive(alg, 100.0, rng) for _ in range(3)]
    w = [0.2, 0.3, 0.5]
    g = sagae_tanabe(w, tup)
    assert close(sagae_tanabe(w, tup), g, 0.0)
    assert g.eigenvalues[0] > 0


def test_get_mean_names():
    assert get_mean("geometric").__name__ == "sagae_geometric"
    assert get_mean("hansen-spectral").__name__ == "hansen_spectral"
    with pytest.raises(JordanDomainError):
        get_mean("karcher")
    with pytest.raises(JordanDomainError):
        get_mean("hansen-karcher")


# -- Young inequalities -------------------------------------------------------


def test_young_constant_tuple():
    a = random_positive(SymmetricMatrixAlgebra(3), 10.0, 0)
    r = young_check([1, 2, 3], [a, a, a])
    assert r.lower and r.upper
    assert max(r.lower_violation, r.upper_violation) <= 1e-13 * r.scale


@given(st.lists(st.lists(st.floats(0.05, 20), min_size=2, max_size=2), min_size=3, max_size=5))
def test_young_commuting_is_scalar_am_gm_hm(diags):
    alg = SymmetricMatrixAlgebra(2)
    r = young_check(np.ones(len(diags)), [alg.diag(d) for d in diags])
    assert r.lower and r.upper


@given(tuples(n_min=3))
def test_young_random(data):
    w, tup = data
    r = young_check(w, tup)
    assert r.lower and r.upper


# -- Hansen properties --------------------------------------------------------


@pytest.mark.parametrize("prop", HANSEN_PROPERTIES)
def test_hansen_properties(prop):
    for alg in (SymmetricMatrixAlgebra(3), SymmetricMatrixAlgebra(5)):
        report = hansen_property_check(prop, alg, samples=15, n=4, seed=1)
        assert report.samples == 15
        assert report.passed(TOL_PROP), (prop, report.max_violation)


def test_hansen_homogeneity_unit_scalars_exact():
    rng = np.random.default_rng(0)
    alg = SymmetricMatrixAlgebra(3)
    tup = [random_positive(alg, 100.0, rng) for _ in range(3)]
    w = [0.2, 0.5, 0.3]
    # equal up to round-off: rescaling by 1 recomputes the spectral decompositions
    assert close(hansen_inductive(w, [1.0 * a for a in tup]), hansen_inductive(w, tup), 1e-13)


def test_hansen_self_dual_commuting():
    alg = SymmetricMatrixAlgebra(2)
    tup = [alg.diag([1, 4]), alg.diag([9, 0.5]), alg.diag([2, 2])]
    w = [0.5, 0.25, 0.25]
    g = hansen_inductive(w, tup)
    dual = hansen_inductive(w, [a.inverse() for a in tup]).inverse()
    assert close(dual, g, 1e-13)


def test_hansen_property_unknown():
    with pytest.raises(JordanDomainError):
        hansen_property_check("triangle", SymmetricMatrixAlgebra(2))
