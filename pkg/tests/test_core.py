import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from jordanmeans import SpinFactorAlgebra, SymmetricMatrixAlgebra, random_element, random_positive
from jordanmeans.core import (
    AlgebraElement,
    AlgebraMismatchError,
    JordanDomainError,
    Symmetry,
    Tolerances,
    apply_function,
    exp,
    inverse,
    is_positive_invertible,
    jordan_product,
    log,
    loewner_leq,
    loewner_violation,
    min_eigenvalue,
    norm,
    power,
    quadratic_rep,
    spectral_decompose,
    spectral_radius,
    sqrt,
)
from strategies import elements, positives, seeds

S2 = SymmetricMatrixAlgebra(2)
TOL_SPEC = 1e-10


def close(a, b, tol=1e-12):
    return norm(a - b) <= tol * max(1.0, norm(b))


# -- Jordan product -----------------------------------------------------------


def test_unit_is_neutral():
    b = S2.from_matrix([[2.0, 1.0], [1.0, -3.0]])
    assert close(jordan_product(S2.identity(), b), b)


def test_commuting_diagonals():
    assert close(jordan_product(S2.diag([1, 2]), S2.diag([3, 4])), S2.diag([3, 8]))


def test_anticommuting_pair_is_zero():
    a = S2.from_matrix([[0.0, 1.0], [1.0, 0.0]])
    b = S2.diag([1.0, -1.0])
    assert norm(jordan_product(a, b)) == 0.0


@given(elements(count=3))
def test_product_commutative_bilinear_jordan(data):
    _, (a, b, c) = data
    assert close(jordan_product(a, b), jordan_product(b, a))
    lhs = jordan_product(2.0 * a + b, c)
    assert close(lhs, 2.0 * jordan_product(a, c) + jordan_product(b, c), 1e-12)
    a2 = jordan_product(a, a)
    left = jordan_product(jordan_product(a2, b), a)
    right = jordan_product(a2, jordan_product(b, a))
    assert norm(left - right) <= TOL_SPEC * norm(a) ** 2 * norm(b)


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatchError):
        jordan_product(S2.identity(), SymmetricMatrixAlgebra(3).identity())
    with pytest.raises(AlgebraMismatchError):
        S2.identity() + SpinFactorAlgebra(2).identity()


# -- quadratic representation -------------------------------------------------


@given(elements())
def test_quadratic_rep_of_unit(data):
    _, (b,) = data
    assert close(quadratic_rep(b.algebra.identity(), b), b)


@given(positives(count=1))
def test_quadratic_rep_of_inverse(data):
    _, (a,) = data
    assert close(quadratic_rep(a, inverse(a)), a, 1e-10)


@given(elements(count=1), seeds)
def test_quadratic_rep_preserves_positivity(x, seed):
    alg, (a,) = x
    b = random_positive(alg, 100.0, seed)
    assert min_eigenvalue(quadratic_rep(a, b)) >= -1e-10 * max(1.0, norm(a) ** 2 * norm(b))


@given(positives(count=2))
def test_quadratic_rep_inverse(data):
    _, (a, b) = data
    lhs = inverse(quadratic_rep(a, b))
    assert close(lhs, quadratic_rep(inverse(a), inverse(b)), 1e-9)


@given(st.integers(2, 6), seeds)
def test_quadratic_rep_matches_triple_product(n, seed):
    alg = SymmetricMatrixAlgebra(n)
    rng = np.random.default_rng(seed)
    a, b = random_element(alg, rng), random_element(alg, rng)
    m_a, m_b = alg.to_matrix(a), alg.to_matrix(b)
    ref = m_a @ m_b @ m_a
    np.testing.assert_allclose(alg.to_matrix(quadratic_rep(a, b)), ref, atol=1e-12 * np.abs(ref).max())


# -- spectral decomposition ---------------------------------------------------


def test_diagonal_decomposition():
    dec = spectral_decompose(S2.diag([3.0, 1.0]))
    np.testing.assert_array_equal(dec.eigenvalues, [1.0, 3.0])
    assert close(dec.idempotents[0], S2.diag([0, 1]))
    assert close(dec.idempotents[1], S2.diag([1, 0]))


def test_spin_decomposition():
    alg = SpinFactorAlgebra(3)
    u = np.array([0.6, 0.0, 0.8])
    dec = spectral_decompose(alg.make(2.0, u))
    np.testing.assert_allclose(dec.eigenvalues, [1.0, 3.0])
    assert close(dec.idempotents[0], alg.make(0.5, -0.5 * u))
    assert close(dec.idempotents[1], alg.make(0.5, 0.5 * u))


@given(elements())
def test_decomposition_invariants(data):
    alg, (a,) = data
    dec = spectral_decompose(a)
    assert np.all(np.diff(dec.eigenvalues) > 0)
    es = dec.idempotents
    for i, e in enumerate(es):
        assert norm(jordan_product(e, e) - e) <= TOL_SPEC
        for f in es[i + 1 :]:
            assert norm(jordan_product(e, f)) <= TOL_SPEC
    total = es[0]
    for e in es[1:]:
        total = total + e
    assert norm(total - alg.identity()) <= TOL_SPEC
    assert norm(dec.reconstruct() - a) <= TOL_SPEC * norm(a)


def test_random_6x6_reconstruction():
    a = random_element(SymmetricMatrixAlgebra(6), 11)
    assert norm(spectral_decompose(a).reconstruct() - a) <= TOL_SPEC * norm(a)


# -- functional calculus ------------------------------------------------------


@given(positives(count=1))
def test_power_zero_is_unit(data):
    alg, (a,) = data
    assert close(power(a, 0), alg.identity())


def test_sqrt_of_diagonal():
    assert close(power(S2.diag([4, 9]), 0.5), S2.diag([2, 3]))
    assert close(sqrt(S2.diag([4, 9])), S2.diag([2, 3]))


def test_fractional_power_matches_integral_oracle():
    alg = SymmetricMatrixAlgebra(5)
    a = random_positive(alg, 50.0, 2024)
    ref = oracles.power_integral(alg.to_matrix(a), 0.37)
    got = alg.to_matrix(power(a, 0.37))
    np.testing.assert_allclose(got, ref, atol=1e-9 * np.abs(ref).max())


def test_log_of_indefinite_names_eigenvalue():
    with pytest.raises(JordanDomainError, match="-1"):
        log(S2.diag([1.0, -1.0]))
    with pytest.raises(JordanDomainError, match="-2"):
        apply_function(S2.diag([4.0, -2.0]), math.sqrt)


def test_exp_overflow_is_domain_error():
    with pytest.raises(JordanDomainError):
        exp(S2.diag([1e4, 0.0]))


def test_inverse_of_singular():
    with pytest.raises(JordanDomainError):
        inverse(S2.diag([1.0, 0.0]))


@given(elements())
def test_identity_function_roundtrip(data):
    _, (a,) = data
    assert norm(apply_function(a, lambda x: x) - a) <= TOL_SPEC * max(1.0, norm(a))


@given(positives(count=1), st.floats(-2, 2), st.floats(-2, 2))
def test_power_composition(data, alpha, beta):
    _, (a,) = data
    assert close(power(power(a, alpha), beta), power(a, alpha * beta), 1e-9)


@given(positives(count=1))
def test_exp_log_inverse(data):
    _, (a,) = data
    assert close(exp(log(a)), a, 1e-12)
    assert close(a**-1, inverse(a))


# -- positivity, order, norm --------------------------------------------------


def test_positivity_examples():
    assert is_positive_invertible(S2.identity())
    assert not is_positive_invertible(S2.diag([1.0, -1.0]))


@given(st.floats(-3, 3), st.floats(0, 3))
def test_spin_positivity_threshold(s, r):
    alg = SpinFactorAlgebra(2)
    a = alg.make(s, [r, 0.0])
    threshold = 1e-10 * max(1.0, abs(s) + r)
    assert is_positive_invertible(a) == (s - r > threshold)


def test_loewner_examples():
    a = S2.from_matrix([[2.0, 1.0], [1.0, 2.0]])
    assert loewner_leq(a, a, 0.0)
    assert loewner_leq(S2.diag([1, 1]), S2.diag([2, 3]))
    assert not loewner_leq(S2.diag([2, 3]), S2.diag([1, 1]))
    assert loewner_violation(S2.diag([2, 3]), S2.diag([1, 1])) == pytest.approx(2.0)


@given(st.lists(st.floats(0.1, 10), min_size=3, max_size=3), st.lists(st.floats(0.1, 10), min_size=3, max_size=3))
def test_loewner_matches_scalar_in_commuting_case(x, y):
    alg = SymmetricMatrixAlgebra(3)
    assert loewner_leq(alg.diag(x), alg.diag(y)) == all(a <= b for a, b in zip(x, y))


def test_norm_examples():
    assert norm(S2.identity()) == 1.0
    assert norm(S2.diag([-3, 2])) == 3.0
    assert spectral_radius(S2.diag([-3, 2])) == 3.0


@given(elements(count=2))
def test_norm_axioms(data):
    _, (a, b) = data
    assert norm(jordan_product(a, a)) == pytest.approx(norm(a) ** 2, rel=1e-12)
    assert norm(jordan_product(a, b)) <= norm(a) * norm(b) * (1 + TOL_SPEC)


# -- value types --------------------------------------------------------------


def test_element_validation():
    with pytest.raises(JordanDomainError):
        AlgebraElement(S2, np.zeros(2))
    with pytest.raises(JordanDomainError):
        AlgebraElement(S2, np.array([1.0, np.nan, 0.0]))
    a = S2.identity()
    with pytest.raises(ValueError):
        a.coordinates[0] = 5.0


def test_tolerances_validation():
    Tolerances()
    with pytest.raises(ValueError):
        Tolerances(tol_spec=0.0)
    with pytest.raises(ValueError):
        Tolerances(tol_pos=1e-20)


def test_symmetry_rejects_non_involution():
    Symmetry(S2.diag([1.0, -1.0]))
    with pytest.raises(JordanDomainError):
        Symmetry(S2.diag([1.0, 2.0]))
