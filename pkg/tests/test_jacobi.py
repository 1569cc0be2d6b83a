import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jordanmeans.jacobi import JacobiConvergenceError, _round_robin, jacobi_eigh
from strategies import seeds


def _sym(rng, n, scale=1.0):
    g = rng.standard_normal((n, n)) * scale
    return 0.5 * (g + g.T)


@given(st.integers(1, 9), seeds)
def test_matches_lapack(n, seed):
    a = _sym(np.random.default_rng(seed), n)
    w, v = jacobi_eigh(a)
    ref = np.linalg.eigvalsh(a)
    scale = max(1.0, np.abs(ref).max())
    np.testing.assert_allclose(w, ref, atol=1e-12 * scale)
    np.testing.assert_allclose(v.T @ v, np.eye(n), atol=1e-12)
    np.testing.assert_allclose((v * w) @ v.T, a, atol=1e-12 * scale)


@pytest.mark.parametrize("n", range(2, 11))
def test_round_robin_visits_each_pair_once(n):
    rounds = _round_robin(n)
    seen = []
    for p, q in rounds:
        idx = np.concatenate([p, q])
        assert len(set(idx.tolist())) == len(idx)  # disjoint within a round
        seen += list(zip(p.tolist(), q.tolist()))
    assert sorted(seen) == list(itertools.combinations(range(n), 2))


def test_diagonal_input_is_sorted_untouched():
    w, v = jacobi_eigh(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_array_equal(w, [-1.0, 2.0, 3.0])
    np.testing.assert_array_equal(np.abs(v), np.eye(3)[:, [1, 2, 0]])


def test_repeated_eigenvalues():
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
    a = (q * np.array([1.0, 1.0, 1.0, 4.0, 4.0])) @ q.T
    w, v = jacobi_eigh(a)
    np.testing.assert_allclose(w, [1, 1, 1, 4, 4], atol=1e-13)
    np.testing.assert_allclose((v * w) @ v.T, a, atol=1e-13)


def test_wide_dynamic_range():
    a = _sym(np.random.default_rng(1), 6, scale=1e150)
    w, _ = jacobi_eigh(a)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a), rtol=1e-12, atol=1e-12 * np.abs(w).max())


def test_sweep_cap_reports_residual():
    with pytest.raises(JacobiConvergenceError) as info:
        jacobi_eigh(_sym(np.random.default_rng(0), 4), max_sweeps=0)
    assert info.value.residual > 0


def test_rejects_non_square():
    with pytest.raises(ValueError):
        jacobi_eigh(np.zeros((2, 3)))
