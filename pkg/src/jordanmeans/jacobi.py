"""Cyclic Jacobi eigensolver for real symmetric matrices.

Rotations are applied in round-robin (tournament) order: every round
annihilates ``n // 2`` disjoint off-diagonal pairs at once, and ``n - 1``
rounds make one sweep that visits every pair exactly once.  Because the
rotations in a round act on disjoint index pairs, applying them as one
block-orthogonal matrix is identical to applying them sequentially.
"""

from __future__ import annotations

import numpy as np

OFF_DIAGONAL_RTOL = 1e-13
MAX_SWEEPS = 100


class JacobiConvergenceError(ArithmeticError):
    """Raised when the sweep cap is hit before the off-diagonal mass is small."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (off-diagonal residual {residual:.3e})")
        self.residual = residual


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=int), np.array(q, dtype=int)))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


_ROUNDS_CACHE: dict[int, list[tuple[np.ndarray, np.ndarray]]] = {}


def _off(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigh(
    matrix: np.ndarray,
    rtol: float = OFF_DIAGONAL_RTOL,
    max_sweeps: int = MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix.

    Iterates until the off-diagonal Frobenius norm is at most
    ``rtol * ||matrix||_F``.

    Returns
    -------
    w : ndarray, shape (n,)
    v : ndarray, shape (n, n)
        Column ``v[:, i]`` is the eigenvector for ``w[i]``.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    v = np.eye(n)
    if n < 2:
        return np.diag(a).copy(), v

    rounds = _ROUNDS_CACHE.get(n)
    if rounds is None:
        rounds = _ROUNDS_CACHE.setdefault(n, _round_robin(n))

    threshold = rtol * float(np.linalg.norm(a))
    off = _off(a)
    sweeps = 0
    eye = np.eye(n)
    # |theta| may overflow to inf, which correctly yields t = 0
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        while off > threshold:
            if sweeps >= max_sweeps:
                raise JacobiConvergenceError(
                    f"Jacobi did not converge in {max_sweeps} sweeps", off
                )
            for p, q in rounds:
                apq = a[p, q]
                nonzero = apq != 0.0
                theta = (a[q, q] - a[p, p]) / np.where(nonzero, 2.0 * apq, 1.0)
                t = np.sign(theta) / (np.abs(theta) + np.hypot(1.0, theta))
                # theta == 0 with a nonzero pivot is a 45 degree rotation
                t = np.where(nonzero, np.where(theta == 0.0, 1.0, t), 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                j = eye.copy()
                j[p, p] = c
                j[q, q] = c
                j[p, q] = s
                j[q, p] = -s
                a = j.T @ a @ j
                v = v @ j
            sweeps += 1
            off = _off(a)

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
