"""Concrete JB-algebras: real symmetric matrices and spin factors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np

from .core import (
    DEFAULT_TOL,
    AlgebraElement,
    JordanAlgebra,
    JordanDomainError,
    SpectralConvergenceError,
    SpectralDecomposition,
    Symmetry,
    UnsupportedAlgebraError,
    spectral_radius,
)
from .jacobi import JacobiConvergenceError, jacobi_eigh

GROUPING_RTOL = 1e-8
SPIN_ZERO_RTOL = 1e-14


def group_eigenpairs(w: np.ndarray, v: np.ndarray, scale: float):
    """Merge eigenvectors whose adjacent eigenvalues differ by at most 1e-8 * scale.

    The cut is purely relative so that elements of tiny norm (differences of
    nearby means, logarithms near the identity) keep their spectrum.
    Returns the group eigenvalues (group means) and a list of column blocks.
    """
    cut = GROUPING_RTOL * scale
    starts = [0] + [i for i in range(1, len(w)) if w[i] - w[i - 1] > cut]
    bounds = starts[1:] + [len(w)]
    values = np.array([w[s:e].mean() for s, e in zip(starts, bounds)])
    blocks = [v[:, s:e] for s, e in zip(starts, bounds)]
    return values, blocks


@dataclass(frozen=True)
class SymmetricMatrixAlgebra(JordanAlgebra):
    """Real symmetric ``n x n`` matrices with ``A o B = (AB + BA) / 2``.

    Coordinates are taken in the orthonormal basis ``E_ii``,
    ``(E_ij + E_ji) / sqrt(2)`` (``i < j``), so the coordinate Euclidean
    norm equals the Frobenius norm.
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("matrix dimension must be positive")

    @property
    def dim(self) -> int:
        return self.n * (self.n + 1) // 2

    @property
    def tag(self) -> str:
        return f"sym{self.n}"

    @cached_property
    def _index(self):
        iu = np.triu_indices(self.n)
        scale = np.where(iu[0] == iu[1], 1.0, np.sqrt(2.0))
        return iu, scale

    def to_matrix(self, x) -> np.ndarray:
        if isinstance(x, AlgebraElement):
            x = x.coordinates
        iu, scale = self._index
        m = np.zeros((self.n, self.n))
        m[iu] = x / scale
        return m + np.triu(m, 1).T

    def _svec(self, m: np.ndarray) -> np.ndarray:
        iu, scale = self._index
        return m[iu] * scale

    def from_matrix(self, m, tol: float = DEFAULT_TOL.tol_spec) -> AlgebraElement:
        """Ingest a symmetric matrix; near-symmetric input is symmetrized."""
        m = np.asarray(m, dtype=float)
        if m.shape != (self.n, self.n):
            raise JordanDomainError(f"expected a {self.n}x{self.n} matrix, got shape {m.shape}")
        asym = np.linalg.norm(m - m.T, 2)
        if asym > tol * max(1.0, np.linalg.norm(m, 2)):
            raise JordanDomainError(f"matrix is not symmetric (||A - A^T|| = {asym:.3e})")
        return AlgebraElement(self, self._svec(0.5 * (m + m.T)))

    def diag(self, values) -> AlgebraElement:
        return self.from_matrix(np.diag(np.asarray(values, dtype=float)))

    def product(self, x, y):
        a, b = self.to_matrix(x), self.to_matrix(y)
        ab = a @ b
        return self._svec(0.5 * (ab + ab.T))

    def unit_coordinates(self):
        return self._svec(np.eye(self.n))

    def decompose(self, x):
        a = self.to_matrix(x)
        try:
            w, v = jacobi_eigh(a)
        except JacobiConvergenceError as exc:
            raise SpectralConvergenceError(str(exc), exc.residual) from exc
        scale = max(abs(w[0]), abs(w[-1]))
        values, blocks = group_eigenpairs(w, v, scale)
        idem = np.array([self._svec(b @ b.T) for b in blocks])
        return values, idem

    def from_json(self, obj: Any) -> AlgebraElement:
        try:
            m = np.array(obj, dtype=float)
        except (TypeError, ValueError) as exc:
            raise JordanDomainError(f"cannot read a matrix from {obj!r}") from exc
        return self.from_matrix(m)

    def to_json(self, element: AlgebraElement):
        return self.to_matrix(element.coordinates).tolist()


@dataclass(frozen=True)
class SpinFactorAlgebra(JordanAlgebra):
    """Spin factor ``R + R^d`` with ``(s, u) o (t, v) = (st + <u, v>, sv + tu)``."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("spin factor vector dimension must be positive")

    @property
    def dim(self) -> int:
        return self.d + 1

    @property
    def tag(self) -> str:
        return f"spin{self.d}"

    def make(self, s: float, u) -> AlgebraElement:
        u = np.atleast_1d(np.asarray(u, dtype=float))
        if u.shape != (self.d,):
            raise JordanDomainError(f"vector part must have length {self.d}")
        return AlgebraElement(self, np.concatenate([[float(s)], u]))

    def product(self, x, y):
        s, u = x[0], x[1:]
        t, v = y[0], y[1:]
        return np.concatenate([[s * t + u @ v], s * v + t * u])

    def unit_coordinates(self):
        e = np.zeros(self.dim)
        e[0] = 1.0
        return e

    def decompose(self, x):
        s, u = x[0], x[1:]
        r = float(np.linalg.norm(u))
        if r <= SPIN_ZERO_RTOL * (1.0 + abs(s)):
            return np.array([s]), self.unit_coordinates()[None, :]
        direction = u / r
        lo = 0.5 * np.concatenate([[1.0], -direction])
        hi = 0.5 * np.concatenate([[1.0], direction])
        return np.array([s - r, s + r]), np.array([lo, hi])

    def from_json(self, obj: Any) -> AlgebraElement:
        if not isinstance(obj, dict) or "s" not in obj or "u" not in obj:
            raise JordanDomainError(f'spin-factor elements are objects {{"s": .., "u": [..]}}, got {obj!r}')
        try:
            return self.make(obj["s"], obj["u"])
        except (TypeError, ValueError) as exc:
            raise JordanDomainError(f"cannot read a spin-factor element from {obj!r}") from exc

    def to_json(self, element: AlgebraElement):
        c = element.coordinates
        return {"s": float(c[0]), "u": c[1:].tolist()}


def associative_oracle_product(a: AlgebraElement, b: AlgebraElement) -> np.ndarray:
    """Plain matrix product ``A @ B`` (not symmetrized) in the special algebra."""
    alg = a.algebra
    if not isinstance(alg, SymmetricMatrixAlgebra):
        raise UnsupportedAlgebraError(f"no associative envelope for {alg.tag}")
    if b.algebra != alg:
        raise JordanDomainError("elements live in different algebras")
    return alg.to_matrix(a.coordinates) @ alg.to_matrix(b.coordinates)


def spin_spectral(a: AlgebraElement) -> SpectralDecomposition:
    if not isinstance(a.algebra, SpinFactorAlgebra):
        raise UnsupportedAlgebraError(f"{a.algebra.tag} is not a spin factor")
    return a.spectral


def spin_inverse(a: AlgebraElement) -> AlgebraElement:
    """Closed-form Jordan inverse ``(s, -u) / (s^2 - ||u||^2)``."""
    if not isinstance(a.algebra, SpinFactorAlgebra):
        raise UnsupportedAlgebraError(f"{a.algebra.tag} is not a spin factor")
    s, u = a.coordinates[0], a.coordinates[1:]
    det = s * s - u @ u
    if det == 0:
        raise JordanDomainError("spin-factor element is not invertible")
    return a.algebra.make(s / det, -u / det)


def spin_to_diag_oracle(a: AlgebraElement) -> AlgebraElement:
    """Jordan isomorphism ``(s, u) -> diag(s + u, s - u)`` for the ``d = 1`` spin factor."""
    alg = a.algebra
    if not isinstance(alg, SpinFactorAlgebra) or alg.d != 1:
        raise UnsupportedAlgebraError("the diagonal isomorphism exists only for the d=1 spin factor")
    s, u = a.coordinates
    return SymmetricMatrixAlgebra(2).diag([s + u, s - u])


def random_element(algebra: JordanAlgebra, rng_seed=None) -> AlgebraElement:
    """Random self-adjoint element (GOE-like for matrices, Gaussian for spin factors)."""
    rng = np.random.default_rng(rng_seed)
    if isinstance(algebra, SymmetricMatrixAlgebra):
        g = rng.standard_normal((algebra.n, algebra.n))
        return algebra.from_matrix(0.5 * (g + g.T))
    return AlgebraElement(algebra, rng.standard_normal(algebra.dim))


def random_positive(algebra: JordanAlgebra, condition_cap: float = 100.0, rng_seed=None) -> AlgebraElement:
    """Random positive invertible element with eigenvalue ratio at most ``condition_cap``.

    ``exp(X)`` where ``X`` is a random element rescaled so its spectrum lies in
    ``[-log sqrt(c), log sqrt(c)]``.
    """
    if not condition_cap >= 1:
        raise ValueError("condition_cap must be >= 1")
    x = random_element(algebra, rng_seed)
    r = spectral_radius(x)
    half_log = 0.5 * np.log(condition_cap)
    if r == 0 or half_log == 0:
        return algebra.identity()
    return x.spectral.combine(np.exp(x.eigenvalues * (half_log / r)))


def make_symmetry(algebra: JordanAlgebra, rng_seed=None, trivial: bool = False) -> Symmetry:
    if trivial:
        return Symmetry(algebra.identity())
    rng = np.random.default_rng(rng_seed)
    if isinstance(algebra, SymmetricMatrixAlgebra):
        q, r = np.linalg.qr(rng.standard_normal((algebra.n, algebra.n)))
        q = q * np.sign(np.diag(r))
        signs = rng.choice([-1.0, 1.0], size=algebra.n)
        return Symmetry(algebra.from_matrix((q * signs) @ q.T))
    if isinstance(algebra, SpinFactorAlgebra):
        if rng.random() < 0.5:
            return Symmetry(algebra.make(rng.choice([-1.0, 1.0]), np.zeros(algebra.d)))
        u = rng.standard_normal(algebra.d)
        return Symmetry(algebra.make(0.0, u / np.linalg.norm(u)))
    raise UnsupportedAlgebraError(f"no symmetry generator for {algebra.tag}")


def parse_algebra(spec: str) -> JordanAlgebra:
    """Parse ``symmetric:n`` / ``spin:d`` (also ``sym3``, ``spin2``)."""
    text = spec.strip().lower()
    for prefix, cls in (("symmetric", SymmetricMatrixAlgebra), ("sym", SymmetricMatrixAlgebra), ("spin", SpinFactorAlgebra)):
        if text.startswith(prefix):
            rest = text[len(prefix):].lstrip(":")
            try:
                return cls(int(rest))
            except ValueError as exc:
                raise JordanDomainError(f"bad algebra size in {spec!r}") from exc
    raise JordanDomainError(f"unknown algebra {spec!r}; expected symmetric:n or spin:d")
