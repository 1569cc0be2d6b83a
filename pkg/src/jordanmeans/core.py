"""Elements of finite-dimensional JB-algebras and their spectral calculus.

A concrete algebra (see :mod:`jordanmeans.algebras`) supplies the Jordan
product on coordinate vectors, the unit, and a spectral decomposition.
Everything else here (quadratic representation, functional calculus, the
positive cone and the Loewner order) is written against that contract only.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable

import numpy as np

EPS = float(np.finfo(float).eps)


class JordanDomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class AlgebraMismatchError(JordanDomainError):
    pass


class UnsupportedAlgebraError(JordanDomainError):
    pass


class NotPositiveError(JordanDomainError):
    """A positive invertible element was required."""


class SpectralConvergenceError(ArithmeticError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances.

    tol_spec
        Relative tolerance for structural identities (idempotents, symmetries).
    tol_pos
        Relative positivity margin used by :func:`is_positive_invertible`.
    tol_prop
        Tolerance for property checks on means.
    """

    tol_spec: float = 1e-10
    tol_pos: float = 1e-10
    tol_prop: float = 1e-9

    def __post_init__(self):
        for name in ("tol_spec", "tol_pos", "tol_prop"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be a positive finite number, got {value}")
        if self.tol_pos < EPS:
            raise ValueError(f"tol_pos must be at least machine epsilon ({EPS:.3e})")


DEFAULT_TOL = Tolerances()


class JordanAlgebra(ABC):
    """A finite-dimensional unital JB-algebra in a fixed coordinate basis."""

    @property
    @abstractmethod
    def dim(self) -> int: ...

    @property
    @abstractmethod
    def tag(self) -> str: ...

    @abstractmethod
    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Jordan product of two coordinate vectors."""

    @abstractmethod
    def unit_coordinates(self) -> np.ndarray: ...

    @abstractmethod
    def decompose(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Grouped spectral data of ``x``.

        Returns ascending distinct eigenvalues and a ``(k, dim)`` array whose
        rows are the coordinates of the matching idempotents.
        """

    @abstractmethod
    def from_json(self, obj: Any) -> "AlgebraElement": ...

    @abstractmethod
    def to_json(self, element: "AlgebraElement") -> Any: ...

    def element(self, coordinates) -> "AlgebraElement":
        return AlgebraElement(self, coordinates)

    def identity(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit_coordinates())

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, np.zeros(self.dim))


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues with the orthogonal idempotents that carry them."""

    algebra: JordanAlgebra
    eigenvalues: np.ndarray
    idempotent_coordinates: np.ndarray

    @property
    def idempotents(self) -> list["AlgebraElement"]:
        return [AlgebraElement(self.algebra, row) for row in self.idempotent_coordinates]

    def __len__(self):
        return len(self.eigenvalues)

    def combine(self, values) -> "AlgebraElement":
        """Return ``sum_i values[i] * e_i``.

        When ``values`` is strictly monotone the result's decomposition is
        known (same idempotents) and is attached instead of recomputed.
        """
        values = np.asarray(values, dtype=float)
        out = AlgebraElement(self.algebra, values @ self.idempotent_coordinates)
        steps = np.diff(values)
        if np.all(steps > 0):
            out.__dict__["spectral"] = SpectralDecomposition(self.algebra, values, self.idempotent_coordinates)
        elif np.all(steps < 0):
            out.__dict__["spectral"] = SpectralDecomposition(
                self.algebra, values[::-1].copy(), self.idempotent_coordinates[::-1].copy()
            )
        return out

    def reconstruct(self) -> "AlgebraElement":
        return self.combine(self.eigenvalues)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Immutable element of a :class:`JordanAlgebra`.

    Supports ``+``, ``-``, scalar ``*`` and ``/``, and ``**`` for real powers
    through the functional calculus.  The spectral decomposition is computed
    lazily and cached.
    """

    algebra: JordanAlgebra
    coordinates: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coordinates, dtype=float)
        if coords.shape != (self.algebra.dim,):
            raise JordanDomainError(
                f"{self.algebra.tag} needs {self.algebra.dim} coordinates, got shape {coords.shape}"
            )
        if not np.all(np.isfinite(coords)):
            raise JordanDomainError("element coordinates must be finite")
        coords.setflags(write=False)
        object.__setattr__(self, "coordinates", coords)

    @property
    def algebra_tag(self) -> str:
        return self.algebra.tag

    @cached_property
    def spectral(self) -> SpectralDecomposition:
        eigenvalues, idempotents = self.algebra.decompose(self.coordinates)
        return SpectralDecomposition(self.algebra, eigenvalues, idempotents)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectral.eigenvalues

    def _check(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.algebra != self.algebra:
            raise AlgebraMismatchError(f"{self.algebra.tag} vs {other.algebra.tag}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return AlgebraElement(self.algebra, self.coordinates + other.coordinates)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return AlgebraElement(self.algebra, self.coordinates - other.coordinates)

    def __neg__(self):
        return AlgebraElement(self.algebra, -self.coordinates)

    def __mul__(self, scalar):
        if isinstance(scalar, AlgebraElement):
            raise TypeError("use jordan_product for the product of two elements")
        return AlgebraElement(self.algebra, float(scalar) * self.coordinates)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return AlgebraElement(self.algebra, self.coordinates / float(scalar))

    def __pow__(self, exponent):
        return power(self, exponent)

    def jordan(self, other: "AlgebraElement") -> "AlgebraElement":
        return jordan_product(self, other)

    def inverse(self) -> "AlgebraElement":
        return inverse(self)

    def sqrt(self) -> "AlgebraElement":
        return sqrt(self)

    def exp(self) -> "AlgebraElement":
        return exp(self)

    def log(self) -> "AlgebraElement":
        return log(self)

    def norm(self) -> float:
        return norm(self)

    def __repr__(self):
        return f"AlgebraElement({self.algebra.tag}, {np.array2string(self.coordinates, precision=6)})"


@dataclass(frozen=True, eq=False)
class Symmetry:
    """An element ``S`` with ``S o S = I``."""

    element: AlgebraElement
    tol: float = DEFAULT_TOL.tol_spec

    def __post_init__(self):
        alg = self.element.algebra
        err = norm(jordan_product(self.element, self.element) - alg.identity())
        if err > self.tol:
            raise JordanDomainError(f"not a symmetry: ||S^2 - I|| = {err:.3e}")


def _same_algebra(a: AlgebraElement, b: AlgebraElement):
    if a.algebra != b.algebra:
        raise AlgebraMismatchError(f"elements live in different algebras: {a.algebra.tag} vs {b.algebra.tag}")


def jordan_product(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _same_algebra(a, b)
    return AlgebraElement(a.algebra, a.algebra.product(a.coordinates, b.coordinates))


def quadratic_rep(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """``{a b a} = 2 (a o b) o a - a^2 o b``."""
    _same_algebra(a, b)
    alg = a.algebra
    x, y = a.coordinates, b.coordinates
    xy = alg.product(x, y)
    xx = alg.product(x, x)
    return AlgebraElement(alg, 2.0 * alg.product(xy, x) - alg.product(xx, y))


def spectral_decompose(a: AlgebraElement) -> SpectralDecomposition:
    return a.spectral


def apply_function(a: AlgebraElement, f: Callable[[float], float], name: str | None = None) -> AlgebraElement:
    """Functional calculus: ``sum_i f(lambda_i) e_i``.

    ``f`` is called on each eigenvalue as a Python float.  Math-domain
    failures, or non-finite results, are reported as :class:`JordanDomainError`
    naming the offending eigenvalue.
    """
    label = name or getattr(f, "__name__", "f")
    values = []
    for lam in a.spectral.eigenvalues:
        try:
            v = float(f(float(lam)))
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise JordanDomainError(f"eigenvalue {lam!r} is outside the domain of {label}: {exc}") from exc
        if not math.isfinite(v):
            raise JordanDomainError(f"{label}({lam!r}) is not finite")
        values.append(v)
    return a.spectral.combine(values)


def _spectral_map(a: AlgebraElement, ufunc, label: str, positive: bool = False, nonzero: bool = False):
    lams = a.spectral.eigenvalues
    if positive and np.any(lams <= 0):
        bad = lams[lams <= 0][0]
        raise JordanDomainError(f"{label} needs positive spectrum; eigenvalue {bad!r} is not")
    if nonzero and np.any(lams == 0):
        raise JordanDomainError(f"{label} needs an invertible element; eigenvalue 0 present")
    with np.errstate(over="raise"):
        try:
            values = ufunc(lams)
        except FloatingPointError as exc:
            raise JordanDomainError(f"{label} overflowed on eigenvalues {lams}") from exc
    return a.spectral.combine(values)


def power(a: AlgebraElement, exponent: float) -> AlgebraElement:
    """Real power ``a**exponent``; non-integer exponents need a positive element."""
    exponent = float(exponent)
    if exponent == 0.0:
        return a.algebra.identity()
    if exponent.is_integer() and exponent > 0:
        return _spectral_map(a, lambda x: x**exponent, "power")
    if exponent.is_integer():
        return _spectral_map(a, lambda x: x**exponent, "power", nonzero=True)
    return _spectral_map(a, lambda x: x**exponent, "power", positive=True)


def inverse(a: AlgebraElement) -> AlgebraElement:
    return _spectral_map(a, np.reciprocal, "inverse", nonzero=True)


def sqrt(a: AlgebraElement) -> AlgebraElement:
    lams = a.spectral.eigenvalues
    if np.any(lams < 0):
        raise JordanDomainError(f"sqrt needs nonnegative spectrum; eigenvalue {lams[0]!r} is negative")
    return a.spectral.combine(np.sqrt(lams))


def exp(a: AlgebraElement) -> AlgebraElement:
    return _spectral_map(a, np.exp, "exp")


def log(a: AlgebraElement) -> AlgebraElement:
    return _spectral_map(a, np.log, "log", positive=True)


def norm(a: AlgebraElement) -> float:
    """JB norm: largest absolute eigenvalue."""
    lams = a.spectral.eigenvalues
    return float(max(abs(lams[0]), abs(lams[-1])))


def spectral_radius(a: AlgebraElement) -> float:
    return norm(a)


def min_eigenvalue(a: AlgebraElement) -> float:
    return float(a.spectral.eigenvalues[0])


def is_positive_invertible(a: AlgebraElement, tol: Tolerances = DEFAULT_TOL) -> bool:
    return min_eigenvalue(a) > tol.tol_pos * max(1.0, norm(a))


def require_positive(a: AlgebraElement, what: str = "argument", tol: Tolerances = DEFAULT_TOL) -> AlgebraElement:
    if not is_positive_invertible(a, tol):
        raise NotPositiveError(
            f"{what} is not positive invertible (smallest eigenvalue {min_eigenvalue(a):.6g})"
        )
    return a


def loewner_leq(a: AlgebraElement, b: AlgebraElement, slack: float = 0.0) -> bool:
    """``a <= b`` in the Loewner order, up to ``slack`` on the spectrum of ``b - a``."""
    return min_eigenvalue(b - a) >= -slack


def loewner_violation(a: AlgebraElement, b: AlgebraElement) -> float:
    """How far ``a <= b`` is from holding: ``max(0, -min spec(b - a))``."""
    return max(0.0, -min_eigenvalue(b - a))


def distance(a: AlgebraElement, b: AlgebraElement) -> float:
    return norm(a - b)


def relative_distance(a: AlgebraElement, b: AlgebraElement) -> float:
    """``||a - b|| / ||b||`` (absolute when ``b`` is zero)."""
    scale = norm(b)
    d = norm(a - b)
    return d / scale if scale > 0 else d
