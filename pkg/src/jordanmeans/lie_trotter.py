"""Lie-Trotter limits of weighted means along curves through the identity.

For curves ``gamma_k`` with ``gamma_k(0) = I`` a Lie-Trotter mean satisfies

    G(w; gamma_1(t), ..., gamma_n(t))^(1/t)  ->  exp(sum_k w_k gamma_k'(0)).

Limits are measured in the log domain, ``(1/t) log G(t)`` against
``sum_k w_k gamma_k'(0)``, which is equivalent under the functional calculus
and avoids raising to huge powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .algebras import random_element
from .core import (
    EPS,
    AlgebraElement,
    JordanAlgebra,
    JordanDomainError,
    NotPositiveError,
    inverse,
    is_positive_invertible,
    loewner_violation,
    norm,
    relative_distance,
    spectral_radius,
)
from .means_n import NMean, arithmetic_mean_n, harmonic_mean_n, simplex_weights

DEFAULT_T_GRID = tuple(2.0**-k for k in range(3, 13))
DEFAULT_MIN_ORDER = 0.9
FLOOR_RTOL = 1e-12
# log-domain round-off grows like eps / t once divided by t
ROUNDOFF_FACTOR = 256.0


@dataclass(frozen=True)
class Curve:
    """Differentiable curve into the positive cone with ``evaluate(0) = I``."""

    evaluate: Callable[[float], AlgebraElement]
    derivative_at_zero: AlgebraElement
    epsilon: float = math.inf
    name: str = "curve"

    def __call__(self, t: float) -> AlgebraElement:
        if not abs(t) < self.epsilon:
            raise JordanDomainError(f"t={t} is outside the domain (-{self.epsilon}, {self.epsilon}) of {self.name}")
        return self.evaluate(t)


def curve_exp(x: AlgebraElement) -> Curve:
    """``t -> exp(t X)``."""
    dec = x.spectral
    return Curve(lambda t: dec.combine(np.exp(t * dec.eigenvalues)), x, math.inf, "exp")


def _half_inverse_radius(x: AlgebraElement) -> float:
    r = spectral_radius(x)
    return math.inf if r == 0 else 0.5 / r


def curve_linear(x: AlgebraElement) -> Curve:
    """``t -> I + t X`` on ``|t| < 1 / (2 sigma(X))``."""
    one = x.algebra.identity()
    return Curve(lambda t: one + t * x, x, _half_inverse_radius(x), "linear")


def curve_resolvent(x: AlgebraElement) -> Curve:
    """``t -> (I - t X)^-1``."""
    one = x.algebra.identity()
    return Curve(lambda t: inverse(one - t * x), x, _half_inverse_radius(x), "resolvent")


def curve_quadratic(x: AlgebraElement, y: AlgebraElement) -> Curve:
    """``t -> I + t X + t^2 Y``; the ``t^2`` term does not move the derivative."""
    one = x.algebra.identity()
    a, b = spectral_radius(x), spectral_radius(y)
    # |t| a + t^2 b <= 1/2 keeps the spectrum above 1/2
    if b == 0:
        eps = _half_inverse_radius(x)
    else:
        eps = (-a + math.sqrt(a * a + 2.0 * b)) / (2.0 * b)
    return Curve(lambda t: one + t * x + (t * t) * y, x, eps, "quadratic")


def random_exponential_curves(
    algebra: JordanAlgebra, n: int, rng_seed=None, commuting: bool = False
) -> list[Curve]:
    """``n`` exponential curves with unit-norm random generators.

    With ``commuting=True`` all generators share one spectral frame.
    """
    rng = np.random.default_rng(rng_seed)
    if commuting:
        frame = random_element(algebra, rng).spectral
        gens = [frame.combine(rng.standard_normal(len(frame))) for _ in range(n)]
    else:
        gens = [random_element(algebra, rng) for _ in range(n)]
    gens = [g / norm(g) if norm(g) > 0 else g for g in gens]
    return [curve_exp(g) for g in gens]


@dataclass
class ConvergenceReport:
    t_grid: list[float]
    errors: list[float]
    fitted_order: float
    limit_target: AlgebraElement
    floors: list[float] = field(default_factory=list)
    min_order: float = DEFAULT_MIN_ORDER
    monotone: bool = True
    label: str = ""

    @property
    def exact(self) -> bool:
        """Every error sits at the round-off floor."""
        return self.fitted_order == math.inf

    @property
    def passed(self) -> bool:
        return self.monotone and not math.isnan(self.fitted_order) and self.fitted_order >= self.min_order

    @property
    def terminal_error(self) -> float:
        return self.errors[-1]

    def order_label(self) -> str:
        if self.exact:
            return "exact"
        if math.isnan(self.fitted_order):
            return "undetermined"
        return f"{self.fitted_order:.4f}"


def error_floors(steps: Sequence[float], scale: float) -> list[float]:
    """Noise level below which an error is treated as round-off."""
    return [max(FLOOR_RTOL * (1.0 + scale), ROUNDOFF_FACTOR * EPS * (1.0 + scale) / abs(h)) for h in steps]


def fit_order(steps: Sequence[float], errors: Sequence[float], floors: Sequence[float]) -> float:
    """Least-squares slope of ``log e`` against ``log t`` over points above the floor.

    ``inf`` when no point clears the floor, ``nan`` when only one or two do.
    """
    pts = [(math.log(h), math.log(e)) for h, e, f in zip(steps, errors, floors) if e > f]
    if not pts:
        return math.inf
    if len(pts) < 3:
        return math.nan
    x, y = np.array(pts).T
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def _monotone(errors, floors) -> bool:
    return all(e1 <= e0 or e1 <= f1 for e0, e1, f1 in zip(errors, errors[1:], floors[1:]))


def _check_grid(t_grid) -> list[float]:
    grid = [float(t) for t in t_grid]
    if not grid or any(t <= 0 for t in grid) or any(b >= a for a, b in zip(grid, grid[1:])):
        raise JordanDomainError("t_grid must be positive and strictly decreasing")
    return grid


def _report(grid, errors, log_target: AlgebraElement, min_order: float, label: str) -> ConvergenceReport:
    target = log_target.exp()
    floors = error_floors(grid, norm(target))
    return ConvergenceReport(
        t_grid=grid,
        errors=errors,
        fitted_order=fit_order(grid, errors, floors),
        limit_target=target,
        floors=floors,
        min_order=min_order,
        monotone=_monotone(errors, floors),
        label=label,
    )


def power_limit(curve: Curve, t_grid=DEFAULT_T_GRID, min_order: float = DEFAULT_MIN_ORDER) -> ConvergenceReport:
    """Convergence of ``gamma(t)^(1/t)`` to ``exp(gamma'(0))``."""
    grid = _check_grid(t_grid)
    errors = []
    for t in grid:
        g = curve(t)
        if not is_positive_invertible(g):
            raise NotPositiveError(f"{curve.name}({t}) is not positive invertible")
        errors.append(norm(g.log() / t - curve.derivative_at_zero))
    return _report(grid, errors, curve.derivative_at_zero, min_order, curve.name)


def weighted_sum(weights, elements: Sequence[AlgebraElement]) -> AlgebraElement:
    """``sum_k w_k X_k`` on normalized weights; no positivity required."""
    w = simplex_weights(weights)
    if len(w) != len(elements):
        raise JordanDomainError(f"{len(w)} weights for {len(elements)} elements")
    out = w[0] * elements[0]
    for wk, x in zip(w[1:], elements[1:]):
        out = out + wk * x
    return out


def weighted_derivative(weights, curves: Sequence[Curve]) -> AlgebraElement:
    return weighted_sum(weights, [c.derivative_at_zero for c in curves])


def lt_mean_error(mean: NMean, weights, curves: Sequence[Curve], t: float) -> float:
    """``||(1/t) log G(w; gamma_1(t), ...) - sum_k w_k gamma_k'(0)||``."""
    if len(curves) != len(weights):
        raise JordanDomainError(f"{len(weights)} weights for {len(curves)} curves")
    g = mean(weights, [c(t) for c in curves])
    if not is_positive_invertible(g):
        raise NotPositiveError(f"mean is not positive invertible at t={t}")
    return norm(g.log() / t - weighted_derivative(weights, curves))


def verify_lie_trotter(
    mean: NMean,
    weights,
    curves: Sequence[Curve],
    t_grid=DEFAULT_T_GRID,
    min_order: float = DEFAULT_MIN_ORDER,
    label: str = "",
) -> ConvergenceReport:
    """Errors along ``t_grid`` with fitted convergence order.

    Passes iff errors decrease (or sit at the floor) and the fitted order is at
    least ``min_order``.
    """
    grid = _check_grid(t_grid)
    errors = [lt_mean_error(mean, weights, curves, t) for t in grid]
    return _report(grid, errors, weighted_derivative(weights, curves), min_order, label or getattr(mean, "__name__", ""))


@dataclass
class DerivativeReport:
    estimate: AlgebraElement
    target: AlgebraElement
    h_grid: list[float]
    errors: list[float]
    observed_order: float
    floors: list[float] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.observed_order == math.inf

    @property
    def final_error(self) -> float:
        return self.errors[-1]

    @property
    def extrapolated_error(self) -> float:
        return norm(self.estimate - self.target)


def mean_derivative_at_identity(
    mean: NMean, weights, directions: Sequence[AlgebraElement], h_grid=(1e-2, 1e-3, 1e-4)
) -> DerivativeReport:
    """Central differences of ``h -> G(w; I + h A_1, ..., I + h A_n)`` at ``h = 0``.

    Each step must satisfy ``|h| < 1 / rho`` with ``rho`` the largest spectral
    radius among the directions.  The returned estimate is the Richardson
    extrapolation of the two smallest steps.
    """
    grid = [float(h) for h in h_grid]
    if not grid or any(h <= 0 for h in grid) or any(b >= a for a, b in zip(grid, grid[1:])):
        raise JordanDomainError("h_grid must be positive and strictly decreasing")
    rho = max(spectral_radius(a) for a in directions)
    if rho > 0 and grid[0] >= 1.0 / rho:
        raise JordanDomainError(f"h={grid[0]} is outside (-1/rho, 1/rho) with rho={rho:.6g}")
    one = directions[0].algebra.identity()
    target = weighted_sum(weights, directions)
    diffs = []
    for h in grid:
        plus = mean(weights, [one + h * a for a in directions])
        minus = mean(weights, [one - h * a for a in directions])
        diffs.append((plus - minus) / (2.0 * h))
    errors = [norm(d - target) for d in diffs]
    floors = error_floors(grid, norm(target))
    if len(diffs) >= 2:
        r2 = (grid[-2] / grid[-1]) ** 2
        estimate = (r2 * diffs[-1] - diffs[-2]) / (r2 - 1.0)
    else:
        estimate = diffs[-1]
    return DerivativeReport(estimate, target, grid, errors, fit_order(grid, errors, floors), floors)


@dataclass
class SandwichReport:
    samples: int
    lower_max_violation: float
    upper_max_violation: float
    lower_equality: bool
    upper_equality: bool

    def holds(self, slack: float) -> bool:
        return self.lower_max_violation <= slack and self.upper_max_violation <= slack


def sandwich_check(mean: NMean, weights, samples: Sequence[Sequence[AlgebraElement]], tol: float = 1e-9) -> SandwichReport:
    """Check ``harmonic <= G <= arithmetic`` on each sampled tuple.

    Violations are relative: ``max(0, -min spec(rhs - lhs)) / max(1, ||G||)``.
    The equality flags record whether ``G`` matched a bound on every sample.
    """
    lo_v = hi_v = 0.0
    lo_eq = hi_eq = True
    for tup in samples:
        g = mean(weights, tup)
        h = harmonic_mean_n(weights, tup)
        a = arithmetic_mean_n(weights, tup)
        scale = max(1.0, norm(g))
        lo_v = max(lo_v, loewner_violation(h, g) / scale)
        hi_v = max(hi_v, loewner_violation(g, a) / scale)
        lo_eq = lo_eq and relative_distance(g, h) <= tol
        hi_eq = hi_eq and relative_distance(g, a) <= tol
    return SandwichReport(len(samples), lo_v, hi_v, lo_eq, hi_eq)
