"""Seeded verification suites shared by the CLI and the acceptance tests.

Each suite run draws all randomness from one ``numpy`` generator seeded by the
caller, so identical arguments give identical results.  Loewner violations are
reported relative to ``max(1, ||mean||)``; equalities as relative distances
unless a check says otherwise.
"""

from __future__ import annotations

import inspect
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .algebras import SymmetricMatrixAlgebra, make_symmetry, random_positive
from .core import JordanAlgebra, JordanDomainError, inverse, quadratic_rep, relative_distance
from .lie_trotter import (
    DEFAULT_MIN_ORDER,
    DEFAULT_T_GRID,
    ConvergenceReport,
    random_exponential_curves,
    sandwich_check,
    verify_lie_trotter,
)
from .means2 import (
    characterization_residual,
    geometric_mean2,
    riccati_residual,
    semi_metric,
    spectral_bounds_check,
    spectral_defining_residual,
    spectral_geometric_mean2,
)
from .means_n import (
    HANSEN_PROPERTIES,
    arithmetic_mean_n,
    get_mean,
    hansen_inductive,
    hansen_property_check,
    simplex_weights,
    young_check,
)

LAMBDA_GRID = tuple(round(0.1 * k, 1) for k in range(1, 10))
BOUNDS_CONDITION_CAP = 3.0
BOUNDS_MIN_FRACTION = 0.99


@dataclass
class Check:
    """One named sub-check: worst violation against its own tolerance."""

    name: str
    max_violation: float
    tolerance: float
    values: list[float] = field(default_factory=list)
    extra_ok: bool = True  # side condition beyond the violation bound

    @property
    def passed(self) -> bool:
        return self.extra_ok and self.max_violation <= self.tolerance


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check]
    samples: int
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_violation(self) -> float:
        return max((c.max_violation for c in self.checks), default=0.0)

    @property
    def tolerance(self) -> float:
        return max((c.tolerance for c in self.checks), default=0.0)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _check(name: str, values: Sequence[float], tol: float, extra_ok: bool = True) -> Check:
    values = [float(v) for v in values]
    return Check(name, max(values, default=0.0), tol, values, extra_ok)


def _algebras(algebra: Optional[JordanAlgebra], dims: Sequence[int]) -> list[JordanAlgebra]:
    return [algebra] if algebra is not None else [SymmetricMatrixAlgebra(n) for n in dims]


def _pairs(rng, algebras, per_algebra: int, cap: float):
    for alg in algebras:
        for _ in range(per_algebra):
            yield random_positive(alg, cap, rng), random_positive(alg, cap, rng)


def riccati_suite(seed=0, samples=200, algebra=None, tol=1e-9, dims=range(2, 9), cap=100.0) -> SuiteResult:
    """Residual of ``{X A^-1 X} = B`` at ``X = A # B``, ``samples`` pairs per algebra."""
    rng = np.random.default_rng(seed)
    algs = _algebras(algebra, dims)
    res = [riccati_residual(a, b, geometric_mean2(a, b)) for a, b in _pairs(rng, algs, samples, cap)]
    return SuiteResult("riccati", [_check("riccati", res, tol)], len(res), {"algebras": [a.tag for a in algs]})


def spectral_props_suite(seed=0, samples=200, algebra=None, tol=1e-9, dims=range(2, 9), cap=100.0) -> SuiteResult:
    """Defining equation and structural identities of the spectral geometric mean.

    Sample ``i`` uses weight ``LAMBDA_GRID[i % 9]``.
    """
    rng = np.random.default_rng(seed)
    algs = _algebras(algebra, dims)
    names = ("defining", "self-dual", "weight-reversal", "joint-homogeneity", "symmetry-congruence")
    out = {k: [] for k in names}
    for i, (a, b) in enumerate(_pairs(rng, algs, samples, cap)):
        lam = LAMBDA_GRID[i % len(LAMBDA_GRID)]
        x = spectral_geometric_mean2(a, b, lam)
        out["defining"].append(spectral_defining_residual(a, b, lam))
        out["self-dual"].append(relative_distance(inverse(x), spectral_geometric_mean2(inverse(a), inverse(b), lam)))
        out["weight-reversal"].append(relative_distance(x, spectral_geometric_mean2(b, a, 1.0 - lam)))
        al, be = np.exp(rng.uniform(-2.0, 2.0, size=2))
        scaled = spectral_geometric_mean2(al * a, be * b, lam)
        out["joint-homogeneity"].append(relative_distance(scaled, al ** (1.0 - lam) * be**lam * x))
        s = make_symmetry(a.algebra, rng).element
        rhs = spectral_geometric_mean2(quadratic_rep(s, a), quadratic_rep(s, b), lam)
        out["symmetry-congruence"].append(relative_distance(quadratic_rep(s, x), rhs))
    checks = [_check(k, v, tol) for k, v in out.items()]
    return SuiteResult("spectral-props", checks, len(out["defining"]), {"lambda_grid": list(LAMBDA_GRID)})


def spectral_bounds_suite(
    seed=0, samples=1000, algebra=None, tol=1e-9, dims=range(2, 9), cap=BOUNDS_CONDITION_CAP
) -> SuiteResult:
    """Lower and upper Loewner bounds of the spectral geometric mean.

    Whether the upper bound applies depends on the conditioning of the pair,
    so ``cap`` bounds the eigenvalue ratio of each sampled element.  Passes
    when no applicable bound is violated and at least 99% of samples pass both
    sides; the remainder may only be not-applicable upper bounds.
    """
    rng = np.random.default_rng(seed)
    algs = _algebras(algebra, dims)
    lo, hi = [], []
    both = 0
    for i in range(samples):
        alg = algs[i % len(algs)]
        a, b = random_positive(alg, cap, rng), random_positive(alg, cap, rng)
        r = spectral_bounds_check(a, b, LAMBDA_GRID[i % len(LAMBDA_GRID)], slack=tol)
        lo.append(r.lower_violation / r.scale)
        if r.upper is not None:
            hi.append(r.upper_violation / r.scale)
        both += bool(r.lower and r.upper)
    fraction = both / samples if samples else 1.0
    notes = {
        "condition_cap": cap,
        "both_fraction": fraction,
        "not_applicable": samples - len(hi),
        "algebras": [a.tag for a in algs],
    }
    checks = [_check("lower", lo, tol), _check("upper", hi, tol, fraction >= BOUNDS_MIN_FRACTION)]
    return SuiteResult("spectral-bounds", checks, samples, notes)


def characterization_suite(
    seed=0, samples=200, algebra=None, tol=1e-8, dims=range(2, 7), cap=100.0, lambdas=(0.25, 0.5, 0.75)
) -> SuiteResult:
    """Absolute residual ``||(A # X^-1) #_lam (B # X^-1) - I||`` at ``X = A natural_lam B``."""
    rng = np.random.default_rng(seed)
    algs = _algebras(algebra, dims)
    res = []
    for i in range(samples):
        alg = algs[i % len(algs)]
        a, b = random_positive(alg, cap, rng), random_positive(alg, cap, rng)
        res.append(characterization_residual(a, b, lambdas[i % len(lambdas)]))
    return SuiteResult("characterization", [_check("characterization", res, tol)], samples, {"lambdas": list(lambdas)})


def semimetric_suite(seed=0, samples=200, algebra=None, tol=1e-9, dims=range(2, 7), cap=100.0) -> SuiteResult:
    """Identities of ``d(A, B) = 2 ||log(A^-1 # B)||``, all as absolute differences.

    ``d(A, A)`` and symmetry use ``tol / 10``.
    """
    rng = np.random.default_rng(seed)
    algs = _algebras(algebra, dims)
    out = {k: [] for k in ("self", "symmetry", "scaling", "inversion", "symmetry-congruence")}
    for i in range(samples):
        alg = algs[i % len(algs)]
        a, b = random_positive(alg, cap, rng), random_positive(alg, cap, rng)
        d = semi_metric(a, b)
        out["self"].append(semi_metric(a, a))
        out["symmetry"].append(abs(d - semi_metric(b, a)))
        alpha = float(np.exp(rng.uniform(-2.0, 2.0)))
        out["scaling"].append(abs(semi_metric(alpha * a, alpha * b) - d))
        out["inversion"].append(abs(semi_metric(inverse(a), inverse(b)) - d))
        s = make_symmetry(alg, rng).element
        out["symmetry-congruence"].append(abs(semi_metric(quadratic_rep(s, a), quadratic_rep(s, b)) - d))
    one = algs[0].identity()
    scalar = abs(semi_metric(2.0 * one, 8.0 * one) - 2.0 * math.log(2.0))
    checks = [_check(k, v, tol / 10 if k in ("self", "symmetry") else tol) for k, v in out.items()]
    checks.append(_check("d(2I,8I)", [scalar], 1e-12))
    return SuiteResult("semimetric", checks, samples)


def young_suite(seed=0, samples=200, algebra=None, tol=1e-9, dims=range(2, 7), n=None, cap=100.0) -> SuiteResult:
    """Harmonic <= Hansen geometric <= arithmetic on random tuples.

    ``n=None`` cycles tuple lengths 3, 4, 5.  Also checks that the Hansen
    construction over the arithmetic 2-mean is the weighted sum to 1e-12.
    """
    rng = np.random.default_rng(seed)
    algs = _algebras(algebra, dims)
    lengths = (3, 4, 5) if n is None else (int(n),)
    lo, hi, arith = [], [], []
    for i in range(samples):
        alg = algs[i % len(algs)]
        k = lengths[i % len(lengths)]
        w = simplex_weights(rng.uniform(0.05, 1.0, size=k))
        tup = [random_positive(alg, cap, rng) for _ in range(k)]
        r = young_check(w, tup, slack=tol)
        lo.append(r.lower_violation / r.scale)
        hi.append(r.upper_violation / r.scale)
        arith.append(relative_distance(hansen_inductive(w, tup, "arithmetic"), arithmetic_mean_n(w, tup)))
    checks = [_check("lower", lo, tol), _check("upper", hi, tol), _check("hansen-arithmetic", arith, 1e-12)]
    return SuiteResult("young", checks, samples, {"lengths": list(lengths)})


def hansen_props_suite(seed=0, samples=50, algebra=None, tol=1e-9, dims=range(2, 7), n=3, cap=100.0) -> SuiteResult:
    """Every Hansen geometric mean property, ``samples`` draws per algebra."""
    rng = np.random.default_rng(seed)
    algs = _algebras(algebra, dims)
    checks = []
    for prop in HANSEN_PROPERTIES:
        values = []
        for alg in algs:
            child = int(rng.integers(2**63))
            values += hansen_property_check(prop, alg, samples, n, child, cap).violations
        checks.append(_check(prop, values, tol))
    return SuiteResult("hansen-props", checks, samples * len(algs), {"n": n})


def sandwich_suite(
    seed=0, samples=100, algebra=None, tol=1e-9, dims=range(2, 7), n=3, mean="hansen-geometric", cap=100.0
) -> SuiteResult:
    """Harmonic <= G <= arithmetic for the chosen n-mean, with equality flags."""
    rng = np.random.default_rng(seed)
    algs = _algebras(algebra, dims)
    G = get_mean(mean)
    lo, hi = [], []
    lo_eq = hi_eq = True
    for i in range(samples):
        alg = algs[i % len(algs)]
        w = simplex_weights(rng.uniform(0.05, 1.0, size=n))
        tup = [random_positive(alg, cap, rng) for _ in range(n)]
        r = sandwich_check(G, w, [tup], tol=tol)
        lo.append(r.lower_max_violation)
        hi.append(r.upper_max_violation)
        lo_eq &= r.lower_equality
        hi_eq &= r.upper_equality
    notes = {"mean": mean, "n": n, "lower_equality": lo_eq, "upper_equality": hi_eq}
    return SuiteResult("sandwich", [_check("lower", lo, tol), _check("upper", hi, tol)], samples, notes)


SUITES = {
    "riccati": riccati_suite,
    "semimetric": semimetric_suite,
    "spectral-props": spectral_props_suite,
    "spectral-bounds": spectral_bounds_suite,
    "characterization": characterization_suite,
    "young": young_suite,
    "hansen-props": hansen_props_suite,
    "sandwich": sandwich_suite,
}


def run_suite(name: str, **options) -> SuiteResult:
    """Run a suite by name, ignoring options it does not take and ``None`` values."""
    try:
        fn = SUITES[name]
    except KeyError:
        raise JordanDomainError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    accepted = inspect.signature(fn).parameters
    return fn(**{k: v for k, v in options.items() if k in accepted and v is not None})


@dataclass
class ConvergenceExperiment:
    experiment_id: str
    mean: str
    n: int
    seed: int
    weights: list[float]
    report: ConvergenceReport


def lie_trotter_experiment(
    mean: str,
    n: int = 2,
    seed: int = 0,
    k: int = 0,
    algebra: Optional[JordanAlgebra] = None,
    commuting: bool = False,
    weights=None,
    t_grid=DEFAULT_T_GRID,
    min_order: float = DEFAULT_MIN_ORDER,
) -> ConvergenceExperiment:
    """Run ``k`` of a seeded family: ``verify_lie_trotter`` on random exponential curves.

    Draws from a generator seeded with ``(seed, k)`` only.  Without ``weights``
    samples weights in ``[0.1, 1]`` and renormalizes.
    """
    rng = np.random.default_rng([seed, k])
    w = simplex_weights(weights if weights is not None else rng.uniform(0.1, 1.0, size=n))
    if len(w) != n:
        raise JordanDomainError(f"{len(w)} weights for n={n}")
    curves = random_exponential_curves(algebra or SymmetricMatrixAlgebra(3), n, rng, commuting)
    eid = f"{mean}-n{n}-s{seed}-{k}"
    report = verify_lie_trotter(get_mean(mean), w, curves, t_grid, min_order, label=eid)
    return ConvergenceExperiment(eid, mean, n, seed, w.tolist(), report)


def lie_trotter_experiments(mean: str, n: int = 2, count: int = 1, seed: int = 0, **options) -> list[ConvergenceExperiment]:
    return [lie_trotter_experiment(mean, n, seed, k, **options) for k in range(count)]
