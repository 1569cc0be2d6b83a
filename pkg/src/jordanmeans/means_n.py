"""Weighted n-variable means: closed forms, Sagae-Tanabe and Hansen constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence, Union

import numpy as np

from .algebras import make_symmetry, random_positive
from .core import (
    AlgebraElement,
    JordanAlgebra,
    JordanDomainError,
    inverse,
    loewner_violation,
    norm,
    quadratic_rep,
    relative_distance,
    require_positive,
)
from .means2 import TWO_MEANS

WEIGHT_SUM_TOL = 1e-12

TwoMean = Callable[[AlgebraElement, AlgebraElement, float], AlgebraElement]
NMean = Callable[[Sequence[float], Sequence[AlgebraElement]], AlgebraElement]


def simplex_weights(weights) -> np.ndarray:
    """Renormalize strictly positive weights onto the open simplex."""
    w = np.asarray(weights, dtype=float).ravel()
    if w.size == 0:
        raise JordanDomainError("weights must be nonempty")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise JordanDomainError(f"weights must be strictly positive and finite, got {w.tolist()}")
    w = w / w.sum()
    if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise JordanDomainError("weights could not be normalized")
    return w


def _tuple(weights, elements, min_len: int = 1):
    w = simplex_weights(weights)
    elements = list(elements)
    if len(elements) != len(w):
        raise JordanDomainError(f"{len(w)} weights for {len(elements)} elements")
    if len(elements) < min_len:
        raise JordanDomainError(f"need at least {min_len} elements, got {len(elements)}")
    alg = elements[0].algebra
    for k, a in enumerate(elements):
        if a.algebra != alg:
            raise JordanDomainError(f"element {k} lives in {a.algebra.tag}, expected {alg.tag}")
        require_positive(a, f"A_{k + 1}")
    return w, elements


def _base(base2mean: Union[str, TwoMean]) -> TwoMean:
    if callable(base2mean):
        return base2mean
    try:
        return TWO_MEANS[base2mean]
    except KeyError:
        raise JordanDomainError(f"unknown 2-mean {base2mean!r}; choose from {sorted(TWO_MEANS)}") from None


def arithmetic_mean_n(weights, elements) -> AlgebraElement:
    w, elements = _tuple(weights, elements)
    out = w[0] * elements[0]
    for wk, a in zip(w[1:], elements[1:]):
        out = out + wk * a
    return out


def harmonic_mean_n(weights, elements) -> AlgebraElement:
    w, elements = _tuple(weights, elements)
    return inverse(arithmetic_mean_n(w, [inverse(a) for a in elements]))


def sagae_tanabe(weights, elements, base2mean: Union[str, TwoMean] = "geometric") -> AlgebraElement:
    """Left fold ``S_k = M(S_{k-1}, A_k; w_k / (w_1 + ... + w_k))``.

    Unrolls ``S_n = M(1 - w_n, w_n; S_{n-1}(w_hat; A_1..A_{n-1}), A_n)``.
    """
    w, elements = _tuple(weights, elements, min_len=2)
    mean = _base(base2mean)
    acc = elements[0]
    running = w[0]
    for wk, a in zip(w[1:], elements[1:]):
        running += wk
        acc = mean(acc, a, wk / running)
    return acc


def hansen_inductive(weights, elements, base2mean: Union[str, TwoMean] = "geometric") -> AlgebraElement:
    """``H_n(w; A) = H_{n-1}(w_hat; M(A_1, A_n; w_n), ..., M(A_{n-1}, A_n; w_n))``."""
    w, elements = _tuple(weights, elements, min_len=2)
    mean = _base(base2mean)
    while len(elements) > 2:
        last, wn = elements[-1], w[-1]
        elements = [mean(a, last, wn) for a in elements[:-1]]
        w = w[:-1] / (1.0 - wn)
    return mean(elements[0], elements[1], w[1])


def get_mean(name: str) -> NMean:
    """Resolve an n-mean identifier.

    ``arithmetic``/``harmonic`` are the closed forms; ``geometric`` and
    ``spectral`` fold by Sagae-Tanabe; ``sagae-<base>`` and ``hansen-<base>``
    select a construction explicitly.
    """
    if name == "arithmetic":
        return arithmetic_mean_n
    if name == "harmonic":
        return harmonic_mean_n
    if name in ("geometric", "spectral"):
        name = f"sagae-{name}"
    kind, _, base = name.partition("-")
    if kind in ("sagae", "hansen") and base in TWO_MEANS:
        construction = sagae_tanabe if kind == "sagae" else hansen_inductive

        def mean(weights, elements, _c=construction, _b=base):
            return _c(weights, elements, _b)

        mean.__name__ = name.replace("-", "_")
        return mean
    raise JordanDomainError(f"unknown mean {name!r}; choose from {MEAN_NAMES}")


MEAN_NAMES = (
    "arithmetic",
    "harmonic",
    "geometric",
    "spectral",
    *(f"{kind}-{base}" for kind in ("sagae", "hansen") for base in TWO_MEANS),
)


class YoungCheck(NamedTuple):
    lower: bool
    upper: bool
    lower_violation: float
    upper_violation: float
    scale: float = 1.0  # max(1, ||G||)


def young_check(weights, elements, slack: float = 1e-9) -> YoungCheck:
    """Harmonic <= Hansen geometric <= arithmetic, eigenvalue slack ``slack * max(1, ||G||)``."""
    g = hansen_inductive(weights, elements, "geometric")
    scale = max(1.0, norm(g))
    lo = loewner_violation(harmonic_mean_n(weights, elements), g)
    hi = loewner_violation(g, arithmetic_mean_n(weights, elements))
    return YoungCheck(lo <= slack * scale, hi <= slack * scale, lo, hi, scale)


HANSEN_PROPERTIES = ("homogeneity", "monotonicity", "concavity", "congruence", "congruence-general", "self-dual")


@dataclass
class PropertyReport:
    property_id: str
    samples: int
    max_violation: float
    violations: list[float] = field(default_factory=list)

    def passed(self, tol: float) -> bool:
        return self.max_violation <= tol


def _random_psd_bump(a: AlgebraElement, rng) -> AlgebraElement:
    # positive semidefinite, singular, norm <= ||a||
    x = random_positive(a.algebra, 1e4, rng)
    lams = x.eigenvalues
    shifted = x.spectral.combine(lams - lams[0])
    return shifted * (rng.uniform(0.0, 1.0) * norm(a) / max(norm(shifted), 1e-300))


def hansen_property_check(
    property_id: str,
    algebra: JordanAlgebra,
    samples: int = 50,
    n: int = 3,
    seed=0,
    condition_cap: float = 100.0,
) -> PropertyReport:
    """Sample the Hansen geometric mean and measure the worst violation of a property.

    Equalities report relative distance; Loewner inequalities report
    ``max(0, -min spec(rhs - lhs)) / max(1, ||rhs||)``.
    """
    if property_id not in HANSEN_PROPERTIES:
        raise JordanDomainError(f"unknown property {property_id!r}; choose from {HANSEN_PROPERTIES}")
    rng = np.random.default_rng(seed)
    G = get_mean("hansen-geometric")
    out = []
    for _ in range(samples):
        w = simplex_weights(rng.uniform(0.05, 1.0, size=n))
        tup = [random_positive(algebra, condition_cap, rng) for _ in range(n)]
        base = G(w, tup)
        if property_id == "homogeneity":
            alphas = np.exp(rng.uniform(-2.0, 2.0, size=n))
            lhs = G(w, [al * a for al, a in zip(alphas, tup)])
            v = relative_distance(lhs, float(np.prod(alphas**w)) * base)
        elif property_id == "monotonicity":
            bigger = [a + _random_psd_bump(a, rng) for a in tup]
            hi = G(w, bigger)
            v = loewner_violation(base, hi) / max(1.0, norm(hi))
        elif property_id == "concavity":
            slot = int(rng.integers(n))
            y = random_positive(algebra, condition_cap, rng)
            y_tup, mid = list(tup), list(tup)
            y_tup[slot] = y
            mid[slot] = 0.5 * (tup[slot] + y)
            g_mid = G(w, mid)
            avg = 0.5 * (base + G(w, y_tup))
            v = loewner_violation(avg, g_mid) / max(1.0, norm(g_mid))
        elif property_id == "congruence":
            c = make_symmetry(algebra, rng).element
            lhs = G(w, [quadratic_rep(c, a) for a in tup])
            v = relative_distance(lhs, quadratic_rep(c, base))
        elif property_id == "congruence-general":
            c = random_positive(algebra, condition_cap, rng)
            lhs = G(w, [quadratic_rep(c, a) for a in tup])
            v = relative_distance(lhs, quadratic_rep(c, base))
        else:  # self-dual
            lhs = inverse(G(w, [inverse(a) for a in tup]))
            v = relative_distance(lhs, base)
        out.append(float(v))
    return PropertyReport(property_id, samples, max(out) if out else 0.0, out)
