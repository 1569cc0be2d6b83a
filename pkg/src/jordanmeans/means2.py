"""Weighted two-variable means and the identities they satisfy.

All means take ``(A, B, lam)`` and return the point of weight ``lam`` from
``A`` toward ``B``: ``lam = 0`` gives ``A`` and ``lam = 1`` gives ``B``.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .core import (
    DEFAULT_TOL,
    AlgebraElement,
    inverse,
    is_positive_invertible,
    loewner_violation,
    norm,
    power,
    quadratic_rep,
    relative_distance,
    require_positive,
)


def _half_powers(a: AlgebraElement):
    dec = a.spectral
    root = dec.eigenvalues**0.5
    return dec.combine(root), dec.combine(1.0 / root)


def arithmetic_mean2(a: AlgebraElement, b: AlgebraElement, lam: float) -> AlgebraElement:
    require_positive(a, "A")
    require_positive(b, "B")
    return (1.0 - lam) * a + lam * b


def harmonic_mean2(a: AlgebraElement, b: AlgebraElement, lam: float) -> AlgebraElement:
    require_positive(a, "A")
    require_positive(b, "B")
    return inverse((1.0 - lam) * inverse(a) + lam * inverse(b))


def geometric_mean2(a: AlgebraElement, b: AlgebraElement, lam: float = 0.5) -> AlgebraElement:
    """``A #_lam B = {A^1/2 {A^-1/2 B A^-1/2}^lam A^1/2}``."""
    require_positive(a, "A")
    require_positive(b, "B")
    a_half, a_mhalf = _half_powers(a)
    middle = quadratic_rep(a_mhalf, b)
    return quadratic_rep(a_half, power(middle, lam))


def spectral_geometric_mean2(a: AlgebraElement, b: AlgebraElement, lam: float = 0.5) -> AlgebraElement:
    """``A natural_lam B = {(A^-1 # B)^lam A (A^-1 # B)^lam}``."""
    require_positive(a, "A")
    require_positive(b, "B")
    g = geometric_mean2(inverse(a), b)
    return quadratic_rep(power(g, lam), a)


TWO_MEANS = {
    "arithmetic": arithmetic_mean2,
    "harmonic": harmonic_mean2,
    "geometric": geometric_mean2,
    "spectral": spectral_geometric_mean2,
}


def riccati_residual(a: AlgebraElement, b: AlgebraElement, x: AlgebraElement) -> float:
    """``||{X A^-1 X} - B|| / ||B||``."""
    return relative_distance(quadratic_rep(x, inverse(a)), b)


def semi_metric(a: AlgebraElement, b: AlgebraElement) -> float:
    """``d(A, B) = 2 ||log(A^-1 # B)||``."""
    require_positive(a, "A")
    require_positive(b, "B")
    return 2.0 * norm(geometric_mean2(inverse(a), b).log())


def spectral_defining_residual(a: AlgebraElement, b: AlgebraElement, lam: float) -> float:
    """Relative residual of ``A^-1 # X = (A^-1 # B)^lam`` at ``X = A natural_lam B``."""
    x = spectral_geometric_mean2(a, b, lam)
    a_inv = inverse(a)
    target = power(geometric_mean2(a_inv, b), lam)
    return relative_distance(geometric_mean2(a_inv, x), target)


class BoundsCheck(NamedTuple):
    lower: bool
    upper: Optional[bool]  # None: upper bound not applicable for this pair
    lower_violation: float
    upper_violation: float
    scale: float = 1.0  # max(1, ||A natural_lam B||); slack is measured in these units


def spectral_bounds(a: AlgebraElement, b: AlgebraElement, lam: float):
    """Lower and upper Loewner bounds for ``A natural_lam B``.

    The upper bound is ``None`` when ``2^(1+lam) (A^-1 + B)^-lam - A`` is not
    positive invertible.
    """
    lower = 2.0 ** (1.0 + lam) * power(a + inverse(b), -lam) - inverse(a)
    bracket = 2.0 ** (1.0 + lam) * power(inverse(a) + b, -lam) - a
    upper = inverse(bracket) if is_positive_invertible(bracket) else None
    return lower, upper


def spectral_bounds_check(
    a: AlgebraElement, b: AlgebraElement, lam: float, slack: float | None = None
) -> BoundsCheck:
    """Check both bounds with eigenvalue slack ``slack * max(1, ||A natural_lam B||)``."""
    if slack is None:
        slack = DEFAULT_TOL.tol_prop
    x = spectral_geometric_mean2(a, b, lam)
    scale = max(1.0, norm(x))
    allowed = slack * scale
    lower, upper = spectral_bounds(a, b, lam)
    lo_v = loewner_violation(lower, x)
    if upper is None:
        return BoundsCheck(lo_v <= allowed, None, lo_v, 0.0, scale)
    up_v = loewner_violation(x, upper)
    return BoundsCheck(lo_v <= allowed, up_v <= allowed, lo_v, up_v, scale)


def characterization_residual(a: AlgebraElement, b: AlgebraElement, lam: float) -> float:
    """``||(A # X^-1) #_lam (B # X^-1) - I||`` at ``X = A natural_lam B``.

    Instantiates the characterization with the weighted geometric mean, which
    fixes the diagonal and satisfies ``U #_lam V = I  =>  V = U^(1 - 1/lam)``.
    """
    if not 0.0 < lam < 1.0:
        raise ValueError("lam must lie in (0, 1)")
    x_inv = inverse(spectral_geometric_mean2(a, b, lam))
    u = geometric_mean2(a, x_inv)
    v = geometric_mean2(b, x_inv)
    return norm(geometric_mean2(u, v, lam) - a.algebra.identity())


def congruence(c: AlgebraElement, a: AlgebraElement) -> AlgebraElement:
    """``{C A C}``."""
    return quadratic_rep(c, a)


def max_idempotence_error(a: AlgebraElement, lam: float) -> dict[str, float]:
    """Relative distance ``M(A, A, lam)`` to ``A`` for every registered 2-mean."""
    return {name: relative_distance(mean(a, a, lam), a) for name, mean in TWO_MEANS.items()}
