"""Weighted means on JB-algebras and their Lie-Trotter limits."""

from .algebras import (
    SpinFactorAlgebra,
    SymmetricMatrixAlgebra,
    make_symmetry,
    parse_algebra,
    random_element,
    random_positive,
)
from .core import (
    DEFAULT_TOL,
    AlgebraElement,
    JordanAlgebra,
    JordanDomainError,
    NotPositiveError,
    SpectralConvergenceError,
    Tolerances,
    exp,
    inverse,
    jordan_product,
    log,
    loewner_leq,
    norm,
    power,
    quadratic_rep,
    sqrt,
)
from .lie_trotter import (
    Curve,
    ConvergenceReport,
    curve_exp,
    curve_linear,
    curve_resolvent,
    lt_mean_error,
    mean_derivative_at_identity,
    power_limit,
    sandwich_check,
    verify_lie_trotter,
)
from .means2 import (
    arithmetic_mean2,
    geometric_mean2,
    harmonic_mean2,
    riccati_residual,
    semi_metric,
    spectral_geometric_mean2,
)
from .means_n import (
    arithmetic_mean_n,
    get_mean,
    hansen_inductive,
    harmonic_mean_n,
    sagae_tanabe,
    young_check,
)

__version__ = "0.1.0"
