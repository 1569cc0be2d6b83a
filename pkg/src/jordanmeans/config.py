"""Experiment configuration and report records for the command-line harness."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Optional

from .algebras import parse_algebra
from .core import JordanDomainError
from .lie_trotter import DEFAULT_MIN_ORDER
from .means_n import get_mean
from .suites import SUITES

COMMANDS = ("compute", "verify", "converge")
FORMATS = ("json", "csv")
CURVE_FAMILIES = ("random", "commuting")
MEAN_ALIASES = {"spectral-geometric": "spectral", "geometric-mean": "geometric"}
SEED_MAX = 2**63 - 1


class ConfigError(JordanDomainError):
    """Invalid experiment configuration; the CLI maps this to exit code 2."""


def canonical_mean(name: str) -> str:
    return MEAN_ALIASES.get(name, name)


def t_grid_from_range(t_max: float, t_min: float) -> list[float]:
    """Halving grid ``t_max, t_max/2, ...`` down to ``t_min`` inclusive."""
    grid, t = [], t_max
    while t >= t_min * (1 - 1e-12):
        grid.append(t)
        t /= 2.0
    return grid


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce one CLI run.

    ``algebra=None`` lets each suite sweep its default dimensions; ``samples``
    and ``tol`` left as ``None`` use each suite's own defaults.
    """

    command: str = "verify"
    suite: Optional[str] = None
    algebra: Optional[str] = None
    seed: int = 0
    mean: str = "geometric"
    weights: Optional[list[float]] = None
    lam: Optional[float] = None
    n: Optional[int] = None
    t_min: float = 2.0**-12
    t_max: float = 2.0**-3
    samples: Optional[int] = None
    tol: Optional[float] = None
    min_order: float = DEFAULT_MIN_ORDER
    curves: str = "random"
    count: int = 1
    format: str = "json"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; choose from {COMMANDS}")
        if self.command == "verify":
            if self.suite is None:
                raise ConfigError("verify needs a suite")
            if self.suite not in SUITES:
                raise ConfigError(f"unknown suite {self.suite!r}; choose from {sorted(SUITES)}")
        if self.algebra is not None:
            try:
                self.algebra = parse_algebra(self.algebra).tag
            except (JordanDomainError, ValueError) as exc:
                raise ConfigError(str(exc)) from exc
        self.mean = canonical_mean(self.mean)
        try:
            get_mean(self.mean)
        except JordanDomainError as exc:
            raise ConfigError(str(exc)) from exc
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or not 0 <= self.seed <= SEED_MAX:
            raise ConfigError(f"seed must be an unsigned integer below 2^63, got {self.seed!r}")
        if self.weights is not None:
            self.weights = [float(w) for w in self.weights]
            if any(not (w > 0 and math.isfinite(w)) for w in self.weights):
                raise ConfigError(f"weights must be positive and finite, got {self.weights}")
        if self.lam is not None and not math.isfinite(self.lam):
            raise ConfigError("lambda must be finite")
        if self.n is not None and self.n < 1:
            raise ConfigError("n must be positive")
        if self.n is not None and self.weights is not None and len(self.weights) != self.n:
            raise ConfigError(f"{len(self.weights)} weights for n={self.n}")
        if not 0 < self.t_min <= self.t_max:
            raise ConfigError(f"need 0 < t-min <= t-max, got {self.t_min}, {self.t_max}")
        if self.samples is not None and self.samples < 1:
            raise ConfigError("samples must be positive")
        if self.tol is not None and not (self.tol > 0 and math.isfinite(self.tol)):
            raise ConfigError("tol must be positive and finite")
        if self.curves not in CURVE_FAMILIES:
            raise ConfigError(f"unknown curve family {self.curves!r}; choose from {CURVE_FAMILIES}")
        if self.count < 1:
            raise ConfigError("count must be positive")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}; choose from {FORMATS}")

    @property
    def converge_n(self) -> int:
        if self.n is not None:
            return self.n
        return len(self.weights) if self.weights is not None else 2

    @property
    def converge_weights(self) -> Optional[list[float]]:
        if self.weights is None and self.lam is not None and self.converge_n == 2:
            return [1.0 - self.lam, self.lam]
        return self.weights

    @property
    def t_grid(self) -> list[float]:
        return t_grid_from_range(self.t_max, self.t_min)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("configuration must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys {unknown}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"configuration is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


def _finite(x: float) -> float:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x} in report")
    return float(x)


@dataclass
class ReportRecord:
    """One experiment outcome.

    ``fitted_orders`` holds numbers or the labels ``"exact"``/``"undetermined"``
    so every numeric field stays finite.
    """

    experiment_id: str
    passed: bool
    max_violation: float
    tolerance: float
    fitted_orders: list = field(default_factory=list)
    residuals: dict[str, list[float]] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)
    wall_clock: Optional[float] = None

    def __post_init__(self):
        self.max_violation = _finite(self.max_violation)
        self.tolerance = _finite(self.tolerance)
        self.residuals = {k: [_finite(v) for v in vs] for k, vs in self.residuals.items()}
        if self.passed and self.max_violation > self.tolerance:
            raise ValueError(f"{self.experiment_id}: pass with violation {self.max_violation} > {self.tolerance}")

    def to_dict(self) -> dict:
        out = asdict(self)
        if self.wall_clock is None:
            del out["wall_clock"]
        return out
