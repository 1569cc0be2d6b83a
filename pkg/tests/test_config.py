import json
import math

import pytest
from hypothesis import given, strategies as st

from jordanmeans.config import (
    ConfigError,
    ExperimentConfig,
    ReportRecord,
    canonical_mean,
    t_grid_from_range,
)
from jordanmeans.lie_trotter import DEFAULT_T_GRID
from jordanmeans.suites import SUITES

configs = st.builds(
    ExperimentConfig,
    command=st.sampled_from(["verify", "converge", "compute"]),
    suite=st.sampled_from(sorted(SUITES)),
    algebra=st.one_of(st.none(), st.sampled_from(["sym2", "sym5", "spin1", "spin3"])),
    seed=st.integers(0, 2**63 - 1),
    mean=st.sampled_from(["arithmetic", "geometric", "spectral", "sagae-harmonic", "hansen-geometric"]),
    weights=st.one_of(st.none(), st.lists(st.floats(0.01, 10), min_size=1, max_size=5)),
    lam=st.one_of(st.none(), st.floats(0, 1)),
    samples=st.one_of(st.none(), st.integers(1, 1000)),
    tol=st.one_of(st.none(), st.floats(1e-15, 1e-3)),
    min_order=st.floats(0.1, 3),
    curves=st.sampled_from(["random", "commuting"]),
    count=st.integers(1, 50),
    format=st.sampled_from(["json", "csv"]),
)


@given(configs)
def test_roundtrip(cfg):
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg
    assert ExperimentConfig.from_json(cfg.to_json()).to_json() == cfg.to_json()


def test_normalization():
    cfg = ExperimentConfig(command="converge", algebra="symmetric:4", mean="spectral-geometric")
    assert cfg.algebra == "sym4" and cfg.mean == "spectral"
    assert canonical_mean("geometric-mean") == "geometric"


@pytest.mark.parametrize(
    "bad",
    [
        {"command": "plot"},
        {"suite": None},
        {"suite": "triangle"},
        {"suite": "riccati", "algebra": "hermitian:3"},
        {"suite": "riccati", "mean": "karcher"},
        {"suite": "riccati", "seed": -1},
        {"suite": "riccati", "seed": 2**63},
        {"suite": "riccati", "seed": 1.5},
        {"suite": "riccati", "weights": [1.0, 0.0]},
        {"suite": "riccati", "weights": [1.0, 2.0], "n": 3},
        {"suite": "riccati", "t_min": 0.5, "t_max": 0.25},
        {"suite": "riccati", "samples": 0},
        {"suite": "riccati", "tol": math.nan},
        {"suite": "riccati", "curves": "spiral"},
        {"suite": "riccati", "format": "xml"},
        {"suite": "riccati", "colour": "red"},
    ],
)
def test_invalid_configs_rejected(bad):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(bad)


def test_from_json_rejects_non_objects():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json("[1, 2]")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json("{")


def test_converge_defaults():
    cfg = ExperimentConfig(command="converge")
    assert cfg.converge_n == 2 and cfg.converge_weights is None
    assert cfg.t_grid == list(DEFAULT_T_GRID)
    assert ExperimentConfig(command="converge", lam=0.3).converge_weights == [0.7, 0.3]
    assert ExperimentConfig(command="converge", weights=[1, 2, 3]).converge_n == 3


def test_t_grid_from_range():
    assert t_grid_from_range(0.5, 0.125) == [0.5, 0.25, 0.125]
    assert t_grid_from_range(0.5, 0.5) == [0.5]


def test_report_record_invariants():
    r = ReportRecord("x", True, 1e-12, 1e-9, residuals={"r": [0.0, 1e-12]})
    assert "wall_clock" not in r.to_dict()
    json.dumps(r.to_dict(), allow_nan=False)
    with pytest.raises(ValueError):
        ReportRecord("x", True, 1e-6, 1e-9)
    with pytest.raises(ValueError):
        ReportRecord("x", False, math.inf, 1e-9)
    with pytest.raises(ValueError):
        ReportRecord("x", False, 0.0, 1e-9, residuals={"r": [math.nan]})
    assert ReportRecord("x", False, 1e-6, 1e-9, wall_clock=0.5).to_dict()["wall_clock"] == 0.5
