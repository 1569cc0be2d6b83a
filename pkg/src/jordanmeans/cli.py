"""Command-line harness: ``jordanmeans compute | verify | converge``.

Exit codes: 0 success, 1 a check or convergence test failed, 2 bad arguments
or input, 3 non-positive input element, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from typing import Optional, Sequence

from .algebras import SpinFactorAlgebra, SymmetricMatrixAlgebra, parse_algebra
from .config import ConfigError, ExperimentConfig, ReportRecord, canonical_mean
from .core import JordanAlgebra, JordanDomainError, NotPositiveError, SpectralConvergenceError
from .means2 import TWO_MEANS
from .means_n import get_mean
from .suites import SUITES, lie_trotter_experiment, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NOT_POSITIVE, EXIT_NUMERIC = 0, 1, 2, 3, 4
SEED_ENV = "JORDANMEANS_SEED"
# fixed leading columns, then context
CONVERGE_COLUMNS = ("experiment_id", "t", "error", "order", "pass", "mean", "n", "seed")
VERIFY_COLUMNS = ("experiment_id", "check", "max_violation", "tolerance", "samples", "pass")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # None means "not given", so --config values survive
    common.add_argument("--config", help="JSON experiment config; explicit flags override it")
    common.add_argument("--algebra", help="symmetric:n or spin:d (or just the family with --dim)")
    common.add_argument("--dim", type=int, help="size for --algebra symmetric|spin")
    common.add_argument("--mean", help="arithmetic, harmonic, geometric, spectral, sagae-<base>, hansen-<base>")
    common.add_argument("--weights", help="comma-separated positive weights")
    common.add_argument("--lambda", dest="lam", type=float, help="two-variable weight")
    common.add_argument("--n", type=int, help="number of variables")
    common.add_argument("--seed", type=int, help=f"unsigned seed (overridden by ${SEED_ENV})")
    common.add_argument("--samples", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    common.add_argument("--print-config", action="store_true", help="print the resolved config and exit")

    parser = argparse.ArgumentParser(prog="jordanmeans", description="Weighted means on JB-algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("compute", parents=[common], help="evaluate a mean of input elements")
    p.add_argument("--in", dest="infile", help="JSON list of elements (default: stdin)")
    p = sub.add_parser("verify", parents=[common], help="run a property suite")
    p.add_argument("suite", help=", ".join(sorted(SUITES)))
    p = sub.add_parser("converge", parents=[common], help="Lie-Trotter convergence experiments")
    p.add_argument("--t-min", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--min-order", type=float)
    p.add_argument("--curves", choices=("random", "commuting"))
    p.add_argument("--count", type=int, help="number of seeded experiments")
    return parser


def _algebra_name(args) -> Optional[str]:
    if args.algebra is None:
        return None if args.dim is None else f"symmetric:{args.dim}"
    if args.dim is not None and ":" not in args.algebra and not args.algebra[-1].isdigit():
        return f"{args.algebra}:{args.dim}"
    return args.algebra


def resolve_config(args, environ=os.environ) -> ExperimentConfig:
    base: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                base = ExperimentConfig.from_json(fh.read()).to_dict()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
    base["command"] = args.command
    overrides = {
        "suite": getattr(args, "suite", None),
        "algebra": _algebra_name(args),
        "mean": args.mean,
        "lam": args.lam,
        "n": args.n,
        "seed": args.seed,
        "samples": args.samples,
        "tol": args.tol,
        "format": args.format,
        "t_min": getattr(args, "t_min", None),
        "t_max": getattr(args, "t_max", None),
        "min_order": getattr(args, "min_order", None),
        "curves": getattr(args, "curves", None),
        "count": getattr(args, "count", None),
    }
    if args.weights is not None:
        try:
            overrides["weights"] = [float(w) for w in args.weights.split(",")]
        except ValueError as exc:
            raise ConfigError(f"cannot parse --weights {args.weights!r}") from exc
    env_seed = environ.get(SEED_ENV)
    if env_seed is not None:
        try:
            overrides["seed"] = int(env_seed)
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV} must be an unsigned integer, got {env_seed!r}") from exc
    base.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig.from_dict(base)


def _infer_algebra(obj) -> JordanAlgebra:
    if isinstance(obj, dict) and isinstance(obj.get("u"), list):
        return SpinFactorAlgebra(len(obj["u"]))
    if isinstance(obj, list) and obj and isinstance(obj[0], list):
        return SymmetricMatrixAlgebra(len(obj))
    raise ConfigError(f"cannot infer the algebra of {obj!r}; pass --algebra")


def read_elements(text: str, algebra: Optional[str]):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"input is not valid JSON: {exc}") from exc
    if isinstance(data, dict) and "elements" in data:
        data = data["elements"]
    if not isinstance(data, list) or not data:
        raise ConfigError("input must be a nonempty JSON list of elements")
    alg = parse_algebra(algebra) if algebra else _infer_algebra(data[0])
    return alg, [alg.from_json(obj) for obj in data]


def cmd_compute(cfg: ExperimentConfig, text: str) -> str:
    alg, elements = read_elements(text, cfg.algebra)
    name = canonical_mean(cfg.mean)
    if len(elements) == 2 and name in TWO_MEANS and cfg.weights is None:
        out = TWO_MEANS[name](elements[0], elements[1], 0.5 if cfg.lam is None else cfg.lam)
    else:
        weights = cfg.weights if cfg.weights is not None else [1.0] * len(elements)
        out = get_mean(name)(weights, elements)
    return json.dumps(alg.to_json(out)) + "\n"


def _verify_records(cfg: ExperimentConfig, timing: bool) -> list[ReportRecord]:
    start = time.perf_counter()
    opts = {
        "seed": cfg.seed,
        "samples": cfg.samples,
        "tol": cfg.tol,
        "algebra": parse_algebra(cfg.algebra) if cfg.algebra else None,
        "mean": cfg.mean,
        "n": cfg.n,
    }
    res = run_suite(cfg.suite, **opts)
    rec = ReportRecord(
        experiment_id=f"{cfg.suite}-s{cfg.seed}",
        passed=res.passed,
        max_violation=res.max_violation,
        tolerance=res.tolerance,
        residuals={c.name: c.values for c in res.checks},
        details={
            "samples": res.samples,
            "checks": [
                {"name": c.name, "max_violation": c.max_violation, "tolerance": c.tolerance, "pass": c.passed}
                for c in res.checks
            ],
            **res.notes,
        },
        wall_clock=time.perf_counter() - start if timing else None,
    )
    return [rec]


def _converge_records(cfg: ExperimentConfig, timing: bool) -> list[ReportRecord]:
    algebra = parse_algebra(cfg.algebra) if cfg.algebra else None
    n = cfg.converge_n
    records = []
    for k in range(cfg.count):
        start = time.perf_counter()
        try:
            exp = lie_trotter_experiment(
                cfg.mean,
                n=n,
                seed=cfg.seed,
                k=k,
                algebra=algebra,
                commuting=cfg.curves == "commuting",
                weights=cfg.converge_weights,
                t_grid=cfg.t_grid,
                min_order=cfg.min_order,
            )
        except (JordanDomainError, ArithmeticError) as exc:
            raise CliError(f"experiment {cfg.mean}-n{n}-s{cfg.seed}-{k} failed: {exc}", EXIT_NUMERIC) from exc
        r = exp.report
        if r.exact:
            order, shortfall = "exact", 0.0
        elif math.isnan(r.fitted_order):
            order, shortfall = "undetermined", cfg.min_order
        else:
            order, shortfall = r.fitted_order, max(0.0, cfg.min_order - r.fitted_order)
        records.append(
            ReportRecord(
                experiment_id=exp.experiment_id,
                passed=r.passed,
                max_violation=shortfall,
                tolerance=0.0,
                fitted_orders=[order],
                residuals={"error": r.errors},
                details={
                    "mean": exp.mean,
                    "n": exp.n,
                    "seed": exp.seed,
                    "weights": exp.weights,
                    "curves": cfg.curves,
                    "t_grid": r.t_grid,
                    "floors": r.floors,
                    "monotone": r.monotone,
                    "min_order": r.min_order,
                },
                wall_clock=time.perf_counter() - start if timing else None,
            )
        )
    return records


def render(cfg: ExperimentConfig, records: list[ReportRecord]) -> str:
    if cfg.format == "json":
        doc = {"command": cfg.command, "config": cfg.to_dict(), "records": [r.to_dict() for r in records]}
        return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if cfg.command == "converge":
        w.writerow(CONVERGE_COLUMNS)
        for r in records:
            d = r.details
            for t, e in zip(d["t_grid"], r.residuals["error"]):
                w.writerow([r.experiment_id, repr(t), repr(e), r.fitted_orders[0], int(r.passed), d["mean"], d["n"], d["seed"]])
    else:
        w.writerow(VERIFY_COLUMNS)
        for r in records:
            for c in r.details["checks"]:
                w.writerow([r.experiment_id, c["name"], repr(c["max_violation"]), repr(c["tolerance"]), r.details["samples"], int(c["pass"])])
    return buf.getvalue()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None, environ=os.environ) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args, environ)
        if args.print_config:
            _emit(json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n", args.out)
            return EXIT_OK
        if cfg.command == "compute":
            if args.infile:
                with open(args.infile) as fh:
                    text = fh.read()
            else:
                text = sys.stdin.read()
            _emit(cmd_compute(cfg, text), args.out)
            return EXIT_OK
        records = _verify_records(cfg, args.timing) if cfg.command == "verify" else _converge_records(cfg, args.timing)
        _emit(render(cfg, records), args.out)
        return EXIT_OK if all(r.passed for r in records) else EXIT_FAIL
    except CliError as exc:
        print(f"jordanmeans: {exc}", file=sys.stderr)
        return exc.code
    except NotPositiveError as exc:
        print(f"jordanmeans: {exc}", file=sys.stderr)
        return EXIT_NOT_POSITIVE
    except (ConfigError, JordanDomainError, OSError) as exc:
        print(f"jordanmeans: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SpectralConvergenceError, ArithmeticError) as exc:
        print(f"jordanmeans: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
