"""
Command-line front end.

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 numeric or degrees-of-freedom error.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .dataio import ingest_csv, read_matrix_csv, write_band_csv, write_report
from .errors import (
    ConfigError,
    DataError,
    DegreesOfFreedomError,
    EmptyNeighborhoodError,
    RejectedInput,
)
from .gje import Backend, BackendStats, rref
from .grover import Oracle, grover_search, optimal_iterations, run_iterations, success_probability
from .linreg import LinearSmoother, confidence_band, fit_linear, training_accept
from .localpoly import KernelSpec, default_bandwidth, effective_dof, local_band, local_fit
from .simulation import coverage_simulation

SEED_ENV = "QNN_NPR_SEED"
REPORT_SCHEMA = "qnnpr.report/1"

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3


@dataclass
class RunConfig:
    subcommand: str
    input_path: Optional[str] = None
    y_column: Optional[str] = None
    degree: int = 1
    kernel: str = "gaussian"
    bandwidth: Optional[float] = None
    alpha: float = 0.05
    backend: str = "classical"
    seed: int = 0
    grid: Optional[str] = None
    output_path: Optional[str] = None
    band_csv: Optional[str] = None
    plot_path: Optional[str] = None
    holdout: Optional[str] = None
    intercept: bool = True
    header: bool = True
    qubits: int = 3
    marked: str = ""
    max_rounds: int = 64
    replicates: int = 2000
    n: int = 50
    sigma: float = 1.0
    model: str = "linear"
    workers: int = 1
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"--alpha must lie in (0, 1), got {self.alpha}")
        try:
            self.backend = Backend.parse(self.backend).value
        except RejectedInput as exc:
            raise ConfigError(str(exc)) from None
        if self.degree < 0:
            raise ConfigError(f"--degree must be nonnegative, got {self.degree}")
        if self.bandwidth is not None and not self.bandwidth > 0:
            raise ConfigError(f"--bandwidth must be positive, got {self.bandwidth}")
        if self.subcommand in ("fit-linear", "fit-local", "rref") and not self.input_path:
            raise ConfigError(f"{self.subcommand} requires --input")
        if self.subcommand == "grover-demo" and not 1 <= self.qubits <= 12:
            raise ConfigError(f"--qubits must be between 1 and 12, got {self.qubits}")
        if self.subcommand == "coverage-sim":
            if self.replicates < 1 or self.n < 3:
                raise ConfigError("coverage-sim needs --replicates >= 1 and --n >= 3")
            if self.model not in ("linear", "sine"):
                raise ConfigError(f"--model must be 'linear' or 'sine', got {self.model!r}")


def parse_grid(spec: str, lo: float, hi: float) -> np.ndarray:
    """``MIN:MAX:COUNT`` range or a comma-separated list of values."""
    if spec is None:
        return np.linspace(lo, hi, 50)
    try:
        if ":" in spec:
            a, b, k = spec.split(":")
            k = int(k)
            if k < 2:
                raise ConfigError(f"grid count must be at least 2, got {k}")
            return np.linspace(float(a), float(b), k)
        vals = [float(v) for v in spec.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse grid {spec!r}; use MIN:MAX:COUNT or a comma list") from None
    if not vals:
        raise ConfigError("grid is empty")
    return np.array(vals)


def _stats_dict(stats: Optional[BackendStats]) -> dict:
    return asdict(stats) if stats is not None else {}


_FIT_FIELDS = ("input_path", "y_column", "alpha", "backend", "seed", "grid", "holdout")
_ECHO = {
    "fit-linear": _FIT_FIELDS + ("intercept",),
    "fit-local": _FIT_FIELDS + ("degree", "kernel", "bandwidth"),
    "rref": ("input_path", "backend", "seed", "header"),
    "grover-demo": ("qubits", "marked", "seed", "max_rounds"),
    "coverage-sim": ("model", "replicates", "n", "alpha", "sigma", "grid", "backend", "seed"),
}


def _config_echo(cfg: RunConfig) -> dict:
    d = asdict(cfg)
    return {"subcommand": cfg.subcommand, **{k: d[k] for k in _ECHO[cfg.subcommand]}}


def _band_rows(grid, band) -> list:
    grid = np.asarray(grid, dtype=float)
    rows = []
    for i in range(len(band)):
        x = grid[i].tolist() if grid.ndim > 1 else float(grid[i])
        rows.append({"x": x, "lower": band.lower[i], "center": band.center[i], "upper": band.upper[i]})
    return rows


def _emit(cfg: RunConfig, report: dict, grid_cols, band, plot_xy=None) -> None:
    write_report(report, cfg.output_path)
    band_csv = cfg.band_csv
    if band_csv is None and cfg.output_path and cfg.output_path != "-":
        band_csv = str(Path(cfg.output_path).with_suffix(".band.csv"))
    if band_csv:
        g = np.asarray(band.grid, dtype=float)
        write_band_csv(band_csv, grid_cols, g, band.lower, band.center, band.upper)
    if cfg.plot_path:
        if plot_xy is None:
            print("plot skipped: only single-predictor fits can be plotted", file=sys.stderr)
        else:
            from .plot import plot_band_svg

            g = np.asarray(band.grid, dtype=float)
            g = g[:, -1] if g.ndim > 1 else g
            plot_band_svg(cfg.plot_path, plot_xy[0], plot_xy[1], g, band.lower, band.center,
                          band.upper, title=cfg.subcommand)


def _fit_linear(cfg: RunConfig) -> int:
    table = ingest_csv(cfg.input_path, cfg.y_column, [cfg.holdout] if cfg.holdout else ())
    data = table.dataset(intercept=cfg.intercept)
    fit = fit_linear(data, cfg.backend, cfg.seed)
    smoother = LinearSmoother(data, cfg.backend, cfg.seed)

    if table.p == 1:
        xs = table.predictors[:, 0]
        gx = parse_grid(cfg.grid, float(xs.min()), float(xs.max()))
        grid = gx[:, None]
    else:
        if cfg.grid is not None:
            raise ConfigError("--grid is only supported with a single predictor column")
        grid = table.predictors
    design_grid = np.column_stack([np.ones(len(grid)), grid]) if cfg.intercept else grid
    band = confidence_band(data, fit, design_grid, cfg.alpha, smoother=smoother)
    band_grid = np.asarray(grid)
    band = type(band)(band_grid if table.p > 1 else band_grid[:, 0], band.lower, band.center,
                      band.upper, band.alpha, band.c, band.sigma_hat, band.ell_norm)

    accepted = None
    if cfg.holdout:
        hb = confidence_band(data, fit, data.design, cfg.alpha, smoother=smoother)
        obs = table.extra[cfg.holdout]
        accepted = sum(training_accept(float(o), hb, i) for i, o in enumerate(obs))

    names = (["(intercept)"] if cfg.intercept else []) + list(table.predictor_names)
    report = {
        "schema": REPORT_SCHEMA,
        "command": cfg.subcommand,
        "config": _config_echo(cfg),
        "n": data.n,
        "p": data.p,
        "response": table.response_name,
        "coefficient_names": names,
        "coefficients": fit.beta_hat,
        "sigma2_hat": fit.sigma2_hat,
        "effective_dof": fit.effective_dof,
        "rank": fit.rank,
        "used_pseudoinverse": fit.used_pseudoinverse,
        "alpha": cfg.alpha,
        "c": band.c,
        "band": _band_rows(band.grid, band),
        "backend_stats": _stats_dict(fit.backend_stats),
        "accepted_count": accepted,
        "holdout_count": None if accepted is None else len(table.extra[cfg.holdout]),
    }
    plot_xy = (table.predictors[:, 0], table.response) if table.p == 1 else None
    _emit(cfg, report, list(table.predictor_names), band, plot_xy)
    return EXIT_OK


def _fit_local(cfg: RunConfig) -> int:
    table = ingest_csv(cfg.input_path, cfg.y_column, [cfg.holdout] if cfg.holdout else ())
    if table.p != 1:
        raise DataError(f"fit-local needs exactly one predictor column, found {table.p}")
    xs, ys = table.predictors[:, 0], table.response
    h = cfg.bandwidth if cfg.bandwidth is not None else default_bandwidth(xs)
    spec = KernelSpec(cfg.kernel, h)
    grid = parse_grid(cfg.grid, float(xs.min()), float(xs.max()))
    band = local_band(xs, ys, grid, cfg.degree, spec, cfg.alpha, cfg.backend, cfg.seed)

    stats = BackendStats()
    coefs = []
    for x in grid:
        lf = local_fit(xs, ys, float(x), cfg.degree, spec, cfg.backend, cfg.seed)
        stats.add(lf.backend_stats)
        coefs.append(lf.a_hat)

    accepted = None
    if cfg.holdout:
        hb = local_band(xs, ys, xs, cfg.degree, spec, cfg.alpha, cfg.backend, cfg.seed)
        obs = table.extra[cfg.holdout]
        accepted = sum(training_accept(float(o), hb, i) for i, o in enumerate(obs))

    report = {
        "schema": REPORT_SCHEMA,
        "command": cfg.subcommand,
        "config": _config_echo(cfg),
        "n": len(xs),
        "p": cfg.degree + 1,
        "response": table.response_name,
        "kernel": {"family": spec.family.value, "bandwidth": spec.bandwidth},
        "coefficients": coefs,
        "sigma2_hat": band.sigma_hat**2,
        "effective_dof": effective_dof(xs, ys, cfg.degree, spec, cfg.backend, cfg.seed),
        "alpha": cfg.alpha,
        "c": band.c,
        "band": _band_rows(grid, band),
        "backend_stats": _stats_dict(stats),
        "accepted_count": accepted,
        "holdout_count": None if accepted is None else len(table.extra[cfg.holdout]),
    }
    _emit(cfg, report, list(table.predictor_names), band, (xs, ys))
    return EXIT_OK


def _rref(cfg: RunConfig) -> int:
    rows = read_matrix_csv(cfg.input_path, header=cfg.header)
    res = rref(rows, cfg.backend, cfg.seed)
    m = res.rref
    if cfg.output_path:
        report = {
            "schema": REPORT_SCHEMA,
            "command": cfg.subcommand,
            "config": _config_echo(cfg),
            "rref": [[str(v) for v in m.row(i)] for i in range(m.rows)],
            "pivot_cols": list(res.pivot_cols),
            "rank": res.rank,
            "backend_stats": _stats_dict(res.backend_stats),
        }
        write_report(report, cfg.output_path)
    if cfg.output_path != "-":
        for i in range(m.rows):
            print(",".join(str(v) for v in m.row(i)))
        print("pivots: " + ",".join(str(c) for c in res.pivot_cols))
    return EXIT_OK


def _grover_demo(cfg: RunConfig) -> int:
    N = 2**cfg.qubits
    try:
        marked = sorted({int(v) for v in cfg.marked.split(",") if v.strip()})
    except ValueError:
        raise ConfigError(f"--marked must be a comma list of integers, got {cfg.marked!r}") from None
    oracle = Oracle.from_marked(marked, N)
    M = len(marked)
    curve = []
    if M:
        k_opt = optimal_iterations(N, M)
        for k in range(0, 2 * k_opt + 2):
            state = run_iterations(oracle, cfg.qubits, k)
            curve.append({
                "k": k,
                "simulated": float(state.probabilities()[oracle.mask].sum()),
                "closed_form": success_probability(N, M, k),
            })
    res = grover_search(oracle, cfg.qubits, cfg.seed, cfg.max_rounds)
    report = {
        "schema": REPORT_SCHEMA,
        "command": cfg.subcommand,
        "config": _config_echo(cfg),
        "N": N,
        "marked": marked,
        "optimal_iterations": optimal_iterations(N, M) if M else None,
        "success_curve": curve,
        "result": asdict(res),
    }
    write_report(report, cfg.output_path)
    return EXIT_OK


def _coverage_sim(cfg: RunConfig) -> int:
    grid = parse_grid(cfg.grid, 0.0, 1.0) if cfg.grid else None
    res = coverage_simulation(
        replicates=cfg.replicates, n=cfg.n, alpha=cfg.alpha, seed=cfg.seed, sigma=cfg.sigma,
        grid=grid, model=cfg.model, backend=cfg.backend, workers=cfg.workers,
    )
    report = {
        "schema": REPORT_SCHEMA,
        "command": cfg.subcommand,
        "config": _config_echo(cfg),
        "model": res.model,
        "c": res.c,
        "grid": res.grid,
        "coverage": res.coverage,
        "min_coverage": float(res.coverage.min()),
        "nominal": 1.0 - cfg.alpha,
    }
    write_report(report, cfg.output_path)
    return EXIT_OK


_DISPATCH = {
    "fit-linear": _fit_linear,
    "fit-local": _fit_local,
    "rref": _rref,
    "grover-demo": _grover_demo,
    "coverage-sim": _coverage_sim,
}


def run(cfg: RunConfig) -> int:
    """Execute one subcommand; returns the process exit code."""
    try:
        cfg.validate()
        return _DISPATCH[cfg.subcommand](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataError, RejectedInput) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DegreesOfFreedomError, EmptyNeighborhoodError, ArithmeticError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qnn-npr", description=__doc__.strip().splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(sp, seed=True):
        sp.add_argument("--backend", default="classical", help="classical or quantum-sim")
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", dest="output_path", help="JSON report path ('-' for stdout)")

    for name in ("fit-linear", "fit-local"):
        sp = sub.add_parser(name)
        sp.add_argument("--input", dest="input_path", required=True)
        sp.add_argument("--y", dest="y_column", help="response column name or index (default: last)")
        sp.add_argument("--alpha", type=float, default=0.05)
        sp.add_argument("--grid", help="MIN:MAX:COUNT or comma list")
        sp.add_argument("--plot", dest="plot_path")
        sp.add_argument("--band-csv", dest="band_csv")
        sp.add_argument("--holdout", help="column of observations checked against the band")
        common(sp)
        if name == "fit-linear":
            sp.add_argument("--no-intercept", dest="intercept", action="store_false")
        else:
            sp.add_argument("--degree", type=int, default=1)
            sp.add_argument("--kernel", default="gaussian",
                            choices=["gaussian", "epanechnikov", "boxcar"])
            sp.add_argument("--bandwidth", type=float)

    sp = sub.add_parser("rref")
    sp.add_argument("--input", dest="input_path", required=True)
    sp.add_argument("--no-header", dest="header", action="store_false")
    common(sp)

    sp = sub.add_parser("grover-demo")
    sp.add_argument("--qubits", type=int, required=True)
    sp.add_argument("--marked", default="")
    sp.add_argument("--max-rounds", type=int, default=64)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", dest="output_path")

    sp = sub.add_parser("coverage-sim")
    sp.add_argument("--replicates", type=int, default=2000)
    sp.add_argument("--n", type=int, default=50)
    sp.add_argument("--alpha", type=float, default=0.05)
    sp.add_argument("--sigma", type=float, default=1.0)
    sp.add_argument("--model", default="linear")
    sp.add_argument("--grid", help="MIN:MAX:COUNT or comma list (default 0:1:5)")
    sp.add_argument("--workers", type=int, default=1)
    common(sp)
    return p


def config_from_args(argv=None, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if v is not None})
    if environ.get(SEED_ENV):
        try:
            cfg.seed = int(environ[SEED_ENV])
        except ValueError:
            raise ConfigError(f"{SEED_ENV} must be an integer, got {environ[SEED_ENV]!r}") from None
    return cfg


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except ConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
