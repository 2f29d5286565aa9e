"""Monte-Carlo coverage of the confidence bands on synthetic data."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .gje import Backend
from .linreg import Dataset, LinearSmoother, confidence_band, fit_linear
from .localpoly import KernelSpec, local_band

LINE_INTERCEPT = 1.0
LINE_SLOPE = 2.0


def true_line(x):
    return LINE_INTERCEPT + LINE_SLOPE * np.asarray(x, dtype=float)


def true_sine(x):
    return np.sin(2 * np.pi * np.asarray(x, dtype=float))


@dataclass(frozen=True)
class CoverageResult:
    model: str
    replicates: int
    n: int
    alpha: float
    sigma: float
    grid: np.ndarray
    covered: np.ndarray  # replicates x grid bool
    c: float

    @property
    def coverage(self) -> np.ndarray:
        return self.covered.mean(axis=0)


def _linear_replicate(r, *, seed, n, alpha, sigma, grid, backend):
    rng = np.random.default_rng(seed + r)
    x = np.linspace(0.0, 1.0, n)
    y = true_line(x) + sigma * rng.standard_normal(n)
    data = Dataset.with_intercept(x, y)
    fit = fit_linear(data, backend, seed + r)
    G = np.column_stack([np.ones_like(grid), grid])
    band = confidence_band(data, fit, G, alpha, smoother=LinearSmoother(data, backend, seed + r))
    return band.contains(true_line(grid)), band.c


def _sine_replicate(r, *, seed, n, alpha, sigma, grid, backend, degree=1, bandwidth=0.08):
    rng = np.random.default_rng(seed + r)
    x = np.linspace(0.0, 1.0, n)
    y = true_sine(x) + sigma * rng.standard_normal(n)
    band = local_band(x, y, grid, degree, KernelSpec("gaussian", bandwidth), alpha, backend, seed + r)
    return band.contains(true_sine(grid)), band.c


def coverage_simulation(
    replicates: int = 2000,
    n: int = 50,
    alpha: float = 0.05,
    seed: int = 0,
    sigma: float = 1.0,
    grid=None,
    model: str = "linear",
    backend=Backend.CLASSICAL,
    workers: int = 1,
) -> CoverageResult:
    """Replicate fits and record whether the band covers the true curve.

    Replicate ``r`` draws its noise from ``default_rng(seed + r)``, so the
    result does not depend on ``workers``.  ``model`` is ``"linear"``
    (global straight-line fit to ``1 + 2x``) or ``"sine"`` (local linear
    fit to ``sin(2 pi x)``).
    """
    grid = np.linspace(0.0, 1.0, 5) if grid is None else np.asarray(grid, dtype=float)
    if model == "linear":
        fn = _linear_replicate
    elif model == "sine":
        fn = _sine_replicate
    else:
        raise ValueError(f"unknown model {model!r}")
    job = partial(fn, seed=seed, n=n, alpha=alpha, sigma=sigma, grid=grid, backend=backend)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(job, range(replicates), chunksize=max(1, replicates // (4 * workers))))
    else:
        out = [job(r) for r in range(replicates)]
    covered = np.array([o[0] for o in out], dtype=bool).reshape(replicates, len(grid))
    c = float(out[0][1]) if out else float("nan")
    return CoverageResult(model, replicates, n, alpha, sigma, grid, covered, c)
