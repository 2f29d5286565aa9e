"""
Local polynomial kernel regression in one predictor.

At a query point ``x`` the weighted normal equations

    (X_x^T W_x X_x) a = X_x^T W_x Y,   X_x[i, j] = (x_i - x)**j / j!

are solved exactly; the fitted value is the intercept ``a[0]``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import gje
from .errors import DegreesOfFreedomError, EmptyNeighborhoodError, RejectedInput
from .gje import Backend, Matrix
from .linreg import ConfidenceBand, band_constant


class Kernel(str, enum.Enum):
    GAUSSIAN = "gaussian"
    EPANECHNIKOV = "epanechnikov"
    BOXCAR = "boxcar"


@dataclass(frozen=True)
class KernelSpec:
    family: Kernel = Kernel.GAUSSIAN
    bandwidth: float = 1.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "family", Kernel(self.family))
        except ValueError:
            raise RejectedInput(
                f"unknown kernel {self.family!r}; expected one of "
                + ", ".join(k.value for k in Kernel)
            ) from None
        if not (self.bandwidth > 0 and math.isfinite(self.bandwidth)):
            raise RejectedInput(f"bandwidth must be positive, got {self.bandwidth}")


def default_bandwidth(xs) -> float:
    """Normal-reference rule ``1.06 * sd(x) * n**(-1/5)``."""
    xs = np.asarray(xs, dtype=float)
    sd = float(np.std(xs, ddof=1)) if xs.size > 1 else 0.0
    if sd == 0.0:
        return 1.0
    return 1.06 * sd * xs.size ** (-0.2)


def kernel_weight(spec: KernelSpec, distance):
    """Kernel value at ``distance / bandwidth``; accepts scalars or arrays."""
    u = np.asarray(distance, dtype=float) / spec.bandwidth
    if spec.family is Kernel.GAUSSIAN:
        w = np.exp(-0.5 * u**2)
    elif spec.family is Kernel.EPANECHNIKOV:
        w = np.maximum(0.0, 0.75 * (1.0 - u**2))
    else:
        w = (np.abs(u) <= 1.0).astype(float)
    return float(w) if w.ndim == 0 else w


@dataclass(frozen=True)
class LocalDesign:
    center: float
    degree: int
    design: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class LocalFit:
    a_hat: np.ndarray
    r_hat: float
    ell: np.ndarray = field(repr=False)
    a_exact: tuple = field(repr=False, default=())
    backend_stats: Optional[gje.BackendStats] = field(repr=False, default=None)


def taylor_design(xs, x: float, degree: int) -> np.ndarray:
    if degree < 0:
        raise RejectedInput(f"degree must be nonnegative, got {degree}")
    dx = np.asarray(xs, dtype=float).reshape(-1) - x
    cols = [np.ones_like(dx)]
    for j in range(1, degree + 1):
        cols.append(cols[-1] * dx / j)
    return np.column_stack(cols)


def local_design(xs, x: float, degree: int, spec: KernelSpec) -> LocalDesign:
    xs = np.asarray(xs, dtype=float).reshape(-1)
    if xs.size == 0:
        raise RejectedInput("need at least one observation")
    X = taylor_design(xs, x, degree)
    w = kernel_weight(spec, np.abs(xs - x))
    return LocalDesign(float(x), degree, X, np.atleast_1d(w))


def _check_data(xs, ys):
    xs = np.asarray(xs, dtype=float).reshape(-1)
    ys = np.asarray(ys, dtype=float).reshape(-1)
    if xs.size == 0:
        raise RejectedInput("dataset is empty")
    if xs.shape != ys.shape:
        raise RejectedInput(f"xs has {xs.size} entries but ys has {ys.size}")
    return xs, ys


def local_fit(
    xs,
    ys,
    x: float,
    degree: int = 1,
    spec: Optional[KernelSpec] = None,
    backend=Backend.CLASSICAL,
    seed: int = 0,
    denominator: Optional[int] = None,
) -> LocalFit:
    """Local polynomial estimate at ``x``.

    Singular local Gram matrices (too few points with nonzero weight) fall
    back to the pseudoinverse, as in :func:`qnnpr.linreg.fit_linear`.
    """
    xs, ys = _check_data(xs, ys)
    spec = spec or KernelSpec()
    ld = local_design(xs, x, degree, spec)
    w = ld.weights
    if not np.any(w > 0):
        raise EmptyNeighborhoodError(f"all kernel weights vanish at x={x}")
    XtW = ld.design.T * w
    G = Matrix.from_rows((XtW @ ld.design).tolist(), denominator)
    rhs = [gje.to_fraction(v, denominator) for v in XtW @ ys]

    rr = gje.rref(G, backend, seed)
    stats = rr.backend_stats
    if rr.rank == G.rows:
        G_pinv = gje.inverse(G, backend, seed)
    else:
        G_pinv = gje.pseudoinverse(G, backend, seed)
    a_exact = (G_pinv @ Matrix.column(rhs)).col(0)
    a_hat = np.array([float(a) for a in a_exact])
    ell = G_pinv.to_numpy()[0] @ XtW
    return LocalFit(a_hat, float(a_hat[0]), ell, tuple(a_exact), stats)


def nadaraya_watson(xs, ys, x: float, spec: Optional[KernelSpec] = None) -> float:
    """Kernel-weighted mean of ``ys`` at ``x``."""
    xs, ys = _check_data(xs, ys)
    spec = spec or KernelSpec()
    w = np.atleast_1d(kernel_weight(spec, np.abs(xs - x)))
    total = w.sum()
    if not total > 0:
        raise EmptyNeighborhoodError(f"all kernel weights vanish at x={x}")
    return float((w @ ys) / total)


def smoother_matrix(xs, ys, degree, spec, backend=Backend.CLASSICAL, seed=0, points=None):
    """Rows ``l(t)`` for each ``t`` in ``points`` (default: the data sites)."""
    xs, ys = _check_data(xs, ys)
    points = xs if points is None else np.asarray(points, dtype=float).reshape(-1)
    return np.array([local_fit(xs, ys, t, degree, spec, backend, seed).ell for t in points])


def local_band(
    xs,
    ys,
    grid: Sequence[float],
    degree: int = 1,
    spec: Optional[KernelSpec] = None,
    alpha: float = 0.05,
    backend=Backend.CLASSICAL,
    seed: int = 0,
) -> ConfidenceBand:
    """Confidence band for the local polynomial fit on ``grid``.

    The residual variance divides by ``n - nu`` where ``nu`` is the trace
    of the smoother matrix at the data sites; the band constant uses
    ``round(nu)`` (at least 1) as the F numerator degrees of freedom.
    """
    if not 0.0 < alpha < 1.0:
        raise RejectedInput(f"alpha must lie in (0, 1), got {alpha}")
    xs, ys = _check_data(xs, ys)
    spec = spec or KernelSpec()
    n = xs.size
    S = smoother_matrix(xs, ys, degree, spec, backend, seed)
    nu = float(np.trace(S))
    nu_int = max(1, int(round(nu)))
    if n - nu <= 0 or n - nu_int < 1:
        raise DegreesOfFreedomError(
            f"effective degrees of freedom {nu:.3f} leave no residual freedom for n={n}"
        )
    resid = ys - S @ ys
    sigma = math.sqrt(float(resid @ resid) / (n - nu))
    c = band_constant(alpha, nu_int, n)

    grid = np.asarray(grid, dtype=float).reshape(-1)
    fits = [local_fit(xs, ys, t, degree, spec, backend, seed) for t in grid]
    center = np.array([f.r_hat for f in fits])
    norms = np.array([np.linalg.norm(f.ell) for f in fits])
    half = c * sigma * norms
    return ConfidenceBand(grid, center - half, center, center + half, alpha, c, sigma, norms)


def effective_dof(xs, ys, degree, spec, backend=Backend.CLASSICAL, seed=0) -> float:
    return float(np.trace(smoother_matrix(xs, ys, degree, spec, backend, seed)))
