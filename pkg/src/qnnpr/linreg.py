"""
Global linear regression through exact Gauss-Jordan elimination.

The normal equations ``(X^T X) beta = X^T Y`` are converted to rationals and
solved exactly; everything downstream (variance, smoother weights, bands)
is ordinary floating point.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import gje
from .errors import DegreesOfFreedomError, RejectedInput
from .fdist import f_quantile
from .gje import Backend, Matrix


@dataclass(frozen=True)
class Dataset:
    design: np.ndarray
    response: np.ndarray

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.design, dtype=float))
        y = np.asarray(self.response, dtype=float).reshape(-1)
        if X.size == 0 or y.size == 0:
            raise RejectedInput("dataset is empty")
        if X.shape[0] != y.shape[0]:
            raise RejectedInput(
                f"design has {X.shape[0]} rows but response has {y.shape[0]} entries"
            )
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
            raise RejectedInput("dataset contains non-finite values")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "design", X)
        object.__setattr__(self, "response", y)

    @property
    def n(self) -> int:
        return self.design.shape[0]

    @property
    def p(self) -> int:
        return self.design.shape[1]

    @classmethod
    def with_intercept(cls, x, y) -> "Dataset":
        """Design ``[1, x]`` for a simple straight-line fit."""
        x = np.asarray(x, dtype=float)
        return cls(np.column_stack([np.ones_like(x), x]), y)


@dataclass(frozen=True)
class FitResult:
    beta_hat: np.ndarray
    sigma2_hat: Optional[float]
    residuals: np.ndarray
    effective_dof: float
    rank: int
    used_pseudoinverse: bool
    beta_exact: tuple = field(repr=False, default=())
    backend_stats: Optional[gje.BackendStats] = field(repr=False, default=None)


@dataclass(frozen=True)
class ConfidenceBand:
    """Pointwise interval ``center +/- c * sigma_hat * ||l(x)||`` on a grid."""

    grid: np.ndarray
    lower: np.ndarray
    center: np.ndarray
    upper: np.ndarray
    alpha: float
    c: float
    sigma_hat: float = 0.0
    ell_norm: Optional[np.ndarray] = field(repr=False, default=None)

    def __len__(self) -> int:
        return len(self.center)

    def contains(self, values) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        return (self.lower <= values) & (values <= self.upper)


class IllConditionedWarning(RuntimeWarning):
    """The Gram matrix is singular only up to rounding; exact elimination treats it as full rank."""


COND_WARN = 1e12


def _normal_equations(data: Dataset, denominator: Optional[int]):
    X, y = data.design, data.response
    G = Matrix.from_rows((X.T @ X).tolist(), denominator)
    m = [gje.to_fraction(v, denominator) for v in X.T @ y]
    return G, m


def _check_conditioning(data: Dataset, exact_rank: int) -> None:
    if exact_rank < data.p:
        return
    cond = np.linalg.cond(data.design)
    if cond**2 > COND_WARN:
        warnings.warn(
            f"X^T X has condition number ~{cond**2:.3g}; columns that are collinear only "
            "up to rounding are treated as independent",
            IllConditionedWarning,
            stacklevel=3,
        )


def _gram_pinv(G: Matrix, rank: int, backend, seed: int) -> Matrix:
    if rank == G.rows:
        return gje.inverse(G, backend, seed)
    return gje.pseudoinverse(G, backend, seed)


def residual_variance(fit_or_residuals, n: int, p: int) -> float:
    """``||residuals||^2 / (n - p)``."""
    if n <= p:
        raise DegreesOfFreedomError(f"need n > p for a variance estimate, got n={n}, p={p}")
    r = fit_or_residuals.residuals if isinstance(fit_or_residuals, FitResult) else fit_or_residuals
    r = np.asarray(r, dtype=float)
    return float(r @ r) / (n - p)


def fit_linear(
    data: Dataset,
    backend=Backend.CLASSICAL,
    seed: int = 0,
    denominator: Optional[int] = None,
) -> FitResult:
    """Least-squares coefficients from the normal equations.

    A singular ``X^T X`` falls back to the minimum-norm solution
    ``pinv(X^T X) X^T Y``.  ``sigma2_hat`` is ``None`` when ``n <= p``.

    Parameters
    ----------
    data : Dataset
    backend : {"classical", "quantum-sim"}
        Pivot search used by the elimination.
    seed : int
        Seed for the quantum pivot search; ignored by the classical backend.
    denominator : int, optional
        Round ``X^T X`` and ``X^T Y`` to multiples of ``1/denominator``
        before solving.  By default floats are taken at their exact value.
    """
    G, m = _normal_equations(data, denominator)
    sol = gje.solve(G, m, backend, seed)
    if not sol.consistent:
        # normal equations are always consistent in exact arithmetic; rounding
        # with a coarse denominator can break that
        raise ArithmeticError("normal equations became inconsistent after rounding")
    rank = G.cols - len(sol.nullspace_basis)
    _check_conditioning(data, rank)
    used_pinv = rank < G.cols
    if used_pinv:
        beta = gje.pseudoinverse(G, backend, seed) @ Matrix.column(m)
        beta_exact = beta.col(0)
    else:
        beta_exact = sol.particular
    beta_hat = np.array([float(b) for b in beta_exact])
    residuals = data.response - data.design @ beta_hat
    sigma2 = residual_variance(residuals, data.n, data.p) if data.n > data.p else None
    return FitResult(
        beta_hat=beta_hat,
        sigma2_hat=sigma2,
        residuals=residuals,
        effective_dof=float(rank),
        rank=rank,
        used_pseudoinverse=used_pinv,
        beta_exact=tuple(beta_exact),
        backend_stats=sol.backend_stats,
    )


class LinearSmoother:
    """Precomputed ``pinv(X^T X)`` for repeated smoother-vector evaluation."""

    def __init__(self, data: Dataset, backend=Backend.CLASSICAL, seed: int = 0,
                 denominator: Optional[int] = None):
        self.data = data
        G, _ = _normal_equations(data, denominator)
        rank = gje.rref(G, backend, seed).rank
        self.rank = rank
        self.gram_pinv = _gram_pinv(G, rank, backend, seed).to_numpy()

    def ell(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(-1)
        if x.size != self.data.p:
            raise RejectedInput(f"query point has {x.size} coordinates, expected {self.data.p}")
        return self.data.design @ (self.gram_pinv @ x)

    def ell_matrix(self, grid) -> np.ndarray:
        """Rows are ``l(x)`` for each grid point."""
        grid = np.atleast_2d(np.asarray(grid, dtype=float))
        if grid.shape[1] != self.data.p:
            raise RejectedInput(f"grid points have {grid.shape[1]} coordinates, expected {self.data.p}")
        return grid @ self.gram_pinv @ self.data.design.T

    def hat(self) -> np.ndarray:
        X = self.data.design
        return X @ self.gram_pinv @ X.T


def smoother_vector(data: Dataset, x, backend=Backend.CLASSICAL, seed: int = 0) -> np.ndarray:
    """Weights ``l(x)`` with ``r_hat(x) = l(x) @ Y``, i.e. ``X pinv(X^T X) x``."""
    return LinearSmoother(data, backend, seed).ell(x)


def hat_matrix(data: Dataset, backend=Backend.CLASSICAL, seed: int = 0):
    """Projection ``L = X pinv(X^T X) X^T`` and its trace."""
    L = LinearSmoother(data, backend, seed).hat()
    return L, float(np.trace(L))


def band_constant(alpha: float, p: int, n: int) -> float:
    """``sqrt(p * F_{alpha; p, n-p})``."""
    if n <= p:
        raise DegreesOfFreedomError(f"need n > p for the band constant, got n={n}, p={p}")
    return math.sqrt(p * f_quantile(alpha, p, n - p))


def confidence_band(
    data: Dataset,
    fit: FitResult,
    grid,
    alpha: float = 0.05,
    backend=Backend.CLASSICAL,
    seed: int = 0,
    smoother: Optional[LinearSmoother] = None,
) -> ConfidenceBand:
    """Band ``r_hat(x) +/- c sigma_hat ||l(x)||`` with ``c = sqrt(p F_{alpha;p,n-p})``.

    ``grid`` holds one p-vector per row.  Pass a prebuilt ``smoother`` to
    skip recomputing ``pinv(X^T X)``.
    """
    if not 0.0 < alpha < 1.0:
        raise RejectedInput(f"alpha must lie in (0, 1), got {alpha}")
    n, p = data.n, data.p
    if n <= p or fit.sigma2_hat is None:
        raise DegreesOfFreedomError(f"need n > p for a confidence band, got n={n}, p={p}")
    smoother = smoother or LinearSmoother(data, backend, seed)
    grid = np.atleast_2d(np.asarray(grid, dtype=float))
    ells = smoother.ell_matrix(grid)
    center = ells @ data.response
    norms = np.linalg.norm(ells, axis=1)
    c = band_constant(alpha, p, n)
    sigma = math.sqrt(fit.sigma2_hat)
    half = c * sigma * norms
    return ConfidenceBand(grid, center - half, center, center + half, alpha, c, sigma, norms)


def training_accept(observed: float, band: ConfidenceBand, grid_index: int) -> bool:
    """True iff ``observed`` lies in the closed band interval at ``grid_index``."""
    if not 0 <= grid_index < len(band):
        raise RejectedInput(f"grid index {grid_index} out of range [0, {len(band)})")
    return bool(band.lower[grid_index] <= observed <= band.upper[grid_index])
