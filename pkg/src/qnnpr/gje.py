"""
Exact Gauss-Jordan elimination over the rationals.

The pivot-row search is pluggable: the ``classical`` backend scans for the
first nonzero entry, the ``quantum-sim`` backend runs a simulated Grover
search over the active column.  Reduced row-echelon form is unique, so the
result never depends on which backend (or which nonzero row) was used.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import RejectedInput
from .grover import Oracle, grover_search


class Backend(str, enum.Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum-sim"

    @classmethod
    def parse(cls, value) -> "Backend":
        if isinstance(value, cls):
            return value
        key = str(value).lower()
        if key in ("quantum", "quantum_sim", "grover"):
            return cls.QUANTUM
        try:
            return cls(key)
        except ValueError:
            raise RejectedInput(
                f"unknown backend {value!r}; expected 'classical' or 'quantum-sim'"
            ) from None


def to_fraction(x, denominator: Optional[int] = None) -> Fraction:
    """Exact rational for ``x``.

    Floats convert to their exact binary value unless ``denominator`` is
    given, in which case they are rounded to the nearest multiple of
    ``1/denominator``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer, Rational)):
        return Fraction(int(x)) if isinstance(x, np.integer) else Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    xf = float(x)
    if not np.isfinite(xf):
        raise RejectedInput(f"cannot convert non-finite value {x!r} to a rational")
    if denominator is None:
        return Fraction(xf)
    return Fraction(round(xf * denominator), denominator)


@dataclass(frozen=True)
class Matrix:
    """Immutable rows x cols matrix of :class:`~fractions.Fraction`."""

    rows: int
    cols: int
    entries: tuple = field(repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise RejectedInput(f"bad shape {(self.rows, self.cols)}")
        entries = tuple(to_fraction(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise RejectedInput(
                f"{len(entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], denominator: Optional[int] = None) -> "Matrix":
        rows = [[to_fraction(v, denominator) for v in r] for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise RejectedInput("ragged rows")
        return cls(len(rows), ncols, tuple(v for r in rows for v in r))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def column(cls, values: Sequence) -> "Matrix":
        return cls.from_rows([[v] for v in values])

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_numpy(self) -> np.ndarray:
        return np.array([float(v) for v in self.entries], dtype=float).reshape(self.rows, self.cols)

    @property
    def T(self) -> "Matrix":
        return Matrix.from_rows([list(self.col(j)) for j in range(self.cols)]) \
            if self.cols else Matrix(0, self.rows, ())

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise RejectedInput(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols)
        return Matrix(self.rows, other.cols, tuple(out))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise RejectedInput(f"cannot stack {self.shape} beside {other.shape}")
        return Matrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)])

    def select_cols(self, idx: Sequence[int]) -> "Matrix":
        return Matrix.from_rows([[self[i, j] for j in idx] for i in range(self.rows)])

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        if not idx:
            return Matrix(0, self.cols, ())
        return Matrix.from_rows([self.row(i) for i in idx])

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in self.row(i)) for i in range(self.rows))


def as_matrix(m) -> Matrix:
    if isinstance(m, Matrix):
        return m
    return Matrix.from_rows(np.asarray(m, dtype=object).tolist())


@dataclass
class BackendStats:
    pivot_searches: int = 0
    comparisons: int = 0
    oracle_calls: int = 0
    grover_rounds: int = 0
    grover_iterations: int = 0

    def add(self, other: "BackendStats") -> None:
        for k in vars(self):
            setattr(self, k, getattr(self, k) + getattr(other, k))


@dataclass(frozen=True)
class RrefResult:
    rref: Matrix
    pivot_cols: tuple
    rank: int
    backend_stats: BackendStats


@dataclass(frozen=True)
class SolutionSet:
    consistent: bool
    particular: Optional[tuple]
    nullspace_basis: tuple
    backend_stats: Optional[BackendStats] = field(default=None, compare=False, repr=False)


def _next_pow2(n: int) -> int:
    return max(2, 1 << (n - 1).bit_length())


def find_pivot(
    column_slice: Sequence,
    backend=Backend.CLASSICAL,
    seed: int = 0,
    stats: Optional[BackendStats] = None,
) -> Optional[int]:
    """Offset of a nonzero entry in ``column_slice``, or ``None``.

    The classical scan returns the first nonzero offset.  The quantum
    search pads the slice with zeros to a power of two and returns whichever
    verified nonzero offset Grover search lands on.
    """
    if len(column_slice) == 0:
        raise RejectedInput("column slice must be nonempty")
    backend = Backend.parse(backend)
    stats = stats if stats is not None else BackendStats()
    stats.pivot_searches += 1

    if backend is Backend.CLASSICAL:
        for off, v in enumerate(column_slice):
            stats.comparisons += 1
            if v != 0:
                return off
        return None

    size = _next_pow2(len(column_slice))
    padded = list(column_slice) + [0] * (size - len(column_slice))
    oracle = Oracle(size, lambda i: padded[i] != 0)
    # enough rounds that missing a nonzero entry is far below float resolution
    res = grover_search(oracle, size.bit_length() - 1, seed=seed, max_rounds=256)
    stats.oracle_calls += res.oracle_calls
    stats.grover_rounds += res.rounds
    stats.grover_iterations += res.iterations_used
    return res.found_index


def _rref_rows(rows: list, backend: Backend, seed: int, stats: BackendStats):
    """In-place RREF of a list of Fraction lists; returns pivot columns."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    rng = np.random.default_rng(seed)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        off = find_pivot(
            [rows[i][c] for i in range(r, nrows)],
            backend,
            seed=int(rng.integers(2**63)),
            stats=stats,
        )
        if off is None:
            continue
        p = r + off
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [v / piv for v in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            f = rows[i][c]
            if i != r and f != 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return tuple(pivots)


def rref(m, backend=Backend.CLASSICAL, seed: int = 0) -> RrefResult:
    """Reduced row-echelon form of ``m`` with its pivot columns and rank."""
    m = as_matrix(m)
    backend = Backend.parse(backend)
    stats = BackendStats()
    rows = [list(m.row(i)) for i in range(m.rows)]
    pivots = _rref_rows(rows, backend, seed, stats)
    out = Matrix(m.rows, m.cols, tuple(v for r in rows for v in r))
    return RrefResult(out, pivots, len(pivots), stats)


def _check_rhs(A: Matrix, b) -> Matrix:
    b = [to_fraction(v) for v in b]
    if len(b) != A.rows:
        raise RejectedInput(f"right-hand side has length {len(b)}, expected {A.rows}")
    return Matrix.column(b) if b else Matrix(0, 1, ())


def is_consistent(A, b, backend=Backend.CLASSICAL, seed: int = 0) -> bool:
    """Kronecker test: ``A x = b`` is solvable iff ``[A | b]`` has no pivot in its last column."""
    A = as_matrix(A)
    aug = A.hstack(_check_rhs(A, b))
    return A.cols not in rref(aug, backend, seed).pivot_cols


def solve(A, b, backend=Backend.CLASSICAL, seed: int = 0) -> SolutionSet:
    """All solutions of ``A x = b`` as a particular solution plus a nullspace basis.

    Free variables are set to zero in the particular solution.
    """
    A = as_matrix(A)
    aug = A.hstack(_check_rhs(A, b))
    res = rref(aug, backend, seed)
    n = A.cols
    if n in res.pivot_cols:
        return SolutionSet(False, None, (), res.backend_stats)
    R = res.rref
    pivots = res.pivot_cols
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = R[i, n]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i, f]
        basis.append(tuple(v))
    return SolutionSet(True, tuple(x), tuple(basis), res.backend_stats)


def inverse(A, backend=Backend.CLASSICAL, seed: int = 0) -> Matrix:
    """Exact inverse of a square nonsingular matrix via RREF of ``[A | I]``."""
    A = as_matrix(A)
    if A.rows != A.cols:
        raise RejectedInput(f"inverse needs a square matrix, got {A.shape}")
    n = A.rows
    res = rref(A.hstack(Matrix.identity(n)), backend, seed)
    if res.pivot_cols[:n] != tuple(range(n)):
        raise RejectedInput("matrix is singular")
    return res.rref.select_cols(range(n, 2 * n))


def rank_factorization(A, backend=Backend.CLASSICAL, seed: int = 0):
    """``A = C @ F`` with C the pivot columns of A and F the nonzero rows of rref(A)."""
    A = as_matrix(A)
    res = rref(A, backend, seed)
    C = A.select_cols(res.pivot_cols)
    F = res.rref.select_rows(range(res.rank))
    return C, F, res


def pseudoinverse(A, backend=Backend.CLASSICAL, seed: int = 0) -> Matrix:
    """Moore-Penrose pseudoinverse, exact, via rank factorization.

    With ``A = C F`` (full column rank C, full row rank F)::

        A+ = F^T (F F^T)^-1 (C^T C)^-1 C^T

    The zero matrix maps to the zero matrix of transposed shape.
    """
    A = as_matrix(A)
    C, F, res = rank_factorization(A, backend, seed)
    if res.rank == 0:
        return Matrix.zeros(A.cols, A.rows)
    FFt_inv = inverse(F @ F.T, backend, seed)
    CtC_inv = inverse(C.T @ C, backend, seed)
    return F.T @ FFt_inv @ CtC_inv @ C.T
