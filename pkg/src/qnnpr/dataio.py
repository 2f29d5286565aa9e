"""CSV ingestion and report serialization."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import ConfigError, DataError
from .linreg import Dataset

SIG_DIGITS = 12


@dataclass(frozen=True)
class Table:
    """Predictor columns and one response column read from a CSV file."""

    predictor_names: tuple
    response_name: str
    predictors: np.ndarray
    response: np.ndarray
    extra: dict

    @property
    def n(self) -> int:
        return self.predictors.shape[0]

    @property
    def p(self) -> int:
        return self.predictors.shape[1]

    def dataset(self, intercept: bool = True) -> Dataset:
        X = self.predictors
        if intercept:
            X = np.column_stack([np.ones(self.n), X])
        return Dataset(X, self.response)


def _read_rows(path) -> tuple:
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except FileNotFoundError:
        raise DataError(f"input file not found: {path}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise DataError(f"{path} is empty")
    return rows[0], rows[1:]


def _resolve_column(header: Sequence[str], col: Union[str, int, None], what: str) -> int:
    if col is None:
        return len(header) - 1
    if isinstance(col, int) or (isinstance(col, str) and col.strip().lstrip("-").isdigit()
                                and col.strip() not in header):
        idx = int(col)
        if not -len(header) <= idx < len(header):
            raise ConfigError(f"{what} index {idx} out of range for {len(header)} columns")
        return idx % len(header)
    try:
        return list(header).index(col)
    except ValueError:
        raise ConfigError(
            f"{what} {col!r} not found; columns are {', '.join(header)}"
        ) from None


def _parse_cell(cell: str, row: int, name: str, parse=float):
    try:
        v = parse(cell.strip())
    except (ValueError, ZeroDivisionError):
        raise DataError(f"non-numeric value {cell!r} at row {row}, column {name!r}") from None
    if isinstance(v, float) and not math.isfinite(v):
        raise DataError(f"non-finite value {cell!r} at row {row}, column {name!r}")
    return v


def ingest_csv(path, y_column: Union[str, int, None] = None, exclude: Sequence = ()) -> Table:
    """Read a headed CSV; every column except the response (and ``exclude``) is a predictor.

    Rows are numbered from 1 starting after the header in error messages.
    ``y_column`` may be a header name or a column index; the last column is
    the default.
    """
    header, body = _read_rows(path)
    header = [h.strip() for h in header]
    yi = _resolve_column(header, y_column, "response column")
    ex = {_resolve_column(header, c, "column") for c in exclude}
    if yi in ex:
        raise ConfigError("response column cannot also be excluded")
    pred = [j for j in range(len(header)) if j != yi and j not in ex]
    if not body:
        raise DataError(f"{path} has a header but no data rows")
    values = []
    for r, row in enumerate(body, start=1):
        if len(row) != len(header):
            raise DataError(f"row {r} has {len(row)} cells, expected {len(header)}")
        values.append([_parse_cell(c, r, header[j]) for j, c in enumerate(row)])
    data = np.array(values, dtype=float)
    return Table(
        predictor_names=tuple(header[j] for j in pred),
        response_name=header[yi],
        predictors=data[:, pred].reshape(len(body), len(pred)),
        response=data[:, yi],
        extra={header[j]: data[:, j] for j in sorted(ex)},
    )


def read_matrix_csv(path, header: bool = True) -> list:
    """Rows of exact rationals; cells may be integers, decimals or ``a/b``."""
    first, body = _read_rows(path)
    if not header:
        body = [first] + body
        names = [str(j) for j in range(len(first))]
    else:
        names = [h.strip() for h in first]
    if not body:
        raise DataError(f"{path} contains no matrix rows")
    width = len(body[0])
    out = []
    for r, row in enumerate(body, start=1):
        if len(row) != width:
            raise DataError(f"row {r} has {len(row)} cells, expected {width}")
        out.append([_parse_cell(c, r, names[j] if j < len(names) else str(j), Fraction)
                    for j, c in enumerate(row)])
    return out


def round_sig(v: float, digits: int = SIG_DIGITS) -> float:
    v = float(v)
    if not math.isfinite(v):
        return v
    return float(f"{v:.{digits}g}")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = round_sig(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Path):
        return str(obj)
    return obj


def dumps_report(report: dict) -> str:
    """JSON text with floats rounded to 12 significant digits."""
    return json.dumps(_jsonable(report), indent=2) + "\n"


def write_report(report: dict, path: Optional[Path]) -> str:
    text = dumps_report(report)
    if path is None or str(path) == "-":
        print(text, end="")
    else:
        Path(path).write_text(text, encoding="utf-8")
    return text


def write_band_csv(path, x_names: Sequence[str], grid, lower, center, upper) -> None:
    grid = np.asarray(grid, dtype=float)
    grid = grid.reshape(len(grid), -1)
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(list(x_names) + ["lower", "center", "upper"])
        for i in range(len(grid)):
            vals = list(grid[i]) + [lower[i], center[i], upper[i]]
            w.writerow([repr(round_sig(v)) for v in vals])
