from fractions import Fraction

import numpy as np
import pytest

from qnnpr.gje import Matrix


def random_rational_matrix(rng, max_rows=6, max_cols=8, rank_deficient=False):
    lo = 2 if rank_deficient else 1
    rows = int(rng.integers(lo, max_rows + 1))
    cols = int(rng.integers(lo, max_cols + 1))
    vals = [[Fraction(int(rng.integers(-3, 4)), int(rng.choice([1, 2, 3]))) for _ in range(cols)]
            for _ in range(rows)]
    if rank_deficient and rows > 1:
        # overwrite one row with a rational combination of two others
        a, b = Fraction(int(rng.integers(-2, 3)), 2), Fraction(int(rng.integers(-2, 3)), 3)
        i, j = rng.choice(rows - 1, size=2, replace=rows < 3)
        vals[-1] = [a * x + b * y for x, y in zip(vals[i], vals[j])]
    return Matrix.from_rows(vals)


def rational_corpus(seed, count, **kw):
    rng = np.random.default_rng(seed)
    return [random_rational_matrix(rng, rank_deficient=bool(k % 2), **kw) for k in range(count)]


@pytest.fixture(scope="session")
def corpus200():
    return rational_corpus(2024, 200)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
