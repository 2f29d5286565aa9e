from fractions import Fraction as F

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qnnpr.errors import RejectedInput
from qnnpr.gje import (
    Backend,
    Matrix,
    find_pivot,
    inverse,
    is_consistent,
    pseudoinverse,
    rref,
    solve,
)

from conftest import rational_corpus

BACKENDS = ["classical", "quantum-sim"]


def sympy_rref(m: Matrix):
    """Independent oracle: sympy's exact rref."""
    R, piv = sympy.Matrix(m.tolist()).rref()
    return [[F(int(v.p), int(v.q)) for v in R.row(i)] for i in range(R.rows)], tuple(piv)


def is_rref(res):
    R = res.rref
    for i, c in enumerate(res.pivot_cols):
        assert R[i, c] == 1
        assert all(R[k, c] == 0 for k in range(R.rows) if k != i)
        assert all(R[i, j] == 0 for j in range(c))
    for i in range(res.rank, R.rows):
        assert all(v == 0 for v in R.row(i))
    assert list(res.pivot_cols) == sorted(set(res.pivot_cols))
    return True


def test_find_pivot_classical():
    assert find_pivot([0, 0, 5], "classical") == 2
    assert find_pivot([0, 0, 0], "classical") is None
    with pytest.raises(RejectedInput):
        find_pivot([], "classical")


def test_find_pivot_quantum():
    column = [0, 7, 0, 3]
    nonzero = {i for i, v in enumerate(column) if v != 0}
    assert nonzero == {1, 3}
    seen = {find_pivot(column, "quantum-sim", seed=s) for s in range(40)}
    assert seen <= nonzero and seen
    assert find_pivot([0, 0, 0], "quantum-sim", seed=1) is None
    assert find_pivot([F(1, 3)], "quantum-sim", seed=1) == 0


@pytest.mark.parametrize("backend", BACKENDS)
def test_rref_examples(backend):
    res = rref(Matrix.identity(3), backend, seed=1)
    assert res.rref == Matrix.identity(3) and res.pivot_cols == (0, 1, 2)
    res = rref([[1, 2], [2, 4]], backend, seed=2)
    assert res.rref.tolist() == [[1, 2], [0, 0]] and res.pivot_cols == (0,)
    res = rref([[0, 1], [1, 0]], backend, seed=3)
    assert res.rref == Matrix.identity(2) and res.pivot_cols == (0, 1)


def test_rref_matches_sympy_and_is_canonical():
    for m in rational_corpus(7, 60):
        res = rref(m)
        R, piv = sympy_rref(m)
        assert res.rref.tolist() == R and res.pivot_cols == piv
        assert is_rref(res)


def test_backend_equivalence_small_corpus():
    for k, m in enumerate(rational_corpus(11, 40)):
        a, b = rref(m, "classical"), rref(m, "quantum-sim", seed=k)
        assert a.rref == b.rref and a.pivot_cols == b.pivot_cols
    # the quantum backend really did run Grover
    assert rref([[0, 1], [2, 0]], "quantum-sim", seed=0).backend_stats.oracle_calls > 0


def test_rref_idempotent_and_rank_transpose():
    for m in rational_corpus(13, 60):
        r = rref(m).rref
        assert rref(r).rref == r
        assert rref(m).rank == rref(m.T).rank


def test_is_consistent():
    A = [[1, 2], [2, 4]]
    # (3, 0) solves A x = (3, 6) by substitution
    assert 1 * 3 + 2 * 0 == 3 and 2 * 3 + 4 * 0 == 6
    assert is_consistent(A, [3, 6])
    assert not is_consistent(A, [3, 7])
    assert is_consistent(Matrix.identity(2), [F(-4, 7), 9])
    with pytest.raises(RejectedInput):
        is_consistent(A, [1, 2, 3])


def matvec(A: Matrix, x):
    return [sum((a * b for a, b in zip(A.row(i), x)), F(0)) for i in range(A.rows)]


@pytest.mark.parametrize("backend", BACKENDS)
def test_solve_examples(backend):
    s = solve(Matrix.identity(2), [3, 5], backend, seed=4)
    assert s.consistent and s.particular == (3, 5) and s.nullspace_basis == ()
    A = Matrix.from_rows([[1, 2], [2, 4]])
    s = solve(A, [3, 6], backend, seed=5)
    assert s.particular == (3, 0) and s.nullspace_basis == ((-2, 1),)
    assert matvec(A, s.particular) == [3, 6] and matvec(A, s.nullspace_basis[0]) == [0, 0]
    s = solve([[1, 0], [0, 1], [1, 1]], [1, 1, 3], backend, seed=6)
    assert not s.consistent and s.particular is None


def test_solve_properties_on_corpus():
    rng = np.random.default_rng(17)
    for m in rational_corpus(19, 80):
        if rng.random() < 0.5:
            # build a consistent right-hand side from a random x
            x = [F(int(rng.integers(-3, 4)), int(rng.integers(1, 4))) for _ in range(m.cols)]
            b = matvec(m, x)
        else:
            b = [F(int(rng.integers(-3, 4))) for _ in range(m.rows)]
        s = solve(m, b)
        assert s.consistent == is_consistent(m, b)
        if s.consistent:
            assert matvec(m, s.particular) == b
            assert len(s.nullspace_basis) == m.cols - rref(m).rank
            for v in s.nullspace_basis:
                assert all(e == 0 for e in matvec(m, v))
            if s.nullspace_basis:
                assert rref(Matrix.from_rows(s.nullspace_basis)).rank == len(s.nullspace_basis)


def test_inverse():
    A = Matrix.from_rows([[2, 1], [1, 1]])
    assert A @ inverse(A) == Matrix.identity(2)
    with pytest.raises(RejectedInput):
        inverse([[1, 2], [2, 4]])


def penrose(A: Matrix, P: Matrix) -> bool:
    return (A @ P @ A == A and P @ A @ P == P
            and (A @ P).T == A @ P and (P @ A).T == P @ A)


def test_pseudoinverse_examples():
    assert pseudoinverse(Matrix.identity(3)) == Matrix.identity(3)
    assert pseudoinverse([[2, 0], [0, 0]]).tolist() == [[F(1, 2), 0], [0, 0]]
    col = Matrix.from_rows([[1], [1]])
    P = pseudoinverse(col)
    assert P.tolist() == [[F(1, 2), F(1, 2)]]
    assert penrose(col, P)
    Z = Matrix.zeros(2, 3)
    assert pseudoinverse(Z) == Matrix.zeros(3, 2)


def test_pseudoinverse_matches_sympy():
    for m in rational_corpus(23, 30):
        P = pseudoinverse(m)
        ref = sympy.Matrix(m.tolist()).pinv()
        assert P.tolist() == [[F(int(v.p), int(v.q)) for v in ref.row(i)] for i in range(ref.rows)]


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(lambda c: st.lists(
        st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=c, max_size=c),
        min_size=r, max_size=r))),
    st.integers(0, 10_000),
)
def test_backend_equivalence_property(rows, seed):
    m = Matrix.from_rows(rows)
    a, b = rref(m, Backend.CLASSICAL), rref(m, Backend.QUANTUM, seed)
    assert a.rref == b.rref and a.pivot_cols == b.pivot_cols
    assert penrose(m, pseudoinverse(m))


def test_matrix_basics():
    m = Matrix.from_rows([[1, "1/2"], [0.25, 3]])
    assert m[0, 1] == F(1, 2) and m[1, 0] == F(1, 4)
    assert m.T.tolist() == [[1, F(1, 4)], [F(1, 2), 3]]
    with pytest.raises(RejectedInput):
        Matrix.from_rows([[1, 2], [3]])
    with pytest.raises(RejectedInput):
        Matrix(2, 2, (1, 2, 3))
    with pytest.raises(RejectedInput):
        Backend.parse("analog")
