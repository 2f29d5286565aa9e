import math

import numpy as np
import pytest

from qnnpr.errors import RejectedInput
from qnnpr.grover import (
    Oracle,
    grover_iterate,
    grover_search,
    optimal_iterations,
    run_iterations,
    success_probability,
)
from qnnpr.quantum import StateVector, uniform_state


def explicit_grover_probability(N, marked, k):
    """Dense-matrix oracle: (2|s><s| - I)(I - 2P_marked) applied k times to |s>."""
    s = np.full(N, 1 / math.sqrt(N))
    P = np.zeros((N, N))
    for m in marked:
        P[m, m] = 1
    G = (2 * np.outer(s, s) - np.eye(N)) @ (np.eye(N) - 2 * P)
    v = np.linalg.matrix_power(G, k) @ s
    return float(sum(v[m] ** 2 for m in marked)), v


def test_one_iteration_n4():
    out = grover_iterate(uniform_state(2), Oracle.from_marked([3], 4))
    assert np.allclose(out.amplitudes, [0, 0, 0, 1], rtol=0, atol=1e-12)
    _, v = explicit_grover_probability(4, [3], 1)
    assert np.allclose(out.amplitudes, v, atol=1e-12)


@pytest.mark.parametrize("marked", [range(4), []])
def test_trivial_oracles_keep_probabilities(marked):
    rng = np.random.default_rng(3)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v /= np.linalg.norm(v)
    s = StateVector(2, v)
    all_marked = grover_iterate(s, Oracle.from_marked(marked, 4))
    # uniform phase flip commutes with diffusion; probabilities are those of the diffusion alone
    ref = grover_iterate(s, Oracle.from_marked([], 4))
    assert np.allclose(all_marked.probabilities(), ref.probabilities(), atol=1e-12)
    start = uniform_state(2)
    assert np.allclose(grover_iterate(start, Oracle.from_marked(marked, 4)).probabilities(),
                       start.probabilities(), atol=1e-12)


def test_dimension_mismatch():
    with pytest.raises(RejectedInput):
        grover_iterate(uniform_state(3), Oracle.from_marked([1], 4))


def test_success_probability_examples():
    assert success_probability(4, 1, 1) == pytest.approx(1.0, abs=1e-12)
    assert success_probability(8, 8, 0) == pytest.approx(1.0, abs=1e-12)
    oracle_p, _ = explicit_grover_probability(8, [5], 2)
    assert success_probability(8, 1, 2) == pytest.approx(oracle_p, abs=1e-12)
    assert oracle_p == pytest.approx(0.9453, abs=1e-4)
    with pytest.raises(RejectedInput):
        success_probability(4, 0, 1)


def test_optimal_iterations():
    assert optimal_iterations(4, 1) == 1
    assert optimal_iterations(1, 1) == 0
    assert optimal_iterations(1024, 1) == 25
    with pytest.raises(RejectedInput):
        optimal_iterations(4, 0)
    for N in (2, 4, 8, 16, 64, 256):
        for M in range(1, N + 1):
            k = optimal_iterations(N, M)
            assert success_probability(N, M, k) >= 1 - M / N - 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_statevector_matches_closed_form(n):
    N = 2**n
    rng = np.random.default_rng(n)
    for M in range(1, N + 1):
        marked = rng.choice(N, size=M, replace=False)
        oracle = Oracle.from_marked(marked, N)
        state = uniform_state(n)
        for k in range(11):
            p = float(state.probabilities()[oracle.mask].sum())
            assert abs(p - success_probability(N, M, k)) < 1e-9
            assert abs(state.norm2() - 1) < 1e-9
            state = grover_iterate(state, oracle)


def test_search_finds_unique_marked():
    oracle = Oracle.from_marked([5], 8)
    assert [i for i in range(8) if oracle(i)] == [5]
    for seed in range(30):
        res = grover_search(oracle, 3, seed)
        assert res.found_index == 5 and res.verified


def test_search_empty_returns_absent():
    for seed in range(10):
        res = grover_search(Oracle.from_marked([], 8), 3, seed, max_rounds=20)
        assert res.found_index is None and not res.verified


def test_search_all_marked():
    res = grover_search(Oracle.from_marked(range(4), 4), 2, seed=0)
    assert res.verified and res.found_index in range(4)
    assert res.iterations_used == 0


def test_search_never_returns_unmarked():
    for seed in range(100):
        marked = {seed % 16, (3 * seed) % 16}
        res = grover_search(Oracle.from_marked(marked, 16), 4, seed)
        assert res.found_index in marked


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_expected_oracle_calls(n):
    N = 2**n
    calls = [grover_search(Oracle.from_marked([N - 1], N), n, s).oracle_calls for s in range(200)]
    assert np.mean(calls) <= 4 * math.sqrt(N)


def test_search_reproducible():
    o = Oracle.from_marked([1, 6], 8)
    assert grover_search(o, 3, 42) == grover_search(o, 3, 42)
