"""
Grover search over basis indices with classical verification.

One iteration is the phase query followed by the diffusion
``H^n . R0 . H^n``, where ``R0`` keeps ``|0...0>`` and negates every other
basis amplitude.  ``R0`` is the zero-marking query up to a global sign;
over ``(Z_2)^n`` the Fourier transform is ``H^n``, so this is the
transform-conjugated zero query.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import RejectedInput
from .quantum import (
    StateVector,
    apply_all,
    measure_with,
    standard_gate,
    uniform_state,
)

# growth factor of the randomized iteration schedule (Boyer-Brassard-Hoyer-Tapp)
SCHEDULE_GROWTH = 6 / 5

_H = standard_gate("H")


@dataclass(frozen=True)
class Oracle:
    """Marks a subset of ``range(domain_size)`` through ``predicate``."""

    domain_size: int
    predicate: Callable[[int], bool]
    _mask: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.domain_size < 1 or self.domain_size & (self.domain_size - 1):
            raise RejectedInput(
                f"oracle domain size must be a power of two, got {self.domain_size}"
            )
        mask = np.fromiter(
            (bool(self.predicate(i)) for i in range(self.domain_size)),
            dtype=bool,
            count=self.domain_size,
        )
        mask.setflags(write=False)
        object.__setattr__(self, "_mask", mask)

    @classmethod
    def from_marked(cls, marked: Iterable[int], domain_size: int) -> "Oracle":
        marked = frozenset(int(i) for i in marked)
        bad = [i for i in marked if not 0 <= i < domain_size]
        if bad:
            raise RejectedInput(f"marked indices {sorted(bad)} outside [0, {domain_size})")
        return cls(domain_size, marked.__contains__)

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    @property
    def n_marked(self) -> int:
        return int(self._mask.sum())

    def __call__(self, index: int) -> bool:
        return bool(self.predicate(index))


@dataclass(frozen=True)
class GroverResult:
    found_index: Optional[int]
    iterations_used: int
    oracle_calls: int
    verified: bool
    rounds: int = 0


def _phase_query(amps: np.ndarray, mask: np.ndarray) -> np.ndarray:
    out = amps.copy()
    out[mask] *= -1
    return out


def diffusion(state: StateVector) -> StateVector:
    """Inversion about the mean, built as ``H^n . R0 . H^n``."""
    s = apply_all(state, _H)
    amps = -s.amplitudes
    amps[0] *= -1
    return apply_all(StateVector(state.n_qubits, amps), _H)


def grover_iterate(state: StateVector, oracle: Oracle) -> StateVector:
    if state.dim != oracle.domain_size:
        raise RejectedInput(
            f"state dimension {state.dim} != oracle domain size {oracle.domain_size}"
        )
    flipped = StateVector(state.n_qubits, _phase_query(state.amplitudes, oracle.mask))
    return diffusion(flipped)


def run_iterations(oracle: Oracle, n_qubits: int, k: int) -> StateVector:
    """``k`` Grover iterations starting from the uniform superposition."""
    state = uniform_state(n_qubits)
    for _ in range(k):
        state = grover_iterate(state, oracle)
    return state


def success_probability(N: int, M: int, k: int) -> float:
    """Probability of measuring a marked index after ``k`` iterations."""
    if not 1 <= M <= N:
        raise RejectedInput(f"need 1 <= M <= N, got M={M}, N={N}")
    if k < 0:
        raise RejectedInput(f"iteration count must be nonnegative, got {k}")
    theta = math.asin(math.sqrt(M / N))
    return math.sin((2 * k + 1) * theta) ** 2


def optimal_iterations(N: int, M: int) -> int:
    """Iteration count ``floor(pi / (4 theta))`` with ``theta = asin(sqrt(M/N))``.

    The final rotation angle lands within ``theta`` of ``pi/2``, so the
    success probability is at least ``1 - M/N``.  For ``M << N`` this is
    the familiar ``floor(pi/4 * sqrt(N/M))``.
    """
    if not 1 <= M <= N:
        raise RejectedInput(f"need 1 <= M <= N, got M={M}, N={N}")
    theta = math.asin(math.sqrt(M / N))
    # guard the exact pi/2 case (M == N) against rounding up
    return math.floor(math.pi / (4 * theta) + 1e-12) if M < N else 0


def grover_search(
    oracle: Oracle,
    n_qubits: int,
    seed: int = 0,
    max_rounds: int = 64,
) -> GroverResult:
    """Find a marked index without knowing how many are marked.

    Each round draws an iteration count uniformly from ``[0, m)``, runs
    that many iterations from the uniform state, measures, and checks the
    outcome with the classical predicate.  ``m`` grows by
    ``SCHEDULE_GROWTH`` per failed round, capped at ``sqrt(N)``.  An
    unverified outcome is never returned.

    ``oracle_calls`` counts quantum queries plus classical verifications.
    """
    N = 2**n_qubits
    if oracle.domain_size != N:
        raise RejectedInput(
            f"oracle domain size {oracle.domain_size} != 2**{n_qubits}"
        )
    rng = np.random.default_rng(seed)
    m = 1.0
    cap = math.sqrt(N)
    iterations = calls = 0
    for rnd in range(1, max_rounds + 1):
        j = int(rng.integers(0, math.ceil(m))) if m > 1 else 0
        state = run_iterations(oracle, n_qubits, j)
        iterations += j
        calls += j
        outcome = measure_with(state, rng)
        calls += 1
        if oracle(outcome.basis_index):
            return GroverResult(outcome.basis_index, iterations, calls, True, rnd)
        m = min(SCHEDULE_GROWTH * m, cap)
    return GroverResult(None, iterations, calls, False, max_rounds)
