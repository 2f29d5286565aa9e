"""
Dense statevector simulation of a small gate set.

Basis index convention: qubit 0 is the most significant bit, so on two
qubits ``|q0 q1>`` has index ``2*q0 + q1``.  Gates act on an arbitrary
ordered tuple of target qubits; the first target is the most significant
bit of the gate's own matrix index (so ``XOR`` on targets ``(c, t)`` uses
``c`` as control).

Measurement draws from numpy's PCG64 generator (``numpy.random.default_rng``),
which produces the same stream on every platform for a given seed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import IntegrityError, RejectedInput

MAX_QUBITS = 20

_SQRT2_INV = 1 / np.sqrt(2)

_STANDARD = {
    "Id": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV,
    "XOR": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "SWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}
GATE_NAMES = tuple(_STANDARD)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class StateVector:
    """Amplitudes of an ``n_qubits`` register, length ``2**n_qubits``."""

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise RejectedInput(f"n_qubits must be positive, got {self.n_qubits}")
        if self.n_qubits > MAX_QUBITS:
            raise RejectedInput(
                f"{self.n_qubits} qubits exceeds the cap MAX_QUBITS={MAX_QUBITS}"
            )
        amps = _frozen(self.amplitudes).reshape(-1)
        if amps.size != 2**self.n_qubits:
            raise RejectedInput(
                f"expected {2**self.n_qubits} amplitudes, got {amps.size}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class Gate:
    name: str
    arity: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = _frozen(self.matrix)
        d = 2**self.arity
        if m.shape != (d, d):
            raise RejectedInput(f"gate {self.name!r}: matrix shape {m.shape} != {(d, d)}")
        object.__setattr__(self, "matrix", m)

    def is_unitary(self, atol: float = 1e-12) -> bool:
        m = self.matrix
        return bool(np.allclose(m @ m.conj().T, np.eye(len(m)), rtol=0, atol=atol))

    def dagger(self) -> "Gate":
        return Gate(self.name + "^dag", self.arity, self.matrix.conj().T)


@dataclass(frozen=True)
class MeasurementOutcome:
    basis_index: int
    probability: float


def new_state(n_qubits: int, basis_index: int = 0) -> StateVector:
    """Computational basis state ``|basis_index>`` on ``n_qubits`` qubits."""
    if n_qubits < 1:
        raise RejectedInput(f"n_qubits must be positive, got {n_qubits}")
    if not 0 <= basis_index < 2**n_qubits:
        raise RejectedInput(
            f"basis index {basis_index} out of range for {n_qubits} qubit(s)"
        )
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[basis_index] = 1.0
    return StateVector(n_qubits, amps)


def uniform_state(n_qubits: int) -> StateVector:
    """H on every qubit of ``|0...0>``."""
    dim = 2**n_qubits
    return StateVector(n_qubits, np.full(dim, 1 / np.sqrt(dim), dtype=complex))


def standard_gate(name: str) -> Gate:
    try:
        m = _STANDARD[name]
    except KeyError:
        raise RejectedInput(
            f"unknown gate {name!r}; expected one of {', '.join(GATE_NAMES)}"
        ) from None
    return Gate(name, int(np.log2(len(m))), m)


def apply_gate(state: StateVector, gate: Gate, targets: Sequence[int]) -> StateVector:
    """Apply ``gate`` to the listed qubits, identity on the rest.

    Works on the amplitude tensor directly, O(2**n * 2**k) for a k-qubit gate.
    """
    targets = tuple(int(t) for t in targets)
    n = state.n_qubits
    if len(targets) != gate.arity:
        raise RejectedInput(
            f"gate {gate.name!r} has arity {gate.arity}, got {len(targets)} target(s)"
        )
    if len(set(targets)) != len(targets):
        raise RejectedInput(f"duplicate targets {targets}")
    if any(not 0 <= t < n for t in targets):
        raise RejectedInput(f"targets {targets} out of range for {n} qubit(s)")

    k = gate.arity
    psi = state.amplitudes.reshape([2] * n)
    psi = np.moveaxis(psi, targets, range(k)).reshape(2**k, -1)
    out = (gate.matrix @ psi).reshape([2] * n)
    out = np.moveaxis(out, range(k), targets).reshape(-1)
    return StateVector(n, out)


def apply_all(state: StateVector, gate: Gate) -> StateVector:
    """Apply a single-qubit gate to every qubit."""
    for q in range(state.n_qubits):
        state = apply_gate(state, gate, (q,))
    return state


def qft(n_qubits: int) -> Gate:
    """Discrete Fourier transform on ``2**n_qubits`` amplitudes.

    Entry ``(j, k)`` is ``exp(2*pi*i*j*k/N)/sqrt(N)``.
    """
    if n_qubits < 1:
        raise RejectedInput(f"n_qubits must be positive, got {n_qubits}")
    dim = 2**n_qubits
    jk = np.outer(np.arange(dim), np.arange(dim)) % dim
    return Gate(f"QFT{n_qubits}", n_qubits, np.exp(2j * np.pi * jk / dim) / np.sqrt(dim))


def probability_of(state: StateVector, basis_index: int) -> float:
    if not 0 <= basis_index < state.dim:
        raise RejectedInput(
            f"basis index {basis_index} out of range for dimension {state.dim}"
        )
    return float(abs(state.amplitudes[basis_index]) ** 2)


def _check_normalized(state: StateVector, tol: float = 1e-6) -> np.ndarray:
    probs = state.probabilities()
    total = float(probs.sum())
    if abs(total - 1.0) > tol:
        raise IntegrityError(f"state norm^2 is {total!r}, expected 1")
    return probs


def _draw(probs: np.ndarray, rng: np.random.Generator, size=None):
    cdf = np.cumsum(probs)
    u = rng.random(size) * cdf[-1]
    idx = np.searchsorted(cdf, u, side="right")
    return np.minimum(idx, len(probs) - 1)


def measure_all(state: StateVector, seed: int) -> MeasurementOutcome:
    """Measure every qubit in the computational basis.

    The same ``seed`` always yields the same outcome for the same state.
    """
    probs = _check_normalized(state)
    idx = int(_draw(probs, np.random.default_rng(seed)))
    return MeasurementOutcome(idx, float(probs[idx]))


def measure_with(state: StateVector, rng: np.random.Generator) -> MeasurementOutcome:
    """Like :func:`measure_all` but consumes an existing generator."""
    probs = _check_normalized(state)
    idx = int(_draw(probs, rng))
    return MeasurementOutcome(idx, float(probs[idx]))


def sample(state: StateVector, shots: int, seed: int) -> np.ndarray:
    """``shots`` independent full measurements of ``state``."""
    probs = _check_normalized(state)
    return _draw(probs, np.random.default_rng(seed), size=shots)
