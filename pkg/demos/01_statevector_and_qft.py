"""
Gates, measurement and the Fourier transform
============================================

Build a Bell pair from H and XOR, read off Born probabilities, sample it,
and check the QFT against a plain DFT.
"""
import numpy as np

from qnnpr.quantum import apply_gate, new_state, probability_of, qft, sample, standard_gate

H, XOR = standard_gate("H"), standard_gate("XOR")

# |00> -> H on qubit 0 -> XOR(control 0, target 1)
bell = apply_gate(apply_gate(new_state(2, 0), H, [0]), XOR, [0, 1])
print("Bell amplitudes:", np.round(bell.amplitudes, 6))
print("P(|11>) =", probability_of(bell, 3))

shots = sample(bell, 10_000, seed=1)
print("sampled frequencies:", np.bincount(shots, minlength=4) / shots.size)

# the 3-qubit QFT is the normalized 8-point DFT matrix
F = qft(3).matrix
print("QFT(3) == DFT:", np.allclose(F, np.fft.ifft(np.eye(8), norm="ortho")))
