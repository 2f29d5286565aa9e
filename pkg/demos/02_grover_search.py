"""
Grover search with classical verification
=========================================

Amplitude amplification on 16 items, compared with the closed-form success
curve, followed by the randomized search used for pivot finding.
"""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qnnpr.grover import Oracle, grover_search, optimal_iterations, run_iterations, success_probability

n, marked = 4, [6]
oracle = Oracle.from_marked(marked, 2**n)

ks = np.arange(0, 13)
simulated = [run_iterations(oracle, n, k).probabilities()[oracle.mask].sum() for k in ks]
closed = [success_probability(16, 1, k) for k in ks]
print("optimal iterations:", optimal_iterations(16, 1))

fig, ax = plt.subplots()
ax.plot(ks, closed, "-", label="sin^2((2k+1) theta)")
ax.plot(ks, simulated, "o", label="statevector")
ax.set_xlabel("iterations k")
ax.set_ylabel("P(marked)")
ax.legend()
fig.savefig("grover_success.png", dpi=100)

# unknown number of marked items: randomized schedule, every answer verified
calls = []
for seed in range(200):
    res = grover_search(oracle, n, seed)
    assert res.found_index == 6
    calls.append(res.oracle_calls)
print(f"mean oracle calls over 200 runs: {np.mean(calls):.2f}  (N = 16, sqrt(N) = 4)")
