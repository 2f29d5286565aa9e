"""
How often does the band cover the truth?
========================================

The constant sqrt(p F) is a simultaneous (Scheffe-type) constant, so the
pointwise coverage sits above the nominal 1 - alpha.
"""
from qnnpr.simulation import coverage_simulation

for alpha in (0.01, 0.05, 0.2):
    res = coverage_simulation(replicates=1000, n=50, alpha=alpha, seed=0)
    print(f"alpha={alpha:<5} nominal={1 - alpha:.2f}  pointwise coverage:",
          " ".join(f"{c:.3f}" for c in res.coverage))
