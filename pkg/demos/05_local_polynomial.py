"""
Local polynomial regression
===========================

Kernel-weighted local fits of degree 0 (Nadaraya-Watson), 1 and 2 on a
noisy sinusoid, with the local-linear confidence band.
"""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qnnpr.localpoly import KernelSpec, default_bandwidth, local_band, local_fit

rng = np.random.default_rng(1)
x = np.sort(rng.uniform(0, 1, 80))
y = np.sin(2 * np.pi * x) + rng.normal(scale=0.25, size=x.size)
h = default_bandwidth(x)
spec = KernelSpec("gaussian", h)
print(f"normal-reference bandwidth h = {h:.4f}")

grid = np.linspace(0, 1, 60)
fig, ax = plt.subplots()
ax.plot(x, y, "k.", ms=3)
for degree in (0, 1, 2):
    ax.plot(grid, [local_fit(x, y, g, degree, spec).r_hat for g in grid], label=f"degree {degree}")

band = local_band(x, y, grid, 1, spec, alpha=0.05)
ax.fill_between(grid, band.lower, band.upper, alpha=0.2, label="band (degree 1)")
ax.legend()
fig.savefig("local_polynomial.png", dpi=100)
print("band constant c =", round(band.c, 4), " sigma_hat =", round(band.sigma_hat, 4))
