"""
Straight-line fit with a confidence band
========================================

Normal equations solved exactly, then the band r_hat(x) +/- c sigma ||l(x)||
with c = sqrt(p F_{alpha; p, n-p}).  New observations inside the band are
accepted by the training rule.
"""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qnnpr.linreg import Dataset, confidence_band, fit_linear, training_accept

rng = np.random.default_rng(0)
x = np.sort(rng.uniform(0, 10, 40))
y = 1.5 + 0.8 * x + rng.normal(scale=1.0, size=x.size)
data = Dataset.with_intercept(x, y)

fit = fit_linear(data)
print("beta_hat:", fit.beta_hat, " sigma2_hat:", round(fit.sigma2_hat, 4))

grid_x = np.linspace(0, 10, 101)
band = confidence_band(data, fit, np.column_stack([np.ones_like(grid_x), grid_x]), alpha=0.05)
print("c =", round(band.c, 4))

new = 1.5 + 0.8 * grid_x[::10] + rng.normal(size=11)
accepted = [training_accept(v, band, i * 10) for i, v in enumerate(new)]
print("accepted new points:", sum(accepted), "of", len(accepted))

fig, ax = plt.subplots()
ax.fill_between(grid_x, band.lower, band.upper, alpha=0.3, label="95% band")
ax.plot(grid_x, band.center, label="fit")
ax.plot(x, y, "k.", label="data")
ax.legend()
fig.savefig("linear_band.png", dpi=100)
