"""Static SVG plot of data, fitted curve and confidence band."""
from __future__ import annotations

import numpy as np


def plot_band_svg(path, x, y, grid, lower, center, upper, title=""):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with matplotlib.rc_context({"svg.hashsalt": "qnnpr", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        order = np.argsort(grid)
        g = np.asarray(grid)[order]
        ax.fill_between(g, np.asarray(lower)[order], np.asarray(upper)[order],
                        color="tab:blue", alpha=0.25, label="band")
        ax.plot(g, np.asarray(center)[order], color="tab:blue", label="fit")
        if x is not None:
            ax.plot(x, y, "k.", ms=3, label="data")
        ax.set_title(title)
        ax.legend(loc="best")
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
