"""Figures for census and polynomial-grid reports.  Headless (Agg) only."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

STYLE = {
    "figure.dpi": 120,
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.bbox": "tight",
}

STATUS_COLOURS = {"NotMDS": "#d9d9d9", "NonGrsMDS": "#3b75af", "GRS": "#e1812c"}


def first_failure_figure(report, path):
    """Bar chart: how many candidates fail first at each k-subset (lex order)."""
    labels = ["".join(map(str, T)) for T in report.subsets]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(max(4.0, 0.18 * len(labels) + 1.5), 3.0))
        ax.bar(range(len(labels)), report.first_failure, color="#3b75af", width=0.8)
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels(labels, rotation=90, fontsize=6)
        ax.set_xlabel("first singular subset T")
        ax.set_ylabel("candidates")
        ax.set_title(f"|Omega| = {report.omega_count} of {report.total}")
        fig.savefig(path)
        plt.close(fig)
    return path


def grid_figure(census, q, path, zero_mask=None, names=("x", "y")):
    """Classification map over a two-variable grid, P-zeros ringed."""
    import numpy as np

    codes = {"NotMDS": 0, "NonGrsMDS": 1, "GRS": 2}
    img = np.zeros((q, q), dtype=int)
    for (x, y), st in census.status.items():
        img[y, x] = codes[st]
    cmap = ListedColormap([STATUS_COLOURS[s] for s in codes])
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.2, 4.0))
        ax.imshow(img, origin="lower", cmap=cmap, vmin=0, vmax=2, interpolation="nearest")
        if zero_mask is not None:
            ys, xs = np.nonzero(zero_mask)
            ax.scatter(xs, ys, s=14, facecolors="none", edgecolors="k", linewidths=0.7,
                       label="P = 0")
        for st, colour in STATUS_COLOURS.items():
            ax.scatter([], [], marker="s", color=colour, label=st)
        ax.legend(loc="upper left", bbox_to_anchor=(1.01, 1.0), frameon=False, fontsize=7)
        ax.set_xlabel(names[0])
        ax.set_ylabel(names[1])
        ax.set_title(f"MDS {census.mds}, GRS {census.grs}, non-GRS {census.nongrs}")
        fig.savefig(path)
        plt.close(fig)
    return path
