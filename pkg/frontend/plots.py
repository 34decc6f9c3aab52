# frontend/plots.py
import os
import sys
import logging

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.collections import LineCollection
import numpy as np
import pandas as pd

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import PLOT_CONFIG
from backend.core import BoundsError, CurvePath

logger = logging.getLogger(__name__)


def plot_locality(table: pd.DataFrame, out_path: str) -> str:
    """Bar chart of the mean adjacent-rank gap per ordering (a metrics table)."""
    fig, ax = plt.subplots(figsize=PLOT_CONFIG["figsize"])
    means = table["mean_gap_decimal"].astype(float)
    ax.bar(table["order"], means, color=PLOT_CONFIG["bar_color"])
    for x, (mean, peak) in enumerate(zip(means, table["max_gap"])):
        ax.annotate(f"max {peak}", (x, mean), ha="center", va="bottom", fontsize=8)
    ax.set_ylabel("Mean adjacent-rank gap")
    ax.set_title("Locality by ordering")
    ax.grid(True, axis="y", linestyle=":", alpha=0.5)
    fig.tight_layout()
    fig.savefig(out_path, dpi=PLOT_CONFIG["dpi"])
    plt.close(fig)
    logger.info(f"Saved locality chart to {out_path}")
    return out_path


def plot_slab(path: CurvePath, slab: int, out_path: str) -> str:
    """Draw the path restricted to one slab: consecutive cells of that slab joined, coloured by rank."""
    if not 0 <= slab < path.dims.slabs:
        raise BoundsError(f"slab {slab} outside volume {path.dims}")
    ranks = np.flatnonzero(path.cells[:, 0] == slab)
    points = path.cells[ranks][:, [2, 1]].astype(float)  # x = column, y = row

    # only join cells that are consecutive on the path
    joined = np.flatnonzero(np.diff(ranks) == 1)
    segments = np.stack([points[joined], points[joined + 1]], axis=1)

    fig, ax = plt.subplots(figsize=PLOT_CONFIG["figsize"])
    colors = ranks / max(len(path) - 1, 1)
    lc = LineCollection(segments, cmap=PLOT_CONFIG["cmap"], array=colors[joined], linewidths=2)
    lc.set_clim(0.0, 1.0)
    ax.add_collection(lc)
    ax.scatter(points[:, 0], points[:, 1], c=colors, cmap=PLOT_CONFIG["cmap"], s=12, vmin=0.0, vmax=1.0, zorder=2)

    ax.set_xlim(-0.5, path.dims.cols - 0.5)
    ax.set_ylim(path.dims.rows - 0.5, -0.5)
    ax.set_aspect("equal")
    ax.set_title(f"Slab {slab} of {path.dims}")
    ax.set_xlabel("Column")
    ax.set_ylabel("Row")
    ax.grid(True, linestyle=":", alpha=0.5)
    cbar = fig.colorbar(lc, ax=ax, fraction=0.046, pad=0.04)
    cbar.set_label("Normalized rank")
    fig.savefig(out_path, dpi=PLOT_CONFIG["dpi"])
    plt.close(fig)
    logger.info(f"Saved slab {slab} plot to {out_path}")
    return out_path
