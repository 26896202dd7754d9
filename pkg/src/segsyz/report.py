"""File outputs for a computed table: a CSV of the dimensions and a heatmap PNG.

Kept separate from the CLI so the matplotlib import is only paid when a
report is actually requested.
"""

from __future__ import annotations

import csv
import os

from .koszul import BettiTable


def table_stem(table: BettiTable) -> str:
    return "seg_" + "x".join(str(x) for x in table.a) + "_betti"


def write_csv(table: BettiTable, path: str) -> None:
    """All cells of the table, zeros included, one (p, q, dim) row per cell."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["p", "q", "dim"])
        for q in range(table.qmax + 1):
            for p in range(table.pmax + 1):
                writer.writerow([p, q, table.dim(p, q)])


def render_heatmap(table: BettiTable, path: str) -> None:
    """Heatmap of the table, rows q downward, annotated with the dimensions."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    nrows, ncols = table.qmax + 1, table.pmax + 1
    grid = np.zeros((nrows, ncols))
    for q in range(nrows):
        for p in range(ncols):
            grid[q, p] = table.dim(p, q)

    fig, ax = plt.subplots(figsize=(max(6, 0.6 * ncols), max(2.5, 0.6 * nrows)))
    masked = np.ma.masked_equal(grid, 0)
    mesh = ax.imshow(masked, cmap="viridis", aspect="auto")
    ax.set_xticks(range(ncols))
    ax.set_yticks(range(nrows))
    ax.set_xlabel("p")
    ax.set_ylabel("q")
    label = ", ".join(str(x) for x in table.a)
    ax.set_title(f"Graded Betti numbers of Seg({label})")
    threshold = grid.max() / 2 if grid.max() else 0
    for q in range(nrows):
        for p in range(ncols):
            v = int(grid[q, p])
            if v:
                color = "white" if v < threshold else "black"
                ax.text(p, q, str(v), ha="center", va="center", color=color, fontsize=8)
    fig.colorbar(mesh, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(table: BettiTable, out_dir: str = ".") -> tuple:
    """Write both files into out_dir; returns (csv_path, png_path)."""
    os.makedirs(out_dir, exist_ok=True)
    stem = table_stem(table)
    csv_path = os.path.join(out_dir, stem + ".csv")
    png_path = os.path.join(out_dir, stem + ".png")
    write_csv(table, csv_path)
    render_heatmap(table, png_path)
    return csv_path, png_path
