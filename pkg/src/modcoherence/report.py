"""Timing report: CSV table plus a figure of decision cost against edge count."""
from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .harness import TimingRow  # noqa: E402

FIELDS = ("rank", "edges", "lift_seconds", "oracle_seconds", "max_modulus")


def write_csv(rows: list[TimingRow], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(FIELDS)
        for r in rows:
            w.writerow([r.rank, r.edges, f"{r.lift_seconds:.6e}",
                        f"{r.oracle_seconds:.6e}", r.max_modulus])


def plot_timings(rows: list[TimingRow], path: Path) -> None:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    edges = [r.edges for r in rows]
    ax1.scatter(edges, [r.lift_seconds * 1e3 for r in rows], s=10, label="lift + unify")
    ax1.scatter(edges, [r.oracle_seconds * 1e3 for r in rows], s=10, marker="x",
                label="exact oracle")
    ax1.set_xlabel("edges in two-route diagram")
    ax1.set_ylabel("time (ms)")
    ax1.legend(frameon=False)

    ranks = sorted({r.rank for r in rows})
    ax2.semilogy(ranks, [max(r.max_modulus for r in rows if r.rank == k) for k in ranks],
                 marker="o")
    ax2.set_xlabel("tree rank")
    ax2.set_ylabel("largest modulus")
    for ax in (ax1, ax2):
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
