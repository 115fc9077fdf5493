"""Rendering of region sweeps to image files.

Import stays local to the CLI's --plot path so the library never drags the
matplotlib backend in for pure computation.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

__all__ = ["plot_region"]


def plot_region(rows, path, n: int, k: int, interval=None) -> None:
    """Draw the attainable band of P(S >= k) over the swept w1 grid.

    rows: RegionRow sequence from region.sweep.  interval: optional
    (lo, hi) pair marked with dashed verticals.  The file format follows
    the path suffix (anything the matplotlib Agg canvas supports).
    """
    xs = [float(r.w1) for r in rows if r.feasible]
    lo = [float(r.min_bound) for r in rows if r.feasible]
    hi = [float(r.max_bound) for r in rows if r.feasible]

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if xs:
        ax.fill_between(xs, lo, hi, alpha=0.35, color="tab:blue", linewidth=0)
        ax.plot(xs, lo, color="tab:blue", linewidth=1.2)
        ax.plot(xs, hi, color="tab:blue", linewidth=1.2)
    if interval is not None:
        for endpoint in interval:
            ax.axvline(float(endpoint), color="tab:gray", linestyle="--", linewidth=0.9)
    ax.set_xlim(0, 1)
    ax.set_ylim(-0.02, 1.02)
    ax.set_xlabel("w1")
    ax.set_ylabel(f"P(S >= {k})")
    ax.set_title(f"Sharp tail bounds, n={n}, k={k}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
