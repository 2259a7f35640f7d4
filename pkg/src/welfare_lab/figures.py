"""Figure rendering for the CLI report paths.

Each function draws one report figure and writes it to a file; the
library modules themselves stay plotting-free. The Agg backend is forced
so rendering works headless.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .lorenz import LorenzCurve
from .search import CollapseReport, UlbdConstruction

_FIGSIZE = (6.4, 4.4)
_DPI = 150


def _save(fig: "plt.Figure", path: "str | Path") -> Path:
    out = Path(path)
    fig.savefig(out, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return out


def lorenz_figure(
    curves: Sequence[tuple[str, LorenzCurve]], path: "str | Path"
) -> Path:
    """Plot one or more Lorenz curves against the equality diagonal."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot([0, 1], [0, 1], color="0.6", linestyle="--", linewidth=1, label="equality")
    for name, curve in curves:
        ax.plot(curve.us(), curve.ls(), marker="o", markersize=3, label=name)
    ax.set_xlabel("population share (poorest first)")
    ax.set_ylabel("cumulative utility share")
    ax.set_title("Lorenz curves")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.legend(loc="upper left")
    ax.grid(alpha=0.3)
    return _save(fig, path)


def reversal_figure(
    rows: Sequence[tuple[float, float, float, str]],
    path: "str | Path",
    witness_scale: float | None = None,
) -> Path:
    """Plot both aggregate values across the scale sweep, flip marked."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ts = [r[0] for r in rows]
    ax.plot(ts, [r[1] for r in rows], label="F(t * a)")
    ax.plot(ts, [r[2] for r in rows], label="F(t * b)")
    if witness_scale is not None:
        ax.axvline(witness_scale, color="crimson", linestyle=":", linewidth=1.2,
                   label=f"flip at t = {witness_scale:.4g}")
    ax.set_xscale("log")
    ax.set_xlabel("common scale t")
    ax.set_ylabel("aggregate value")
    ax.set_title("Scale sweep of the penalized aggregate")
    ax.legend()
    ax.grid(alpha=0.3)
    return _save(fig, path)


def collapse_figure(report: CollapseReport, path: "str | Path") -> Path:
    """Plot discounted welfare against replication with the analytic limits."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    lams = [r.lam for r in report.rungs]
    ax.plot(lams, [r.w_a for r in report.rungs], marker="o", label="profile a")
    ax.plot(lams, [r.w_b for r in report.rungs], marker="s", label="profile b")
    ax.axhline(report.limit_a, color="C0", linestyle="--", linewidth=1,
               label=f"limit a = {report.limit_a:.4g}")
    ax.axhline(report.limit_b, color="C1", linestyle="--", linewidth=1,
               label=f"limit b = {report.limit_b:.4g}")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("replication factor")
    ax.set_ylabel("rank-discounted welfare")
    ax.set_title(f"Replication collapse (k = {report.k:g})")
    ax.legend()
    ax.grid(alpha=0.3)
    return _save(fig, path)


def ulbd_figure(c: UlbdConstruction, path: "str | Path") -> Path:
    """Bar view of both level distributions with their scores annotated."""
    fig, (ax_a, ax_b) = plt.subplots(1, 2, figsize=(9.0, 4.0), sharey=True)
    ax_a.bar(c.dist_a.levels, c.dist_a.counts, width=0.35, color="C0")
    ax_a.set_title(f"concentrated: w = {c.w_a:.6g}, gini = {c.gini_a:.4g}")
    ax_b.bar(c.dist_b.levels, c.dist_b.counts, width=0.02, color="C1")
    ax_b.set_title(f"{c.m_levels}-level ladder: w = {c.w_b:.6g}, gini = {c.gini_b:.4g}")
    for ax in (ax_a, ax_b):
        ax.set_xlabel("utility level")
        ax.grid(alpha=0.3, axis="y")
    ax_a.set_ylabel("people at level")
    fig.suptitle(
        f"Level-discounting anomaly (k = {c.k:g}): "
        f"{'holds' if c.anomaly else 'does not hold'}"
    )
    return _save(fig, path)
