"""Static SVG figures for the trace and bench reports (matplotlib, Agg backend)."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .curves import Curve  # noqa: E402

# fixed hash salt and no date stamp keep SVG output byte-stable
matplotlib.rcParams["svg.hashsalt"] = "frechet-xlate"
_META = {"Date": None}


def _save(fig, path) -> None:
    fig.savefig(path, format="svg", metadata=_META)
    plt.close(fig)


def plot_curves(pi: Curve, sigma: Curve, path, t: Sequence[float] = (0.0, 0.0), title: str = "") -> None:
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot([p.x for p in pi], [p.y for p in pi], "o-", label="pi")
    ax.plot([s.x + t[0] for s in sigma], [s.y + t[1] for s in sigma], "s--", label="sigma + t")
    ax.set_aspect("equal")
    ax.legend(loc="best")
    if title:
        ax.set_title(title)
    _save(fig, path)


def plot_lattice(weights, path, title: str = "grid graph weights") -> None:
    """Weight lattice with the start vertex at the bottom left; dark = blocked."""
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(weights.T, origin="lower", cmap="gray", vmin=0, vmax=1, interpolation="nearest")
    ax.set_xlabel("column")
    ax.set_ylabel("row")
    ax.set_title(title)
    _save(fig, path)


def plot_sweep(result, path) -> None:
    """Decision along the sweep parameter, with event ticks."""
    fig, ax = plt.subplots(figsize=(7, 2.5))
    plan = result.plan
    for a, b in result.intervals:
        ax.plot([a, b], [1, 1], color="tab:green", linewidth=6, solid_capstyle="butt")
    for tick in result.ticks:
        ax.axvline(tick.lam, color="0.7", linewidth=0.5)
    ax.set_xlim(plan.lo, plan.hi if plan.hi > plan.lo else plan.lo + 1)
    ax.set_ylim(0.5, 1.5)
    ax.set_yticks([])
    ax.set_xlabel("lambda")
    ax.set_title(f"feasible set, {len(plan.events)} events")
    _save(fig, path)


def plot_bench(report, path) -> None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    trials = [r.trial for r in report.results]
    ax.bar([k - 0.2 for k in trials], [r.event_writes for r in report.results], width=0.4, label="event writes")
    ax.bar([k + 0.2 for k in trials], [r.recompute_writes for r in report.results], width=0.4, label="recompute writes")
    ax.set_yscale("log")
    ax.set_xlabel("trial")
    ax.set_ylabel("lattice writes")
    ax.legend(loc="best")
    _save(fig, path)
