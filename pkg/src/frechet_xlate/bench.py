"""Event-driven updates versus full recomputation, measured on random sweeps.

For every trial a random pair of curves is swept along a random direction
over the default range.  The report counts events, the lattice changes the
event updates push to the reachability backend, and what rebuilding the
whole lattice at every event would have cost (events x lattice size).
Reports are deterministic for a fixed seed unless wall-clock timings are
requested.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from .curves import random_curve
from .freespace import frechet_value
from .sweep import VVE, run_sweep
from .translation import critical_curves_2d, critical_counts

# per-event lattice-change budget: VE events <= VE_CONSTANT * (n_pi + n_sigma) + 1, VVE events <= VVE_BOUND
VE_CONSTANT = 6
VVE_BOUND = 8


@dataclass
class TrialReport:
    seed: int
    trial: int
    n_pi: int
    n_sigma: int
    delta: float
    direction: list[float]
    lam_range: list[float]
    m: int
    m_ve: int
    m_vve: int
    ticks: int
    lattice_cols: int
    lattice_rows: int
    initial_writes: int
    event_writes: int  # effective lattice changes pushed to the backend by events
    raw_writes: int  # writes emitted by grid operations, including no-op rewrites undone later
    recompute_writes: int
    write_ratio: Optional[float]
    backend_updates: int
    backend_queries: int
    max_ve_changes: int
    max_vve_changes: int
    bound_violations: int
    feasible: list[list[float]]
    curve_counts: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)


@dataclass
class BenchReport:
    seed: int
    n: int
    trials: int
    backend: str
    ve_constant: int
    vve_bound: int
    results: list[TrialReport]
    total_event_writes: int = 0
    total_recompute_writes: int = 0
    write_ratio: Optional[float] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    def to_tsv(self) -> str:
        cols = ["trial", "n_pi", "n_sigma", "delta", "m", "m_ve", "m_vve", "lattice_cols", "lattice_rows",
                "event_writes", "recompute_writes", "write_ratio", "backend_queries", "max_ve_changes",
                "max_vve_changes", "bound_violations"]
        has_t = any(r.timings for r in self.results)
        head = cols + (["t_sweep"] if has_t else [])
        lines = ["\t".join(head)]
        for r in self.results:
            row = [repr(getattr(r, c)) if isinstance(getattr(r, c), float) else str(getattr(r, c)) for c in cols]
            if has_t:
                row.append(repr(r.timings.get("sweep", 0.0)))
            lines.append("\t".join(row))
        lines.append(f"# total\tevent_writes={self.total_event_writes}\trecompute_writes={self.total_recompute_writes}"
                     f"\twrite_ratio={self.write_ratio!r}")
        return "\n".join(lines) + "\n"


def make_instance(seed: int, trial: int, n: int):
    rng = random.Random(seed * 1_000_003 + trial)
    pi = random_curve(rng.randrange(2**31), n)
    sigma = random_curve(rng.randrange(2**31), n)
    ang = rng.uniform(0.0, 2.0 * math.pi)
    v = (math.cos(ang), math.sin(ang))
    delta = rng.uniform(0.4, 0.9) * frechet_value(pi, sigma, 1e-6)
    return pi, sigma, v, delta


def run_trial(seed: int, trial: int, n: int, backend: str = "baseline", timings: bool = False) -> TrialReport:
    pi, sigma, v, delta = make_instance(seed, trial, n)
    clock = time.perf_counter()
    res = run_sweep(pi, sigma, v, None, delta, backend)
    elapsed = time.perf_counter() - clock
    plan = res.plan
    counts = plan.counts()
    event_writes = sum(t.updates for t in res.ticks)
    raw = sum(t.writes for t in res.ticks)
    ve_bound = VE_CONSTANT * (pi.n + sigma.n) + 1
    max_ve = max_vve = violations = 0
    for t in res.ticks:
        n_vve = sum(1 for e in t.events if e.family == VVE)
        n_ve = len(t.events) - n_vve
        if n_ve == 0:
            max_vve = max(max_vve, t.updates if n_vve == 1 else 0)
        elif n_vve == 0 and n_ve == 1:
            max_ve = max(max_ve, t.updates)
        if t.updates > n_ve * ve_bound + n_vve * VVE_BOUND:
            violations += 1
    recompute = counts["m"] * res.lattice_size
    n_cols = pi.n + 2 * sigma.n * (pi.n - 1)
    n_rows = sigma.n + 2 * pi.n * (sigma.n - 1)
    rep = TrialReport(
        seed=seed, trial=trial, n_pi=pi.n, n_sigma=sigma.n, delta=delta, direction=[plan.direction.x, plan.direction.y],
        lam_range=[plan.lo, plan.hi], m=counts["m"], m_ve=counts["m_ve"], m_vve=counts["m_vve"], ticks=len(res.ticks),
        lattice_cols=n_cols, lattice_rows=n_rows, initial_writes=n_cols * n_rows, event_writes=event_writes,
        raw_writes=raw, recompute_writes=recompute,
        write_ratio=(recompute / event_writes) if event_writes else None,
        backend_updates=res.backend_updates, backend_queries=res.backend_queries,
        max_ve_changes=max_ve, max_vve_changes=max_vve, bound_violations=violations,
        feasible=res.intervals,
        curve_counts=critical_counts(critical_curves_2d(pi, sigma, delta)) if delta > 0 else {},
    )
    if timings:
        rep.timings = {"sweep": elapsed}
    return rep


def run_bench(seed: int, n: int, trials: int, backend: str = "baseline", timings: bool = False) -> BenchReport:
    if n < 2 or trials < 0:
        raise ValueError("need n >= 2 and trials >= 0")
    results = [run_trial(seed, k, n, backend, timings) for k in range(trials)]
    rep = BenchReport(seed, n, trials, backend, VE_CONSTANT, VVE_BOUND, results)
    rep.total_event_writes = sum(r.event_writes for r in results)
    rep.total_recompute_writes = sum(r.recompute_writes for r in results)
    if rep.total_event_writes:
        rep.write_ratio = rep.total_recompute_writes / rep.total_event_writes
    return rep
