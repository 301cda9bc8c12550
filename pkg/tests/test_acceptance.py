"""Acceptance criteria, one test each.  Every test prints one
``CRITERION k PASS|FAIL`` line (visible with or without ``-s``)."""

import functools
import io
import json
import random

import numpy as np
import pytest

from frechet_xlate.bench import VE_CONSTANT, VVE_BOUND
from frechet_xlate.cli import main
from frechet_xlate.curves import Curve, random_curve
from frechet_xlate.freespace import alt_godau_decide, build_skeleton, frechet_value
from frechet_xlate.fsg import build_fsg, fsg_reachable
from frechet_xlate.grid import build_grid, grid_reachable
from frechet_xlate.reach import BaselineBackend, BlockedBackend
from frechet_xlate.sweep import VVE, run_sweep, sweep_decide
from frechet_xlate.translation import decide_translation_2d

from corpus import grid_oracle, sweep_instance, translation_instance


@pytest.fixture
def report(capsys):
    def emit(k: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nCRITERION {k} {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def test_criterion_1_oracle_triangle(report):
    total = agree = 0
    for seed in (11, 22, 33, 44, 55):
        rng = random.Random(seed)
        for _ in range(40):
            pi = random_curve(rng.randrange(2**31), rng.randint(2, 6))
            sigma = random_curve(rng.randrange(2**31), rng.randint(2, 6))
            d = frechet_value(pi, sigma, 1e-7) * rng.uniform(0.8, 1.2)
            sk = build_skeleton(pi, sigma, d)
            fsg = build_fsg(sk)
            g = build_grid(fsg, sk)
            b = BaselineBackend()
            b.init(g.weights)
            answers = {alt_godau_decide(pi, sigma, d), fsg_reachable(fsg), grid_reachable(g, b)}
            total += 1
            agree += len(answers) == 1
    report(1, total >= 200 and agree == total, f"{agree}/{total} instances agree")


@functools.lru_cache(maxsize=None)
def sweep_corpus():
    out = []
    for seed in range(100):
        pi, sigma, v, d = sweep_instance(seed)
        out.append((pi, sigma, d, run_sweep(pi, sigma, v, None, d)))
    return out


def test_criterion_2_sweep_completeness(report):
    gaps = bad = 0
    for pi, sigma, d, res in sweep_corpus():
        u = res.plan.direction
        for g in res.gaps:
            gaps += 1
            bad += g.decision != alt_godau_decide(pi, sigma, d, t=(g.mid * u.x, g.mid * u.y))
    report(2, len(sweep_corpus()) >= 100 and bad == 0, f"{gaps - bad}/{gaps} gap midpoints agree over 100 sweeps")


def test_criterion_3_update_bounds(report):
    violations = ve_ticks = vve_ticks = 0
    max_ve = max_vve = 0
    for pi, sigma, d, res in sweep_corpus():
        ve_bound = VE_CONSTANT * (pi.n + sigma.n) + 1
        for t in res.ticks:
            n_vve = sum(1 for e in t.events if e.family == VVE)
            n_ve = len(t.events) - n_vve
            if len(t.events) == 1:
                if n_vve:
                    vve_ticks += 1
                    max_vve = max(max_vve, t.updates)
                else:
                    ve_ticks += 1
                    max_ve = max(max_ve, t.updates / ve_bound)
            violations += t.updates > n_ve * ve_bound + n_vve * VVE_BOUND
    detail = (f"{violations} violations; C = {VE_CONSTANT}, max VVE changes {max_vve} <= {VVE_BOUND} "
              f"({vve_ticks} lone VVE ticks), max VE changes at {max_ve:.2f} of bound ({ve_ticks} lone VE ticks)")
    report(3, violations == 0 and VE_CONSTANT <= 6, detail)


def test_criterion_4_grid_size(report):
    sizes = []
    for n in (2, 3, 5):
        sk = build_skeleton(random_curve(n, n), random_curve(50 + n, n), 0.5)
        sizes.append(build_grid(build_fsg(sk), sk).weights.shape)
    report(4, sizes == [(6, 6), (15, 15), (45, 45)], f"lattice shapes {sizes}")


@functools.lru_cache(maxsize=None)
def translation_corpus():
    out = []
    for seed in range(50):
        pi, sigma, d = translation_instance(seed)
        a = decide_translation_2d(pi, sigma, d, "oracle")
        b = decide_translation_2d(pi, sigma, d, "events")
        out.append((pi, sigma, d, a, b, grid_oracle(pi, sigma, d)))
    return out


def test_criterion_5_translation_vs_grid(report):
    fa = fb = fc = yes = 0
    for pi, sigma, d, a, b, found in translation_corpus():
        yes += a[0]
        fa += found[1e-3] and not a[0]
        fb += (not a[0]) and found[1e-2]
        for ok, w in (a, b):
            fc += ok and not alt_godau_decide(pi, sigma, d, t=w)
    n = len(translation_corpus())
    report(5, n >= 50 and fa == fb == fc == 0,
           f"{n} instances ({yes} YES): missed grid witnesses {fa}, NO with near-feasible grid point {fb}, "
           f"bad witnesses {fc}")


def test_criterion_6_mode_equivalence(report):
    corpus = translation_corpus()
    same = sum(a[0] == b[0] for _, _, _, a, b, _ in corpus)
    report(6, same == len(corpus), f"{same}/{len(corpus)} oracle/events decisions agree")


def test_criterion_7_backend_interchangeability(report):
    rng = random.Random(77)
    updates = runs = 0
    mismatches = 0
    while updates < 10_000:
        nc, nr = rng.randint(1, 64), rng.randint(1, 64)
        p = rng.uniform(0.5, 0.95)
        w = (np.random.default_rng(runs).random((nc, nr)) < p).astype(np.uint8)
        ups = [(rng.randrange(nc), rng.randrange(nr), rng.randrange(2)) for _ in range(rng.randint(50, 400))]
        mismatches += BaselineBackend().offline_process(w, ups) != BlockedBackend().offline_process(w, ups)
        updates += len(ups)
        runs += 1
    report(7, mismatches == 0, f"{updates} updates over {runs} lattices up to 64x64, {mismatches} mismatching runs")


def test_criterion_8_write_ratio(report):
    out = io.StringIO()
    code = main(["bench", "--seed", "2024", "--n", "6", "--trials", "3", "--json"], out)
    rep = json.loads(out.getvalue())
    ok = code == 0 and rep["total_event_writes"] * 10 <= rep["total_recompute_writes"]
    report(8, ok, f"event writes {rep['total_event_writes']} vs recompute {rep['total_recompute_writes']} "
                  f"(ratio {rep['write_ratio']:.1f})")


def test_criterion_9_known_values(report):
    pi, sigma = Curve.from_points([(0, 0), (2, 0)]), Curve.from_points([(0, 1), (2, 1)])
    got = sweep_decide(pi, sigma, (0, -1), (0, 3), 0.5)
    sweep_ok = len(got) == 1 and abs(got[0][0] - 0.5) <= 1e-9 and abs(got[0][1] - 1.5) <= 1e-9
    short, long = Curve.from_points([(0, 0), (1, 0)]), Curve.from_points([(0, 0), (3, 0)])
    flips = [decide_translation_2d(short, long, d, mode)[0] for mode in ("oracle", "events") for d in (0.9, 1.05)]
    report(9, sweep_ok and flips == [False, True, False, True], f"sweep {got}, translation decisions {flips}")
