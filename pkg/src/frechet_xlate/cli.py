"""Command-line entry points.

Decisions go to stdout; the exit status only says whether the command ran
(0) or failed on usage, input or a failed self-check (nonzero).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

from .bench import run_bench
from .curves import Curve, CurveParseError, parse_curve
from .freespace import alt_godau_decide, build_skeleton, frechet_value
from .fsg import build_fsg, fsg_reachable
from .geometry import EPS, GeometryError
from .grid import build_grid, grid_reachable, to_pbm
from .reach import BACKENDS
from .sweep import run_sweep, write_trace
from .translation import DecideStats, decide_translation_2d

EXIT_USAGE = 2
EXIT_SELFCHECK = 3


class CliError(Exception):
    pass


def _curve(path: str) -> Curve:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}") from None
    try:
        return parse_curve(data)[0]
    except (CurveParseError, GeometryError, UnicodeDecodeError) as exc:
        raise CliError(f"{path}: {exc}") from None


def _finite(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return x


def _delta(text: str) -> float:
    x = _finite(text)
    if x < 0:
        raise argparse.ArgumentTypeError("delta must be non-negative")
    return x


def _positive(text: str) -> float:
    x = _finite(text)
    if x <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _pair(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pi", required=True, metavar="FILE", help="first curve")
    p.add_argument("--sigma", required=True, metavar="FILE", help="second curve (the one translated)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frechet-xlate",
                                     description="Frechet distance decisions, sweeps and translation search.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="is d_F(pi, sigma) <= delta?")
    _pair(p)
    p.add_argument("--delta", type=_delta, required=True)
    p.add_argument("--selfcheck", action="store_true", help="cross-check the free-space and grid graphs")

    p = sub.add_parser("frechet", help="d_F(pi, sigma) by bisection")
    _pair(p)
    p.add_argument("--tol", type=_positive, default=1e-9)

    p = sub.add_parser("sweep", help="feasible lambda-intervals of sigma + lambda * dir")
    _pair(p)
    p.add_argument("--dir", type=_finite, nargs=2, required=True, metavar=("DX", "DY"))
    p.add_argument("--delta", type=_delta, required=True)
    p.add_argument("--range", type=_finite, nargs=2, metavar=("LO", "HI"),
                   help="sweep range (default: wide enough to cover all interaction)")
    p.add_argument("--backend", choices=sorted(BACKENDS), default="baseline")
    p.add_argument("--trace", metavar="FILE", help="write the event trace as JSON Lines")
    p.add_argument("--selfcheck", action="store_true", help="compare every gap against the direct decision")

    p = sub.add_parser("xlate2d", help="is there a translation t with d_F(pi, sigma + t) <= delta?")
    _pair(p)
    p.add_argument("--delta", type=_delta, required=True)
    p.add_argument("--mode", choices=["oracle", "events"], default="oracle")
    p.add_argument("--backend", choices=sorted(BACKENDS), default="baseline")
    p.add_argument("--json", action="store_true", help="print a JSON report instead of the plain answer")
    p.add_argument("--selfcheck", action="store_true", help="verify a witness with the direct decision")

    p = sub.add_parser("bench", help="event-driven versus recompute lattice writes")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--backend", choices=sorted(BACKENDS), default="baseline")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true", help="include wall-clock times (output no longer reproducible)")
    p.add_argument("--out", metavar="SVG", help="also draw the write comparison")

    p = sub.add_parser("trace", help="write static snapshots and the event trace of a sweep")
    _pair(p)
    p.add_argument("--delta", type=_delta, required=True)
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--dir", type=_finite, nargs=2, default=[1.0, 0.0], metavar=("DX", "DY"))
    p.add_argument("--range", type=_finite, nargs=2, metavar=("LO", "HI"))
    return parser


def _yes(ok: bool) -> str:
    return "YES" if ok else "NO"


def _direction(d: Sequence[float]) -> tuple[float, float]:
    if d[0] == 0.0 and d[1] == 0.0:
        raise CliError("--dir must be a non-zero vector")
    return d[0], d[1]


def _range(r) -> Optional[tuple[float, float]]:
    if r is None:
        return None
    if r[0] > r[1]:
        raise CliError("--range needs LO <= HI")
    return r[0], r[1]


def cmd_decide(args, out) -> int:
    pi, sigma = _curve(args.pi), _curve(args.sigma)
    ok = alt_godau_decide(pi, sigma, args.delta, EPS)
    print(_yes(ok), file=out)
    if args.selfcheck:
        sk = build_skeleton(pi, sigma, args.delta, EPS)
        fsg = build_fsg(sk)
        other = (fsg_reachable(fsg), grid_reachable(build_grid(fsg, sk)))
        if other != (ok, ok):
            print(f"selfcheck failed: free-space graph {other[0]}, grid graph {other[1]}", file=sys.stderr)
            return EXIT_SELFCHECK
    return 0


def cmd_frechet(args, out) -> int:
    pi, sigma = _curve(args.pi), _curve(args.sigma)
    print(repr(frechet_value(pi, sigma, args.tol)), file=out)
    return 0


def cmd_sweep(args, out) -> int:
    pi, sigma = _curve(args.pi), _curve(args.sigma)
    v = _direction(args.dir)
    trace = open(args.trace, "w") if args.trace else None
    try:
        res = run_sweep(pi, sigma, v, _range(args.range), args.delta, args.backend, EPS,
                        selfcheck=args.selfcheck, trace=trace)
    finally:
        if trace is not None:
            trace.close()
    if res.intervals:
        print("FEASIBLE " + " ".join(repr(x) for iv in res.intervals for x in iv), file=out)
    else:
        print("INFEASIBLE", file=out)
    if args.selfcheck and res.selfcheck_failures:
        for msg in res.selfcheck_failures:
            print(f"selfcheck failed: {msg}", file=sys.stderr)
        return EXIT_SELFCHECK
    return 0


def cmd_xlate2d(args, out) -> int:
    pi, sigma = _curve(args.pi), _curve(args.sigma)
    stats = DecideStats()
    ok, t = decide_translation_2d(pi, sigma, args.delta, args.mode, args.backend, EPS, stats)
    if args.json:
        report = {"decision": _yes(ok), "witness": None if t is None else [t.x, t.y], "mode": args.mode,
                  "delta": args.delta, "candidates": stats.candidates, "evaluated": stats.evaluated,
                  "counts": stats.counts, "timings": stats.timings,
                  "backend_updates": stats.backend_updates, "backend_queries": stats.backend_queries}
        print(json.dumps(report, sort_keys=True), file=out)
    else:
        print(f"YES {t.x!r} {t.y!r}" if ok else "NO", file=out)
    if args.selfcheck and ok and not alt_godau_decide(pi, sigma, args.delta, EPS, t):
        print("selfcheck failed: witness rejected by the direct decision", file=sys.stderr)
        return EXIT_SELFCHECK
    return 0


def cmd_bench(args, out) -> int:
    if args.n < 2 or args.trials < 0:
        raise CliError("bench needs --n >= 2 and --trials >= 0")
    rep = run_bench(args.seed, args.n, args.trials, args.backend, args.timings)
    out.write(rep.to_json() + "\n" if args.json else rep.to_tsv())
    if args.out:
        from .plotting import plot_bench

        plot_bench(rep, args.out)
    return 0


def cmd_trace(args, out) -> int:
    from .plotting import plot_curves, plot_lattice, plot_sweep

    pi, sigma = _curve(args.pi), _curve(args.sigma)
    v = _direction(args.dir)
    os.makedirs(args.out, exist_ok=True)
    sk = build_skeleton(pi, sigma, args.delta, EPS)
    fsg = build_fsg(sk)
    grid = build_grid(fsg, sk)
    with open(os.path.join(args.out, "fsg.json"), "w") as fh:
        fh.write(fsg.to_json() + "\n")
    with open(os.path.join(args.out, "grid.pbm"), "w") as fh:
        fh.write(to_pbm(grid))
    with open(os.path.join(args.out, "events.jsonl"), "w") as fh:
        res = run_sweep(pi, sigma, v, _range(args.range), args.delta, "baseline", EPS, trace=fh)
    plot_curves(pi, sigma, os.path.join(args.out, "curves.svg"))
    plot_lattice(grid.weights, os.path.join(args.out, "grid.svg"))
    plot_sweep(res, os.path.join(args.out, "sweep.svg"))
    print(f"{_yes(grid_reachable(grid))} {len(res.plan.events)} events", file=out)
    return 0


COMMANDS = {"decide": cmd_decide, "frechet": cmd_frechet, "sweep": cmd_sweep, "xlate2d": cmd_xlate2d,
            "bench": cmd_bench, "trace": cmd_trace}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
