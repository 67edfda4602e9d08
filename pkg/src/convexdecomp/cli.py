"""Command line: decompose, verify, gen, fuzz, oracle, bench.

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import os
import random
import sys
import time
from collections import Counter
from multiprocessing import Pool

from .baseline import baseline_decompose
from .formats import (
    FormatError,
    format_decomposition,
    read_decomposition,
    read_points,
    write_points,
)
from .generators import gen_near_pm, gen_pm_set, gen_random
from .geometry import GeneralPositionError, convex_hull
from .minimal import decompose
from .oracle import ORACLE_CAP, min_convex_decomposition, theorem_bound_check
from .pm import NotPmSetError, pm_decompose
from .radial import build_radial_structure
from .svg import RenderError, write_svg
from .verifier import verify

ALGORITHMS = {"baseline": baseline_decompose, "pm": pm_decompose, "main": decompose}
GENERATORS = {"random": gen_random, "pm": gen_pm_set, "near-pm": gen_near_pm}
ARCHIVE_ENV = "CONVEXDECOMP_ARCHIVE_DIR"


class InputError(Exception):
    pass


def _load(path):
    try:
        return read_points(path)
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    except GeneralPositionError as exc:
        raise InputError(f"{path}: not in general position: {exc}") from None
    except (OSError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _run(algorithm: str, ps):
    try:
        return ALGORITHMS[algorithm](ps)
    except NotPmSetError as exc:
        raise InputError(str(exc)) from None


def cmd_decompose(args) -> int:
    ps = _load(args.input)
    d = _run(args.algorithm, ps)
    text = format_decomposition(d, ps)
    report_out = sys.stdout
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        report_out = sys.stderr
    if args.svg:
        write_svg(args.svg, d, ps)
    if not args.verify:
        return 0
    rs = build_radial_structure(ps)
    report = verify(d, ps, k=rs.k)
    report_out.write(report.text())
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    ps = _load(args.input)
    try:
        d, _ = read_decomposition(args.cells)
    except FormatError as exc:
        raise InputError(f"{args.cells}: {exc}") from None
    except OSError as exc:
        raise InputError(str(exc)) from None
    report = verify(d, ps, k=build_radial_structure(ps).k)
    sys.stdout.write(report.text())
    return 0 if report.passed else 1


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "random":
        ps = gen_random(args.n, args.seed, args.range)
    else:
        ps = GENERATORS[kind](args.n, args.seed)
    comment = f"gen {kind} n={args.n} seed={args.seed}" + (f" range={args.range}" if kind == "random" else "")
    write_points(args.out, ps, comment)
    return 0


def trial_instance(seed: int, t: int, n_min: int, n_max: int, generator: str):
    """The t-th instance of a campaign: a pure function of its arguments."""
    rng = random.Random(f"trial:{seed}:{t}")
    n = rng.randint(n_min, n_max)
    sub_seed = seed * 1_000_000 + t
    if generator == "random":
        return sub_seed, gen_random(n, sub_seed)
    if generator == "pm":
        n = max(n, 5)
        return sub_seed, gen_pm_set(n, sub_seed)
    return sub_seed, gen_near_pm(max(n, 8), sub_seed)


def run_trial(task) -> dict:
    seed, t, n_min, n_max, algorithm, generator, save = task
    sub_seed, ps = trial_instance(seed, t, n_min, n_max, generator)
    start = time.perf_counter()
    d = ALGORITHMS[algorithm](ps)
    ms = (time.perf_counter() - start) * 1000
    rs = build_radial_structure(ps)
    report = verify(d, ps, k=rs.k, minimality=algorithm == "main")
    n, c = len(ps), len(convex_hull(ps))
    target = 10 * n // 7 - c
    if save:
        with open(os.path.join(save, f"trial-{t:05d}.dec"), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(format_decomposition(d, ps))
    return {
        "trial": t,
        "seed": sub_seed,
        "n": n,
        "c": c,
        "k": rs.k,
        "branch": d.accounting.get("branch", algorithm),
        "cells": len(d),
        "bound": target,
        "slack": len(d) - target,
        "ms": round(ms, 3),
        "passed": report.passed,
        "failed": [ch.line() for ch in report.checks.values() if not ch.passed],
        "discrepancies": list(d.discrepancies),
        "points": ps,
    }


def run_campaign(trials, n_min, n_max, seed, algorithm, generator, workers=1, save=None) -> list[dict]:
    if save:
        os.makedirs(save, exist_ok=True)
    tasks = [(seed, t, n_min, n_max, algorithm, generator, save) for t in range(trials)]
    if workers > 1 and trials > 1:
        with Pool(workers) as pool:
            return list(pool.imap(run_trial, tasks, chunksize=4))
    return [run_trial(task) for task in tasks]


def _archive(res: dict, algorithm: str) -> str:
    folder = os.environ.get(ARCHIVE_ENV, "fuzz-archive")
    os.makedirs(folder, exist_ok=True)
    path = os.path.join(folder, f"{algorithm}-seed{res['seed']}.txt")
    notes = [f"algorithm={algorithm} seed={res['seed']} n={res['n']}"] + res["failed"] + res["discrepancies"]
    write_points(path, res["points"], "\n".join(notes))
    return path


def cmd_fuzz(args) -> int:
    generator = args.generator or ("pm" if args.algorithm == "pm" else "random")
    results = run_campaign(args.trials, args.n_min, args.n_max, args.seed, args.algorithm, generator,
                           args.workers, args.save)
    failures = [r for r in results if not r["passed"]]
    flagged = [r for r in results if not r["passed"] or r["discrepancies"]]
    for r in flagged:
        print(f"archived {_archive(r, args.algorithm)}")
    print(f"trials={len(results)} failures={len(failures)} discrepancies={sum(bool(r['discrepancies']) for r in results)}")
    if results:
        branches = Counter(r["branch"] for r in results)
        print("branches " + " ".join(f"{b}={branches[b]}" for b in sorted(branches)))
        hist = Counter(r["slack"] for r in results)
        print("slack histogram (cells - (floor(10n/7) - c)):")
        for s in sorted(hist):
            print(f"  {s:+d}: {hist[s]}")
    return 1 if failures else 0


def cmd_oracle(args) -> int:
    ps = _load(args.input)
    if len(ps) > ORACLE_CAP:
        raise InputError(f"n={len(ps)} exceeds the oracle cap {ORACLE_CAP}")
    res = min_convex_decomposition(ps)
    n, c = len(ps), len(convex_hull(ps))
    ok = theorem_bound_check(ps, res)
    note = "" if ok else " (small-n regime)"
    print(f"min={res.min_cells} bound={10 * n // 7 - c} bound_check={str(ok).lower()}{note}")
    sizes = []
    for name, fn in ALGORITHMS.items():
        try:
            sizes.append(f"{name}={len(fn(ps))}")
        except NotPmSetError:
            sizes.append(f"{name}=n/a")
    print(" ".join(sizes))
    print("witness " + " | ".join(" ".join(map(str, cell)) for cell in res.witness.cells))
    return 0


CSV_COLUMNS = ("seed", "n", "c", "k", "branch", "cells", "bound", "slack", "ms")


def cmd_bench(args) -> int:
    results = run_campaign(args.trials, args.n_min, args.n_max, args.seed, args.algorithm, args.generator,
                           args.workers)
    with open(args.csv, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in results:
            w.writerow([r[col] for col in CSV_COLUMNS])
    bad = sum(not r["passed"] for r in results)
    print(f"trials={len(results)} failures={bad} csv={args.csv}")
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="convexdecomp", description="Convex decompositions of planar point sets.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="decompose a point file")
    d.add_argument("--input", required=True)
    d.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="main")
    d.add_argument("--verify", action="store_true")
    d.add_argument("--svg")
    d.add_argument("--out", help="decomposition file (default: stdout)")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="check a decomposition file")
    v.add_argument("--input", required=True)
    v.add_argument("--cells", required=True)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="write a generated point file")
    g.add_argument("kind", choices=sorted(GENERATORS))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--range", type=int, default=10**6)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    for name, func, helptext in (("fuzz", cmd_fuzz, "random validity campaign"),
                                 ("bench", cmd_bench, "timed campaign written to CSV")):
        f = sub.add_parser(name, help=helptext)
        f.add_argument("--trials", type=int, required=True)
        f.add_argument("--n-min", type=int, default=4)
        f.add_argument("--n-max", type=int, default=200)
        f.add_argument("--seed", type=int, default=0)
        f.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="main")
        f.add_argument("--workers", type=int, default=1)
        if name == "bench":
            f.add_argument("--generator", choices=sorted(GENERATORS), default="random")
            f.add_argument("--csv", required=True)
        else:
            f.add_argument("--generator", choices=sorted(GENERATORS))
            f.add_argument("--save", help="write each trial's decomposition file here")
        f.set_defaults(func=func)

    o = sub.add_parser("oracle", help="exhaustive minimum for n <= 9")
    o.add_argument("--input", required=True)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        if args.command == "gen":
            print(f"error: {exc}", file=sys.stderr)
            return 2
        raise


if __name__ == "__main__":
    sys.exit(main())
