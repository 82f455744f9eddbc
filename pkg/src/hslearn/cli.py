"""Command-line front end: ``hslearn {learn,bench,verify-lemmas,equiv}``.

Exit codes: 0 success / equivalent, 1 failure / not equivalent, 2 usage or
input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import lemmas
from .automaton import find_difference
from .bench import (BenchConfig, envelope, generate_target, iter_bench, make_rng,
                    records_to_csv, run_learner)
from .halfspace import Halfspace

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def load_halfspace(source: str) -> Halfspace:
    """Parse a halfspace from inline JSON or from a JSON file path."""
    try:
        text = source if source.lstrip().startswith("{") else Path(source).read_text()
        return Halfspace.from_json(text)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read halfspace from {source!r}: {exc}") from exc


def cmd_learn(args) -> int:
    if args.target:
        target = load_halfspace(args.target)
        t = target.t
        if not target.in_hs_t():
            raise InputError(f"target weights must lie in [0, {t}]")
    elif args.random:
        if args.n is None or args.t is None:
            raise InputError("--random needs --n and --t")
        t = args.t
        target = generate_target(args.n, t, args.seed)
    else:
        raise InputError("give --target or --random")

    algs = ("adaptive", "nonadaptive") if args.algorithm == "both" else (args.algorithm,)
    reports = []
    for alg in algs:
        _, rep = run_learner(target, t, alg, timing=args.timing)
        reports.append(rep)
    out = reports[0] if len(reports) == 1 else dict(zip(algs, reports))
    print(json.dumps(out))
    return EXIT_OK if all(r["correct"] for r in reports) else EXIT_FAIL


def cmd_bench(args) -> int:
    try:
        cfg = BenchConfig(args.n_min, args.n_max, args.t, args.trials, args.seed,
                          args.algorithm, args.out, args.timing)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    records = list(iter_bench(cfg))
    text = records_to_csv(records)
    if cfg.out:
        try:
            Path(cfg.out).write_text(text)
        except OSError as exc:
            raise InputError(f"cannot write {cfg.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    summary = sys.stderr if not cfg.out else sys.stdout
    for alg in cfg.algorithms:
        env = envelope(records, alg)
        print(f"# {alg}: log-log slope of total queries vs n = {env['slope']:.3f} "
              f"(reference 2t+4 = {2 * cfg.t + 4}); C = {env['C']:.4g} "
              f"for total <= C*n^{2 * cfg.t + 2}", file=summary)
    bad = sum(not r.correct for r in records)
    if bad:
        print(f"# {bad} incorrect hypotheses", file=summary)
    return EXIT_FAIL if bad else EXIT_OK


def verify_lemmas(trials: int, t_max: int, seed: int, out=None) -> bool:
    out = out or sys.stdout
    if trials <= 0:
        print("warning: trials = 0, nothing checked (vacuous pass)", file=out)
    ok = True
    for t in range(1, t_max + 1):
        for lemma in lemmas.LEMMAS:
            if trials > 0 and not lemmas.has_valid_inputs(lemma, t):
                print(f"PASS {lemma} t={t}: no valid inputs exist (vacuous)", file=out)
                continue
            rng = make_rng(seed, t, lemmas.LEMMAS.index(lemma))
            failures = []
            for _ in range(max(trials, 0)):
                inst = lemmas.random_instance(lemma, rng, t)
                err = lemmas.check_instance(lemma, inst, t)
                if err:
                    failures.append((inst, err))
            if failures:
                ok = False
                inst, err = failures[0]
                print(f"FAIL {lemma} t={t}: {len(failures)}/{trials} violations; "
                      f"first: {inst} -> {err}", file=out)
            else:
                print(f"PASS {lemma} t={t}: {trials} instances", file=out)
    for t in range(2, t_max + 1):
        w = lemmas.tightness_instance(t)
        last = lemmas.zero_sum_partition(w, t)[-1]
        distinct = lemmas.subset_sums_distinct(w)
        forced = not lemmas.has_zero_subset(w)
        good = len(last) == 2 * t - 2 and distinct and forced
        ok &= good
        print(f"{'PASS' if good else 'FAIL'} tightness t={t}: w={w} last block size "
              f"{len(last)} (2t-2 = {2 * t - 2}), subset sums distinct: {distinct}, "
              f"no zero-sum subset: {forced}", file=out)
    return ok


def cmd_verify_lemmas(args) -> int:
    t_max = args.t if args.t is not None else 4
    return EXIT_OK if verify_lemmas(args.trials, t_max, args.seed) else EXIT_FAIL


def cmd_equiv(args) -> int:
    h1, h2 = load_halfspace(args.file1), load_halfspace(args.file2)
    if h1.n != h2.n:
        raise InputError(f"dimension mismatch: {h1.n} vs {h2.n}")
    w = find_difference(h1, h2)
    print("equivalent" if w is None else str(w))
    return EXIT_OK if w is None else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hslearn", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    learn = sub.add_parser("learn", help="learn a target through a simulated oracle")
    learn.add_argument("--target", help="halfspace JSON, inline or a file path")
    learn.add_argument("--random", action="store_true", help="draw a random target")
    learn.add_argument("--n", type=int)
    learn.add_argument("--t", type=int)
    learn.add_argument("--seed", type=int, default=0)
    learn.add_argument("--algorithm", choices=["adaptive", "nonadaptive", "both"],
                       default="adaptive")
    learn.add_argument("--timing", action="store_true",
                       help="record wall-clock elapsed_ms (makes output nondeterministic)")
    learn.set_defaults(func=cmd_learn)

    bench = sub.add_parser("bench", help="query-complexity benchmark, CSV output")
    bench.add_argument("--n-min", type=int, required=True)
    bench.add_argument("--n-max", type=int, required=True)
    bench.add_argument("--t", type=int, required=True)
    bench.add_argument("--trials", type=int, default=1)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--algorithm", choices=["adaptive", "nonadaptive", "both"],
                       default="both")
    bench.add_argument("--out", help="CSV path (default: standard output)")
    bench.add_argument("--timing", action="store_true")
    bench.set_defaults(func=cmd_bench)

    ver = sub.add_parser("verify-lemmas", help="randomised checks of the sum lemmas")
    ver.add_argument("--trials", type=int, default=1000)
    ver.add_argument("--t", type=int, help="largest t to check (default 4)")
    ver.add_argument("--seed", type=int, default=0)
    ver.set_defaults(func=cmd_verify_lemmas)

    eq = sub.add_parser("equiv", help="decide equivalence of two halfspaces")
    eq.add_argument("file1")
    eq.add_argument("file2")
    eq.set_defaults(func=cmd_equiv)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
