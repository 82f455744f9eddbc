"""Random targets and query-complexity benchmarking."""
from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import astuple, dataclass, fields
from typing import Iterator, Optional

import numpy as np

from .automaton import equivalent
from .halfspace import Halfspace, canonicalize
from .learner import LearnResult, learn_adaptive, learn_nonadaptive
from .oracle import new_simulated

ALGORITHMS = ("adaptive", "nonadaptive")
MAX_RESAMPLES = 100


def make_rng(*key: int) -> np.random.Generator:
    """PCG64 seeded from a tuple of integers (seed, n, trial, ...)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(list(key))))


def generate_target(n: int, t: int, seed: int) -> Halfspace:
    """Weights uniform in [0, t], threshold uniform in [1, nt], canonicalised.

    Constant functions are resampled; after ``MAX_RESAMPLES`` tries the last
    (constant) draw is returned, recognisable by ``h.constant``.
    """
    rng = make_rng(seed, n, t)
    h = None
    for _ in range(MAX_RESAMPLES):
        weights = tuple(int(w) for w in rng.integers(0, t + 1, size=n))
        u = int(rng.integers(1, n * t + 1))
        h = canonicalize(Halfspace(weights, u, t))
        if h.constant is None:
            return h
    return h


def run_learner(target: Halfspace, t: int, algorithm: str,
                timing: bool = False) -> tuple[LearnResult, dict]:
    """Learn ``target`` through a fresh simulated oracle; returns the result and
    a learn-report dict."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    oracle = new_simulated(target, round_limit=2 if algorithm == "adaptive" else 1)
    start = time.perf_counter()
    if algorithm == "adaptive":
        result = learn_adaptive(oracle, target.n, t)
    else:
        result = learn_nonadaptive(oracle, target.n, t)
    elapsed = (time.perf_counter() - start) * 1000
    stats = oracle.stats()
    report = {
        "hypothesis": result.hypothesis.to_dict(),
        "rounds": stats["rounds"],
        "queries_per_round": stats["per_round"],
        "total_queries": stats["total"],
        "candidates": result.candidates,
        "pairs_checked": result.pairs_checked,
        "elapsed_ms": round(elapsed, 3) if timing else None,
        "correct": equivalent(result.hypothesis, target),
    }
    return result, report


@dataclass
class BenchConfig:
    n_min: int
    n_max: int
    t: int
    trials: int = 1
    seed: int = 0
    algorithm: str = "both"
    out: Optional[str] = None
    timing: bool = False

    def __post_init__(self):
        if self.n_min < 1 or self.n_max < self.n_min:
            raise ValueError(f"empty n range {self.n_min}..{self.n_max}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.algorithm not in (*ALGORITHMS, "both"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")

    @property
    def algorithms(self) -> tuple[str, ...]:
        return ALGORITHMS if self.algorithm == "both" else (self.algorithm,)


@dataclass
class BenchRecord:
    n: int
    t: int
    seed: int
    algorithm: str
    rounds: int
    queries_round1: int
    queries_round2: int
    total_queries: int
    candidates: int
    pairs_checked: int
    elapsed_ms: Optional[float]
    correct: bool


CSV_HEADER = [f.name for f in fields(BenchRecord)]


def trial_seed(seed: int, n: int, trial: int) -> int:
    return int(make_rng(seed, n, trial).integers(0, 2**63 - 1))


def iter_bench(cfg: BenchConfig) -> Iterator[BenchRecord]:
    for n in range(cfg.n_min, cfg.n_max + 1):
        for trial in range(cfg.trials):
            s = trial_seed(cfg.seed, n, trial)
            target = generate_target(n, cfg.t, s)
            for alg in cfg.algorithms:
                _, rep = run_learner(target, cfg.t, alg, cfg.timing)
                per = rep["queries_per_round"] + [0, 0]
                yield BenchRecord(n, cfg.t, s, alg, rep["rounds"], per[0], per[1],
                                  rep["total_queries"], rep["candidates"],
                                  rep["pairs_checked"], rep["elapsed_ms"], rep["correct"])


def records_to_csv(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        row = list(astuple(r))
        row[CSV_HEADER.index("elapsed_ms")] = "" if r.elapsed_ms is None else r.elapsed_ms
        row[CSV_HEADER.index("correct")] = "true" if r.correct else "false"
        w.writerow(row)
    return buf.getvalue()


def loglog_slope(ns: list[int], counts: list[float]) -> float:
    """Least-squares slope of log(count) against log(n)."""
    if len(set(ns)) < 2:
        return math.nan
    return float(np.polyfit(np.log(ns), np.log(counts), 1)[0])


def envelope(records: list[BenchRecord], algorithm: str) -> dict:
    """Mean total queries per n, their log-log slope, and the smallest C with
    mean <= C * n^(2t+2) across the range."""
    by_n: dict[int, list[int]] = {}
    for r in records:
        if r.algorithm == algorithm:
            by_n.setdefault(r.n, []).append(r.total_queries)
    if not by_n:
        return {}
    ns = sorted(by_n)
    means = [float(np.mean(by_n[n])) for n in ns]
    t = records[0].t
    return {
        "algorithm": algorithm,
        "n": ns,
        "mean_total": means,
        "slope": loglog_slope(ns, means),
        "C": max(m / n ** (2 * t + 2) for n, m in zip(ns, means)),
    }
