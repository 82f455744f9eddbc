"""Acceptance criteria, each run at full size and reported as one PASS/FAIL line."""
import itertools
import json

import numpy as np
import pytest

from hslearn import (Halfspace, canonicalize, equivalent, find_difference, learn_adaptive,
                     learn_nonadaptive, new_simulated, nonadaptive_queries, specifying_set_check)
from hslearn.automaton import XOR, build, state_bound
from hslearn.bench import BenchConfig, envelope, generate_target, iter_bench, make_rng, records_to_csv
from hslearn.cli import main
from hslearn import lemmas

pytestmark = pytest.mark.acceptance


def cube_values(h):
    """Independent evaluation over the whole cube, x1 as the top bit."""
    n = h.n
    bits = (np.arange(1 << n)[:, None] >> np.arange(n - 1, -1, -1)) & 1
    return (bits @ np.array(h.weights, dtype=np.int64)) >= h.threshold


def all_canonical(n, t):
    seen = set()
    for ws in itertools.product(range(t + 1), repeat=n):
        for u in range(0, n * t + 2):
            h = canonicalize(Halfspace(ws, u, t))
            if h.constant is None and h not in seen:
                seen.add(h)
                yield h


def test_1_exhaustive_exactness(criterion):
    bad, count = [], 0
    for t in (1, 2):
        for target in all_canonical(4, t):
            count += 1
            o = new_simulated(target, round_limit=2)
            hyp = learn_adaptive(o, 4, t).hypothesis
            if o.stats()["rounds"] > 2 or not equivalent(hyp, target):
                bad.append((target, hyp))
    assert criterion("1 exhaustive exactness n=4, t in {1,2}", not bad,
                     f"{count} targets, {len(bad)} wrong"), bad[:3]


def test_2_randomized_exactness(criterion):
    rng = make_rng(2024)
    bad = []
    for k in range(500):
        n, t = int(rng.choice([6, 7, 8])), int(rng.choice([2, 3]))
        target = generate_target(n, t, k)
        oa = new_simulated(target, round_limit=2)
        ha = learn_adaptive(oa, n, t).hypothesis
        on = new_simulated(target, round_limit=1)
        hn = learn_nonadaptive(on, n, t).hypothesis
        if not (equivalent(ha, target) and equivalent(hn, target)
                and oa.stats()["rounds"] <= 2 and on.stats()["rounds"] == 1):
            bad.append(target)
    assert criterion("2 randomized exactness, 500 targets, both learners", not bad,
                     f"{len(bad)} wrong"), bad[:3]


def test_3_lemma_suites(criterion):
    failures = []
    for t in range(1, 5):
        for idx, lemma in enumerate(lemmas.LEMMAS):
            if not lemmas.has_valid_inputs(lemma, t):
                continue
            rng = make_rng(3, t, idx)
            bad = [inst for inst in (lemmas.random_instance(lemma, rng, t) for _ in range(10_000))
                   if lemmas.check_instance(lemma, inst, t)]
            if bad:
                failures.append(f"{lemma} t={t}: {len(bad)}/10000, e.g. {bad[0]}")
    for t in (2, 3, 4):
        w = lemmas.tightness_instance(t)
        if not (len(lemmas.zero_sum_partition(w, t)[-1]) == 2 * t - 2
                and lemmas.subset_sums_distinct(w) and not lemmas.has_zero_subset(w)):
            failures.append(f"tightness t={t}")
    assert criterion("3 lemma suites, 10^4 instances per lemma per t=1..4, tightness t=2..4",
                     not failures, "; ".join(failures)), failures


def random_pair(rng):
    n, t = int(rng.integers(1, 13)), int(rng.integers(1, 4))

    def draw():
        return Halfspace(tuple(int(w) for w in rng.integers(-t, t + 1, size=n)),
                         int(rng.integers(-(n * t) // 2 - 1, (n * t) // 2 + 2)), t)

    h1 = draw()
    kind = int(rng.integers(3))
    if kind == 0:
        return h1, draw()
    if kind == 1:
        return h1, canonicalize(h1)
    ws = list(h1.weights)
    i = int(rng.integers(n))
    ws[i] = int(np.clip(ws[i] + rng.choice([-1, 1]), -t, t))
    return h1, Halfspace(tuple(ws), h1.threshold + int(rng.integers(-1, 2)), t)


def test_4_automaton_equivalence(criterion):
    rng = make_rng(4)
    bad, equal_pairs, worst = [], 0, 0.0
    for _ in range(10_000):
        h1, h2 = random_pair(rng)
        diff = cube_values(h1) != cube_values(h2)
        w = find_difference(h1, h2)
        equal_pairs += not diff.any()
        if diff.any() != (w is not None) or (w is not None and h1(w) == h2(w)):
            bad.append((h1, h2, w))
        aut = build([h1, h2], XOR)
        worst = max(worst, sum(map(len, aut.states[1:])) / state_bound(3, 2, h1.n))
    assert criterion("4 automaton equivalence vs brute force, 10^4 pairs n<=12 t<=3", not bad,
                     f"{equal_pairs} equivalent pairs, max states/bound {worst:.3g}"), bad[:3]


def test_5_query_envelope(criterion):
    cfg = BenchConfig(8, 16, 1, trials=5, seed=5, algorithm="adaptive")
    recs = [r for r in iter_bench(cfg) if r.n % 2 == 0]
    env = envelope(recs, "adaptive")
    ok = env["slope"] <= 6 and all(r.correct for r in recs)
    assert criterion("5 query envelope t=1, n in {8..16}", ok,
                     f"slope {env['slope']:.3f} <= 6, C = {env['C']:.4g}, "
                     f"mean totals {[round(m) for m in env['mean_total']]}"), env


def test_6_specifying_set(criterion):
    q = nonadaptive_queries(4, 2)
    bad = []
    for seed in range(50):
        target = generate_target(4, 2, seed)
        g = specifying_set_check(q, target, 2)
        if g is not None:
            bad.append(f"target {target} not separated from {g}")
    assert criterion("6 specifying set n=4 t=2, 50 targets", not bad,
                     "; ".join([f"|Q| = {len(q)}"] + bad[:3])), bad


def test_7_determinism(criterion, capsys, tmp_path):
    learn = ["learn", "--random", "--n", "7", "--t", "2", "--seed", "11", "--algorithm", "both"]
    outs = []
    for _ in range(2):
        main(learn)
        outs.append(capsys.readouterr().out)
    csvs = []
    for k in range(2):
        path = tmp_path / f"b{k}.csv"
        main(["bench", "--n-min", "4", "--n-max", "8", "--t", "2", "--trials", "2",
              "--seed", "7", "--out", str(path)])
        csvs.append(path.read_bytes())
    cfg = BenchConfig(4, 8, 2, trials=2, seed=7)
    direct = records_to_csv(list(iter_bench(cfg))).encode()
    ok = outs[0] == outs[1] and json.loads(outs[0]) and csvs[0] == csvs[1] == direct
    assert criterion("7 determinism of learn reports and bench CSV", bool(ok))
