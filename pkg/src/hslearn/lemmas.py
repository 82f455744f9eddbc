"""Constructive versions of the bounded-sum combinatorial lemmas.

All indices are 0-based. Every free choice the constructions allow is fixed
(lowest index first, earliest prefix-sum collision) so outputs are
deterministic.
"""
from __future__ import annotations

import itertools
from typing import Optional, Sequence

import numpy as np

from .errors import InvariantViolation, PreconditionError


def _check_bounded(w: Sequence[int], t: int) -> int:
    if t < 1:
        raise PreconditionError("t must be positive")
    if any(not -t <= x <= t for x in w):
        raise PreconditionError(f"entries must lie in [-{t}, {t}]")
    r = sum(w)
    if not -t + 1 <= r <= t - 1:
        raise PreconditionError(f"sum {r} outside [{-t + 1}, {t - 1}]")
    return r


def bounded_prefix_permutation(w: Sequence[int], t: int) -> list[int]:
    """Order the entries so every prefix sum stays in [-t+1, t-1].

    Requires the total to lie in that range and at least one entry outside
    {-t, 0, t}. Returns ``phi`` with ``w[phi[0]], w[phi[1]], ...`` the order.
    """
    _check_bounded(w, t)
    start = next((i for i, x in enumerate(w) if x not in (-t, 0, t)), None)
    if start is None:
        raise PreconditionError("every entry is in {-t, 0, t}")

    unused = set(range(len(w)))

    def take(i: int) -> None:
        phi.append(i)
        unused.discard(i)

    phi: list[int] = []
    take(start)
    total = w[start]

    # Interleave the +t / -t entries while the running sum is nonzero.
    plus = [i for i in range(len(w)) if w[i] == t]
    minus = [i for i in range(len(w)) if w[i] == -t]
    for p, q in zip(plus, minus):
        first, second = (p, q) if total < 0 else (q, p)
        take(first)
        take(second)

    while unused:
        pool = sorted(unused)
        if total > 0:
            cand = [i for i in pool if w[i] < 0]
        elif total < 0:
            cand = [i for i in pool if w[i] > 0]
        else:
            cand = [i for i in pool if -t < w[i] < t]
        nxt = cand[0] if cand else pool[0]
        take(nxt)
        total += w[nxt]
        if not -t + 1 <= total <= t - 1:
            raise InvariantViolation(f"prefix sum {total} escaped the range")
    return phi


def _earliest_zero_segment(vals: Sequence[int]) -> tuple[int, int]:
    """Positions (j1, j2) of the first repeated prefix sum: sum(vals[j1:j2]) == 0."""
    seen = {0: 0}
    s = 0
    for j, x in enumerate(vals, start=1):
        s += x
        if s in seen:
            return seen[s], j
        seen[s] = j
    raise InvariantViolation("no repeated prefix sum")


def zero_sum_partition(w: Sequence[int], t: int) -> list[tuple[int, ...]]:
    """Partition indices into blocks of size <= 2t-1.

    Every block but the last sums to zero; the last sums to ``sum(w)`` and
    has size <= 2t-2 when that sum is nonzero.
    """
    r = _check_bounded(w, t)
    m = len(w)
    if m == 0:
        return [()]

    if all(x in (-t, 0, t) for x in w):
        # Here r == 0 and the +t / -t entries pair off exactly.
        plus = [i for i in range(m) if w[i] == t]
        minus = [i for i in range(m) if w[i] == -t]
        blocks = [tuple(sorted(pq)) for pq in zip(plus, minus)]
        blocks += [(i,) for i in range(m) if w[i] == 0]
        return sorted(blocks)

    order = bounded_prefix_permutation(w, t)
    blocks: list[tuple[int, ...]] = []
    while len(order) >= 2 * t - 1:
        j1, j2 = _earliest_zero_segment([w[i] for i in order[: 2 * t - 1]])
        blocks.append(tuple(sorted(order[j1:j2])))
        order = order[:j1] + order[j2:]
    if order:
        blocks.append(tuple(sorted(order)))
    return blocks


def pair_target_subset(z: Sequence[tuple[int, int]], t: int) -> list[int]:
    """Indices M with sum(z[M]) == sum(z) and |M| <= 8t^3 - 4t^2 - 2t + 1.

    Both coordinates of every pair must lie in [-t, t] and both coordinates of
    the total in [-t+1, t-1]. Returns the empty set when the total is (0, 0).
    """
    ws = [p[0] for p in z]
    vs = [p[1] for p in z]
    r = _check_bounded(ws, t)
    s = _check_bounded(vs, t)
    if r == 0 and s == 0:
        return []

    blocks = zero_sum_partition(ws, t)
    block_v = [sum(vs[i] for i in b) for b in blocks]
    last = blocks[-1]
    rest = s - block_v[-1]
    if rest == 0:
        return sorted(last)

    # The other blocks have w-sum zero; pick a few whose v-sums make up `rest`,
    # using the partition lemma again at scale 2t^2.
    big = 2 * t * t
    chosen = zero_sum_partition(block_v[:-1], big)[-1]
    members = set(last)
    for j in chosen:
        members.update(blocks[j])
    return sorted(members)


def pair_subset_bound(t: int) -> int:
    return 8 * t**3 - 4 * t**2 - 2 * t + 1


def tightness_instance(t: int) -> list[int]:
    """t-1 copies of t followed by t-1 copies of -(t-1); total t-1."""
    return [t] * (t - 1) + [-(t - 1)] * (t - 1)


def subset_sums_distinct(w: Sequence[int]) -> bool:
    """Whether distinct sub-multisets of ``w`` always have distinct sums."""
    values = sorted(set(w))
    counts = [w.count(v) for v in values]
    sums = set()
    for choice in itertools.product(*(range(c + 1) for c in counts)):
        s = sum(k * v for k, v in zip(choice, values))
        if s in sums:
            return False
        sums.add(s)
    return True


def has_zero_subset(w: Sequence[int]) -> bool:
    """Whether some nonempty set of positions sums to zero (exhaustive)."""
    return any(sum(x for i, x in enumerate(w) if mask >> i & 1) == 0
               for mask in range(1, 1 << len(w)))


# -- random valid inputs, shared by the CLI and the property tests ----------

def random_bounded_sequence(rng: np.random.Generator, m: int, t: int,
                            require_nonextreme: bool = False) -> list[int]:
    """Uniform-ish entries in [-t, t] nudged until the sum is in [-t+1, t-1]."""
    w = [int(x) for x in rng.integers(-t, t + 1, size=m)]
    target = int(rng.integers(-t + 1, t))
    while sum(w) != target:
        i = int(rng.integers(m))
        if sum(w) > target and w[i] > -t:
            w[i] -= 1
        elif sum(w) < target and w[i] < t:
            w[i] += 1
    if require_nonextreme and all(x in (-t, 0, t) for x in w):
        # The sum is 0 here; swap in a sum-preserving non-extreme entry.
        if t == 1:
            raise PreconditionError("no entry can avoid {-1, 0, 1} when t = 1")
        i = next((i for i, x in enumerate(w) if x == t), None)
        j = next((j for j, x in enumerate(w) if x == -t), None)
        if i is not None and j is not None:
            w[i], w[j] = t - 1, -(t - 1)
        elif m >= 2:
            w[0], w[1] = 1, -1
        else:
            w[0] = 1
    return w


# -- conclusion checkers -----------------------------------------------------

def check_prefix_permutation(w: Sequence[int], t: int, phi: Sequence[int]) -> Optional[str]:
    if sorted(phi) != list(range(len(w))):
        return f"{phi} is not a permutation"
    s = 0
    for k, i in enumerate(phi):
        s += w[i]
        if not -t + 1 <= s <= t - 1:
            return f"prefix sum {s} after {k + 1} entries"
    return None


def check_partition(w: Sequence[int], t: int, blocks: Sequence[Sequence[int]]) -> Optional[str]:
    flat = sorted(i for b in blocks for i in b)
    if flat != list(range(len(w))):
        return "blocks are not a partition"
    r = sum(w)
    for j, b in enumerate(blocks):
        want = r if j == len(blocks) - 1 else 0
        if sum(w[i] for i in b) != want:
            return f"block {j} sums to {sum(w[i] for i in b)}, expected {want}"
        if len(b) > 2 * t - 1:
            return f"block {j} has size {len(b)} > 2t-1 = {2 * t - 1}"
    if r != 0 and len(blocks[-1]) > 2 * t - 2:
        return f"last block has size {len(blocks[-1])} > 2t-2 = {2 * t - 2}"
    return None


def check_pair_subset(z: Sequence[tuple[int, int]], t: int, M: Sequence[int]) -> Optional[str]:
    if len(set(M)) != len(M) or any(not 0 <= i < len(z) for i in M):
        return f"{M} is not a subset of the indices"
    got = (sum(z[i][0] for i in M), sum(z[i][1] for i in M))
    want = (sum(p[0] for p in z), sum(p[1] for p in z))
    if got != want:
        return f"subset sums to {got}, expected {want}"
    if len(M) > pair_subset_bound(t):
        return f"|M| = {len(M)} > {pair_subset_bound(t)}"
    return None


LEMMAS = ("prefix_permutation", "zero_sum_partition", "pair_target_subset")


def random_instance(lemma: str, rng: np.random.Generator, t: int, m_max: int = 30):
    m = int(rng.integers(1, m_max + 1))
    if lemma == "prefix_permutation":
        return random_bounded_sequence(rng, m, t, require_nonextreme=True)
    if lemma == "zero_sum_partition":
        return random_bounded_sequence(rng, m, t)
    ws = random_bounded_sequence(rng, m, t)
    vs = random_bounded_sequence(rng, m, t)
    return list(zip(ws, vs))


def check_instance(lemma: str, inst, t: int) -> Optional[str]:
    """Run one lemma on one input and check all of its conclusions."""
    try:
        if lemma == "prefix_permutation":
            return check_prefix_permutation(inst, t, bounded_prefix_permutation(inst, t))
        if lemma == "zero_sum_partition":
            return check_partition(inst, t, zero_sum_partition(inst, t))
        return check_pair_subset(inst, t, pair_target_subset(inst, t))
    except (PreconditionError, InvariantViolation) as exc:
        return f"{type(exc).__name__}: {exc}"


def has_valid_inputs(lemma: str, t: int) -> bool:
    # With t = 1 every entry lies in {-1, 0, 1}, which the permutation lemma excludes.
    return not (lemma == "prefix_permutation" and t == 1)
