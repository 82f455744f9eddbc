"""Proper learning of halfspaces with weights in {0..t} from membership queries.

Round 1 asks a staircase set ``A_m``: every point within distance ``m`` of
some ``0^i 1^(n-i-j) 0^j``. From those answers the learner reads off the
relevant variables and a weight order (heaviest last) of the relevant
variables. Every halfspace whose weights are nondecreasing in that order is
a candidate; round 2 asks a set of points separating every pair of
non-equivalent candidates, after which the survivors are all equivalent to
the target.

The non-adaptive learner asks, in a single batch, the round-1 set together
with large Hamming balls around the staircase, and keeps the candidate that
agrees with every answer.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .assignment import Assignment, ball_masks, ball_size, bit
from .automaton import find_difference
from .errors import InvariantViolation, PreconditionError
from .halfspace import Halfspace, canonicalize
from .oracle import SimulatedOracle


# -- staircase sets ----------------------------------------------------------

def staircase_centers(n: int) -> list[int]:
    """Masks of 0^i 1^(n-i-j) 0^j for all i + j <= n (deduplicated)."""
    centers = {0}
    for lo in range(n):
        for hi in range(lo + 1, n + 1):
            centers.add(((1 << (hi - lo)) - 1) << (n - hi))
    return sorted(centers)


def _staircase_by_union(n: int, m: int) -> np.ndarray:
    out: set[int] = set()
    for c in staircase_centers(n):
        out.update(ball_masks(c, n, m))
    return np.array(sorted(out), dtype=np.int64)


def _staircase_by_scan(n: int, m: int) -> np.ndarray:
    cube = np.arange(1 << n, dtype=np.int64)
    keep = np.zeros(cube.shape, dtype=bool)
    for c in staircase_centers(n):
        keep |= np.bitwise_count(cube ^ c) <= m
    return cube[keep]


def staircase_masks(n: int, m: int) -> np.ndarray:
    """Sorted masks of A_m (sorted masks are in lexicographic order)."""
    if m < 0:
        raise PreconditionError("radius must be nonnegative")
    m = min(m, n)
    if m == n:
        return np.arange(1 << n, dtype=np.int64)
    # A vectorised scan of the cube beats the Python union once balls get big.
    if n <= 24 and (1 << n) < 200 * ball_size(n, m):
        return _staircase_by_scan(n, m)
    return _staircase_by_union(n, m)


def _as_assignments(n: int, masks: Iterable[int]) -> list[Assignment]:
    return [Assignment(n, int(m)) for m in masks]


def staircase_set(n: int, m: int) -> list[Assignment]:
    return _as_assignments(n, staircase_masks(n, m))


def round1_radius(t: int) -> int:
    # With t = 1 every relevant weight is 1, so no order needs to be inferred
    # and the relevance radius 2t - 1 suffices.
    return 1 if t == 1 else 4 * t + 1


def round1_masks(n: int, t: int) -> np.ndarray:
    if t < 1:
        raise PreconditionError("t must be positive")
    return staircase_masks(n, min(round1_radius(t), n))


def round1_queries(n: int, t: int) -> list[Assignment]:
    return _as_assignments(n, round1_masks(n, t))


def nonadaptive_masks(n: int, t: int) -> np.ndarray:
    # Balls of radius R around every point of A_p cover exactly A_(p+R).
    radius = min(2 * t - 2, n) + min(8 * t**3, n)
    return np.union1d(round1_masks(n, t), staircase_masks(n, min(radius, n)))


def nonadaptive_queries(n: int, t: int) -> list[Assignment]:
    return _as_assignments(n, nonadaptive_masks(n, t))


# -- answers -----------------------------------------------------------------

class _Answers:
    """Answer lookup over sorted mask arrays."""

    def __init__(self, n: int, answers: Mapping[Assignment, int]):
        self.n = n
        items = sorted((a.mask, f) for a, f in answers.items() if a.n == n)
        self.masks = np.array([m for m, _ in items], dtype=np.int64)
        self.values = np.array([f for _, f in items], dtype=np.int8)

    def lookup(self, masks: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(present, value) for each mask; value is 0 where absent."""
        masks = np.asarray(masks, dtype=np.int64)
        if len(self.masks) == 0:
            return np.zeros(masks.shape, bool), np.zeros(masks.shape, np.int8)
        pos = np.searchsorted(self.masks, masks)
        pos_c = np.minimum(pos, len(self.masks) - 1)
        present = self.masks[pos_c] == masks
        return present, np.where(present, self.values[pos_c], 0).astype(np.int8)


# -- round 1 analysis --------------------------------------------------------

@dataclass(frozen=True)
class Round1Summary:
    n: int
    constant: Optional[int] = None
    relevant: tuple[int, ...] = ()
    order: tuple[tuple[int, ...], ...] = ()
    """Symmetry classes of relevant variables, lightest weight first."""
    weight_one_case: bool = False
    discovered_minterms: tuple[Assignment, ...] = ()

    @property
    def permutation(self) -> tuple[int, ...]:
        return tuple(i for cls in self.order for i in cls)


def _infer_order(n: int, relevant: Sequence[int], q: np.ndarray, y: np.ndarray,
                 look: _Answers) -> tuple[tuple[int, ...], ...]:
    heavier: dict[tuple[int, int], int] = {}
    for j, k in itertools.combinations(relevant, 2):
        bj, bk = bit(n, j), bit(n, k)
        sel = ((q & bj) != 0) & ((q & bk) == 0)
        present, partner = look.lookup(q[sel] ^ (bj | bk))
        mine = y[sel][present]
        partner = partner[present]
        j_up = bool(np.any((mine == 1) & (partner == 0)))
        k_up = bool(np.any((mine == 0) & (partner == 1)))
        if j_up and k_up:
            raise InvariantViolation(f"x{j + 1} and x{k + 1} each witnessed heavier")
        if j_up or k_up:
            heavier[(j, k)] = j if j_up else k

    parent = {i: i for i in relevant}

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for j, k in itertools.combinations(relevant, 2):
        if (j, k) not in heavier:
            parent[find(j)] = find(k)
    classes: dict[int, list[int]] = {}
    for i in relevant:
        classes.setdefault(find(i), []).append(i)
    groups = sorted(tuple(c) for c in classes.values())

    label = {i: g for g, cls in enumerate(groups) for i in cls}
    below: dict[int, set[int]] = {g: set() for g in range(len(groups))}
    for (j, k), h in heavier.items():
        lo, hi = (k, j) if h == j else (j, k)
        if label[lo] == label[hi]:
            raise InvariantViolation(f"x{j + 1}, x{k + 1} ordered but in one symmetry class")
        below[label[hi]].add(label[lo])
    for g in range(len(groups)):
        for h in range(len(groups)):
            if g != h and (h in below[g]) == (g in below[h]):
                raise InvariantViolation("weight order between symmetry classes is not total")
    ranked = sorted(range(len(groups)), key=lambda g: len(below[g]))
    if [len(below[g]) for g in ranked] != list(range(len(groups))):
        raise InvariantViolation("weight order between symmetry classes has a cycle")
    return tuple(groups[g] for g in ranked)


def analyze_round1(n: int, t: int, answers: Mapping[Assignment, int]) -> Round1Summary:
    look = _Answers(n, answers)
    q = round1_masks(n, t)
    present, y = look.lookup(q)
    if not present.all():
        missing = Assignment(n, int(q[np.argmin(present)]))
        raise PreconditionError(f"no answer recorded for round-1 query {missing}")

    if y[0] == 1:       # f(0^n) = 1
        return Round1Summary(n, constant=1)
    if y[-1] == 0:      # f(1^n) = 0
        return Round1Summary(n, constant=0)

    weights = np.bitwise_count(q)
    weight_one = bool(np.any((weights == 1) & (y == 1)))
    found: list[Assignment] = []
    if weight_one:
        low = (weights <= t) & (y == 1)
        for m in q[low]:
            m = int(m)
            drops = [m ^ bit(n, i) for i in range(n) if m & bit(n, i)]
            if not look.lookup(np.array(drops, dtype=np.int64))[1].any():
                found.append(Assignment(n, m))
        relevant = sorted({i for a in found for i in a.ones_indices()})
    else:
        relevant = []
        for k in range(n):
            bk = bit(n, k)
            sel = (q & bk) != 0
            ok, dropped = look.lookup(q[sel] ^ bk)
            if np.any(ok & (dropped != y[sel])):
                relevant.append(k)

    order = _infer_order(n, relevant, q, y, look)
    return Round1Summary(n, None, tuple(relevant), order, weight_one, tuple(found))


# -- candidates --------------------------------------------------------------

@dataclass(frozen=True)
class CandidateSet:
    permutation: tuple[int, ...]
    candidates: tuple[Halfspace, ...]

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)


def candidate_bound(m: int, t: int) -> int:
    return comb(m + t - 1, t - 1) * (m * t + 1)


def enumerate_candidates(summary: Round1Summary, t: int) -> CandidateSet:
    if summary.constant is not None:
        raise PreconditionError("no candidates for a constant target")
    perm = summary.permutation
    m = len(perm)
    top = min(t, m * t) if summary.weight_one_case else m * t
    seen: dict[tuple[tuple[int, ...], int], Halfspace] = {}
    for ws in itertools.combinations_with_replacement(range(1, t + 1), m):
        full = [0] * summary.n
        for var, w in zip(perm, ws):
            full[var] = w
        for u in range(1, top + 1):
            h = canonicalize(Halfspace(tuple(full), u, t))
            if h.constant is None:
                seen.setdefault((h.weights, h.threshold), h)
    cands = tuple(seen.values())
    if len(cands) > candidate_bound(m, t):
        raise InvariantViolation("candidate count exceeds its bound")
    return CandidateSet(perm, cands)


def _bit_matrix(n: int, masks: np.ndarray) -> np.ndarray:
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((np.asarray(masks, dtype=np.int64)[:, None] >> shifts) & 1).astype(np.int32)


def consistent_flags(candidates: Sequence[Halfspace], n: int, masks: np.ndarray,
                     values: np.ndarray) -> np.ndarray:
    """Which candidates agree with every (mask, value) pair."""
    if not candidates:
        return np.zeros(0, dtype=bool)
    X = _bit_matrix(n, masks)
    W = np.array([h.weights for h in candidates], dtype=np.int32).reshape(len(candidates), n)
    U = np.array([h.threshold for h in candidates], dtype=np.int32)
    out = np.empty(len(candidates), dtype=bool)
    chunk = max(1, 4_000_000 // max(1, len(masks)))
    for s in range(0, len(candidates), chunk):
        pred = (X @ W[s:s + chunk].T) >= U[s:s + chunk]
        out[s:s + chunk] = np.all(pred == (values[:, None] == 1), axis=0)
    return out


@dataclass(frozen=True)
class DistinguishingSet:
    points: tuple[Assignment, ...]
    pairs_checked: int = 0

    def __len__(self) -> int:
        return len(self.points)


def distinguishing_set(candidates: Iterable[Halfspace], exhaustive: bool = False) -> DistinguishingSet:
    """Points separating every pair of non-equivalent candidates.

    Each pair contributes the lexicographically smallest point where the two
    disagree. That point depends only on the two functions, so once a
    candidate is found equivalent to an earlier one, its pairs would add
    nothing new and are skipped unless ``exhaustive`` is set.
    """
    cands = list(candidates)
    points: set[Assignment] = set()
    reps: list[Halfspace] = []
    checked = 0
    for idx, h in enumerate(cands):
        pool = cands[:idx] if exhaustive else reps
        duplicate = False
        for r in pool:
            checked += 1
            w = find_difference(r, h)
            if w is None:
                duplicate = True
                if not exhaustive:
                    break
            else:
                points.add(w)
        if not duplicate:
            reps.append(h)
    return DistinguishingSet(tuple(sorted(points)), checked)


def select_consistent(candidates: Iterable[Halfspace], answers: Mapping[Assignment, int],
                      check_survivors: bool = False) -> Halfspace:
    cands = list(candidates)
    if not cands:
        raise InvariantViolation("no candidates to select from")
    look = _Answers(cands[0].n, answers)
    flags = consistent_flags(cands, look.n, look.masks, look.values)
    survivors = [h for h, ok in zip(cands, flags) if ok]
    if not survivors:
        raise InvariantViolation("no candidate is consistent with the answers")
    if check_survivors:
        for h in survivors[1:]:
            w = find_difference(survivors[0], h)
            if w is not None:
                raise InvariantViolation(f"survivors {survivors[0]} and {h} differ at {w}")
    return survivors[0]


# -- drivers -----------------------------------------------------------------

@dataclass
class LearnResult:
    hypothesis: Halfspace
    summary: Round1Summary
    candidates: int = 0
    pairs_checked: int = 0
    survivors_after_round1: int = 0


def _submit(oracle: SimulatedOracle, n: int, masks: Iterable[int]) -> None:
    oracle.submit_round(_as_assignments(n, masks))


def learn_adaptive(oracle: SimulatedOracle, n: int, t: int, prefilter: bool = True,
                   check_survivors: bool = False) -> LearnResult:
    """Two-round learner.

    With ``prefilter`` the distinguishing set is built only over candidates
    already consistent with the round-1 answers; any separating point for
    those is necessarily new, so the output is unaffected and far fewer
    pairs are compared.
    """
    _submit(oracle, n, round1_masks(n, t))
    answers = oracle.transcript.answer_index
    summary = analyze_round1(n, t, answers)
    if summary.constant is not None:
        return LearnResult(Halfspace.const(summary.constant, n, t), summary)

    cands = enumerate_candidates(summary, t)
    pool = list(cands)
    if prefilter:
        look = _Answers(n, answers)
        flags = consistent_flags(pool, n, look.masks, look.values)
        pool = [h for h, ok in zip(pool, flags) if ok]
    dist = distinguishing_set(pool)
    oracle.submit_round(dist.points)
    hyp = select_consistent(pool, oracle.transcript.answer_index, check_survivors)
    return LearnResult(hyp, summary, len(cands), dist.pairs_checked, len(pool))


NONADAPTIVE_GAP = (
    "no candidate agrees with every non-adaptive answer; this is a concrete "
    "instance where the ball around a minterm of the target fails to separate "
    "a candidate g with f => g strictly"
)


def learn_nonadaptive(oracle: SimulatedOracle, n: int, t: int,
                      check_survivors: bool = False) -> LearnResult:
    _submit(oracle, n, nonadaptive_masks(n, t))
    answers = oracle.transcript.answer_index
    r1 = set(round1_queries(n, t))
    summary = analyze_round1(n, t, {a: f for a, f in answers.items() if a in r1})
    if summary.constant is not None:
        return LearnResult(Halfspace.const(summary.constant, n, t), summary)
    cands = enumerate_candidates(summary, t)
    try:
        hyp = select_consistent(cands, answers, check_survivors)
    except InvariantViolation as exc:
        raise InvariantViolation(f"{NONADAPTIVE_GAP}: {exc}") from exc
    return LearnResult(hyp, summary, len(cands))


# -- specifying-set validation ----------------------------------------------

def specifying_set_check(q: Iterable[Assignment], target: Halfspace,
                         t: int) -> Optional[Halfspace]:
    """Return the first HS_t function that differs from ``target`` somewhere
    but agrees with it on all of ``q``; None if ``q`` rules out all of them.

    Enumerates weights in [0, t]^n and thresholds in [0, nt + 1].
    """
    n = target.n
    cube = np.arange(1 << n, dtype=np.int64)
    X = _bit_matrix(n, cube)
    truth = (X @ np.array(target.weights, dtype=np.int32)) >= target.threshold
    qmask = np.zeros(1 << n, dtype=bool)
    qmask[[a.mask for a in q]] = True
    for ws in itertools.product(range(t + 1), repeat=n):
        sums = X @ np.array(ws, dtype=np.int32)
        for u in range(n * t + 2):
            g = sums >= u
            diff = g != truth
            if diff.any() and not diff[qmask].any():
                return Halfspace(ws, u, t)
    return None
