"""Boolean halfspaces ``[w_1 x_1 + ... + w_n x_n >= u]`` and their predicates.

The brute-force predicates here (``is_relevant``, ``is_symmetric_pair`` and
the witness searches built on them) enumerate the whole cube and are meant
for small ``n``: they serve as test oracles, the learner never calls them.
"""
from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .assignment import Assignment, ball_masks, bit
from .errors import InvariantViolation, PreconditionError


@dataclass(frozen=True, slots=True)
class Halfspace:
    weights: tuple[int, ...]
    threshold: int
    t: int

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.t < 1:
            raise ValueError("weight bound t must be positive")
        bad = [w for w in self.weights if not -self.t <= w <= self.t]
        if bad:
            raise ValueError(f"weights {bad} outside [-{self.t}, {self.t}]")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def min_sum(self) -> int:
        return sum(w for w in self.weights if w < 0)

    @property
    def max_sum(self) -> int:
        return sum(w for w in self.weights if w > 0)

    @property
    def constant(self) -> Optional[int]:
        """0 or 1 if the function is constant, otherwise None."""
        if self.min_sum >= self.threshold:
            return 1
        if self.max_sum < self.threshold:
            return 0
        return None

    def in_hs_t(self) -> bool:
        """Whether all weights are nonnegative (the learner's output class)."""
        return all(w >= 0 for w in self.weights)

    def weighted_sum(self, a: Assignment) -> int:
        if a.n != self.n:
            raise ValueError(f"assignment has {a.n} variables, halfspace has {self.n}")
        return sum(w for w, b in zip(self.weights, a) if b)

    def __call__(self, a: Assignment) -> int:
        return int(self.weighted_sum(a) >= self.threshold)

    def __str__(self) -> str:
        terms = " + ".join(f"{w}*x{i + 1}" for i, w in enumerate(self.weights) if w)
        return f"[{terms or '0'} >= {self.threshold}]"

    def to_dict(self) -> dict:
        return {"n": self.n, "t": self.t, "weights": list(self.weights),
                "threshold": self.threshold}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> Halfspace:
        try:
            n, t, weights, u = d["n"], d["t"], d["weights"], d["threshold"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed halfspace object: {d!r}") from exc
        if len(weights) != n:
            raise ValueError(f"declared n={n} but {len(weights)} weights given")
        for x in (n, t, u, *weights):
            if not isinstance(x, int) or isinstance(x, bool):
                raise ValueError(f"non-integer field in halfspace: {x!r}")
        return cls(tuple(weights), u, t)

    @classmethod
    def from_json(cls, s: str) -> Halfspace:
        return cls.from_dict(json.loads(s))

    @classmethod
    def const(cls, value: int, n: int, t: int = 1) -> Halfspace:
        """Canonical constant: zero weights, threshold 0 (true) or 1 (false)."""
        return cls((0,) * n, 0 if value else 1, t)


def evaluate(h: Halfspace, a: Assignment) -> int:
    return h(a)


def weighted_sums(weights: Sequence[int], masks: np.ndarray, n: int) -> np.ndarray:
    """Weighted sums for a batch of masks, vectorised."""
    masks = np.asarray(masks, dtype=np.int64)
    total = np.zeros(masks.shape, dtype=np.int64)
    for i, w in enumerate(weights):
        if w:
            total += w * ((masks >> (n - 1 - i)) & 1)
    return total


def evaluate_masks(h: Halfspace, masks: np.ndarray) -> np.ndarray:
    return (weighted_sums(h.weights, masks, h.n) >= h.threshold).astype(np.int8)


@lru_cache(maxsize=4096)
def achievable_sums(weights: tuple[int, ...]) -> tuple[int, ...]:
    """Sorted set of all subset sums of ``weights``."""
    sums = {0}
    for w in weights:
        if w:
            sums |= {s + w for s in sums}
    return tuple(sorted(sums))


def canonicalize(h: Halfspace) -> Halfspace:
    """Equivalent halfspace whose threshold is attained by some assignment.

    Constants come back as ``Halfspace.const``.
    """
    c = h.constant
    if c is not None:
        return Halfspace.const(c, h.n, h.t)
    sums = achievable_sums(h.weights)
    u = sums[bisect_left(sums, h.threshold)]
    return h if u == h.threshold else Halfspace(h.weights, u, h.t)


def is_canonical(h: Halfspace) -> bool:
    return h.constant is None and h.threshold in achievable_sums(h.weights)


def _drops_all_falsify(h: Halfspace, a: Assignment, skip=lambda i: False) -> bool:
    return all(skip(i) or not h(a.flip(i)) for i in a.ones_indices())


def is_minterm(h: Halfspace, a: Assignment) -> bool:
    return bool(h(a)) and _drops_all_falsify(h, a)


def is_semiminterm(h: Halfspace, a: Assignment) -> bool:
    if not h(a):
        return False
    relevant = {i for i in a.ones_indices() if is_relevant(h, i)}
    return _drops_all_falsify(h, a, skip=lambda i: i not in relevant)


def is_strong_assignment(h: Halfspace, a: Assignment) -> bool:
    if not is_canonical(h):
        raise PreconditionError(f"{h} is constant or not canonical")
    return h.weighted_sum(a) == h.threshold


def _cube(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def is_relevant(h: Halfspace, i: int) -> bool:
    """Brute force over the cube: does flipping x_i ever change the value?"""
    b = bit(h.n, i)
    low = _cube(h.n)
    low = low[(low & b) == 0]
    return bool(np.any(evaluate_masks(h, low) != evaluate_masks(h, low | b)))


def is_symmetric_pair(h: Halfspace, i: int, j: int) -> bool:
    if i == j:
        return True
    bi, bj = bit(h.n, i), bit(h.n, j)
    rest = _cube(h.n)
    rest = rest[(rest & (bi | bj)) == 0]
    return bool(np.all(evaluate_masks(h, rest | bi) == evaluate_masks(h, rest | bj)))


def minterms(h: Halfspace) -> list[Assignment]:
    """All minterms in lexicographic order (brute force)."""
    out = []
    for m in range(1 << h.n):
        a = Assignment(h.n, m)
        if is_minterm(h, a):
            out.append(a)
    return out


def _swap_values(h: Halfspace, a: Assignment, i: int, j: int) -> tuple[int, int]:
    """(f(a|x_i=0,x_j=1), f(a|x_i=1,x_j=0))."""
    return h(a.restrict({i: 0, j: 1})), h(a.restrict({i: 1, j: 0}))


def nonsymmetry_minterm_witness(h: Halfspace, i: int, j: int) -> Optional[Assignment]:
    """Lexicographically first minterm a with a_i + a_j = 1 whose (i,j)-swap
    changes the value; None iff h is symmetric in x_i, x_j."""
    for a in minterms(h):
        if a[i] + a[j] == 1:
            v01, v10 = _swap_values(h, a, i, j)
            if v01 != v10:
                return a
    if not is_symmetric_pair(h, i, j):
        raise InvariantViolation(f"{h} is nonsymmetric in x{i + 1}, x{j + 1} "
                                 "but no minterm witnesses it")
    return None


def _scan_ball(a: Assignment, radius: int) -> Iterable[Assignment]:
    for m in sorted(ball_masks(a.mask, a.n, radius)):
        yield Assignment(a.n, m)


def _check_falsifying_drop(h: Halfspace, a: Assignment) -> None:
    if not h(a):
        raise PreconditionError(f"h({a}) must be 1")
    if all(h(a.flip(i)) for i in a.ones_indices()):
        raise PreconditionError(f"no 1-coordinate of {a} can be dropped to falsify {h}")


def find_strong_assignment_near(h: Halfspace, a: Assignment) -> Assignment:
    """Lexicographically first strong assignment within distance 2t-2 of ``a``."""
    if not is_canonical(h):
        raise PreconditionError(f"{h} is constant or not canonical")
    _check_falsifying_drop(h, a)
    for c in _scan_ball(a, 2 * h.t - 2):
        if h.weighted_sum(c) == h.threshold:
            return c
    raise InvariantViolation(f"no strong assignment of {h} within {2 * h.t - 2} of {a}")


def find_pivot_witness_near(h: Halfspace, a: Assignment, k: int) -> Assignment:
    """Some c within 2t-2 of ``a`` with c_k = 1, h(c) = 1 and h(c|x_k=0) = 0."""
    if a[k] != 1:
        raise PreconditionError(f"a_{k + 1} must be 1")
    _check_falsifying_drop(h, a)
    if not is_relevant(h, k):
        raise PreconditionError(f"x{k + 1} is irrelevant in {h}")
    for c in _scan_ball(a, 2 * h.t - 2):
        if c[k] and h(c) and not h(c.flip(k)):
            return c
    raise InvariantViolation(f"no pivot witness for x{k + 1} within {2 * h.t - 2} of {a}")


def find_order_witness_near(h: Halfspace, a: Assignment, j: int,
                            k: int) -> Optional[tuple[Assignment, int]]:
    """Search B(a, 2t+1) for b with b_j + b_k = 1 whose (j,k)-swap changes h.

    Returns ``(b, heavier)`` where ``heavier`` is whichever of ``j``/``k``
    must carry the larger weight in every representation of h, or None when
    h is symmetric in the pair.
    """
    if not is_minterm(h, a) or a.weight() < 2:
        raise PreconditionError(f"{a} must be a minterm of weight >= 2")
    for b in _scan_ball(a, 2 * h.t + 1):
        if b[j] + b[k] != 1:
            continue
        v01, v10 = _swap_values(h, b, j, k)
        if v01 != v10:
            return b, (j if v10 else k)
    if not is_symmetric_pair(h, j, k):
        raise InvariantViolation(f"no order witness for x{j + 1}, x{k + 1} "
                                 f"within {2 * h.t + 1} of {a}")
    return None


def smooth_symmetric_weights(h: Halfspace, i: int, j: int) -> Halfspace:
    """Move weight between a symmetric pair until they differ by at most one."""
    if not is_symmetric_pair(h, i, j):
        raise PreconditionError(f"{h} is not symmetric in x{i + 1}, x{j + 1}")
    w = list(h.weights)
    hi, lo = (i, j) if w[i] >= w[j] else (j, i)
    while w[hi] > w[lo] + 1:
        w[hi] -= 1
        w[lo] += 1
    return Halfspace(tuple(w), h.threshold, h.t)
