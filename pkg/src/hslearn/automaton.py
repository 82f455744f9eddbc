"""Layered automata for Boolean combinations of halfspaces.

A state at level ``i`` is the tuple of partial weighted sums of every
halfspace over ``x_1 .. x_i``. Reading bit ``b`` moves to level ``i + 1``,
adding the ``(i+1)``-th weight column when ``b`` is 1. Only reachable states
are materialised, so the number of states per level is at most
``min(2^i, (t*i + 1)^k)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .assignment import Assignment
from .errors import InvariantViolation
from .halfspace import Halfspace


@dataclass(frozen=True)
class Combiner:
    """Truth table of g: {0,1}^k -> {0,1}; entry index has f_1 as its high bit."""
    k: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != 1 << self.k:
            raise ValueError(f"truth table for k={self.k} needs {1 << self.k} entries")

    @classmethod
    def of(cls, fn: Callable[..., int], k: int) -> Combiner:
        table = []
        for idx in range(1 << k):
            args = [(idx >> (k - 1 - i)) & 1 for i in range(k)]
            table.append(int(bool(fn(*args))))
        return cls(k, tuple(table))

    def __call__(self, *bits: int) -> int:
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return self.table[idx]


IDENTITY = Combiner(1, (0, 1))
XOR = Combiner(2, (0, 1, 1, 0))
AND = Combiner(2, (0, 0, 0, 1))
OR = Combiner(2, (0, 1, 1, 1))


@dataclass(frozen=True)
class LayeredAutomaton:
    n: int
    states: tuple[tuple[tuple[int, ...], ...], ...]
    """``states[i][s]`` is the partial-sum tuple of state ``s`` at level ``i``."""
    delta: tuple[tuple[tuple[int, int], ...], ...]
    """``delta[i][s]`` are the level-(i+1) indices reached on 0 and on 1."""
    accepting: frozenset[int]
    """Indices of accepting states at level ``n``."""

    @property
    def size(self) -> int:
        return sum(len(level) for level in self.states)


def state_bound(t: int, k: int, n: int) -> int:
    """(2t)^k n^(k+1), bounding the states below the start state."""
    return (2 * t) ** k * n ** (k + 1)


def build(hs: Sequence[Halfspace], g: Combiner) -> LayeredAutomaton:
    if len(hs) != g.k:
        raise ValueError(f"combiner takes {g.k} inputs, got {len(hs)} halfspaces")
    if not hs:
        raise ValueError("need at least one halfspace")
    n = hs[0].n
    if any(h.n != n for h in hs):
        raise ValueError("halfspaces must share a dimension")

    columns = [tuple(h.weights[i] for h in hs) for i in range(n)]
    start = (0,) * g.k
    states = [(start,)]
    delta = []
    for col in columns:
        index: dict[tuple[int, ...], int] = {}
        edges = []
        for s in states[-1]:
            on1 = tuple(a + b for a, b in zip(s, col))
            e0 = index.setdefault(s, len(index))
            e1 = index.setdefault(on1, len(index))
            edges.append((e0, e1))
        delta.append(tuple(edges))
        states.append(tuple(index))

    t = max(h.t for h in hs)
    below_start = sum(len(level) for level in states[1:])
    if below_start > state_bound(t, g.k, n):
        raise InvariantViolation(f"{below_start} states exceed (2t)^k n^(k+1)")

    thresholds = [h.threshold for h in hs]
    accepting = frozenset(
        idx for idx, s in enumerate(states[-1])
        if g(*(int(w >= u) for w, u in zip(s, thresholds)))
    )
    return LayeredAutomaton(n, tuple(states), tuple(delta), accepting)


def accepts(A: LayeredAutomaton, a: Assignment) -> int:
    if a.n != A.n:
        raise ValueError(f"assignment has {a.n} variables, automaton reads {A.n}")
    s = 0
    for i, b in enumerate(a):
        s = A.delta[i][s][b]
    return int(s in A.accepting)


def _alive(A: LayeredAutomaton) -> list[list[bool]]:
    """alive[i][s]: some accepting state is reachable from state s of level i."""
    alive = [[False] * len(level) for level in A.states]
    for s in A.accepting:
        alive[A.n][s] = True
    for i in range(A.n - 1, -1, -1):
        nxt = alive[i + 1]
        alive[i] = [nxt[e0] or nxt[e1] for e0, e1 in A.delta[i]]
    return alive


def find_accepting(A: LayeredAutomaton) -> Optional[Assignment]:
    """Lexicographically smallest accepted word, or None if none exists."""
    alive = _alive(A)
    if not alive[0][0]:
        return None
    s, mask = 0, 0
    for i in range(A.n):
        e0, e1 = A.delta[i][s]
        if alive[i + 1][e0]:
            s, mask = e0, mask << 1
        else:
            s, mask = e1, (mask << 1) | 1
    return Assignment(A.n, mask)


def count_accepting(A: LayeredAutomaton) -> int:
    count = [1 if s in A.accepting else 0 for s in range(len(A.states[A.n]))]
    for i in range(A.n - 1, -1, -1):
        count = [count[e0] + count[e1] for e0, e1 in A.delta[i]]
    return count[0]


def find_difference(h1: Halfspace, h2: Halfspace) -> Optional[Assignment]:
    """Lexicographically smallest point where h1 and h2 disagree, or None."""
    if h1.n != h2.n:
        raise ValueError(f"dimension mismatch: {h1.n} vs {h2.n}")
    return find_accepting(build([h1, h2], XOR))


def equivalent(h1: Halfspace, h2: Halfspace) -> bool:
    return find_difference(h1, h2) is None
