import itertools

import pytest
from hypothesis import strategies as st

from hslearn import Assignment, Halfspace

_CRITERIA: list[str] = []


def A(s: str) -> Assignment:
    return Assignment.from_str(s)


def H(weights, u, t=None) -> Halfspace:
    t = t if t is not None else max(1, max((abs(w) for w in weights), default=1))
    return Halfspace(tuple(weights), u, t)


def truth_table(h: Halfspace) -> list[int]:
    """Plain-Python evaluation over the cube, x1 varying slowest."""
    return [int(sum(w for w, b in zip(h.weights, bits) if b) >= h.threshold)
            for bits in itertools.product((0, 1), repeat=h.n)]


def brute_equivalent(h1: Halfspace, h2: Halfspace) -> bool:
    return truth_table(h1) == truth_table(h2)


def brute_relevant(h: Halfspace, i: int) -> bool:
    tt = truth_table(h)
    b = 1 << (h.n - 1 - i)
    return any(tt[m] != tt[m | b] for m in range(1 << h.n) if not m & b)


@st.composite
def halfspaces(draw, n_min=1, n_max=6, t_max=3, signed=False):
    n = draw(st.integers(n_min, n_max))
    t = draw(st.integers(1, t_max))
    lo = -t if signed else 0
    ws = draw(st.lists(st.integers(lo, t), min_size=n, max_size=n))
    u = draw(st.integers(-n * t - 1, n * t + 1))
    return Halfspace(tuple(ws), u, t)


def all_hs_t(n: int, t: int, thresholds=None):
    """Every (weights, threshold) in [0,t]^n x thresholds."""
    us = thresholds if thresholds is not None else range(0, n * t + 2)
    for ws in itertools.product(range(t + 1), repeat=n):
        for u in us:
            yield Halfspace(ws, u, t)


@pytest.fixture
def criterion():
    def report(label: str, ok: bool, detail: str = "") -> bool:
        _CRITERIA.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else ""))
        return ok
    return report


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
