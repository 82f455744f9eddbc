import pytest
from hypothesis import given, settings, strategies as st

from hslearn import (AND, IDENTITY, OR, XOR, Combiner, Halfspace, accepts, build,
                     count_accepting, equivalent, find_accepting, find_difference)
from hslearn.assignment import all_assignments
from hslearn.automaton import state_bound
from conftest import A, H, brute_equivalent, halfspaces, truth_table


def accepted(aut):
    return [str(a) for a in all_assignments(aut.n) if accepts(aut, a)]


def test_build_examples():
    assert accepted(build([H((1, 1), 1)], IDENTITY)) == ["01", "10", "11"]
    assert accepted(build([H((1, 1), 1), H((1, 1), 2)], XOR)) == ["01", "10"]
    assert accepted(build([H((3, 2), 2), H((1, 1), 1)], XOR)) == []


def test_accepts_examples():
    h = H((2, 1), 2)
    aut = build([h, h], XOR)
    assert all(accepts(aut, a) == 0 for a in all_assignments(2))
    assert accepts(build([H((1, 1), 1)], IDENTITY), A("10")) == 1
    assert accepts(build([H((1, 0), 1), H((0, 1), 1)], AND), A("11")) == 1
    with pytest.raises(ValueError):
        accepts(aut, A("1"))


def test_find_accepting_examples():
    assert find_accepting(build([H((2, 1), 2), H((2, 1), 2)], XOR)) is None
    assert find_accepting(build([H((1, 0), 1), H((0, 1), 1)], XOR)) == A("01")
    assert find_accepting(build([Halfspace.const(0, 3)], IDENTITY)) is None


def test_count_accepting_examples():
    assert count_accepting(build([H((1, 1), 1), H((1, 1), 2)], XOR)) == 2
    assert count_accepting(build([Halfspace.const(1, 5)], IDENTITY)) == 32
    assert count_accepting(build([H((1, 1), 1), H((1, 1), 1)], XOR)) == 0


def test_equivalent_examples():
    assert equivalent(H((3, 2), 2), H((1, 1), 1))
    assert find_difference(H((1, 0), 1), H((0, 1), 1)) in (A("01"), A("10"))
    assert equivalent(H((2, 2), 2), H((1, 1), 1))
    assert brute_equivalent(H((2, 2), 2), H((1, 1), 1))


def test_build_errors():
    with pytest.raises(ValueError):
        build([H((1, 1), 1)], XOR)
    with pytest.raises(ValueError):
        build([H((1, 1), 1), H((1,), 1)], XOR)
    with pytest.raises(ValueError):
        Combiner(2, (0, 1))
    with pytest.raises(ValueError):
        find_difference(H((1, 1), 1), H((1,), 1))


def test_combiner_of():
    assert Combiner.of(lambda a, b: a ^ b, 2) == XOR
    assert Combiner.of(lambda a, b: a | b, 2) == OR
    maj = Combiner.of(lambda a, b, c: a + b + c >= 2, 3)
    assert maj(1, 1, 0) == 1 and maj(1, 0, 0) == 0


def test_layering_and_start_state():
    aut = build([H((2, -1, 1), 1, 2), H((1, 1, 1), 2)], AND)
    assert len(aut.states) == aut.n + 1
    assert aut.states[0] == ((0, 0),)
    for i, level in enumerate(aut.delta):
        for s0, s1 in level:
            assert 0 <= s0 < len(aut.states[i + 1]) and 0 <= s1 < len(aut.states[i + 1])


pairs = st.integers(1, 10).flatmap(
    lambda n: st.tuples(halfspaces(n, n, signed=True), halfspaces(n, n, signed=True)))


@settings(max_examples=150, deadline=None)
@given(pairs)
def test_equivalence_matches_brute_force(pair):
    h1, h2 = pair
    w = find_difference(h1, h2)
    t1, t2 = truth_table(h1), truth_table(h2)
    if t1 == t2:
        assert w is None
    else:
        assert w is not None and h1(w) != h2(w)
        assert w.mask == next(i for i in range(1 << h1.n) if t1[i] != t2[i])


@settings(max_examples=100, deadline=None)
@given(pairs, st.sampled_from([XOR, AND, OR]))
def test_accepts_and_count_match_combiner(pair, g):
    aut = build(list(pair), g)
    t1, t2 = map(truth_table, pair)
    want = [g(a, b) for a, b in zip(t1, t2)]
    assert [accepts(aut, a) for a in all_assignments(aut.n)] == want
    assert count_accepting(aut) == sum(want)
    t = max(h.t for h in pair)
    assert sum(len(lv) for lv in aut.states[1:]) <= state_bound(t, 2, aut.n)
