import itertools

import pytest
from hypothesis import given, settings, strategies as st

from circuitcodes.construct import build_max_symmetric
from circuitcodes.core import Segment, TransitionSequence, delta
from circuitcodes.errors import NotACircuit, NotSimpleCycle
from circuitcodes.oracle import cycle_distance, hamming, verify_spread_bruteforce, walk

from conftest import EX3_A


def T(*xs, d=None):
    return TransitionSequence.of(xs, d)


def tuple_walk(entries, d):
    # independent walk over bit tuples
    v = [0] * d
    out = [tuple(v)]
    for x in entries:
        v[x - 1] ^= 1
        out.append(tuple(v))
    return out


def test_four_cycle_vertices():
    w = walk(T(1, 2, 1, 2))
    assert [w.bits(i, 2) for i in range(4)] == ["00", "10", "11", "01"]
    assert w.closes and w.distinct


def test_backtrack_is_not_simple():
    with pytest.raises(NotSimpleCycle):
        walk(T(1, 1))


def test_open_walk():
    with pytest.raises(NotACircuit):
        walk(T(1, 2, 3))


def test_family_walk():
    code = build_max_symmetric(5, 2)
    w = walk(code)
    assert code.d == 9 and w.n == 24 and len(set(w.vertices)) == 24
    ref = tuple_walk(code.entries, 9)
    assert ref[-1] == (0,) * 9 and len(set(ref[:-1])) == 24


def test_verify_examples():
    assert verify_spread_bruteforce(T(1, 2, 1, 2), 2).ok
    assert verify_spread_bruteforce(TransitionSequence(EX3_A * 2, 15), 8).ok
    rep = verify_spread_bruteforce(T(1, 2, 1, 3, 2, 3), 2)
    assert not rep.ok and rep.pair.cycle_distance >= 2 and rep.pair.hamming < 2


def test_witness_pair_is_genuine():
    t = T(1, 2, 1, 3, 2, 3)
    pair = verify_spread_bruteforce(t, 2).pair
    verts = tuple_walk(t.entries, 3)
    ham = sum(a != b for a, b in zip(verts[pair.i], verts[pair.j]))
    assert ham == pair.hamming
    assert cycle_distance(pair.i, pair.j, 6) == pair.cycle_distance


def test_dimension_limit():
    with pytest.raises(ValueError):
        verify_spread_bruteforce(TransitionSequence((64, 64), 64), 1)


def test_helpers():
    assert hamming(0b1011, 0b0001) == 2
    assert cycle_distance(1, 9, 10) == 2 and cycle_distance(3, 3, 10) == 0


@st.composite
def circuits(draw):
    d = draw(st.integers(2, 7))
    half = draw(st.lists(st.integers(1, d), min_size=2, max_size=9))
    return TransitionSequence(tuple(half) + tuple(draw(st.permutations(half))), d)


@settings(max_examples=200, deadline=None)
@given(circuits())
def test_hamming_equals_delta(t):
    verts = tuple_walk(t.entries, t.d)
    for i, j in itertools.combinations(range(t.n), 2):
        ham = sum(a != b for a, b in zip(verts[i], verts[j]))
        assert ham == delta(t, Segment(i, j - i))
