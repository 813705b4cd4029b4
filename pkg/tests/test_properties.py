"""Randomized properties (hypothesis)."""

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from ksvectors.canon import certificate
from ksvectors.diagram import Diagram, DiagramError, girth, parse_mmp, serialize
from ksvectors.solver.interval import Interval
from ksvectors.states01 import has_01_state

from oracles import brute_girth, brute_has_01_state

TRIPLES = list(itertools.combinations(range(9), 3))


@st.composite
def diagrams(draw):
    picks = draw(st.lists(st.sampled_from(TRIPLES), min_size=1, max_size=7, unique=True))
    used = sorted({v for e in picks for v in e})
    m = {v: i for i, v in enumerate(used)}
    try:
        return Diagram(tuple(tuple(m[v] for v in e) for e in picks))
    except DiagramError:
        return None


@settings(max_examples=150, deadline=None)
@given(diagrams(), st.randoms(use_true_random=False))
def test_random_diagram_invariants(d, rnd):
    if d is None:
        return
    assert certificate(parse_mmp(serialize(d))) == certificate(d)
    perm = list(range(d.a))
    rnd.shuffle(perm)
    e = d.relabel(perm)
    assert certificate(e) == certificate(d)
    assert has_01_state(e) == has_01_state(d) == brute_has_01_state(d)
    assert girth(d) == brute_girth(d)


finite = st.floats(-10, 10, allow_nan=False)


@st.composite
def intervals(draw):
    a, b = sorted((draw(finite), draw(finite)))
    return Interval(a, b)


@settings(max_examples=300, deadline=None)
@given(intervals(), intervals(), st.floats(0, 1), st.floats(0, 1))
def test_interval_ops_enclose(x, y, s, t):
    p = x.lo + s * (x.hi - x.lo)
    q = y.lo + t * (y.hi - y.lo)
    assert (x + y).contains(p + q)
    assert (x - y).contains(p - q)
    assert (x * y).contains(p * q)
    assert (x ** 2).contains(p * p)
    if not y.contains_zero():
        assert (x / y).contains(p / q)
