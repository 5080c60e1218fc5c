import json
import math

import pytest
from hypothesis import given, strategies as st

from bernstein_lab import RealCompactSet, cantor_generation, classify_point, dilate, parse_set, serialize
from bernstein_lab.errors import SetError
from bernstein_lab.sets import Location


def test_parse_single_interval():
    assert parse_set('{"intervals":[[-1,1]]}').intervals == ((-1.0, 1.0),)


def test_parse_merges_overlap():
    assert parse_set('{"intervals":[[0,0.5],[0.4,1]]}').intervals == ((0.0, 1.0),)


def test_parse_sorts():
    assert parse_set('{"intervals":[[0.1,1],[-1,-0.1]]}').intervals == ((-1.0, -0.1), (0.1, 1.0))


def test_touching_intervals_merge():
    assert RealCompactSet.from_intervals([(0, 1), (1, 2)]).intervals == ((0.0, 2.0),)


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"points": []}',
        '{"intervals": []}',
        '{"intervals": [[1, 1]]}',
        '{"intervals": [[2, 1]]}',
        '{"intervals": [[0, "a"]]}',
        '{"intervals": [[0, 1, 2]]}',
        '{"intervals": [[0, Infinity]]}',
    ],
)
def test_parse_rejects(text):
    with pytest.raises(SetError):
        parse_set(text)


def test_dilate_absorbed():
    E = RealCompactSet.from_intervals([(-1, 1)])
    assert dilate(E, 0.0, 0.1) == E


def test_dilate_extends_component():
    E = RealCompactSet.from_intervals([(-1, -0.1), (0.1, 1)])
    out = dilate(E, 0.2, 0.15)
    assert out.m == 2
    assert out.intervals[0] == (-1.0, -0.1)
    assert out.intervals[1][0] == pytest.approx(0.05, abs=1e-15)
    assert out.intervals[1][1] == 1.0


def test_dilate_bridges_gap():
    E = RealCompactSet.from_intervals([(-1, -0.1), (0.1, 1)])
    assert dilate(E, 0.2, 0.5).intervals == ((-1.0, 1.0),)


def test_dilate_requires_member_and_positive_delta():
    E = RealCompactSet.from_intervals([(-1, -0.1), (0.1, 1)])
    with pytest.raises(SetError):
        dilate(E, 0.0, 0.1)
    with pytest.raises(SetError):
        dilate(E, 0.5, 0.0)


def test_cantor_first_generation():
    E = cantor_generation(1 / 3, 1)
    assert E.m == 2
    assert E.intervals[0] == pytest.approx((0, 1 / 3), abs=1e-15)
    assert E.intervals[1] == pytest.approx((2 / 3, 1), abs=1e-15)


def test_cantor_zeroth_generation_is_hull():
    assert cantor_generation(0.25, 0).intervals == ((0.0, 1.0),)


def test_cantor_lengths():
    E = cantor_generation(0.4, 2)
    assert E.m == 4
    assert [b - a for a, b in E.intervals] == pytest.approx([0.16] * 4, abs=1e-15)


@pytest.mark.parametrize("ratio,k", [(0.5, 1), (0.0, 1), (0.3, -1)])
def test_cantor_rejects(ratio, k):
    with pytest.raises(SetError):
        cantor_generation(ratio, k)


@pytest.mark.parametrize(
    "x,loc",
    [(0.0, Location.INTERIOR), (1.0, Location.ENDPOINT), (-1.0, Location.ENDPOINT), (1.5, Location.OUTSIDE_HULL)],
)
def test_classify_segment(x, loc):
    assert classify_point(RealCompactSet.from_intervals([(-1, 1)]), x).location is loc


def test_classify_gap():
    E = RealCompactSet.from_intervals([(-1, -0.1), (0.1, 1)])
    assert classify_point(E, 0.0).location is Location.GAP


def test_component_lookup():
    E = RealCompactSet.from_intervals([(-1, -0.1), (0.1, 1)])
    assert E.component(0.5) == 1
    assert E.component(-0.1) == 0
    with pytest.raises(SetError):
        E.component(0.0)


intervals = st.lists(
    st.tuples(
        st.floats(-100, 100, allow_nan=False), st.floats(1e-3, 10, allow_nan=False)
    ).map(lambda t: (t[0], t[0] + t[1])),
    min_size=1,
    max_size=8,
)


@given(intervals)
def test_canonical_form(pairs):
    E = RealCompactSet.from_intervals(pairs)
    for a, b in E.intervals:
        assert a < b
    for (_, b), (a, _) in zip(E.intervals, E.intervals[1:]):
        assert b < a
    # canonical form is a fixed point and covers every input piece
    assert RealCompactSet.from_intervals(E.intervals) == E
    for a, b in pairs:
        assert E.contains(a) and E.contains(b) and E.contains(0.5 * (a + b))


@given(intervals)
def test_serialize_roundtrip(pairs):
    E = RealCompactSet.from_intervals(pairs)
    assert parse_set(serialize(E)) == E
    assert json.loads(E.to_json())["intervals"] == [list(iv) for iv in E.intervals]


@given(intervals, st.floats(0.1, 10), st.floats(-5, 5))
def test_affine_preserves_structure(pairs, scale, shift):
    E = RealCompactSet.from_intervals(pairs)
    F = E.affine(scale, shift)
    assert F.m == E.m
    for (a, b), (c, d) in zip(E.intervals, F.intervals):
        assert math.isclose(c, scale * a + shift, rel_tol=1e-12, abs_tol=1e-9)
        assert math.isclose(d, scale * b + shift, rel_tol=1e-12, abs_tol=1e-9)


@given(intervals, st.floats(0, 1), st.floats(1e-3, 5))
def test_dilation_contains_original(pairs, frac, delta):
    E = RealCompactSet.from_intervals(pairs)
    a, b = E.intervals[0]
    x0 = a + frac * (b - a)
    D = dilate(E, x0, delta)
    assert E.issubset(D)
    assert D.contains(x0 - delta) and D.contains(x0 + delta)
    assert D.m <= E.m + 1
