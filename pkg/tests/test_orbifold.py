import json
from math import gcd

import pytest
from hypothesis import given, strategies as st

from heckoid.orbifold import (
    INF,
    OrbifoldDescriptor,
    ParityError,
    describe,
    even_orbifold_desc,
    odd_orbifold_desc,
    odd_slope_change,
    quotient_orbifold_desc,
)
from heckoid.slopes import DomainError, HeckoidIndex, Slope


@st.composite
def st_r(draw, max_den=100):
    p = draw(st.integers(2, max_den))
    q = draw(st.integers(1, p - 1).filter(lambda q: gcd(q, p) == 1))
    return Slope(q, p)


st_odd = st.integers(1, 6).map(lambda k: HeckoidIndex(2 * k + 1))
st_even = st.integers(2, 6).map(lambda k: HeckoidIndex(2 * k))


def test_even_examples():
    d = even_orbifold_desc("2/9", HeckoidIndex.from_n("2"))
    assert d.base_link_slope == Slope(2, 9)
    assert d.weights("tau_minus") == [2]
    assert set(d.weights("link_component")) == {INF}
    assert even_orbifold_desc("1/3", HeckoidIndex.from_n("3")).weights("tau_minus") == [3]
    with pytest.raises(ParityError):
        even_orbifold_desc("2/9", HeckoidIndex.from_n("5/2"))


def test_quotient_examples():
    d = quotient_orbifold_desc("2/9", 4)
    assert d.weights("tau_plus") == [2] and d.weights("tau_minus") == [4]
    assert d.weights("J") == [INF] and d.weights("link_component") == [2, 2, 2]
    e = quotient_orbifold_desc("9/56", 5)
    assert [x.label for x in e.edges] == [x.label for x in d.edges] and e.weights("tau_minus") == [5]
    with pytest.raises(DomainError):
        quotient_orbifold_desc("2/9", 1)


@pytest.mark.parametrize("r, rhat", [("2/9", "1/9"), ("9/56", "9/28"), ("1/3", "2/3")])
def test_odd_slope_change(r, rhat):
    assert odd_slope_change(r) == Slope.parse(rhat)
    for m in (3, 5, 7):
        assert odd_orbifold_desc(r, HeckoidIndex(m)).base_link_slope == Slope.parse(rhat)


def test_odd_shapes():
    knot = odd_orbifold_desc("2/9", HeckoidIndex(3))
    assert knot.strata_count == 2
    assert knot.weights("tau_minus") == [3] and knot.weights("J1") == [INF] and knot.weights("J2") == [2]
    link = odd_orbifold_desc("9/56", HeckoidIndex(3))
    assert link.strata_count == 4
    assert link.weights("tau_plus") == [2] and link.weights("J1") == [INF, INF] and link.weights("J2") == [2, 2]
    with pytest.raises(ParityError):
        odd_orbifold_desc("2/9", HeckoidIndex(4))


@given(st_r())
def test_rhat_denominators(r):
    rhat = odd_slope_change(r)
    assert gcd(rhat.num, rhat.den) == 1 and rhat.num > 0
    assert rhat.den == (r.den if r.den % 2 else r.den // 2)


@given(st_r(), st.one_of(st_odd, st_even))
def test_vertex_condition_everywhere(r, idx):
    assert describe(r, idx).vertex_condition()
    assert quotient_orbifold_desc(r, idx).vertex_condition()


@given(st_r(), st.one_of(st_odd, st_even))
def test_single_tau_minus_and_tau_plus_weight(r, idx):
    for d in (describe(r, idx), quotient_orbifold_desc(r, idx)):
        assert len(d.weights("tau_minus")) == 1
        assert all(w == 2 for w in d.weights("tau_plus"))
        if d.case != "even":
            assert [e.label for e in d.edges if e.weight == idx.m] == ["tau_minus"] or idx.m == 2


@given(st_r(), st.one_of(st_odd, st_even))
def test_parity_contracts(r, idx):
    good, bad = (even_orbifold_desc, odd_orbifold_desc) if idx.is_even else (odd_orbifold_desc, even_orbifold_desc)
    good(r, idx)
    with pytest.raises(ParityError):
        bad(r, idx)


@given(st_r(), st.one_of(st_odd, st_even))
def test_json_round_trip(r, idx):
    d = describe(r, idx)
    doc = json.loads(json.dumps(d.as_dict()))
    assert doc["strata_count"] == d.strata_count
    assert OrbifoldDescriptor.from_dict(doc) == d


def test_vertex_condition_detects_bad_weights():
    from heckoid.orbifold import Edge
    bad = OrbifoldDescriptor(Slope(1, 3), (Edge("tau_minus", 3, (0, 1)), Edge("J2", 3, (0, 1)), Edge("J2", 3, (0, 1))), "odd, knot", 3)
    assert not bad.vertex_condition()


@pytest.mark.parametrize("r", ["0", "1", "inf", "5/3"])
def test_domain(r):
    with pytest.raises(DomainError):
        describe(r, HeckoidIndex(4))
