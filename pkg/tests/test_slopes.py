from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from heckoid.slopes import ContFrac, DomainError, HeckoidIndex, Slope, cf_eval, cf_expand, cf_matrix, seq_transform

st_terms = st.lists(st.integers(-6, 6), max_size=6)


@st.composite
def st_unit_slope(draw, max_den=400):
    p = draw(st.integers(2, max_den))
    q = draw(st.integers(1, p - 1).filter(lambda q: gcd(q, p) == 1))
    return Slope(q, p)


def test_slope_normal_form():
    assert Slope(2, 4) == Slope(1, 2)
    assert Slope(3, -6) == Slope(-1, 2)
    assert Slope(-5, 0) == Slope.inf() == Slope(1, 0)
    assert str(Slope.inf()) == "inf" and str(Slope(-3, 7)) == "-3/7"
    with pytest.raises(DomainError):
        Slope(0, 0)


@pytest.mark.parametrize("text", ["1/x", "", "3/0/1", "0/0", "abc"])
def test_slope_parse_rejects(text):
    with pytest.raises(DomainError):
        Slope.parse(text)


@pytest.mark.parametrize("text, want", [("inf", Slope.inf()), ("25/36", Slope(25, 36)), ("-11/36", Slope(-11, 36)), ("4", Slope(4, 1))])
def test_slope_parse(text, want):
    assert Slope.parse(text) == want


@pytest.mark.parametrize(
    "s, terms",
    [("2/9", (4, 2)), ("9/56", (6, 4, 2)), ("1/2", (2,)), ("2/3", (1, 2))],
)
def test_cf_expand_golden(s, terms):
    f = cf_expand(s)
    assert f.whole == 0 and f.terms == terms


@pytest.mark.parametrize("s", ["0", "1", "inf", "3/2", "-1/3"])
def test_cf_expand_domain(s):
    with pytest.raises(DomainError):
        cf_expand(s)


@pytest.mark.parametrize(
    "f, want",
    [
        (ContFrac(0, (4, 2)), Slope(2, 9)),
        (ContFrac(0, (1, 2, 4, -2, -1)), Slope(25, 36)),
        (ContFrac(0, (1, 2, 36, -2, -1)), Slope(217, 324)),
        (ContFrac(7, ()), Slope.inf()),
        (ContFrac(0, (0,)), Slope.inf()),
    ],
)
def test_cf_eval_golden(f, want):
    assert cf_eval(f) == want


def _naive(whole, terms):
    # bottom-up with Fraction; only valid when no partial value vanishes
    x = None
    for a in reversed(terms):
        x = Fraction(a) if x is None else a + 1 / x
    return whole + 1 / x


@given(st.integers(-5, 5), st.lists(st.integers(1, 9), min_size=1, max_size=6))
def test_cf_eval_matches_naive(whole, terms):
    assert cf_eval(ContFrac(whole, tuple(terms))).fraction() == _naive(whole, terms)


@given(st_unit_slope())
def test_round_trip(s):
    f = cf_expand(s)
    assert all(a >= 1 for a in f.terms) and f.terms[-1] >= 2
    assert cf_eval(f) == s


@given(st_terms, st.integers(-6, 6), st.integers(-6, 6), st_terms)
def test_zero_contraction(head, x, y, tail):
    long = ContFrac(0, tuple(head + [x, 0, y] + tail))
    short = ContFrac(0, tuple(head + [x + y] + tail))
    assert cf_eval(long) == cf_eval(short)


@given(st.integers(-6, 6), st_terms.filter(bool))
def test_matrix_sign_invariance(whole, terms):
    a, b, c, d = cf_matrix(whole, terms)
    assert Slope(-b, -d) == Slope(b, d) == cf_eval(ContFrac(whole, tuple(terms)))


def test_seq_transform():
    assert seq_transform((6, 4, 2), "reverse") == (2, 4, 6)
    assert seq_transform((4, 2), "negate") == (-4, -2)
    assert seq_transform((1, 2), "negate_reverse") == (-2, -1)
    with pytest.raises(DomainError):
        seq_transform((1,), "rotate")


@given(st.integers(-5, 5), st_terms)
def test_contfrac_text_round_trip(whole, terms):
    f = ContFrac(whole, tuple(terms))
    assert ContFrac.parse(str(f)) == f


@pytest.mark.parametrize("text, two_n", [("2", 4), ("5/2", 5), ("2.5", 5), ("3/2", 3), ("7", 14)])
def test_heckoid_index_parse(text, two_n):
    idx = HeckoidIndex.from_n(text)
    assert idx.two_n == two_n and idx.m == two_n
    assert idx.is_even == (two_n % 2 == 0)


@pytest.mark.parametrize("text", ["1", "2.3", "1/2", "x", "5/3", "0"])
def test_heckoid_index_rejects(text):
    with pytest.raises(DomainError):
        HeckoidIndex.from_n(text)
