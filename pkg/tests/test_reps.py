import json
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from heckoid.farey import OrbitBudget, orbit_bfs
from heckoid.reps import (
    Certificate,
    Check,
    IntPoly,
    PreconditionError,
    certify_epimorphism,
    divisibility_check,
    elliptic_order_check,
    heckoid_roots,
    heckoid_trace_target,
    lifted_trace_target,
    pm_identity_residual,
    trace_invariance_check,
    trace_poly,
    word_matrix,
    word_matrix_symbolic,
)
from heckoid.slopes import DomainError, HeckoidIndex, Slope
from heckoid.words import GroupWord, free_reduce, inverse, slope_word

I4 = HeckoidIndex(4)
st_word = st.text(alphabet="abAB", max_size=60).map(free_reduce)
Y = sp.symbols("y")
GENS = {
    "a": sp.Matrix([[1, 1], [0, 1]]),
    "A": sp.Matrix([[1, -1], [0, 1]]),
    "b": sp.Matrix([[1, 0], [Y, 1]]),
    "B": sp.Matrix([[1, 0], [-Y, 1]]),
}


def _sympy_matrix(w):
    M = sp.eye(2)
    for x in w:
        M = M * GENS[x]
    return M.applyfunc(sp.expand)


def _as_sympy(p: IntPoly):
    return sp.expand(sum(c * Y**i for i, c in enumerate(p.coeffs)))


def test_word_matrix_examples():
    m = word_matrix_symbolic("ab")
    assert [p.coeffs for p in m] == [(1, 1), (1,), (0, 1), (1,)]
    assert trace_poly("ab").coeffs == (2, 1)
    assert trace_poly(slope_word("1/3")).coeffs == (2, -1, -2, -1)
    assert str(trace_poly(slope_word("1/3"))) == "2 - y - 2*y^2 - y^3"


@given(st.text(alphabet="abAB", max_size=14))
def test_symbolic_matches_sympy(w):
    M = _sympy_matrix(w)
    ours = word_matrix_symbolic(w) if free_reduce(w) == w else word_matrix_symbolic(free_reduce(w))
    for p, q in zip(ours, [M[0, 0], M[0, 1], M[1, 0], M[1, 1]]):
        assert sp.expand(_as_sympy(p) - q) == 0


@given(st_word)
def test_determinant_is_one(w):
    m00, m01, m10, m11 = word_matrix_symbolic(w)
    assert (m00 * m11 - m01 * m10).coeffs == (1,)


@given(st_word)
def test_trace_at_zero(w):
    assert trace_poly(w)(0) == 2


@given(st_word, st_word)
def test_trace_conjugation_invariant(w, g):
    assert trace_poly(g + w + inverse(g)) == trace_poly(w)
    assert trace_poly(inverse(w)) == trace_poly(w)


@given(st_word, st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False))
def test_numeric_matches_symbolic(w, y):
    M = word_matrix(w, y)
    for p, x in zip(word_matrix_symbolic(w), M.ravel()):
        exact = p(y)
        assert abs(exact - x) <= 1e-12 * max(1, abs(exact))
    assert abs(np.linalg.det(M) - 1) < 1e-9 * max(1, np.abs(M).max() ** 2)


def test_targets():
    assert heckoid_trace_target(HeckoidIndex(4)) == pytest.approx(0, abs=1e-15)
    assert heckoid_trace_target(HeckoidIndex(6)) == pytest.approx(1)
    assert heckoid_trace_target(HeckoidIndex(3)) == pytest.approx(-1)
    assert lifted_trace_target(HeckoidIndex(3)) == pytest.approx(1)
    assert lifted_trace_target(HeckoidIndex(6)) == pytest.approx(1)
    with pytest.raises(DomainError):
        heckoid_trace_target(HeckoidIndex(6), 2)


def test_pm_identity_residual():
    assert pm_identity_residual(-np.eye(2)) == (0.0, -1)
    res, sign = pm_identity_residual(np.array([[1, 1e-3], [0, 1]]))
    assert sign == 1 and res == pytest.approx(1e-3)


@pytest.mark.parametrize("r, m", [("1/3", 4), ("2/5", 4), ("1/3", 3), ("2/9", 5), ("3/7", 6)])
def test_heckoid_roots(r, m):
    idx = HeckoidIndex(m)
    roots = heckoid_roots(r, idx)
    u = slope_word(r)
    assert len(roots) == trace_poly(u).degree
    assert [rt.value for rt in roots] == sorted((rt.value for rt in roots), key=lambda z: (round(z.real, 10), round(z.imag, 10)))
    target = lifted_trace_target(idx)
    for rt in roots:
        assert rt.residual < 1e-9
        assert abs(np.trace(word_matrix(u, rt.value)) - target) < 1e-8
    values = [rt.value for rt in roots]
    assert min(abs(a - b) for i, a in enumerate(values) for b in values[i + 1:]) > 1e-6


def test_roots_deterministic():
    a = heckoid_roots("2/7", HeckoidIndex(5))
    b = heckoid_roots("2/7", HeckoidIndex(5))
    assert [x.value for x in a] == [x.value for x in b]


def test_hopf_roots_recorded():
    # u_{1/2} is the commutator; its trace is 2 + y^2
    assert trace_poly(slope_word("1/2")).coeffs == (2, 0, 1)
    roots = heckoid_roots("1/2", I4)
    assert sorted(round(abs(rt.value.imag), 12) for rt in roots) == [round(math.sqrt(2), 12)] * 2


def test_certify_examples():
    cert = certify_epimorphism("13/36", "1/3", I4)
    assert cert.passed and len(cert.reports) == 3 and cert.max_residual() < 1e-9
    assert certify_epimorphism("25/36", "2/3", I4).passed
    vac = certify_epimorphism(Slope.inf(), "1/3", I4)
    assert vac.passed and vac.max_residual() == 0
    shifted = certify_epimorphism("-11/36", "2/3", I4)
    assert shifted.passed and shifted.info["via"] == "s+1"
    with pytest.raises(PreconditionError):
        certify_epimorphism("1/3", "2/3", I4, OrbitBudget(2, 2))


def test_zero_tolerance_fails():
    assert not certify_epimorphism("13/36", "1/3", I4, tol=0).passed


def test_trace_invariance():
    for s2 in ("59/36", "-13/36", "13/36"):
        cert = trace_invariance_check("13/36", s2, "1/3", I4)
        assert cert.passed
    assert trace_invariance_check("13/36", "13/36", "1/3", I4).max_residual() == 0
    with pytest.raises(PreconditionError):
        trace_invariance_check("13/36", "1/5", "1/3", I4)


def test_divisibility():
    assert divisibility_check("13/36", "1/3", I4).passed
    assert divisibility_check("25/36", "2/3", I4).passed
    neg = divisibility_check("1/3", "2/3", I4, strict=False)
    assert not neg.passed and neg.info["member"] is False
    with pytest.raises(PreconditionError):
        divisibility_check("1/3", "2/3", I4, budget=OrbitBudget(2, 2))


@pytest.mark.parametrize("r, m", [("1/3", 3), ("2/5", 5), ("2/7", 3)])
def test_odd_index_divisibility(r, m):
    idx = HeckoidIndex(m)
    sample = [s for s in orbit_bfs(r, idx, 2, 10**6) if not s.is_inf]
    assert sample
    for s in sample:
        assert divisibility_check(s, r, idx).passed
    # at the unlifted target the same slopes do not die
    poly = trace_poly(slope_word(r))
    coeffs = [complex(c) for c in reversed(poly.coeffs)]
    coeffs[-1] -= heckoid_trace_target(idx)
    worst = max(pm_identity_residual(word_matrix(slope_word(sample[0]), y))[0] for y in np.roots(coeffs))
    assert worst > 1
    assert divisibility_check("inf", r, idx).passed


@pytest.mark.parametrize("r, m, k", [("1/3", 4, 1), ("1/3", 3, 1), ("2/5", 5, 2), ("2/9", 8, 3)])
def test_elliptic_order(r, m, k):
    cert = elliptic_order_check(r, HeckoidIndex(m), k)
    assert cert.passed
    assert all(len(rep.checks) == 3 for rep in cert.reports)


def test_certificate_json_round_trip():
    for cert in (
        certify_epimorphism("25/36", "2/3", I4),
        divisibility_check("1/3", "2/3", I4, strict=False),
        elliptic_order_check("1/3", I4),
    ):
        doc = json.loads(json.dumps(cert.as_dict()))
        back = Certificate.from_dict(doc)
        assert back.as_dict() == cert.as_dict()


def test_check_bounds():
    assert Check("x", 1e-12, 1e-9).passed
    assert not Check("x", 0.0, 0.0).passed
    assert Check("far", 0.5, 1e-3, ">").passed
