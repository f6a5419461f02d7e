"""Parabolic representations a -> [[1, 1], [0, 1]], b -> [[1, 0], [y, 1]].

Symbolic word matrices have exact integer polynomial entries in the Riley
variable ``y``. The numerical side finds the roots of the Heckoid trace
condition ``tr rho(u_r) = +-2 cos(2 pi k / m)`` (sign fixed by the lift, see
:func:`lifted_trace_target`) and checks group relations there in extended
precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import zip_longest

import mpmath
import numpy as np

from .farey import OrbitBudget, OrbitWitness, admits_epimorphism, invert_word, is_in_orbit, orbit_descent
from .slopes import DomainError, HeckoidIndex, Slope
from .words import GroupWord, slope_word

DEFAULT_TOL = 1e-9


class PreconditionError(DomainError):
    """A certification was requested without the required orbit witness."""


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients from the constant term up."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def const(cls, k: int) -> IntPoly:
        return cls((k,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: IntPoly) -> IntPoly:
        return IntPoly(tuple(x + y for x, y in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly) -> IntPoly:
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPoly(tuple(out))

    def shift(self, k: int = 1) -> IntPoly:
        """Multiply by ``y**k``."""
        return IntPoly((0,) * k + self.coeffs) if self.coeffs else self

    def __call__(self, y):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
                coef = str(c) if (i == 0 or abs(c) != 1) else ("-" if c < 0 else "")
                parts.append(f"{coef}{'*' if mono and coef not in ('', '-') else ''}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


TracePoly = IntPoly
PolyMatrix = tuple[IntPoly, IntPoly, IntPoly, IntPoly]

_ONE, _ZERO = IntPoly.const(1), IntPoly()


def _as_word(w) -> str:
    return w.letters if isinstance(w, GroupWord) else GroupWord(w).letters


def word_matrix_symbolic(w) -> PolyMatrix:
    """Exact image of ``w`` as ``(m00, m01, m10, m11)``."""
    m00, m01, m10, m11 = _ONE, _ZERO, _ZERO, _ONE
    for x in _as_word(w):
        if x in "aA":
            e = IntPoly.const(1 if x == "a" else -1)
            m01, m11 = m01 + m00 * e, m11 + m10 * e
        else:
            # right multiplication by [[1, 0], [+-y, 1]]
            sgn = IntPoly.const(1 if x == "b" else -1)
            m00, m10 = m00 + (m01 * sgn).shift(), m10 + (m11 * sgn).shift()
    return m00, m01, m10, m11


def trace_poly(w) -> IntPoly:
    m00, _, _, m11 = word_matrix_symbolic(w)
    return m00 + m11


def generator_matrices(y: complex) -> dict[str, np.ndarray]:
    return {
        "a": np.array([[1, 1], [0, 1]], dtype=complex),
        "A": np.array([[1, -1], [0, 1]], dtype=complex),
        "b": np.array([[1, 0], [y, 1]], dtype=complex),
        "B": np.array([[1, 0], [-y, 1]], dtype=complex),
    }


def word_matrix(w, y: complex) -> np.ndarray:
    gens = generator_matrices(y)
    M = np.eye(2, dtype=complex)
    for x in _as_word(w):
        M = M @ gens[x]
    return M


def pm_identity_residual(M: np.ndarray) -> tuple[float, int]:
    """Max-entry distance from ``M`` to the nearer of ``+I`` and ``-I``, and that sign."""
    eye = np.eye(2)
    plus = float(np.max(np.abs(M - eye)))
    minus = float(np.max(np.abs(M + eye)))
    return (plus, 1) if plus <= minus else (minus, -1)


def heckoid_trace_target(idx: HeckoidIndex, k: int = 1) -> float:
    m = idx.m
    if math.gcd(k, m) != 1:
        raise DomainError(f"k = {k} is not coprime to m = {m}")
    return 2 * math.cos(2 * math.pi * k / m)


def lifted_trace_target(idx: HeckoidIndex, k: int = 1) -> float:
    """Trace of ``rho(u_r)`` in the lift where ``a`` and ``b`` have trace ``+2``.

    For odd ``m`` the element of order ``m`` in PSL(2, C) lifts to one with
    ``rho(u_r)^m = -I``, whose trace is ``-2 cos(2 pi k / m)``.  For even
    ``m`` both signs describe the same quotient and the plain value is kept.
    """
    t = heckoid_trace_target(idx, k)
    return t if idx.m % 2 == 0 else -t


@dataclass(frozen=True)
class Root:
    value: complex
    residual: float
    # high-precision value used for all evaluations
    precise: object = field(default=None, compare=False, repr=False)
    dps: int = field(default=30, compare=False, repr=False)

    @property
    def y(self):
        return self.precise if self.precise is not None else mpmath.mpc(self.value)


def _sort_key(z: complex):
    return (round(z.real, 10), round(z.imag, 10))


def _dps(poly: IntPoly) -> int:
    return 30 + poly.degree + len(str(max(abs(c) for c in poly.coeffs)))


def _aberth(coeffs: list, seeds: list, maxiter: int = 500) -> list:
    """Simultaneous Aberth-Ehrlich refinement at the current mpmath precision.

    A root stops moving once its correction drops below the working
    precision, or stagnates at the rounding floor of an ill-conditioned
    cluster after passing half the working digits.
    """
    n = len(seeds)
    dcoeffs = [c * (n - i) for i, c in enumerate(coeffs[:-1])]
    z = list(seeds)
    eps = mpmath.mpf(10) ** (-(mpmath.mp.dps - 25))
    floor = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))
    last = [mpmath.inf] * n
    active = set(range(n))
    for _ in range(maxiter):
        if not active:
            break
        for i in sorted(active):
            zi = z[i]
            f = mpmath.polyval(coeffs, zi)
            if f == 0:
                active.discard(i)
                continue
            ratio = f / mpmath.polyval(dcoeffs, zi)
            rep = mpmath.fsum(1 / (zi - z[j]) for j in range(n) if j != i)
            w = ratio / (1 - ratio * rep)
            z[i] = zi - w
            step = abs(w) / max(1, abs(z[i]))
            if step < eps or (step < floor and step > last[i] / 2):
                active.discard(i)
            last[i] = step
    return z


def _aberth_float(coeffs: list[complex], z: np.ndarray, maxiter: int = 500) -> np.ndarray:
    """Vectorized Aberth-Ehrlich in double precision, a cheap first stage."""
    c = np.array(coeffs, dtype=complex)
    dc = np.polyder(c)
    n = len(z)
    off = ~np.eye(n, dtype=bool)
    for _ in range(maxiter):
        ratio = np.polyval(c, z) / np.polyval(dc, z)
        diff = z[:, None] - z[None, :]
        rep = np.sum(np.where(off, 1 / np.where(off, diff, 1), 0), axis=1)
        w = ratio / (1 - ratio * rep)
        if not np.all(np.isfinite(w)):
            break
        z = z - w
        if np.max(np.abs(w) / np.maximum(1, np.abs(z))) < 1e-14:
            break
    return z


def _seeds(coeffs_c: list[complex], degree: int) -> list:
    try:
        raw = [complex(z) for z in np.roots(coeffs_c)]
    except np.linalg.LinAlgError:  # pragma: no cover
        raw = []
    if len(raw) != degree or not all(np.isfinite(z) for z in raw):
        raw = [complex(np.exp(2j * math.pi * (i + 0.25) / degree)) * 2 for i in range(degree)]
    seeds = []
    for i, z in enumerate(sorted(raw, key=_sort_key)):
        # separate coincident seeds deterministically
        while any(abs(z - w) < 1e-12 for w in seeds):
            z += 1e-6 * complex(math.cos(i), math.sin(i))
        seeds.append(z)
    return [mpmath.mpc(z) for z in _aberth_float(coeffs_c, np.array(seeds))]


@lru_cache(maxsize=256)
def _roots_cached(r: Slope, idx: HeckoidIndex, k: int) -> tuple[Root, ...]:
    sign = 1 if idx.m % 2 == 0 else -1
    heckoid_trace_target(idx, k)  # validates k
    u = slope_word(r)
    poly = trace_poly(u)
    if poly.degree < 1:
        return ()
    dps = _dps(poly)
    with mpmath.workdps(dps):
        mp_target = sign * 2 * mpmath.cos(2 * mpmath.pi * k / idx.m)
        coeffs = [mpmath.mpf(c) for c in reversed(poly.coeffs)]
        coeffs[-1] -= mp_target
        seeds = _seeds([complex(c) for c in coeffs], poly.degree)
        zs = _aberth(coeffs, seeds)
        roots = []
        for z in zs:
            res = abs(_mp_trace(u, z) - mp_target)
            roots.append(Root(complex(z), float(res), z, dps))
    return tuple(sorted(roots, key=lambda rt: _sort_key(rt.value)))


def heckoid_roots(r, idx: HeckoidIndex, k: int = 1, tol: float = DEFAULT_TOL) -> list[Root]:
    """All roots of the Heckoid trace condition for ``u_r``, in the trace ``+2`` lift.

    The target is :func:`lifted_trace_target`.  Companion-matrix eigenvalues
    seed an Aberth iteration run in extended precision on the exact integer
    coefficients; roots are sorted by real then imaginary part and each
    carries ``|tr rho(u_r)(y*) - target|``.  A constant polynomial has no
    roots and yields an empty list.  ``tol`` is accepted for interface
    symmetry; the residuals are reported, not filtered.
    """
    r = Slope.of(r)
    if r.is_inf or not (0 < r.num < r.den):
        raise DomainError(f"r must satisfy 0 < r < 1, got {r}")
    return list(_roots_cached(r, idx, k))


def _mp_matrix(w, y) -> list:
    a00, a01, a10, a11 = mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(1)
    for x in _as_word(w):
        if x == "a":
            a01, a11 = a00 + a01, a10 + a11
        elif x == "A":
            a01, a11 = a01 - a00, a11 - a10
        elif x == "b":
            a00, a10 = a00 + y * a01, a10 + y * a11
        else:
            a00, a10 = a00 - y * a01, a10 - y * a11
    return [[a00, a01], [a10, a11]]


def _mp_trace(w, y):
    M = _mp_matrix(w, y)
    return M[0][0] + M[1][1]


def _mp_pm_residual(M) -> tuple[float, int]:
    plus = max(abs(M[0][0] - 1), abs(M[0][1]), abs(M[1][0]), abs(M[1][1] - 1))
    minus = max(abs(M[0][0] + 1), abs(M[0][1]), abs(M[1][0]), abs(M[1][1] + 1))
    return (float(plus), 1) if plus <= minus else (float(minus), -1)


def _mp_mul(X, Y) -> list:
    return [[X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2)] for i in range(2)]


@dataclass(frozen=True)
class Check:
    """One measured quantity; passes when ``value < tol`` (``bound="<"``) or ``value > tol`` (``bound=">"``)."""

    name: str
    value: float
    tol: float
    bound: str = "<"

    @property
    def passed(self) -> bool:
        return self.value < self.tol if self.bound == "<" else self.value > self.tol

    def as_dict(self) -> dict:
        return {"name": self.name, "residual": self.value, "tol": self.tol, "bound": self.bound, "pass": self.passed}

    @classmethod
    def from_dict(cls, d: dict) -> Check:
        return cls(d["name"], d["residual"], d["tol"], d.get("bound", "<"))


@dataclass(frozen=True)
class CertificationReport:
    root: complex
    checks: tuple[Check, ...]

    @property
    def verdict(self) -> str:
        return "pass" if self.checks and all(c.passed for c in self.checks) else "fail"

    def as_dict(self) -> dict:
        return {
            "root": [self.root.real, self.root.imag],
            "checks": [c.as_dict() for c in self.checks],
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, d: dict) -> CertificationReport:
        re, im = d["root"]
        return cls(complex(re, im), tuple(Check.from_dict(c) for c in d["checks"]))


@dataclass(frozen=True)
class Certificate:
    """Per-root reports for one certification run, in canonical root order."""

    kind: str
    s: Slope | None
    r: Slope
    two_n: int
    k: int
    reports: tuple[CertificationReport, ...]
    witness: OrbitWitness | None = None
    info: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if self.reports and all(rep.verdict == "pass" for rep in self.reports) else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def max_residual(self) -> float:
        vals = [c.value for rep in self.reports for c in rep.checks if c.bound == "<"]
        return max(vals, default=0.0)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "s": None if self.s is None else str(self.s),
            "r": str(self.r),
            "two_n": self.two_n,
            "k": self.k,
            "verdict": self.verdict,
            "witness": None if self.witness is None else self.witness.as_dict(),
            "info": self.info,
            "reports": [rep.as_dict() for rep in self.reports],
        }

    @classmethod
    def from_dict(cls, d: dict) -> Certificate:
        wit = d.get("witness")
        return cls(
            d["kind"],
            None if d["s"] is None else Slope.parse(d["s"]),
            Slope.parse(d["r"]),
            d["two_n"],
            d["k"],
            tuple(CertificationReport.from_dict(x) for x in d["reports"]),
            None if wit is None else OrbitWitness.from_dict(wit),
            d.get("info", {}),
        )


def _identity_check(word: GroupWord, label: str, root: Root, tol: float) -> Check:
    with mpmath.workdps(root.dps):
        res, sign = _mp_pm_residual(_mp_matrix(word, root.y))
    return Check(f"rho(u_{label}) ~ {'+' if sign > 0 else '-'}I", res, tol)


def certify_epimorphism(s, r, idx: HeckoidIndex, budget=None, tol: float = DEFAULT_TOL, k: int = 1) -> Certificate:
    """Check that ``u_s'`` dies at every Heckoid root, where ``s'`` is whichever of ``s, s + 1`` the orbit test found."""
    s = Slope.of(s)
    epi = admits_epimorphism(s, r, idx, budget)
    if not epi.yes:
        raise PreconditionError(f"no orbit witness for {s} or {s + 1} within budget")
    target = epi.orbit_slope
    roots = heckoid_roots(r, idx, k, tol)
    reports = []
    for root in roots:
        if target.is_inf:
            checks = (Check("empty word", 0.0, tol),)
        else:
            checks = (_identity_check(slope_word(target), str(target), root, tol),)
        reports.append(CertificationReport(root.value, checks))
    return Certificate(
        "epimorphism", s, Slope.of(r), idx.two_n, k, tuple(reports), epi.membership.witness,
        {"via": epi.via, "orbit_slope": str(target)},
    )


def same_orbit_word(s, s2, r, idx: HeckoidIndex, budget=None):
    """A group word ``g`` with ``g(s) == s2``, or ``None`` if none was found.

    Both slopes are reduced by :func:`orbit_descent`; a common end point gives
    the connecting word.
    """
    s, s2 = Slope.of(s), Slope.of(s2)
    if s == s2:
        return ()
    n = OrbitBudget.of(budget).max_syllables
    w1, y1, _ = orbit_descent(s, r, idx, n)
    w2, y2, _ = orbit_descent(s2, r, idx, n)
    if y1 != y2:
        return None
    return w2 + invert_word(w1)


def trace_invariance_check(s, s2, r, idx: HeckoidIndex, tol: float = DEFAULT_TOL, k: int = 1, budget=None) -> Certificate:
    """``|tr rho(u_s) - tr rho(u_s2)|`` at every Heckoid root for two slopes of one orbit."""
    s, s2 = Slope.of(s), Slope.of(s2)
    g = same_orbit_word(s, s2, r, idx, budget)
    if g is None:
        raise PreconditionError(f"no word relating {s} and {s2} was found")
    u1, u2 = slope_word(s), slope_word(s2)
    reports = []
    for root in heckoid_roots(r, idx, k, tol):
        with mpmath.workdps(root.dps):
            d = abs(_mp_trace(u1, root.y) - _mp_trace(u2, root.y))
        reports.append(CertificationReport(root.value, (Check(f"tr u_{s} - tr u_{s2}", float(d), tol),)))
    return Certificate(
        "trace_invariance", s, Slope.of(r), idx.two_n, k, tuple(reports), OrbitWitness(g),
        {"s2": str(s2)},
    )


def divisibility_check(s, r, idx: HeckoidIndex, tol: float = DEFAULT_TOL, k: int = 1, budget=None, strict: bool = True) -> Certificate:
    """Full matrix residual of ``rho(u_s)`` against ``+-I`` at every Heckoid root.

    With ``strict=False`` the check also runs for slopes without an orbit
    witness, which is how negative controls are produced.
    """
    s = Slope.of(s)
    mem = is_in_orbit(s, r, idx, budget)
    if strict and not mem.member:
        raise PreconditionError(f"no orbit witness for {s} within budget")
    roots = heckoid_roots(r, idx, k, tol)
    if s.is_inf:
        reports = tuple(CertificationReport(root.value, (Check("empty word", 0.0, tol),)) for root in roots)
    else:
        u = slope_word(s)
        reports = tuple(CertificationReport(root.value, (_identity_check(u, str(s), root, tol),)) for root in roots)
    return Certificate("divisibility", s, Slope.of(r), idx.two_n, k, reports, mem.witness, {"member": mem.member})


def elliptic_order_check(r, idx: HeckoidIndex, k: int = 1, tol: float = DEFAULT_TOL, separation: float = 1e-3) -> Certificate:
    """At each root, ``rho(u_r)^m`` is ``+-I`` while ``rho(u_r)`` itself stays away from ``+-I``."""
    u = slope_word(r)
    reports = []
    for root in heckoid_roots(r, idx, k, tol):
        with mpmath.workdps(root.dps):
            M = _mp_matrix(u, root.y)
            Mm = M
            for _ in range(idx.m - 1):
                Mm = _mp_mul(Mm, M)
            power, sign = _mp_pm_residual(Mm)
            dist, _ = _mp_pm_residual(M)
        reports.append(CertificationReport(root.value, (
            Check(f"rho(u_r)^{idx.m} ~ {'+' if sign > 0 else '-'}I", power, tol),
            Check("rho(u_r) away from +-I", dist, separation, ">"),
            Check("trace residual", root.residual, tol),
        )))
    return Certificate("elliptic_order", None, Slope.of(r), idx.two_n, k, tuple(reports))
