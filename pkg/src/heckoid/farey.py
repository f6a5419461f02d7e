"""The group generated by the reflections of the Farey tessellation at inf
and the parabolic cyclic group at a vertex r, acting on Q u {inf}.

Words in the group use three letters:

* ``("R0", 1)``: x -> -x
* ``("R1", 1)``: x -> 2 - x
* ``("P", +-1)``: the m-th power (or its inverse) of the primitive parabolic at r

A word is a tuple of letters read as a matrix product, so its value on a
slope is obtained by applying the rightmost letter first.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .slopes import ContFrac, DomainError, HeckoidIndex, Slope, cf_eval, cf_expand

Letter = tuple[str, int]
Word = tuple[Letter, ...]


@dataclass(frozen=True)
class FareyMatrix:
    """Integer 2x2 matrix of determinant +-1, up to global sign."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        entries = (self.a, self.b, self.c, self.d)
        det = self.a * self.d - self.b * self.c
        if det not in (1, -1):
            raise DomainError(f"determinant {det} is not +-1")
        first = next(x for x in entries if x != 0)
        if first < 0:
            for name, x in zip("abcd", entries):
                object.__setattr__(self, name, -x)

    @classmethod
    def identity(cls) -> FareyMatrix:
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: FareyMatrix) -> FareyMatrix:
        return FareyMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> FareyMatrix:
        # adjugate; projectively the same as dividing by det
        return FareyMatrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> FareyMatrix:
        base = self if k >= 0 else self.inverse()
        result, k = FareyMatrix.identity(), abs(k)
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __call__(self, s: Slope) -> Slope:
        s = Slope.of(s)
        return Slope(self.a * s.num + self.b * s.den, self.c * s.num + self.d * s.den)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


def reflection_at_infinity(k: int) -> FareyMatrix:
    """Reflection in the Farey edge {k, inf}: x -> 2k - x."""
    return FareyMatrix(-1, 2 * k, 0, 1)


def parabolic_unit(r, direction: int = 1) -> FareyMatrix:
    """Primitive parabolic fixing ``r``.

    For ``r = q/p`` this is ``I + N`` with ``N = [[qp, -q^2], [p^2, -qp]]``;
    ``direction=-1`` gives the inverse.  At ``inf`` the unit is x -> x + 1.
    """
    r = Slope.of(r)
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    if r.is_inf:
        unit = FareyMatrix(1, 1, 0, 1)
    else:
        q, p = r.num, r.den
        unit = FareyMatrix(1 + q * p, -q * q, p * p, 1 - q * p)
    return unit if direction == 1 else unit.inverse()


def _check_r(r) -> Slope:
    r = Slope.of(r)
    if r.is_inf or not (0 < r.num < r.den):
        raise DomainError(f"r must satisfy 0 < r < 1, got {r}")
    return r


def generator(label: str, r, idx: HeckoidIndex, direction: int = 1) -> FareyMatrix:
    if label == "R0":
        return reflection_at_infinity(0)
    if label == "R1":
        return reflection_at_infinity(1)
    if label == "P":
        return parabolic_unit(r, direction) ** idx.m
    raise ValueError(f"unknown generator {label!r}")


def word_matrix(word: Word, r, idx: HeckoidIndex, direction: int = 1) -> FareyMatrix:
    M = FareyMatrix.identity()
    for label, e in word:
        g = generator(label, r, idx, direction)
        M = M @ (g if e > 0 else g.inverse())
    return M


def word_to_str(word: Word) -> str:
    if not word:
        return "1"
    return " ".join(lbl if e == 1 else f"{lbl}^{e}" for lbl, e in word)


def invert_word(word: Word) -> Word:
    return tuple((lbl, e if lbl != "P" else -e) for lbl, e in reversed(word))


def _translation_word(k: int) -> Word:
    """Letters for x -> x + 2k."""
    if k >= 0:
        return (("R1", 1), ("R0", 1)) * k
    return (("R0", 1), ("R1", 1)) * (-k)


def _power_word(e: int) -> Word:
    return (("P", 1 if e > 0 else -1),) * abs(e)


@dataclass(frozen=True)
class PatternParams:
    """Parameters ``(c, eps_1..eps_t, c_1..c_{2t-1})`` of the orbit pattern

        2c + [eps_1 a, m c_1, -eps_1 a^-1, 2c_2, eps_2 a, m c_3, -eps_2 a^-1, ...]

    where ``a`` is the normalized expansion of ``r``.
    """

    c: int
    eps: tuple[int, ...]
    cs: tuple[int, ...]

    def __post_init__(self):
        if not self.eps or len(self.cs) != 2 * len(self.eps) - 1:
            raise DomainError("pattern needs t >= 1 signs and 2t - 1 integers")
        if any(e not in (1, -1) for e in self.eps):
            raise DomainError("pattern signs must be +-1")

    @property
    def t(self) -> int:
        return len(self.eps)

    def contfrac(self, r, idx: HeckoidIndex) -> ContFrac:
        a = cf_expand(r).terms
        terms: list[int] = []
        for i, e in enumerate(self.eps):
            if i:
                terms.append(2 * self.cs[2 * i - 1])
            terms += [e * x for x in a]
            terms.append(idx.m * self.cs[2 * i])
            terms += [-e * x for x in reversed(a)]
        return ContFrac(2 * self.c, tuple(terms))

    def evaluate(self, r, idx: HeckoidIndex) -> Slope:
        return cf_eval(self.contfrac(r, idx))

    def to_word(self, r) -> Word:
        """Group word with the same value on inf.

        Each block ``[eps a, m c, -eps a^-1]`` is projectively the parabolic
        power ``P^(delta c)`` followed by x -> 1/x, with ``delta = (-1)^k`` and
        ``k`` the length of ``a``; the sign ``eps = -1`` conjugates by x -> -x.
        """
        delta = (-1) ** len(cf_expand(r).terms)
        word: Word = _translation_word(self.c)
        for i, e in enumerate(self.eps):
            if i:
                word += _translation_word(self.cs[2 * i - 1])
            power = delta * self.cs[2 * i]
            if e == 1:
                word += _power_word(power)
            else:
                word += (("R0", 1),) + _power_word(-power) + (("R0", 1),)
        return word

    def as_dict(self) -> dict:
        return {"t": self.t, "c": self.c, "eps": list(self.eps), "cs": list(self.cs)}

    @classmethod
    def from_dict(cls, d: dict) -> PatternParams:
        return cls(d["c"], tuple(d["eps"]), tuple(d["cs"]))


def word_to_pattern(word: Word, r) -> PatternParams:
    """Pattern parameters of the slope ``word(inf)``.

    The word is split as ``g0 P^e1 g1 P^e2 ... P^et g_t`` with ``g_i`` in the
    reflection group at inf; reflections are pushed to the right, each one
    conjugating the parabolic runs it passes.
    """
    delta = (-1) ** len(cf_expand(r).terms)
    # segments: list of (translation k, flip f) between runs, and the runs
    gammas: list[tuple[int, int]] = [(0, 0)]
    runs: list[int] = []
    in_run = False
    for label, e in word:
        if label == "P":
            if not in_run:
                runs.append(0)
                in_run = True
            runs[-1] += e
            continue
        if in_run:
            gammas.append((0, 0))
            in_run = False
        k, f = gammas[-1]
        step = 0 if label == "R0" else 1  # R1: x -> 2 - x
        # (k, f) o (step, 1): x -> 2k + (-1)^f (2 step - x)
        gammas[-1] = (k + (-1) ** f * step, f ^ 1)
    if not runs:
        return PatternParams(0, (1,), (0,))
    c = gammas[0][0]
    flip = gammas[0][1]
    eps, cs = [], []
    for i, e in enumerate(runs):
        if i:
            k, f = gammas[i]
            cs.append((-1) ** flip * k)
            flip ^= f
        if flip == 0:
            eps.append(1)
            cs.append(delta * e)
        else:
            eps.append(-1)
            cs.append(-delta * e)
    return PatternParams(c, tuple(eps), tuple(cs))


@dataclass(frozen=True)
class OrbitWitness:
    """A proof that a slope lies in the orbit of inf: a word, optionally with pattern parameters."""

    word: Word
    pattern: PatternParams | None = None

    def check(self, s, r, idx: HeckoidIndex) -> bool:
        s = Slope.of(s)
        if word_matrix(self.word, r, idx)(Slope.inf()) != s:
            return False
        return self.pattern is None or self.pattern.evaluate(r, idx) == s

    def as_dict(self) -> dict:
        return {
            "word": [[lbl, e] for lbl, e in self.word],
            "pattern": None if self.pattern is None else self.pattern.as_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> OrbitWitness:
        pat = d.get("pattern")
        return cls(
            tuple((lbl, int(e)) for lbl, e in d["word"]),
            None if pat is None else PatternParams.from_dict(pat),
        )


def _with_pattern(word: Word, r) -> OrbitWitness:
    return OrbitWitness(word, word_to_pattern(word, r))


@lru_cache(maxsize=64)
def _bfs(r: Slope, idx: HeckoidIndex, max_word_len: int, max_den: int, direction: int):
    gens = [
        (("R0", 1), generator("R0", r, idx)),
        (("R1", 1), generator("R1", r, idx)),
        (("P", 1), generator("P", r, idx, direction)),
        (("P", -1), generator("P", r, idx, direction).inverse()),
    ]
    inf = Slope.inf()
    seen: dict[Slope, Word] = {inf: ()}
    frontier = deque([inf])
    for _ in range(max_word_len):
        nxt = deque()
        for x in frontier:
            w = seen[x]
            for letter, g in gens:
                z = g(x)
                if z.den > max_den or z in seen:
                    continue
                seen[z] = (letter,) + w
                nxt.append(z)
        frontier = nxt
    return tuple(sorted(seen.items(), key=lambda kv: kv[0].sort_key()))


def orbit_bfs(r, idx: HeckoidIndex, max_word_len: int, max_den: int, direction: int = 1) -> dict[Slope, OrbitWitness]:
    """Breadth-first orbit of inf under R0, R1 and P^(+-1), words of bounded length.

    Points whose denominator exceeds ``max_den`` are discarded. Every slope
    carries a word of minimal length among the explored ones; the returned
    dict is in canonical slope order.
    """
    r = _check_r(r)
    if max_word_len < 1 or max_den < 1:
        raise DomainError("orbit_bfs budgets must be positive")
    pts = _bfs(r, idx, int(max_word_len), int(max_den), direction)
    return {s: OrbitWitness(w) for s, w in pts}


def iter_patterns(t_max: int, c_bound: int):
    rng = range(-c_bound, c_bound + 1)
    for t in range(1, t_max + 1):
        for c in rng:
            for eps in product((1, -1), repeat=t):
                for cs in product(rng, repeat=2 * t - 1):
                    yield PatternParams(c, eps, cs)


def orbit_enumerate_pattern(r, idx: HeckoidIndex, t_max: int, c_bound: int) -> dict[Slope, OrbitWitness]:
    """Slopes given by the continued-fraction pattern with ``t <= t_max`` and all integers bounded by ``c_bound``.

    Values come from :func:`cf_eval` of the assembled pattern, independently
    of any group word; the first parameter tuple reaching a slope is kept.
    """
    r = _check_r(r)
    found: dict[Slope, OrbitWitness] = {}
    for params in iter_patterns(t_max, c_bound):
        s = params.evaluate(r, idx)
        if s not in found:
            found[s] = OrbitWitness(params.to_word(r), params)
    return dict(sorted(found.items(), key=lambda kv: kv[0].sort_key()))


def _normalize_at_inf(x: Slope) -> tuple[Word, Slope]:
    """Return ``(w, y)`` with ``0 <= y <= 1`` and ``w(y) = x``, ``w`` in the reflection group at inf."""
    f = x.fraction()
    k = math.floor(f / 2)
    y = f - 2 * k
    word = _translation_word(k)
    if y > 1:
        word += (("R1", 1),)
        y = 2 - y
    return word, Slope.of(y)


def orbit_descent(s, r, idx: HeckoidIndex, max_syllables: int) -> tuple[Word, Slope, int]:
    """Greedy denominator descent towards inf.

    Alternately moves the point into [0, 1] with the reflections at inf and
    applies the power ``P^j`` (j a multiple of m) that minimizes the new
    denominator.  Stops at inf, when no power lowers the denominator, or
    after ``max_syllables`` parabolic steps.

    Returns ``(word, y, syllables)`` with ``word(y) == s``; ``s`` is proved to
    be in the orbit of inf exactly when ``y`` is inf.
    """
    r, s = _check_r(r), Slope.of(s)
    q, p, m = r.num, r.den, idx.m
    word: Word = ()
    x = s
    used = 0
    while not x.is_inf:
        w, x = _normalize_at_inf(x)
        word += w
        if used >= max_syllables:
            break
        u, v = x.num, x.den
        dist = p * u - q * v
        if dist == 0:
            break
        # denominator of P^(k m)(u/v) is v + k m p dist
        step = m * p * dist
        k0 = -v // step
        best = min(
            (k for k in (k0 - 1, k0, k0 + 1, k0 + 2) if k != 0),
            key=lambda k: (abs(v + k * step), abs(k), -k),
        )
        if abs(v + best * step) >= v:
            break
        x = (parabolic_unit(r) ** (best * m))(x)
        word += _power_word(-best)
        used += 1
    return word, x, used


@dataclass(frozen=True)
class OrbitBudget:
    """Search limits for membership tests.

    ``max_syllables`` bounds the number of parabolic powers in the descent;
    ``max_word_len``/``max_den`` bound the breadth-first fallback.
    """

    max_syllables: int = 8
    max_word_len: int = 6
    max_den: int = 10**6

    def __post_init__(self):
        if min(self.max_syllables, self.max_word_len, self.max_den) < 1:
            raise DomainError("budgets must be positive")

    @classmethod
    def of(cls, budget) -> OrbitBudget:
        if budget is None:
            return cls()
        if isinstance(budget, OrbitBudget):
            return budget
        return cls(max_syllables=int(budget), max_word_len=int(budget))


@dataclass(frozen=True)
class Membership:
    slope: Slope
    member: bool
    witness: OrbitWitness | None = None
    route: str | None = None
    syllables: int | None = None

    @property
    def verdict(self) -> str:
        return "member" if self.member else "not_found_within_budget"

    def as_dict(self) -> dict:
        return {
            "slope": str(self.slope),
            "verdict": self.verdict,
            "route": self.route,
            "syllables": self.syllables,
            "witness": None if self.witness is None else self.witness.as_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> Membership:
        wit = d.get("witness")
        return cls(
            Slope.parse(d["slope"]),
            d["verdict"] == "member",
            None if wit is None else OrbitWitness.from_dict(wit),
            d.get("route"),
            d.get("syllables"),
        )


def is_in_orbit(s, r, idx: HeckoidIndex, budget=None) -> Membership:
    """Semi-decide whether ``s`` lies in the orbit of inf.

    A positive answer always carries a witness that has been re-checked by
    exact evaluation. A negative answer only means nothing was found within
    ``budget``.
    """
    s, r = Slope.of(s), _check_r(r)
    budget = OrbitBudget.of(budget)
    if s.is_inf:
        return Membership(s, True, OrbitWitness((), PatternParams(0, (1,), (0,))), "trivial", 0)
    word, y, used = orbit_descent(s, r, idx, budget.max_syllables)
    if y.is_inf:
        wit = _with_pattern(word, r)
        if not wit.check(s, r, idx):  # pragma: no cover - guards the descent bookkeeping
            raise AssertionError(f"descent produced a bad witness for {s}")
        return Membership(s, True, wit, "descent", used)
    pts = _bfs(r, idx, budget.max_word_len, budget.max_den, 1)
    for z, w in pts:
        if z == s:
            wit = _with_pattern(w, r)
            return Membership(s, True, wit, "bfs", sum(1 for lbl, _ in w if lbl == "P"))
    return Membership(s, False)


@dataclass(frozen=True)
class EpiVerdict:
    slope: Slope
    via: str | None  # "s", "s+1" or None
    membership: Membership | None = None

    @property
    def yes(self) -> bool:
        return self.via is not None

    @property
    def orbit_slope(self) -> Slope | None:
        if self.via is None:
            return None
        return self.slope if self.via == "s" else self.slope + 1

    def as_dict(self) -> dict:
        return {
            "slope": str(self.slope),
            "verdict": "yes" if self.yes else "not_found_within_budget",
            "via": self.via,
            "membership": None if self.membership is None else self.membership.as_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> EpiVerdict:
        mem = d.get("membership")
        return cls(Slope.parse(d["slope"]), d["via"], None if mem is None else Membership.from_dict(mem))


def admits_epimorphism(s, r, idx: HeckoidIndex, budget=None) -> EpiVerdict:
    """Check the orbit hypothesis for an epimorphism G(K(s)) -> H(r; n): ``s`` or ``s + 1`` in the orbit of inf."""
    s = Slope.of(s)
    for via, target in (("s", s), ("s+1", s + 1)):
        mem = is_in_orbit(target, r, idx, budget)
        if mem.member:
            return EpiVerdict(s, via, mem)
    return EpiVerdict(s, None)


def riley_family(alpha: int, beta: int, d: int, m: int, e: int) -> Slope:
    """Riley's slope ``beta*/alpha*`` with ``alpha* = alpha^d m`` and ``beta* = alpha^(d-1) m (alpha - beta) + e``."""
    if math.gcd(alpha, beta) != 1 or not (1 <= beta < alpha):
        raise DomainError("need coprime 1 <= beta < alpha")
    if d < 2 or m < 3 or e < 1:
        raise DomainError("need d >= 2, m >= 3, e >= 1")
    a_star = alpha**d * m
    b_star = alpha ** (d - 1) * m * (alpha - beta) + e
    if math.gcd(a_star, b_star) != 1:
        raise DomainError(f"{b_star}/{a_star} is not reduced")
    return Slope(b_star, a_star)


def riley_pattern(alpha: int, beta: int, d: int, m: int) -> tuple[Slope, PatternParams]:
    """Pattern parameters reproducing ``riley_family(alpha, beta, d, m, 1)``.

    Returns ``(r, params)`` with ``r = (alpha - beta)/alpha`` and a single block
    ``[a, m c1, -a^-1]`` where ``c1 = eps alpha^(d-2)`` and ``(-1)^k eps = 1``.
    """
    r = Slope(alpha - beta, alpha)
    k = len(cf_expand(r).terms)
    eps = (-1) ** k
    return r, PatternParams(0, (1,), (eps * alpha ** (d - 2),))
