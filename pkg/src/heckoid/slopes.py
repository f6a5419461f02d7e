"""Exact slopes in Q u {inf}, continued fractions and the Heckoid index.

Continued fractions are evaluated as products of the matrices
``[[0, 1], [1, a]]`` acting projectively, so sequences containing zero or
negative partial quotients always have a value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class Slope:
    """A point of Q u {inf} stored as a reduced pair ``num/den``.

    The sign lives in the numerator and ``den == 0`` only for ``inf``,
    which is always ``(1, 0)``.
    """

    num: int
    den: int

    def __post_init__(self):
        num, den = int(self.num), int(self.den)
        if num == 0 and den == 0:
            raise DomainError("0/0 is not a slope")
        if den < 0:
            num, den = -num, -den
        if den == 0:
            num = 1
        else:
            g = math.gcd(num, den)
            num, den = num // g, den // g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def inf(cls) -> Slope:
        return cls(1, 0)

    @classmethod
    def of(cls, x) -> Slope:
        """Coerce an int, Fraction, Slope, ``(num, den)`` pair or string."""
        if isinstance(x, Slope):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        if isinstance(x, tuple):
            return cls(*x)
        if isinstance(x, (int, Fraction)):
            f = Fraction(x)
            return cls(f.numerator, f.denominator)
        raise TypeError(f"cannot make a slope from {x!r}")

    @classmethod
    def parse(cls, text: str) -> Slope:
        s = text.strip().lower()
        if s in ("inf", "infinity", "oo", "1/0"):
            return cls.inf()
        try:
            if "/" in s:
                a, b = s.split("/")
                return cls(int(a), int(b))
            return cls(int(s), 1)
        except (ValueError, DomainError):
            raise DomainError(f"malformed slope {text!r}") from None

    @property
    def is_inf(self) -> bool:
        return self.den == 0

    def fraction(self) -> Fraction:
        if self.is_inf:
            raise DomainError("inf has no rational value")
        return Fraction(self.num, self.den)

    def __add__(self, k: int) -> Slope:
        if self.is_inf:
            return self
        return Slope(self.num + k * self.den, self.den)

    def __sub__(self, k: int) -> Slope:
        return self + (-k)

    def __neg__(self) -> Slope:
        return self if self.is_inf else Slope(-self.num, self.den)

    def sort_key(self):
        # inf sorts first
        return (0, Fraction(0)) if self.is_inf else (1, self.fraction())

    def __lt__(self, other: Slope) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "inf" if self.is_inf else f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Slope({self})"


@dataclass(frozen=True)
class ContFrac:
    """``whole + [a1, a2, ..., ak]`` with arbitrary integer terms."""

    whole: int = 0
    terms: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(a) for a in self.terms))

    def __str__(self) -> str:
        body = "[" + ",".join(str(a) for a in self.terms) + "]"
        return body if self.whole == 0 else f"{self.whole}+{body}"

    @classmethod
    def parse(cls, text: str) -> ContFrac:
        s = text.replace(" ", "")
        whole = 0
        if not s.endswith("]") or "[" not in s:
            raise DomainError(f"malformed continued fraction {text!r}")
        head, body = s[: s.index("[")], s[s.index("[") + 1 : -1]
        try:
            if head:
                if not head.endswith("+"):
                    raise ValueError
                whole = int(head[:-1])
            terms = tuple(int(a) for a in body.split(",")) if body else ()
        except ValueError:
            raise DomainError(f"malformed continued fraction {text!r}") from None
        return cls(whole, terms)


@dataclass(frozen=True)
class HeckoidIndex:
    """Riley's index ``m = 2n``; ``n`` is an integer (even case) or a half-integer (odd case)."""

    two_n: int

    def __post_init__(self):
        if int(self.two_n) != self.two_n or self.two_n < 3:
            raise DomainError(f"Heckoid index needs 2n >= 3, got 2n = {self.two_n}")
        object.__setattr__(self, "two_n", int(self.two_n))

    @classmethod
    def from_n(cls, n) -> HeckoidIndex:
        """Accepts ``2``, ``"5/2"``, ``"2.5"`` or a Fraction."""
        if isinstance(n, str):
            s = n.strip()
            try:
                if "/" in s:
                    a, b = s.split("/")
                    f = Fraction(int(a), int(b))
                elif "." in s:
                    f = Fraction(s)
                else:
                    f = Fraction(int(s))
            except (ValueError, ZeroDivisionError):
                raise DomainError(f"malformed index {n!r}") from None
        else:
            f = Fraction(n)
        if (2 * f).denominator != 1:
            raise DomainError(f"n must be an integer or a half-integer, got {n}")
        return cls(int(2 * f))

    @classmethod
    def from_m(cls, m: int) -> HeckoidIndex:
        return cls(m)

    @property
    def m(self) -> int:
        return self.two_n

    @property
    def n(self) -> Fraction:
        return Fraction(self.two_n, 2)

    @property
    def is_even(self) -> bool:
        return self.two_n % 2 == 0

    def __str__(self) -> str:
        n = self.n
        return str(n.numerator) if n.denominator == 1 else f"{n.numerator}/{n.denominator}"


def cf_matrix(whole: int, terms: Iterable[int]) -> tuple[int, int, int, int]:
    """Integer matrix ``[[1, whole], [0, 1]] * prod [[0, 1], [1, a]]`` as (a, b, c, d)."""
    a, b, c, d = 1, whole, 0, 1
    for t in terms:
        a, b, c, d = b, a + b * t, d, c + d * t
    return a, b, c, d


def cf_eval(f: ContFrac) -> Slope:
    """Value of ``f``; the empty term list is ``inf`` by convention."""
    if not f.terms:
        return Slope.inf()
    _, b, _, d = cf_matrix(f.whole, f.terms)
    # image of 0 under the product
    return Slope(b, d)


def cf_expand(s) -> ContFrac:
    """Normalized expansion of ``0 < s < 1``: positive terms, last term >= 2."""
    s = Slope.of(s)
    if s.is_inf or not (0 < s.num < s.den):
        raise DomainError(f"cf_expand needs 0 < s < 1, got {s}")
    q, p = s.num, s.den
    terms = []
    while q:
        a, rem = divmod(p, q)
        terms.append(a)
        p, q = q, rem
    return ContFrac(0, tuple(terms))


def seq_transform(terms: Sequence[int], kind: str) -> tuple[int, ...]:
    if kind == "reverse":
        return tuple(reversed(terms))
    if kind == "negate":
        return tuple(-a for a in terms)
    if kind == "negate_reverse":
        return tuple(-a for a in reversed(terms))
    raise DomainError(f"unknown transform {kind!r}")
