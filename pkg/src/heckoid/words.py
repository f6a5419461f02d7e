"""Words in the upper meridian pair ``a, b`` and 2-bridge / Heckoid presentations.

Words are strings over ``a, b, A, B`` with capitals for inverses, so the
trefoil relator reads ``"abaBAB"``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .slopes import DomainError, HeckoidIndex, Slope

LETTERS = "abAB"


class NotOneRelator(DomainError):
    """Raised when a one-relator presentation is requested for an odd Heckoid group."""


def inverse_letter(x: str) -> str:
    return x.swapcase()


def free_reduce(word: str) -> str:
    out: list[str] = []
    for x in word:
        if x not in LETTERS:
            raise DomainError(f"bad letter {x!r} in word {word!r}")
        if out and out[-1] == inverse_letter(x):
            out.pop()
        else:
            out.append(x)
    return "".join(out)


def cyclic_reduce(word: str) -> str:
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i > 1 and w[i] == inverse_letter(w[j - 1]):
        i += 1
        j -= 1
    return w[i:j]


def inverse(word: str) -> str:
    return "".join(inverse_letter(x) for x in reversed(word))


def canonical_cyclic(word: str) -> str:
    """Lexicographically least rotation of the cyclically reduced word."""
    w = cyclic_reduce(word)
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


@dataclass(frozen=True)
class GroupWord:
    """A freely reduced word in ``a, b``."""

    letters: str = ""

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    def __str__(self) -> str:
        return self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.letters + other.letters)

    def __pow__(self, k: int) -> GroupWord:
        base = self.letters if k >= 0 else inverse(self.letters)
        return GroupWord(base * abs(k))

    def inverse(self) -> GroupWord:
        return GroupWord(inverse(self.letters))

    def cyclic(self) -> GroupWord:
        return GroupWord(cyclic_reduce(self.letters))

    def exponent_sum(self, gen: str) -> int:
        return self.letters.count(gen) - self.letters.count(gen.upper())


@dataclass(frozen=True)
class Presentation:
    relators: tuple[GroupWord, ...]
    generators: tuple[str, ...] = ("a", "b")

    def as_dict(self) -> dict:
        return {"generators": list(self.generators), "relators": [str(w) for w in self.relators]}

    @classmethod
    def from_dict(cls, d: dict) -> Presentation:
        return cls(tuple(GroupWord(w) for w in d["relators"]), tuple(d["generators"]))

    def __str__(self) -> str:
        return "<" + ", ".join(self.generators) + " | " + ", ".join(map(str, self.relators)) + ">"


def _finite(s) -> Slope:
    s = Slope.of(s)
    if s.is_inf:
        raise DomainError("the slope inf has no word (alpha_inf is killed)")
    return s


def epsilon_seq(s) -> tuple[int, ...]:
    """Signs ``(-1)^floor(i q / p)`` for ``i = 1 .. 2p - 1``."""
    s = _finite(s)
    q, p = s.num, s.den
    return tuple(-1 if (i * q // p) % 2 else 1 for i in range(1, 2 * p))


def slope_word(s) -> GroupWord:
    """The alternating word of length 2p representing alpha_s for ``s = q/p``."""
    signs = (1,) + epsilon_seq(s)
    letters = []
    for i, e in enumerate(signs):
        x = "a" if i % 2 == 0 else "b"
        letters.append(x if e == 1 else x.upper())
    return GroupWord("".join(letters))


def link_group_presentation(s) -> Presentation:
    return Presentation((slope_word(s),))


def heckoid_presentation(r, idx: HeckoidIndex) -> Presentation:
    """``<a, b | u_r^n>`` for an even Heckoid group.

    Odd indices raise :class:`NotOneRelator`; those groups have no
    one-relator presentation and are handled through trace conditions.
    """
    r = Slope.of(r)
    if r.is_inf or not (0 < r.num < r.den):
        raise DomainError(f"r must satisfy 0 < r < 1, got {r}")
    if not idx.is_even:
        raise NotOneRelator(
            f"H({r}; {idx}) is an odd Heckoid group and odd Heckoid groups "
            "are not one-relator groups; use the trace conditions instead"
        )
    return Presentation((slope_word(r) ** (idx.two_n // 2),))
