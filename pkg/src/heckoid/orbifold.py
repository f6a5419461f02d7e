"""Weighted-graph descriptors of Heckoid orbifolds.

A descriptor is a trivalent graph (a 2-bridge link plus tunnels) with edge
weights in {2, m, inf}.  Weight-inf edges are drilled out; finite weights
give the singular set with that index.  Only the combinatorics is
recorded: which edges meet at which vertex and their weights.

Vertex numbering: 0 and 1 are the endpoints of the upper tunnel, 2 and 3
those of the lower tunnel (0 and 1 when there is no upper tunnel).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .slopes import DomainError, HeckoidIndex, Slope

INF = math.inf


class ParityError(DomainError):
    """The Heckoid index has the wrong parity for the requested descriptor."""


@dataclass(frozen=True)
class Edge:
    label: str
    weight: float  # an int >= 2 or INF
    ends: tuple[int, int]

    def as_dict(self) -> dict:
        w = "inf" if self.weight == INF else int(self.weight)
        return {"label": self.label, "weight": w, "ends": list(self.ends)}

    @classmethod
    def from_dict(cls, d: dict) -> Edge:
        w = INF if d["weight"] == "inf" else int(d["weight"])
        return cls(d["label"], w, tuple(d["ends"]))


@dataclass(frozen=True)
class OrbifoldDescriptor:
    base_link_slope: Slope
    edges: tuple[Edge, ...]
    case: str
    m: int

    @property
    def strata_count(self) -> int:
        """Number of one-dimensional singular strata (finite-weight edges)."""
        return sum(1 for e in self.edges if e.weight != INF)

    def weights(self, label: str) -> list[float]:
        return [e.weight for e in self.edges if e.label == label]

    def vertices(self) -> dict[int, list[float]]:
        inc: dict[int, list[float]] = {}
        for e in self.edges:
            for v in e.ends:
                inc.setdefault(v, []).append(e.weight)
        return inc

    def vertex_condition(self) -> bool:
        """Every vertex has an inf edge or weights with ``1/w1 + 1/w2 + 1/w3 > 1``."""
        for ws in self.vertices().values():
            if len(ws) != 3:
                return False
            if INF in ws:
                continue
            if sum(Fraction(1, int(w)) for w in ws) <= 1:
                return False
        return True

    def as_dict(self) -> dict:
        return {
            "base_slope": str(self.base_link_slope),
            "edges": [e.as_dict() for e in self.edges],
            "case": self.case,
            "m": self.m,
            "strata_count": self.strata_count,
        }

    @classmethod
    def from_dict(cls, d: dict) -> OrbifoldDescriptor:
        return cls(Slope.parse(d["base_slope"]), tuple(Edge.from_dict(e) for e in d["edges"]), d["case"], d["m"])


def _rq(r) -> Slope:
    r = Slope.of(r)
    if r.is_inf or not (0 < r.num < r.den):
        raise DomainError(f"r must satisfy 0 < r < 1, got {r}")
    return r


def even_orbifold_desc(r, idx: HeckoidIndex) -> OrbifoldDescriptor:
    """Link exterior of K(r) with the lower tunnel as singular set of index n."""
    r = _rq(r)
    if not idx.is_even:
        raise ParityError(f"n = {idx} is a half-integer; use odd_orbifold_desc")
    n = idx.two_n // 2
    if r.den % 2:
        link = (Edge("link_component", INF, (0, 1)), Edge("link_component", INF, (0, 1)))
    else:
        link = (Edge("link_component", INF, (0, 0)), Edge("link_component", INF, (1, 1)))
    return OrbifoldDescriptor(r, (Edge("tau_minus", n, (0, 1)),) + link, "even", idx.m)


def quotient_orbifold_desc(r, m) -> OrbifoldDescriptor:
    """K(r) with both tunnels: upper weight 2, lower weight m, one arc J drilled, three arcs of weight 2."""
    r = _rq(r)
    m = m.m if isinstance(m, HeckoidIndex) else int(m)
    if m < 2:
        raise DomainError("m must be at least 2")
    if r.den % 2:
        # one circle through the four vertices, alternating upper/lower
        arcs = [(0, 2), (2, 1), (1, 3), (3, 0)]
    else:
        arcs = [(0, 2), (0, 2), (1, 3), (1, 3)]
    edges = (
        Edge("tau_plus", 2, (0, 1)),
        Edge("tau_minus", m, (2, 3)),
        Edge("J", INF, arcs[0]),
    ) + tuple(Edge("link_component", 2, a) for a in arcs[1:])
    return OrbifoldDescriptor(r, edges, "quotient", m)


def odd_slope_change(r) -> Slope:
    """Slope of the base link of the odd Heckoid orbifold of K(q/p)."""
    r = _rq(r)
    q, p = r.num, r.den
    if p % 2:
        return Slope(q // 2 if q % 2 == 0 else (p + q) // 2, p)
    return Slope(q, p // 2)


def odd_orbifold_desc(r, idx: HeckoidIndex) -> OrbifoldDescriptor:
    """Descriptor for a half-integer index ``n``.

    For ``p`` odd: K(r_hat) plus its lower tunnel (weight m), one arc J1
    drilled and the other arc J2 of weight 2.  For ``p`` even: K(r_hat) with
    both tunnels (2 and m), the two J1 arcs drilled and the two J2 arcs of
    weight 2.
    """
    r = _rq(r)
    if idx.is_even:
        raise ParityError(f"n = {idx} is an integer; use even_orbifold_desc")
    m = idx.m
    r_hat = odd_slope_change(r)
    if r.den % 2:
        edges = (
            Edge("tau_minus", m, (0, 1)),
            Edge("J1", INF, (0, 1)),
            Edge("J2", 2, (0, 1)),
        )
        case = "odd, knot"
    else:
        edges = (
            Edge("tau_plus", 2, (0, 1)),
            Edge("tau_minus", m, (2, 3)),
            Edge("J1", INF, (0, 2)),
            Edge("J1", INF, (1, 3)),
            Edge("J2", 2, (0, 3)),
            Edge("J2", 2, (1, 2)),
        )
        case = "odd, two-component link"
    return OrbifoldDescriptor(r_hat, edges, case, m)


def describe(r, idx: HeckoidIndex) -> OrbifoldDescriptor:
    """The Heckoid orbifold descriptor for either parity."""
    return even_orbifold_desc(r, idx) if idx.is_even else odd_orbifold_desc(r, idx)
