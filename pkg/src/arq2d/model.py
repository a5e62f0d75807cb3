"""Exact integer coordinates for the stable AR quiver of a 2-domestic algebra.

The stable quiver has two Euclidean components (comp 0 and comp 1) of shape
ZA~(p,q), four exceptional tubes and a family of homogeneous tubes.  Vertices:

  Euclid(comp, x, y)   with the identification (c,x,y) ~ (c, x - p*l, y + q*l)
                       for all integers l; canonical form has 0 <= y < q.
  Tube(family, level, idx, ht)   family "U" tubes have rank q and couple to
                       the y direction, family "P" tubes have rank p and
                       couple to x; level in {0,1}; idx is taken mod the rank;
                       ht >= 0 counts irreducible steps above a quasi-simple
                       (quasi-length = ht + 1).

Homogeneous tubes are never materialised; operations report whether they
would be met through boolean flags instead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class DomainError(Exception):
    """Base for input conditions the engine rejects deterministically."""


class HeightOutOfRange(DomainError):
    pass


@dataclass(frozen=True)
class Params:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise DomainError("component parameters must be positive")

    def rank(self, family: str) -> int:
        # "U" tubes wrap in y (rank q), "P" tubes wrap in x (rank p)
        return self.q if family == "U" else self.p


@dataclass(frozen=True)
class Euclid:
    comp: int
    x: int
    y: int

    def __post_init__(self):
        if self.comp not in (0, 1):
            raise DomainError("Euclidean component index must be 0 or 1")


@dataclass(frozen=True)
class Tube:
    family: str
    level: int
    idx: int
    ht: int

    def __post_init__(self):
        if self.family not in ("U", "P"):
            raise DomainError("tube family must be 'U' or 'P'")
        if self.level not in (0, 1):
            raise DomainError("tube level must be 0 or 1")
        if self.ht < 0:
            raise HeightOutOfRange("tube height must be >= 0")


Vertex = Euclid | Tube


def canonical(v: Vertex, P: Params) -> Vertex:
    """Canonical representative: 0 <= y < q for Euclid, 0 <= idx < rank."""
    if isinstance(v, Euclid):
        l = v.y // P.q
        return Euclid(v.comp, v.x + P.p * l, v.y - P.q * l)
    return Tube(v.family, v.level, v.idx % P.rank(v.family), v.ht)


def tau(v: Vertex, P: Params) -> Vertex:
    """AR translation."""
    if isinstance(v, Euclid):
        return canonical(Euclid(v.comp, v.x - 1, v.y - 1), P)
    return canonical(Tube(v.family, v.level, v.idx - 1, v.ht), P)


def tau_inv(v: Vertex, P: Params) -> Vertex:
    if isinstance(v, Euclid):
        return canonical(Euclid(v.comp, v.x + 1, v.y + 1), P)
    return canonical(Tube(v.family, v.level, v.idx + 1, v.ht), P)


def omega(v: Vertex, P: Params) -> Vertex:
    """Syzygy.  omega**2 == tau on every vertex."""
    if isinstance(v, Euclid):
        if v.comp == 0:
            return canonical(Euclid(1, v.x, v.y), P)
        return canonical(Euclid(0, v.x - 1, v.y - 1), P)
    if v.level == 0:
        return canonical(Tube(v.family, 1, v.idx, v.ht), P)
    return canonical(Tube(v.family, 0, v.idx - 1, v.ht), P)


def omega_inv(v: Vertex, P: Params) -> Vertex:
    """Cosyzygy; also the suspension [1] of the stable category."""
    if isinstance(v, Euclid):
        if v.comp == 1:
            return canonical(Euclid(0, v.x, v.y), P)
        return canonical(Euclid(1, v.x + 1, v.y + 1), P)
    if v.level == 1:
        return canonical(Tube(v.family, 0, v.idx, v.ht), P)
    return canonical(Tube(v.family, 1, v.idx + 1, v.ht), P)


def is_brick_candidate(v: Vertex, P: Params) -> bool:
    """Euclidean vertices are always stable bricks; a tube vertex only up to
    quasi-length rank-1 (ht <= rank-2)."""
    if isinstance(v, Euclid):
        return True
    return v.ht <= P.rank(v.family) - 2


def fundamental_domain(P: Params) -> list[Vertex]:
    """One finite block of representatives: a p-by-q window on each Euclidean
    component plus every brick candidate of the four tubes."""
    out: list[Vertex] = []
    for c in (0, 1):
        for x in range(P.p):
            for y in range(P.q):
                out.append(Euclid(c, x, y))
    for fam in ("U", "P"):
        r = P.rank(fam)
        for level in (0, 1):
            for j in range(r):
                for k in range(r - 1):
                    out.append(Tube(fam, level, j, k))
    return out


def vertex_sort_key(v: Vertex):
    if isinstance(v, Euclid):
        return (0, v.comp, v.x, v.y)
    return (1, v.family, v.level, v.idx, v.ht)


_VERTEX_RE = re.compile(
    r"^\s*(E|TU|TP)\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$"
)


def parse_vertex(text: str) -> Vertex:
    """Parse "E(c,x,y)", "TU(l,j,k)" or "TP(l,j,k)".  No canonicalisation."""
    m = _VERTEX_RE.match(text)
    if m is None:
        raise DomainError("cannot parse vertex: %r" % text)
    head, a, b, c = m.group(1), int(m.group(2)), int(m.group(3)), int(m.group(4))
    if head == "E":
        return Euclid(a, b, c)
    return Tube("U" if head == "TU" else "P", a, b, c)


def format_vertex(v: Vertex) -> str:
    """Inverse of parse_vertex on stored fields (raw coordinates round-trip)."""
    if isinstance(v, Euclid):
        return "E(%d,%d,%d)" % (v.comp, v.x, v.y)
    head = "TU" if v.family == "U" else "TP"
    return "%s(%d,%d,%d)" % (head, v.level, v.idx, v.ht)
