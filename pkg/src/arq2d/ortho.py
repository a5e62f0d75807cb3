"""Orthogonal systems: predicates, triangle-area enumeration, maximal extension.

A system is a finite set of brick candidates with vanishing stable Hom in
both directions between distinct members.  Enumeration is exhaustive
backtracking over finite pools; maximal systems are maximal cliques of the
compatibility graph.  Witness pools for maximality are finite only when the
system pins down a Euclidean band, hence the NoEuclideanMember precondition
on the extension search.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .model import (
    DomainError,
    Euclid,
    HeightOutOfRange,
    Params,
    Tube,
    Vertex,
    canonical,
    format_vertex,
    is_brick_candidate,
    vertex_sort_key,
)
from .homs import PART_NAMES, part_of, stable_hom_nonzero


class NoEuclideanMember(DomainError):
    """Raised when an unbounded witness pool would be required."""


def _orthogonal_pair(a: Vertex, b: Vertex, P: Params) -> bool:
    return not stable_hom_nonzero(a, b, P) and not stable_hom_nonzero(b, a, P)


def _canonical_set(S, P: Params) -> list[Vertex]:
    return sorted({canonical(v, P) for v in S}, key=vertex_sort_key)


def is_orthogonal_system(S, P: Params) -> bool:
    vs = _canonical_set(S, P)
    if not all(is_brick_candidate(v, P) for v in vs):
        return False
    for i, a in enumerate(vs):
        for b in vs[i + 1:]:
            if not _orthogonal_pair(a, b, P):
                return False
    return True


def euclidean_ortho_check(members, P: Params) -> bool:
    """Band-plus-anti-monotonicity test for same-component Euclidean sets.

    On canonical representatives (0 <= y < q) a set is orthogonal exactly
    when the y values are distinct, x strictly decreases as y increases, and
    the total x spread stays below p.  Order-independent; must agree with
    the pairwise predicate.
    """
    vs = _canonical_set(members, P)
    if not vs:
        return True
    if not all(isinstance(v, Euclid) for v in vs):
        raise DomainError("euclidean_ortho_check needs Euclidean vertices")
    if len({v.comp for v in vs}) > 1:
        raise DomainError("euclidean_ortho_check needs a single component")
    if len({v.y for v in vs}) != len(vs):
        return False
    chain = sorted(vs, key=lambda v: v.y)
    xs = [v.x for v in chain]
    if any(x2 >= x1 for x1, x2 in zip(xs, xs[1:])):
        return False
    return xs[0] - xs[-1] < P.p


@dataclass(frozen=True)
class MaximalityReport:
    is_maximal: bool
    witnesses: tuple[Vertex, ...]
    homogeneous_blocked: bool


def witness_pool(S, P: Params, parts=None) -> list[Vertex]:
    """Brick candidates orthogonal to every member of S.

    Finite only because a Euclidean member confines the Euclidean part of
    the bi-perpendicular category to one band of width p; tube heights cap
    at rank-2.  Returns [] when S has no Euclidean member.
    """
    vs = _canonical_set(S, P)
    anchors = [v for v in vs if isinstance(v, Euclid)]
    if not anchors:
        return []
    if parts is None:
        parts = PART_NAMES
    ax = anchors[0].x
    pool = []
    for comp in (0, 1):
        for x in range(ax - P.p, ax + P.p + 1):
            for y in range(P.q):
                pool.append(Euclid(comp, x, y))
    for family in ("U", "P"):
        rank = P.rank(family)
        for level in (0, 1):
            for idx in range(rank):
                for ht in range(rank - 1):
                    pool.append(Tube(family, level, idx, ht))
    out = []
    for v in pool:
        v = canonical(v, P)
        if part_of(v) not in parts or v in vs:
            continue
        if not is_brick_candidate(v, P):
            continue
        if all(_orthogonal_pair(v, u, P) for u in vs):
            out.append(v)
    return sorted(set(out), key=vertex_sort_key)


def maximality(S, P: Params, parts=None, pool=None) -> MaximalityReport:
    vs = _canonical_set(S, P)
    blocked = any(isinstance(v, Euclid) for v in vs)
    if pool is None:
        pool = witness_pool(vs, P, parts)
    else:
        pool = [canonical(v, P) for v in pool if v not in vs]
        pool = sorted(
            {v for v in pool
             if all(_orthogonal_pair(v, u, P) for u in vs)},
            key=vertex_sort_key)
    return MaximalityReport(
        is_maximal=(not pool) and blocked,
        witnesses=tuple(pool),
        homogeneous_blocked=blocked,
    )


def maximal_systems_containing(S, P: Params, parts=None, pool=None):
    """All maximal orthogonal systems containing S, canonical order."""
    vs = _canonical_set(S, P)
    if not any(isinstance(v, Euclid) for v in vs):
        raise NoEuclideanMember("extension pool is unbounded without a "
                                "Euclidean member")
    if not is_orthogonal_system(vs, P):
        raise DomainError("seed is not an orthogonal system")
    report = maximality(vs, P, parts=parts, pool=pool)
    candidates = list(report.witnesses)
    if not candidates:
        return [vs]
    graph = nx.Graph()
    graph.add_nodes_from(candidates)
    for i, a in enumerate(candidates):
        for b in candidates[i + 1:]:
            if _orthogonal_pair(a, b, P):
                graph.add_edge(a, b)
    systems = []
    for clique in nx.find_cliques(graph):
        systems.append(sorted(vs + list(clique), key=vertex_sort_key))
    systems.sort(key=lambda s: [vertex_sort_key(v) for v in s])
    return systems


def triangle_pool(family, level, idx, height, P: Params) -> list[Tube]:
    """Vertices of the triangle with base idx..idx+height on the given level."""
    if height > P.rank(family) - 2:
        raise HeightOutOfRange(
            "height %d exceeds brick cap %d" % (height, P.rank(family) - 2))
    pool = []
    for j in range(max(height + 1, 0)):
        for k in range(height - j + 1):
            pool.append(canonical(Tube(family, level, idx + j, k), P))
    return sorted(set(pool), key=vertex_sort_key)


def paired_pool(family, kind, idx, height, P: Params) -> list[Tube]:
    """Two-level triangle pairings; kind selects the relative anchoring."""
    if kind == 1:
        lo = triangle_pool(family, 0, idx, height - 1, P)
        hi = triangle_pool(family, 1, idx, height, P)
    elif kind == 2:
        lo = triangle_pool(family, 0, idx, height, P)
        hi = triangle_pool(family, 1, idx + 1, height - 1, P)
    elif kind == 3:
        lo = triangle_pool(family, 0, idx, height, P)
        hi = triangle_pool(family, 1, idx, height, P)
    else:
        raise DomainError("unknown pairing kind %r" % (kind,))
    return sorted(set(lo) | set(hi), key=vertex_sort_key)


def _all_systems(pool, P: Params):
    out = []

    def extend(prefix, start):
        for i in range(start, len(pool)):
            v = pool[i]
            if all(_orthogonal_pair(v, u, P) for u in prefix):
                prefix.append(v)
                out.append(list(prefix))
                extend(prefix, i + 1)
                prefix.pop()

    extend([], 0)
    return out


def _maximal_systems(pool, P: Params):
    if not pool:
        return []
    graph = nx.Graph()
    graph.add_nodes_from(pool)
    for i, a in enumerate(pool):
        for b in pool[i + 1:]:
            if _orthogonal_pair(a, b, P):
                graph.add_edge(a, b)
    systems = [sorted(c, key=vertex_sort_key) for c in nx.find_cliques(graph)]
    systems.sort(key=lambda s: [vertex_sort_key(v) for v in s])
    return systems


def enumerate_ortho_on_triangle(family, level, idx, height, P: Params,
                                maximal_only: bool = False):
    """All (or only maximal) orthogonal systems on one triangle area.

    height -1 denotes the empty triangle and yields no systems.
    """
    if height <= -1:
        return []
    pool = triangle_pool(family, level, idx, height, P)
    if maximal_only:
        return _maximal_systems(pool, P)
    return _all_systems(pool, P)


def enumerate_ortho_on_paired(family, kind, idx, height, P: Params,
                              maximal_only: bool = False):
    if height <= -1:
        return []
    pool = paired_pool(family, kind, idx, height, P)
    if maximal_only:
        return _maximal_systems(pool, P)
    return _all_systems(pool, P)


def quasi_simple_chain_shape(W, segment, P: Params) -> bool:
    """Check the normal form: level-1 indices lo..split, level-0 split+1..hi.

    W must consist of quasi-simples of a single family; anything else fails
    the shape.  The empty set matches with an empty segment prefix.
    """
    lo, hi = segment
    vs = _canonical_set(W, P)
    if not vs:
        return lo > hi
    if not all(isinstance(v, Tube) and v.ht == 0 for v in vs):
        return False
    if len({v.family for v in vs}) > 1:
        return False
    family = vs[0].family
    rank = P.rank(family)
    for split in range(lo - 1, hi + 1):
        want = {canonical(Tube(family, 1, i, 0), P) for i in range(lo, split + 1)}
        want |= {canonical(Tube(family, 0, i, 0), P)
                 for i in range(split + 1, hi + 1)}
        if set(vs) == want:
            return True
    return False


def enumeration_report(systems, include_systems: bool = False) -> dict:
    by_card: dict[int, int] = {}
    for s in systems:
        by_card[len(s)] = by_card.get(len(s), 0) + 1
    report = {
        "count": len(systems),
        "byCardinality": {str(k): by_card[k] for k in sorted(by_card)},
    }
    if include_systems:
        report["systems"] = [[format_vertex(v) for v in s] for s in systems]
    return report
