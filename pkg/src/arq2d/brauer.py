"""Ribbon graphs with vertex multiplicities: parsing, domestic
classification and the quiver-with-relations presentation.

Input documents are JSON: vertices carry multiplicities, edges carry two
endpoint ids, and every vertex lists its incident half-edges in clockwise
order.  A half-edge is (edge id, slot) where slot 0/1 picks one of the two
ends, so loops occupy two positions of the same rotation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .model import DomainError

HalfEdge = tuple[str, int]


class MalformedDocument(DomainError):
    pass


class DisconnectedGraph(DomainError):
    pass


class RotationMismatch(DomainError):
    pass


class UnsupportedMultiplicity(DomainError):
    pass


@dataclass(frozen=True)
class BrauerGraph:
    vertices: tuple[str, ...]
    multiplicity: dict[str, int]
    edges: dict[str, tuple[str, str]]
    rotation: dict[str, tuple[HalfEdge, ...]]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def valency(self, v: str) -> int:
        return len(self.rotation[v])

    def halfedge_vertex(self, h: HalfEdge) -> str:
        return self.edges[h[0]][h[1]]


@dataclass(frozen=True)
class DomesticClass:
    tag: str
    n: int
    p: int | None = None
    q: int | None = None
    cycle_length: int | None = None
    inside_count: int | None = None
    outside_count: int | None = None

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.p is not None:
            out["p"] = self.p
            out["q"] = self.q
        out["n"] = self.n
        return out


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    owner: str


@dataclass(frozen=True)
class Relation:
    """paths hold arrow names in traversal order; two paths mean the formal
    difference path[0] - path[1], one path means the monomial itself."""

    kind: str
    paths: tuple[tuple[str, ...], ...]

    def display(self) -> str:
        # written with the first-applied arrow rightmost
        words = ["*".join(reversed(path)) for path in self.paths]
        return " - ".join(words)


@dataclass(frozen=True)
class QuiverPresentation:
    quiver_vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    type_i: tuple[Relation, ...]
    type_ii: tuple[Relation, ...]
    type_iii: tuple[Relation, ...]

    def degree_bounds_ok(self) -> bool:
        ins: dict[str, int] = {}
        outs: dict[str, int] = {}
        for a in self.arrows:
            outs[a.source] = outs.get(a.source, 0) + 1
            ins[a.target] = ins.get(a.target, 0) + 1
        return all(c <= 2 for c in ins.values()) and all(
            c <= 2 for c in outs.values()
        )


def _require(cond: bool, msg: str):
    if not cond:
        raise MalformedDocument(msg)


def parse_graph(doc) -> BrauerGraph:
    """Validate a graph document (JSON text or an already-decoded dict)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise MalformedDocument("not valid JSON: %s" % exc) from exc
    _require(isinstance(doc, dict), "document must be a JSON object")
    for key in ("vertices", "edges"):
        _require(key in doc, "missing %r section" % key)
    _require(isinstance(doc["vertices"], list) and doc["vertices"],
             "vertices must be a non-empty list")
    _require(isinstance(doc["edges"], list), "edges must be a list")

    mult: dict[str, int] = {}
    order: list[str] = []
    for row in doc["vertices"]:
        _require(isinstance(row, dict) and isinstance(row.get("id"), str),
                 "vertex rows need a string id")
        m = row.get("multiplicity", 1)
        _require(isinstance(m, int) and m >= 1,
                 "multiplicity must be a positive integer")
        _require(row["id"] not in mult, "duplicate vertex id %r" % row["id"])
        mult[row["id"]] = m
        order.append(row["id"])

    edges: dict[str, tuple[str, str]] = {}
    for row in doc["edges"]:
        _require(isinstance(row, dict) and isinstance(row.get("id"), str),
                 "edge rows need a string id")
        ends = row.get("ends")
        _require(isinstance(ends, list) and len(ends) == 2
                 and all(isinstance(e, str) for e in ends),
                 "edge ends must be a pair of vertex ids")
        _require(ends[0] in mult and ends[1] in mult,
                 "edge %r references an unknown vertex" % row["id"])
        _require(row["id"] not in edges, "duplicate edge id %r" % row["id"])
        edges[row["id"]] = (ends[0], ends[1])

    rotation_doc = doc.get("rotation", {})
    _require(isinstance(rotation_doc, dict), "rotation must be an object")
    for v in rotation_doc:
        _require(v in mult, "rotation for unknown vertex %r" % v)
    rotation: dict[str, tuple[HalfEdge, ...]] = {}
    placed: dict[HalfEdge, str] = {}
    for v in order:
        refs = rotation_doc.get(v, [])
        _require(isinstance(refs, list), "rotation at %r must be a list" % v)
        row_out: list[HalfEdge] = []
        for ref in refs:
            _require(isinstance(ref, dict) and isinstance(ref.get("edge"), str)
                     and ref.get("slot") in (0, 1),
                     "half-edge refs look like {\"edge\": id, \"slot\": 0|1}")
            h: HalfEdge = (ref["edge"], ref["slot"])
            _require(h[0] in edges,
                     "rotation at %r references unknown edge %r" % (v, h[0]))
            if h in placed:
                raise RotationMismatch(
                    "half-edge %r listed twice (at %r and %r)"
                    % (h, placed[h], v))
            placed[h] = v
            row_out.append(h)
        rotation[v] = tuple(row_out)

    for e, (u, w) in edges.items():
        for slot, at in ((0, u), (1, w)):
            h = (e, slot)
            if h not in placed:
                raise RotationMismatch("half-edge %r missing from rotation"
                                       % (h,))
            if placed[h] != at:
                raise RotationMismatch(
                    "half-edge %r sits at %r but is listed at %r"
                    % (h, at, placed[h]))

    seen = {order[0]}
    frontier = [order[0]]
    while frontier:
        u = frontier.pop()
        for e, slot in rotation[u]:
            w = edges[e][1 - slot]
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    if len(seen) != len(order):
        raise DisconnectedGraph("graph has more than one component")

    return BrauerGraph(tuple(order), mult, edges, rotation)


def _prune_to_cycle(g: BrauerGraph) -> tuple[set[str], list[str]]:
    """Strip valency-one vertices repeatedly; for a unicyclic graph the
    leftover edges are the cycle.  Returns (cycle edge ids, cycle vertices)."""
    deg = {v: g.valency(v) for v in g.vertices}
    alive = set(g.edges)
    leaves = [v for v, d in deg.items() if d == 1]
    while leaves:
        v = leaves.pop()
        if deg[v] != 1:
            continue
        e = next(h[0] for h in g.rotation[v] if h[0] in alive)
        alive.discard(e)
        deg[v] = 0
        a, b = g.edges[e]
        u = a if b == v else b
        deg[u] -= 1
        if deg[u] == 1:
            leaves.append(u)
    verts = [v for v in g.vertices if deg[v] > 0]
    return alive, verts


def _cycle_walk(g: BrauerGraph, cyc_edges: set[str],
                cyc_verts: list[str]) -> list[tuple[str, str]]:
    """Ordered traversal [(vertex, outgoing edge), ...] once around."""
    start = min(cyc_verts)
    if len(cyc_edges) == 1:
        return [(start, next(iter(cyc_edges)))]
    first = min(e for e in cyc_edges
                if start in g.edges[e])
    walk = [(start, first)]
    prev_edge = first
    a, b = g.edges[first]
    here = b if a == start else a
    while here != start:
        nxt = next(e for e in cyc_edges
                   if e != prev_edge and here in g.edges[e])
        walk.append((here, nxt))
        a, b = g.edges[nxt]
        here = b if a == here else a
        prev_edge = nxt
    return walk


def _halfedge_at(g: BrauerGraph, e: str, v: str, avoid: HalfEdge | None = None
                 ) -> HalfEdge:
    for slot in (0, 1):
        if g.edges[e][slot] == v and (e, slot) != avoid:
            return (e, slot)
    raise AssertionError("edge %r is not incident to %r" % (e, v))


def _branch_size(g: BrauerGraph, cyc_edges: set[str], root: str,
                 e: str) -> int:
    """Edges of the hanging tree entered from cycle vertex root through e."""
    a, b = g.edges[e]
    far = b if a == root else a
    seen_e = {e}
    seen_v = {root, far}
    stack = [far]
    while stack:
        u = stack.pop()
        for e2, slot in g.rotation[u]:
            if e2 in seen_e or e2 in cyc_edges:
                continue
            seen_e.add(e2)
            w = g.edges[e2][1 - slot]
            if w not in seen_v:
                seen_v.add(w)
                stack.append(w)
    return len(seen_e)


def _side_counts(g: BrauerGraph, cyc_edges: set[str],
                 walk: list[tuple[str, str]]) -> int:
    """Count tree edges hanging on side 1 of the oriented cycle: at each
    cycle vertex the half-edges strictly between the outgoing and the
    incoming cycle half-edge in clockwise order."""
    ell = len(walk)
    n1 = 0
    for i, (v, e_out) in enumerate(walk):
        e_in = walk[(i - 1) % ell][1]
        if ell == 1:
            h_out, h_in = (e_out, 0), (e_out, 1)
        else:
            h_out = _halfedge_at(g, e_out, v)
            h_in = _halfedge_at(g, e_in, v,
                                avoid=h_out if e_in == e_out else None)
        rot = g.rotation[v]
        k = rot.index(h_out)
        pos = (k + 1) % len(rot)
        while rot[pos] != h_in:
            h = rot[pos]
            n1 += _branch_size(g, cyc_edges, v, h[0])
            pos = (pos + 1) % len(rot)
    return n1


def classify(g: BrauerGraph) -> DomesticClass:
    n = g.edge_count
    betti = n - len(g.vertices) + 1
    if betti == 0:
        twos = [v for v in g.vertices if g.multiplicity[v] == 2]
        ones = [v for v in g.vertices if g.multiplicity[v] == 1]
        if len(twos) == 2 and len(twos) + len(ones) == len(g.vertices):
            return DomesticClass("OneDomesticTree", n, p=n, q=n)
        return DomesticClass("OutOfScope", n)
    if betti != 1 or any(g.multiplicity[v] != 1 for v in g.vertices):
        return DomesticClass("OutOfScope", n)
    cyc_edges, cyc_verts = _prune_to_cycle(g)
    walk = _cycle_walk(g, cyc_edges, cyc_verts)
    ell = len(walk)
    n1 = _side_counts(g, cyc_edges, walk)
    n2 = n - ell - n1
    if ell % 2 == 0:
        p, q = ell // 2 + n1, ell // 2 + n2
        tag = "TwoDomestic"
    else:
        p, q = ell + 2 * n1, ell + 2 * n2
        tag = "OneDomesticOddCycle"
    if p > q:
        p, q, n1, n2 = q, p, n2, n1
    return DomesticClass(tag, n, p=p, q=q, cycle_length=ell,
                         inside_count=n1, outside_count=n2)


def build_quiver(g: BrauerGraph) -> QuiverPresentation:
    """Multiplicity-one presentation: one quiver vertex per edge, one arrow
    per rotation step at every vertex of valency >= 2.  Valency-one vertices
    contribute no arrow, so their edge only carries the surviving endpoint's
    cycle relations."""
    if any(g.multiplicity[v] != 1 for v in g.vertices):
        raise UnsupportedMultiplicity("presentation requires multiplicity one "
                                      "at every vertex")

    arrows: list[Arrow] = []
    by_name: dict[str, Arrow] = {}
    position: dict[HalfEdge, tuple[str, int]] = {}
    for v in g.vertices:
        rot = g.rotation[v]
        if len(rot) < 2:
            continue
        for k, h in enumerate(rot):
            nxt = rot[(k + 1) % len(rot)]
            a = Arrow("%s:%d" % (v, k), h[0], nxt[0], v)
            arrows.append(a)
            by_name[a.name] = a
            position[h] = (v, k)

    def halfedge_cycle(h: HalfEdge) -> tuple[str, ...]:
        v, k = position[h]
        val = g.valency(v)
        return tuple("%s:%d" % (v, (k + i) % val) for i in range(val))

    type_i = []
    for e in sorted(g.edges):
        h0, h1 = (e, 0), (e, 1)
        if h0 in position and h1 in position:
            type_i.append(Relation("typeI",
                                   (halfedge_cycle(h0), halfedge_cycle(h1))))

    type_ii = []
    for v in g.vertices:
        for k, h in enumerate(g.rotation[v]):
            if h not in position:
                continue
            cyc = halfedge_cycle(h)
            type_ii.append(Relation("typeII", (cyc + (cyc[0],),)))

    type_iii = []
    for e in sorted(g.edges):
        ins = [a for a in arrows if a.target == e]
        outs = [a for a in arrows if a.source == e]
        for a in ins:
            for b in outs:
                if a.owner != b.owner:
                    type_iii.append(Relation("typeIII", ((a.name, b.name),)))

    qp = QuiverPresentation(tuple(sorted(g.edges)), tuple(arrows),
                            tuple(type_i), tuple(type_ii), tuple(type_iii))
    assert qp.degree_bounds_ok()
    return qp


def emit_quiver_dot(qp: QuiverPresentation) -> str:
    lines = ["digraph quiver {"]
    lines.append("  // relations")
    for group in (qp.type_i, qp.type_ii, qp.type_iii):
        for rel in group:
            lines.append("  // %s: %s" % (rel.kind, rel.display()))
    for v in sorted(qp.quiver_vertices):
        lines.append('  "%s";' % v)
    for a in sorted(qp.arrows, key=lambda a: a.name):
        lines.append('  "%s" -> "%s" [label="%s"];'
                     % (a.source, a.target, a.name))
    lines.append("}")
    return "\n".join(lines) + "\n"
