"""Distinguished-triangle catalog and extension-closure reachability.

Triangles are stored as (a, mids, c) meaning a -> (+)mids -> c -> shift(a)
with shift = the inverse syzygy.  The closure engine runs three rules to a
least fixpoint over a finite window: extensions pull middle terms in
(orthogonal seeds make the closure summand-closed), rotations pull the end
terms in.  Every derivation is traced and traces replay deterministically.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .model import (
    DomainError,
    Euclid,
    Params,
    Tube,
    Vertex,
    canonical,
    format_vertex,
    omega,
    omega_inv,
    vertex_sort_key,
)
from .homs import QuasiCone, ceil_div, stable_hom_nonzero
from .ortho import NoEuclideanMember, maximality


class WindowTooSmall(DomainError):
    """Seeds or their syzygy shifts fall outside the closure window."""


class NotMaximal(DomainError):
    """Parameter extraction needs a maximal system."""


class ParameterNotUnique(DomainError):
    """A gap parameter or predicted vertex failed its uniqueness clause."""


@dataclass(frozen=True)
class ClosureWindow:
    P: Params
    x_lo: int
    x_hi: int
    y_lo: int
    y_hi: int
    tube_ht_cap: int

    def __post_init__(self):
        if self.x_hi < self.x_lo or self.y_hi < self.y_lo:
            raise DomainError("empty closure window")
        if self.tube_ht_cap < 0:
            raise DomainError("negative tube height cap")

    def contains(self, v: Vertex) -> bool:
        # Euclidean membership is lift-quantified: some representative of
        # the shift class must land in the raw box.
        if isinstance(v, Euclid):
            p, q = self.P.p, self.P.q
            lo = max(ceil_div(v.x - self.x_hi, p), ceil_div(self.y_lo - v.y, q))
            hi = min((v.x - self.x_lo) // p, (self.y_hi - v.y) // q)
            return lo <= hi
        return v.ht <= self.tube_ht_cap


def default_window(S, P: Params) -> ClosureWindow:
    pts = []
    for v in S:
        v = canonical(v, P)
        for u in (v, omega(v, P), omega_inv(v, P)):
            if isinstance(u, Euclid):
                pts.append(u)
    pad = P.p + P.q
    if pts:
        x_lo, x_hi = min(u.x for u in pts), max(u.x for u in pts)
        y_lo, y_hi = min(u.y for u in pts), max(u.y for u in pts)
    else:
        x_lo = x_hi = y_lo = y_hi = 0
    return ClosureWindow(P, x_lo - pad, x_hi + pad, y_lo - pad, y_hi + pad,
                         max(P.p, P.q) - 1)


@dataclass(frozen=True)
class DistinguishedTriangle:
    a: Vertex
    mids: tuple[Vertex, ...]
    c: Vertex
    family: str

    def sort_key(self):
        return (self.family, vertex_sort_key(self.a),
                tuple(vertex_sort_key(m) for m in self.mids),
                vertex_sort_key(self.c))

    def to_json(self) -> dict:
        return {
            "a": format_vertex(self.a),
            "mids": [format_vertex(m) for m in self.mids],
            "c": format_vertex(self.c),
        }


def triangle_catalog(P: Params, window: ClosureWindow):
    """Every catalog triangle whose three slots all lie in the window."""
    tris: dict = {}

    def emit(family, a, mids, c):
        a = canonical(a, P)
        mids = tuple(canonical(m, P) for m in mids)
        c = canonical(c, P)
        if not window.contains(a) or not window.contains(c):
            return
        if not all(window.contains(m) for m in mids):
            return
        key = (a, mids, c)
        if key not in tris:
            tris[key] = DistinguishedTriangle(a, mids, c, family)

    xs = range(window.x_lo, window.x_hi + 1)
    ys = range(window.y_lo, window.y_hi + 1)
    for comp in (0, 1):
        for i in xs:
            for j in ys:
                for k in range(1, window.x_hi - i + 1):
                    for l in range(1, window.y_hi - j + 1):
                        emit("T-mesh-E", Euclid(comp, i, j),
                             (Euclid(comp, i, j + l), Euclid(comp, i + k, j)),
                             Euclid(comp, i + k, j + l))
        # tube-to-component chains; the first coordinate couples to the
        # rank-p family, the second to the rank-q family
        for u in xs:
            for v in ys:
                for k in range(1, window.x_hi - u + 1):
                    if k - 1 > window.tube_ht_cap:
                        break
                    emit("T-H" if k == 1 else "T-H-comp",
                         Tube("P", comp, u, k - 1),
                         (Euclid(comp, u, v),), Euclid(comp, u + k, v))
                for k in range(1, window.y_hi - v + 1):
                    if k - 1 > window.tube_ht_cap:
                        break
                    emit("T-V" if k == 1 else "T-V-comp",
                         Tube("U", comp, v, k - 1),
                         (Euclid(comp, u, v),), Euclid(comp, u, v + k))
    for family in ("U", "P"):
        rank = P.rank(family)
        for level in (0, 1):
            for j in range(rank):
                for k in range(0, window.tube_ht_cap):
                    mids = (Tube(family, level, j, k + 1),)
                    if k >= 1:
                        mids = mids + (Tube(family, level, j + 1, k - 1),)
                    emit("T-mesh-T", Tube(family, level, j, k), mids,
                         Tube(family, level, j + 1, k))
    return sorted(tris.values(), key=DistinguishedTriangle.sort_key)


@dataclass(frozen=True)
class ClosureState:
    in_f: frozenset
    trace: tuple
    window: ClosureWindow
    seeds: tuple


def closure(S, P: Params, window: ClosureWindow | None = None,
            triangles=None) -> ClosureState:
    seeds = sorted({canonical(v, P) for v in S}, key=vertex_sort_key)
    if window is None:
        window = default_window(seeds, P)
    for v in seeds:
        for u in (v, omega(v, P), omega_inv(v, P)):
            if not window.contains(u):
                raise WindowTooSmall("%s falls outside the closure window"
                                     % format_vertex(u))
    if triangles is None:
        triangles = triangle_catalog(P, window)

    index: dict[Vertex, list[int]] = {}
    for n, t in enumerate(triangles):
        keys = {t.a, t.c, omega_inv(t.a, P), omega(t.c, P)}
        keys.update(t.mids)
        for kv in keys:
            index.setdefault(kv, []).append(n)

    in_f = set(seeds)
    trace = []
    queue = deque(seeds)

    def produce(rule, tri, v):
        in_f.add(v)
        trace.append((rule, tri, v))
        queue.append(v)

    while queue:
        v = queue.popleft()
        for n in index.get(v, ()):
            t = triangles[n]
            if t.a in in_f and t.c in in_f:
                for m in t.mids:
                    if m not in in_f:
                        produce("ext", t, m)
            if all(m in in_f for m in t.mids):
                if omega_inv(t.a, P) in in_f and t.c not in in_f:
                    produce("rot-right", t, t.c)
                if omega(t.c, P) in in_f and t.a not in in_f:
                    produce("rot-left", t, t.a)
    return ClosureState(frozenset(in_f), tuple(trace), window, tuple(seeds))


def replay_trace(S, trace, P: Params) -> frozenset:
    """Re-run a trace, checking every premise; returns the final set."""
    cur = {canonical(v, P) for v in S}
    for rule, tri, produced in trace:
        if rule == "ext":
            premises = (tri.a, tri.c)
        elif rule == "rot-right":
            premises = tri.mids + (omega_inv(tri.a, P),)
        elif rule == "rot-left":
            premises = tri.mids + (omega(tri.c, P),)
        else:
            raise DomainError("unknown trace rule %r" % (rule,))
        for u in premises:
            if u not in cur:
                raise DomainError("trace premise %s not established"
                                  % format_vertex(u))
        cur.add(produced)
    return frozenset(cur)


def trace_json_lines(trace):
    for rule, tri, produced in trace:
        yield json.dumps({"rule": rule, "triangle": tri.to_json(),
                          "produced": format_vertex(produced)},
                         sort_keys=True)


def certify_sms(S, P: Params, window: ClosureWindow | None = None) -> dict:
    vs = sorted({canonical(v, P) for v in S}, key=vertex_sort_key)
    has_euclid = any(isinstance(v, Euclid) for v in vs)
    if window is None:
        window = default_window(vs, P)
    state = closure(vs, P, window)
    targets = {format_vertex(v): (omega_inv(v, P) in state.in_f) for v in vs}
    certified = has_euclid and all(targets.values())
    return {
        "certified": certified,
        "inconclusive": (not certified) and has_euclid,
        "hasEuclidean": has_euclid,
        "targets": targets,
        "members": [format_vertex(v) for v in vs],
        "derived": len(state.in_f),
        "trace": state.trace,
        "window": window,
    }


def _wings_clear(vs, family, level0_idx, level1_idx, P: Params) -> bool:
    cone0 = QuasiCone(family, 0, level0_idx % P.rank(family))
    cone1 = QuasiCone(family, 1, level1_idx % P.rank(family))
    for v in vs:
        if isinstance(v, Tube) and v.family == family:
            if cone0.contains(v, P) or cone1.contains(v, P):
                return False
    return True


def extract_params(S, P: Params) -> dict:
    """Gap parameters of a maximal system, plus the predicted comp-1 part.

    For each pair of cyclically consecutive comp-0 members the rank-p gap
    index t and rank-q gap index s are the unique values whose partner
    quasi-simple wings avoid S; the comp-1 member of the gap is the unique
    bi-perpendicular point of S-without-comp-1 inside the gap rectangle.
    All three are reported in absolute window coordinates.
    """
    vs = sorted({canonical(v, P) for v in S}, key=vertex_sort_key)
    if not any(isinstance(v, Euclid) for v in vs):
        raise NoEuclideanMember("parameter extraction needs a Euclidean part")
    report = maximality(vs, P)
    if not report.is_maximal:
        raise NotMaximal("witnesses remain: %s" %
                         [format_vertex(w) for w in report.witnesses])
    comp0 = sorted((v for v in vs if isinstance(v, Euclid) and v.comp == 0),
                   key=lambda v: v.x)
    if not comp0:
        raise DomainError("maximal system with empty comp-0 part")
    rest = [v for v in vs if not (isinstance(v, Euclid) and v.comp == 1)]

    t_list, s_list, predicted = [], [], []
    ell = len(comp0)
    for r in range(ell):
        a_r, b_r = comp0[r].x, comp0[r].y
        if r + 1 < ell:
            a_n, b_n = comp0[r + 1].x, comp0[r + 1].y
        else:
            a_n, b_n = comp0[0].x + P.p, comp0[0].y - P.q

        ts = [t for t in range(a_r + 1, a_n + 1)
              if _wings_clear(vs, "P", t - 1, t, P)]
        if len(ts) != 1:
            raise ParameterNotUnique("gap %d admits t candidates %s" % (r, ts))
        t_list.append(ts[0])

        ss = [s for s in range(b_n + 1, b_r + 1)
              if _wings_clear(vs, "U", s - 1, s, P)]
        if len(ss) != 1:
            raise ParameterNotUnique("gap %d admits s candidates %s" % (r, ss))
        s_list.append(ss[0])

        box = []
        for x in range(a_r + 1, a_n + 1):
            for y in range(b_n + 1, b_r + 1):
                w = canonical(Euclid(1, x, y), P)
                if all(not stable_hom_nonzero(u, w, P)
                       and not stable_hom_nonzero(w, u, P) for u in rest):
                    box.append(w)
        if len(box) != 1:
            raise ParameterNotUnique(
                "gap %d rectangle admits %s" %
                (r, [format_vertex(w) for w in box]))
        predicted.append(box[0])
    return {"tList": t_list, "sList": s_list, "predictedComp1": predicted}
