"""Deterministic diagram emitters for windowed slices of the stable quiver.

A part is one of the six periodic components: e0/e1 are the Euclidean
components, u0/u1 the rank-q tubes, p0/p1 the rank-p tubes.  Euclidean parts
are drawn on the universal cover: every lattice point of the window box is a
node, so the same canonical vertex may appear at several positions.  Tube
parts draw one column per residue up to the window's height cap; the
wrap-around mesh arrows are included.

Layout is the diagonal mesh: Euclid (x, y) sits at (x - y/2, y), a tube
vertex (idx, ht) at (idx + ht/2, ht).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .model import DomainError, Euclid, Params, Tube, Vertex, canonical, format_vertex
from .oracle import WindowSpec

PARTS = ("e0", "e1", "u0", "u1", "p0", "p1")

_PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


class UnknownPart(DomainError):
    pass


@dataclass(frozen=True)
class RenderSpec:
    P: Params
    part: str
    window: WindowSpec
    highlights: dict[str, frozenset] = field(default_factory=dict)
    fmt: str = "svg"


@dataclass(frozen=True)
class Node:
    name: str
    px: float
    py: float
    text: str
    vertex: Vertex
    label: str | None


def _ident(*parts: int) -> str:
    return "_".join(str(n).replace("-", "m") for n in parts)


def _resolve_part(spec: RenderSpec):
    if spec.part not in PARTS:
        raise UnknownPart("part must be one of %s" % (", ".join(PARTS)))
    kind = spec.part[0]
    level = int(spec.part[1])
    if kind == "e":
        return ("euclid", level)
    return ("tube", "U" if kind == "u" else "P", level)


def _highlight_lookup(spec: RenderSpec) -> dict[Vertex, str]:
    out: dict[Vertex, str] = {}
    shape = _resolve_part(spec)
    w = spec.window
    for label in sorted(spec.highlights):
        for v in spec.highlights[label]:
            cv = canonical(v, spec.P)
            if shape[0] == "euclid":
                # some representative must land in the window box
                ok = (isinstance(cv, Euclid) and cv.comp == shape[1]
                      and _euclid_rep_in_box(cv, spec.P, w))
            else:
                ok = (isinstance(cv, Tube) and cv.family == shape[1]
                      and cv.level == shape[2] and cv.ht <= w.tube_ht_cap)
            if not ok:
                raise DomainError(
                    "highlight %s is outside part %s or its window"
                    % (format_vertex(cv), spec.part))
            out.setdefault(cv, label)
    return out


def _euclid_rep_in_box(cv: Euclid, P: Params, w: WindowSpec) -> bool:
    for x in range(w.x_lo, w.x_hi + 1):
        if (x - cv.x) % P.p:
            continue
        k = (x - cv.x) // P.p
        if w.y_lo <= cv.y - k * P.q <= w.y_hi:
            return True
    return False


def layout(spec: RenderSpec) -> tuple[list[Node], list[tuple[str, str]]]:
    """Nodes and mesh arrows (as name pairs) of the windowed part."""
    shape = _resolve_part(spec)
    marks = _highlight_lookup(spec)
    w = spec.window
    nodes: list[Node] = []
    arrows: list[tuple[str, str]] = []
    if shape[0] == "euclid":
        comp = shape[1]
        for x in range(w.x_lo, w.x_hi + 1):
            for y in range(w.y_lo, w.y_hi + 1):
                cv = canonical(Euclid(comp, x, y), spec.P)
                nodes.append(Node("n%s" % _ident(x, y), x - y / 2.0, float(y),
                                  "(%d,%d)" % (x, y), cv, marks.get(cv)))
        for x in range(w.x_lo, w.x_hi + 1):
            for y in range(w.y_lo, w.y_hi + 1):
                if x + 1 <= w.x_hi:
                    arrows.append(("n%s" % _ident(x, y), "n%s" % _ident(x + 1, y)))
                if y + 1 <= w.y_hi:
                    arrows.append(("n%s" % _ident(x, y), "n%s" % _ident(x, y + 1)))
    else:
        fam, level = shape[1], shape[2]
        rank = spec.P.rank(fam)
        cap = w.tube_ht_cap
        for j in range(rank):
            for k in range(cap + 1):
                v = Tube(fam, level, j, k)
                nodes.append(Node("n%s" % _ident(j, k), j + k / 2.0, float(k),
                                  "(%d,%d)" % (j, k), v, marks.get(v)))
        for j in range(rank):
            for k in range(cap + 1):
                if k + 1 <= cap:
                    arrows.append(("n%s" % _ident(j, k), "n%s" % _ident(j, k + 1)))
                if k >= 1:
                    arrows.append(("n%s" % _ident(j, k),
                                   "n%s" % _ident((j + 1) % rank, k - 1)))
    return nodes, arrows


def _palette(spec: RenderSpec) -> dict[str, str]:
    labels = sorted(spec.highlights)
    return {lab: _PALETTE[i % len(_PALETTE)] for i, lab in enumerate(labels)}


def render(spec: RenderSpec) -> str:
    if spec.fmt == "dot":
        return _emit_dot(spec)
    if spec.fmt == "svg":
        return _emit_svg(spec)
    if spec.fmt == "tikz":
        return _emit_tikz(spec)
    raise DomainError("unknown render format %r" % spec.fmt)


def layout_json(spec: RenderSpec) -> dict:
    nodes, arrows = layout(spec)
    return {
        "part": spec.part,
        "nodes": [
            {
                "name": n.name,
                "x": n.px,
                "y": n.py,
                "vertex": format_vertex(n.vertex),
                "highlight": n.label,
            }
            for n in nodes
        ],
        "arrows": [{"from": a, "to": b} for a, b in arrows],
    }


def _emit_dot(spec: RenderSpec) -> str:
    nodes, arrows = layout(spec)
    colors = _palette(spec)
    lines = ["digraph part_%s {" % spec.part,
             "  node [shape=circle, width=0.25, fixedsize=true, fontsize=8];"]
    for n in nodes:
        attrs = ['pos="%.2f,%.2f!"' % (n.px, n.py), 'label="%s"' % n.text]
        if n.label is not None:
            attrs.append('style=filled')
            attrs.append('fillcolor="%s"' % colors[n.label])
        lines.append("  %s [%s];" % (n.name, ", ".join(attrs)))
    for a, b in arrows:
        lines.append("  %s -> %s;" % (a, b))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit_svg(spec: RenderSpec) -> str:
    nodes, arrows = layout(spec)
    colors = _palette(spec)
    unit = 48.0
    r = 9.0
    xs = [n.px for n in nodes]
    ys = [n.py for n in nodes]
    x0, x1 = min(xs) - 1, max(xs) + 1
    y0, y1 = min(ys) - 1, max(ys) + 1

    def sx(px):
        return (px - x0) * unit

    def sy(py):
        return (y1 - py) * unit

    width = (x1 - x0) * unit
    height = (y1 - y0) * unit
    out = ['<?xml version="1.0" encoding="UTF-8"?>']
    out.append('<svg xmlns="http://www.w3.org/2000/svg" '
               'viewBox="0 0 %.1f %.1f" width="%.1f" height="%.1f">'
               % (width, height, width, height))
    out.append('<defs><marker id="tip" viewBox="0 0 8 8" refX="7" refY="4" '
               'markerWidth="6" markerHeight="6" orient="auto">'
               '<path d="M0,0 L8,4 L0,8 z" fill="#444"/></marker></defs>')
    pos = {n.name: (sx(n.px), sy(n.py)) for n in nodes}
    for a, b in arrows:
        (ax, ay), (bx, by) = pos[a], pos[b]
        dx, dy = bx - ax, by - ay
        dist = (dx * dx + dy * dy) ** 0.5 or 1.0
        ux, uy = dx / dist, dy / dist
        out.append('<line x1="%.1f" y1="%.1f" x2="%.1f" y2="%.1f" '
                   'stroke="#444" stroke-width="1" marker-end="url(#tip)"/>'
                   % (ax + ux * r, ay + uy * r, bx - ux * (r + 2),
                      by - uy * (r + 2)))
    for n in nodes:
        cx, cy = pos[n.name]
        fill = colors[n.label] if n.label is not None else "#ffffff"
        out.append('<circle cx="%.1f" cy="%.1f" r="%.1f" fill="%s" '
                   'stroke="#222" stroke-width="1">'
                   '<title>%s</title></circle>'
                   % (cx, cy, r, fill, escape(format_vertex(n.vertex))))
        out.append('<text x="%.1f" y="%.1f" font-size="7" '
                   'text-anchor="middle" fill="#111">%s</text>'
                   % (cx, cy + 2.2, escape(n.text)))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _emit_tikz(spec: RenderSpec) -> str:
    nodes, arrows = layout(spec)
    colors = _palette(spec)
    out = ["\\documentclass[tikz,border=4pt]{standalone}"]
    for lab in sorted(colors):
        out.append("\\definecolor{hl%s}{HTML}{%s}"
                   % (_ident(sorted(colors).index(lab)), colors[lab][1:].upper()))
    out.append("\\begin{document}")
    out.append("\\begin{tikzpicture}[x=1.1cm, y=1.1cm,"
               " every node/.style={circle, draw, inner sep=1pt,"
               " minimum size=11pt, font=\\tiny}]")
    lab_index = {lab: i for i, lab in enumerate(sorted(colors))}
    for n in nodes:
        style = ""
        if n.label is not None:
            style = ", fill=hl%s!60" % _ident(lab_index[n.label])
        out.append("\\node[%s] (%s) at (%.2f,%.2f) {%s};"
                   % (style.lstrip(", "), n.name, n.px, n.py,
                      "$\\scriptscriptstyle %s$" % n.text))
    for a, b in arrows:
        out.append("\\draw[->, shorten >=1pt, shorten <=1pt] (%s) -- (%s);"
                   % (a, b))
    out.append("\\end{tikzpicture}")
    out.append("\\end{document}")
    return "\n".join(out) + "\n"
