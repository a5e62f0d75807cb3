"""Combinatorial engine for the stable AR quiver of a 2-domestic algebra."""

from .model import (
    DomainError,
    Euclid,
    HeightOutOfRange,
    Params,
    Tube,
    Vertex,
    canonical,
    format_vertex,
    fundamental_domain,
    is_brick_candidate,
    omega,
    omega_inv,
    parse_vertex,
    tau,
    tau_inv,
    vertex_sort_key,
)
from .homs import biperp, lsupp, rsupp, stable_hom_nonzero
from .brauer import (
    DomesticClass,
    QuiverPresentation,
    build_quiver,
    classify,
    emit_quiver_dot,
    parse_graph,
)
from .ortho import (
    NoEuclideanMember,
    enumerate_ortho_on_paired,
    enumerate_ortho_on_triangle,
    enumeration_report,
    euclidean_ortho_check,
    is_orthogonal_system,
    maximal_systems_containing,
    maximality,
)
# the submodule names `closure` and `render` stay bound to the modules;
# their like-named entry points are reached through the submodules
from .closure import (
    ClosureWindow,
    NotMaximal,
    ParameterNotUnique,
    WindowTooSmall,
    certify_sms,
    extract_params,
    replay_trace,
    triangle_catalog,
)
from .oracle import WindowSpec, brute_biperp, exhaustive_max_ortho
from .render import RenderSpec, layout

__all__ = [
    "ClosureWindow",
    "DomainError",
    "DomesticClass",
    "Euclid",
    "HeightOutOfRange",
    "NoEuclideanMember",
    "NotMaximal",
    "ParameterNotUnique",
    "Params",
    "QuiverPresentation",
    "RenderSpec",
    "Tube",
    "Vertex",
    "WindowSpec",
    "WindowTooSmall",
    "biperp",
    "brute_biperp",
    "build_quiver",
    "canonical",
    "certify_sms",
    "classify",
    "emit_quiver_dot",
    "enumerate_ortho_on_paired",
    "enumerate_ortho_on_triangle",
    "enumeration_report",
    "euclidean_ortho_check",
    "exhaustive_max_ortho",
    "extract_params",
    "format_vertex",
    "fundamental_domain",
    "is_brick_candidate",
    "is_orthogonal_system",
    "layout",
    "lsupp",
    "maximal_systems_containing",
    "maximality",
    "omega",
    "omega_inv",
    "parse_graph",
    "parse_vertex",
    "replay_trace",
    "rsupp",
    "stable_hom_nonzero",
    "tau",
    "tau_inv",
    "triangle_catalog",
    "vertex_sort_key",
]
