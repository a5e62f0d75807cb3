"""Triangle catalog, extension-closure fixpoint, certification, parameters."""

import json

import pytest

from arq2d.closure import (
    ClosureWindow,
    DistinguishedTriangle,
    NotMaximal,
    WindowTooSmall,
    certify_sms,
    closure,
    default_window,
    extract_params,
    replay_trace,
    trace_json_lines,
    triangle_catalog,
)
from arq2d.model import (
    DomainError,
    Euclid,
    Params,
    Tube,
    canonical,
    format_vertex,
    omega_inv,
)
from arq2d.ortho import NoEuclideanMember, maximal_systems_containing

P33 = Params(3, 3)
FLAGSHIP = (Euclid(0, 1, 0), Euclid(0, -1, 2), Euclid(0, 0, 1),
            Euclid(1, -1, 3), Euclid(1, 0, 2), Euclid(1, 1, 1))


@pytest.fixture(scope="module")
def flagship_state():
    return closure(FLAGSHIP, P33)


@pytest.fixture(scope="module")
def flagship_cert():
    return certify_sms(FLAGSHIP, P33)


class TestWindow:
    def test_rejects_degenerate(self):
        with pytest.raises(DomainError):
            ClosureWindow(P33, 1, 0, 0, 0, 1)
        with pytest.raises(DomainError):
            ClosureWindow(P33, 0, 0, 0, 0, -1)

    def test_euclid_membership_is_lift_quantified(self):
        w = ClosureWindow(P33, 0, 2, 0, 2, 1)
        assert w.contains(Euclid(0, 1, 1))
        # E(0,4,-2) is identified with E(0,1,1), which lands in the box
        assert w.contains(Euclid(0, 4, -2))
        assert not w.contains(Euclid(0, 4, 0))

    def test_tube_membership_is_height_capped(self):
        w = ClosureWindow(P33, 0, 2, 0, 2, 1)
        assert w.contains(Tube("U", 0, 0, 1))
        assert not w.contains(Tube("U", 0, 0, 2))

    def test_default_window_covers_seed_shifts(self):
        w = default_window(FLAGSHIP, P33)
        from arq2d.model import omega
        for v in FLAGSHIP:
            assert w.contains(v)
            assert w.contains(omega(v, P33))
            assert w.contains(omega_inv(v, P33))


class TestCatalog:
    def test_no_duplicates_and_window_containment(self):
        P = Params(2, 2)
        w = default_window([Euclid(0, 0, 0)], P)
        cat = triangle_catalog(P, w)
        assert len(cat) == len(set(cat)) == 2754
        for t in cat:
            assert w.contains(t.a) and w.contains(t.c)
            assert all(w.contains(m) for m in t.mids)

    def test_known_mesh_triangle_present(self):
        P = Params(2, 2)
        w = ClosureWindow(P, -2, 2, -2, 2, 1)
        cat = triangle_catalog(P, w)
        want = DistinguishedTriangle(
            canonical(Euclid(0, 0, 0), P),
            (canonical(Euclid(0, 0, 1), P), canonical(Euclid(0, 1, 0), P)),
            canonical(Euclid(0, 1, 1), P),
            "T-mesh-E")
        assert want in cat

    def test_tube_mesh_triangles_close_the_rank(self):
        P = Params(2, 3)
        w = ClosureWindow(P, 0, 0, 0, 0, 1)
        cat = [t for t in triangle_catalog(P, w) if t.family == "T-mesh-T"]
        # every quasi-simple has a mesh triangle to its cyclic successor
        starts = {t.a for t in cat if isinstance(t.a, Tube) and t.a.ht == 0}
        for fam in ("U", "P"):
            for level in (0, 1):
                for j in range(P.rank(fam)):
                    assert Tube(fam, level, j, 0) in starts


class TestClosureEngine:
    def test_orthogonal_seed_stays_inside(self, flagship_state):
        assert set(FLAGSHIP_CANON) <= flagship_state.in_f

    def test_deterministic(self, flagship_state):
        again = closure(FLAGSHIP, P33)
        assert again.in_f == flagship_state.in_f
        assert again.trace == flagship_state.trace

    def test_monotone_in_window(self, flagship_state):
        w = flagship_state.window
        bigger = ClosureWindow(P33, w.x_lo - 1, w.x_hi + 1, w.y_lo - 1,
                               w.y_hi + 1, w.tube_ht_cap)
        grown = closure(FLAGSHIP, P33, bigger)
        assert flagship_state.in_f <= grown.in_f

    def test_window_too_small(self):
        w = ClosureWindow(P33, 0, 1, 0, 1, 1)
        with pytest.raises(WindowTooSmall):
            closure(FLAGSHIP, P33, w)

    def test_single_tube_seed_is_inert(self):
        state = closure([Tube("U", 0, 0, 0)],
                        P33, ClosureWindow(P33, -3, 3, -3, 3, 1))
        assert state.in_f == frozenset({Tube("U", 0, 0, 0)})
        assert state.trace == ()


class TestTrace:
    def test_replay_matches_closure(self, flagship_state):
        final = replay_trace(FLAGSHIP, flagship_state.trace, P33)
        assert final == flagship_state.in_f

    def test_tampered_trace_rejected(self, flagship_state):
        trace = list(flagship_state.trace)
        assert len(trace) > 2
        # drop the first derivation; later steps lose a premise
        with pytest.raises(DomainError):
            replay_trace(FLAGSHIP, trace[1:] + trace[:1], P33)

    def test_unknown_rule_rejected(self, flagship_state):
        rule, tri, prod = flagship_state.trace[0]
        with pytest.raises(DomainError):
            replay_trace(FLAGSHIP, [("shear", tri, prod)], P33)

    def test_json_lines_shape(self, flagship_state):
        lines = list(trace_json_lines(flagship_state.trace))
        assert len(lines) == len(flagship_state.trace)
        doc = json.loads(lines[0])
        assert set(doc) == {"rule", "triangle", "produced"}
        assert set(doc["triangle"]) == {"a", "mids", "c"}


class TestCertification:
    def test_flagship_certifies(self, flagship_cert):
        assert flagship_cert["certified"] is True
        assert flagship_cert["inconclusive"] is False
        assert flagship_cert["hasEuclidean"] is True
        assert all(flagship_cert["targets"].values())
        assert flagship_cert["derived"] == 216
        assert flagship_cert["members"] == [
            "E(0,-1,2)", "E(0,0,1)", "E(0,1,0)",
            "E(1,0,2)", "E(1,1,1)", "E(1,2,0)"]

    def test_non_maximal_orthogonal_set_inconclusive(self):
        doc = certify_sms([Euclid(0, 1, 0)], P33)
        assert doc["certified"] is False
        assert doc["inconclusive"] is True
        assert doc["hasEuclidean"] is True

    def test_all_tube_set_reports_no_euclidean(self):
        doc = certify_sms([Tube("U", 0, 0, 0)], P33)
        assert doc["certified"] is False
        assert doc["inconclusive"] is False
        assert doc["hasEuclidean"] is False


class TestParameterExtraction:
    def test_flagship_round_trip(self):
        out = extract_params(FLAGSHIP, P33)
        assert out["tList"] == [0, 1, 2]
        assert out["sList"] == [2, 1, 0]
        predicted = sorted(format_vertex(v) for v in out["predictedComp1"])
        actual = sorted(format_vertex(canonical(v, P33)) for v in FLAGSHIP
                        if canonical(v, P33).comp == 1)
        assert predicted == actual == ["E(1,0,2)", "E(1,1,1)", "E(1,2,0)"]

    def test_every_two_two_system_round_trips(self):
        P = Params(2, 2)
        for s in maximal_systems_containing([Euclid(0, 1, 0)], P):
            out = extract_params(s, P)
            predicted = {canonical(v, P) for v in out["predictedComp1"]}
            actual = {v for v in s
                      if isinstance(v, Euclid) and v.comp == 1}
            assert predicted == actual

    def test_punctured_system_not_maximal(self):
        punctured = [v for v in FLAGSHIP if v != Euclid(0, 0, 1)]
        with pytest.raises(NotMaximal):
            extract_params(punctured, P33)

    def test_requires_euclidean_member(self):
        with pytest.raises(NoEuclideanMember):
            extract_params([Tube("U", 0, 0, 0)], P33)


FLAGSHIP_CANON = tuple(canonical(v, P33) for v in FLAGSHIP)
