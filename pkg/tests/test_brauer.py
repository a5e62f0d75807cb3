"""Ribbon-graph parsing, domesticity classification, quiver presentation."""

import json

import pytest

from conftest import SQUARE_DOC
from arq2d.brauer import (
    DisconnectedGraph,
    MalformedDocument,
    RotationMismatch,
    UnsupportedMultiplicity,
    build_quiver,
    classify,
    emit_quiver_dot,
    parse_graph,
)


def make_doc(vs, es, rot, mult=None):
    mult = mult or {}
    return {
        "vertices": [{"id": v, "multiplicity": mult.get(v, 1)} for v in vs],
        "edges": [{"id": e, "ends": list(ab)} for e, ab in es.items()],
        "rotation": {v: [{"edge": e, "slot": s} for e, s in rot[v]]
                     for v in vs},
    }


TRIANGLE = make_doc("abc", {"1": "ab", "2": "bc", "3": "ca"},
                    {"a": [("1", 0), ("3", 1)], "b": [("2", 0), ("1", 1)],
                     "c": [("3", 0), ("2", 1)]})
LOOP = make_doc("a", {"1": "aa"}, {"a": [("1", 0), ("1", 1)]})


class TestParsing:
    def test_square_accepted(self, square_doc):
        g = parse_graph(square_doc)
        assert g.edge_count == 4
        assert all(g.valency(v) == 2 for v in g.vertices)

    def test_accepts_json_text(self):
        g = parse_graph(json.dumps(SQUARE_DOC))
        assert g.edge_count == 4

    def test_missing_key(self):
        with pytest.raises(MalformedDocument):
            parse_graph({"vertices": [], "edges": []})

    def test_edge_with_unknown_vertex(self):
        doc = make_doc("ab", {"1": "ax"},
                       {"a": [("1", 0)], "b": []})
        with pytest.raises(MalformedDocument):
            parse_graph(doc)

    def test_rotation_missing_halfedge(self, square_doc):
        square_doc["rotation"]["a"] = [{"edge": "1", "slot": 0}]
        with pytest.raises(RotationMismatch):
            parse_graph(square_doc)

    def test_rotation_duplicate_halfedge(self, square_doc):
        square_doc["rotation"]["a"] = [{"edge": "1", "slot": 0},
                                       {"edge": "1", "slot": 0}]
        with pytest.raises(RotationMismatch):
            parse_graph(square_doc)

    def test_rotation_foreign_halfedge(self, square_doc):
        # half-edge (2,0) sits at b, not at a
        square_doc["rotation"]["a"] = [{"edge": "1", "slot": 0},
                                       {"edge": "2", "slot": 0}]
        with pytest.raises(RotationMismatch):
            parse_graph(square_doc)

    def test_disconnected(self):
        doc = make_doc("abcd", {"1": "ab", "2": "cd"},
                       {"a": [("1", 0)], "b": [("1", 1)],
                        "c": [("2", 0)], "d": [("2", 1)]})
        with pytest.raises(DisconnectedGraph):
            parse_graph(doc)


class TestClassification:
    def test_square(self, square_doc):
        cls = classify(parse_graph(square_doc))
        assert cls.tag == "TwoDomestic"
        assert (cls.p, cls.q, cls.n) == (2, 2, 4)
        assert cls.cycle_length == 4

    def test_square_json_contract(self, square_doc):
        doc = classify(parse_graph(square_doc)).to_json()
        assert doc == {"tag": "TwoDomestic", "p": 2, "q": 2, "n": 4}
        assert list(doc) == ["tag", "p", "q", "n"]

    def test_triangle(self):
        cls = classify(parse_graph(TRIANGLE))
        assert cls.tag == "OneDomesticOddCycle"
        assert (cls.p, cls.q, cls.n) == (3, 3, 3)

    def test_loop(self):
        cls = classify(parse_graph(LOOP))
        assert cls.tag == "OneDomesticOddCycle"
        assert (cls.p, cls.q, cls.n, cls.cycle_length) == (1, 1, 1, 1)

    def test_parallel_pair(self):
        doc = make_doc("ab", {"1": "ab", "2": "ab"},
                       {"a": [("1", 0), ("2", 0)],
                        "b": [("1", 1), ("2", 1)]})
        cls = classify(parse_graph(doc))
        assert cls.tag == "TwoDomestic"
        assert (cls.p, cls.q, cls.cycle_length) == (1, 1, 2)

    def test_triangle_with_pendant(self):
        doc = make_doc("abcx", {"1": "ab", "2": "bc", "3": "ca", "4": "ax"},
                       {"a": [("1", 0), ("4", 0), ("3", 1)],
                        "b": [("2", 0), ("1", 1)],
                        "c": [("3", 0), ("2", 1)], "x": [("4", 1)]})
        cls = classify(parse_graph(doc))
        assert cls.tag == "OneDomesticOddCycle"
        # odd cycle of length 3 plus one branch edge: p,q = 3, 3+2
        assert (cls.p, cls.q, cls.n) == (3, 5, 4)

    def test_square_with_pendant(self):
        doc = make_doc("abcdx",
                       {"1": "ab", "2": "bc", "3": "cd", "4": "da",
                        "5": "ax"},
                       {"a": [("1", 0), ("5", 0), ("4", 1)],
                        "b": [("2", 0), ("1", 1)],
                        "c": [("3", 0), ("2", 1)],
                        "d": [("4", 0), ("3", 1)], "x": [("5", 1)]})
        cls = classify(parse_graph(doc))
        assert cls.tag == "TwoDomestic"
        assert (cls.p, cls.q, cls.n) == (2, 3, 5)
        assert cls.p + cls.q == cls.n

    def test_tree_with_two_double_points(self):
        doc = make_doc("abc", {"1": "ab", "2": "bc"},
                       {"a": [("1", 0)], "b": [("1", 1), ("2", 0)],
                        "c": [("2", 1)]},
                       mult={"a": 2, "c": 2})
        cls = classify(parse_graph(doc))
        assert cls.tag == "OneDomesticTree"
        assert (cls.p, cls.q, cls.n) == (2, 2, 2)

    def test_out_of_scope_cases(self):
        plain_tree = make_doc("abc", {"1": "ab", "2": "bc"},
                              {"a": [("1", 0)], "b": [("1", 1), ("2", 0)],
                               "c": [("2", 1)]})
        assert classify(parse_graph(plain_tree)).tag == "OutOfScope"

        marked_cycle = json.loads(json.dumps(TRIANGLE))
        marked_cycle["vertices"][0]["multiplicity"] = 2
        assert classify(parse_graph(marked_cycle)).tag == "OutOfScope"

        two_loops = make_doc("a", {"1": "aa", "2": "aa"},
                             {"a": [("1", 0), ("2", 0), ("1", 1),
                                    ("2", 1)]})
        assert classify(parse_graph(two_loops)).tag == "OutOfScope"

    def test_out_of_scope_json_omits_parameters(self):
        plain_tree = make_doc("ab", {"1": "ab"},
                              {"a": [("1", 0)], "b": [("1", 1)]})
        doc = classify(parse_graph(plain_tree)).to_json()
        assert doc == {"tag": "OutOfScope", "n": 1}


class TestQuiver:
    def test_square_presentation_counts(self, square_doc):
        qp = build_quiver(parse_graph(square_doc))
        assert len(qp.quiver_vertices) == 4
        assert len(qp.arrows) == 8
        assert len(qp.type_i) == 4
        assert len(qp.type_ii) == 8
        assert len(qp.type_iii) == 8
        assert qp.degree_bounds_ok()

    def test_square_relation_shapes(self, square_doc):
        qp = build_quiver(parse_graph(square_doc))
        # commutativity relations are differences of two length-2 paths
        for rel in qp.type_i:
            assert " - " in rel.display()
        # cycle-overrun relations are single length-3 paths
        for rel in qp.type_ii:
            assert rel.display().count("*") == 2
            assert " - " not in rel.display()
        # mixed-owner compositions vanish as single length-2 paths
        for rel in qp.type_iii:
            assert rel.display().count("*") == 1

    def test_loop_presentation(self):
        qp = build_quiver(parse_graph(LOOP))
        assert len(qp.quiver_vertices) == 1
        assert len(qp.arrows) == 2
        assert len(qp.type_i) == 1
        assert len(qp.type_ii) == 2
        assert len(qp.type_iii) == 0

    def test_pendant_edge_carries_no_arrow_from_leaf(self):
        doc = make_doc("abcx", {"1": "ab", "2": "bc", "3": "ca", "4": "ax"},
                       {"a": [("1", 0), ("4", 0), ("3", 1)],
                        "b": [("2", 0), ("1", 1)],
                        "c": [("3", 0), ("2", 1)], "x": [("4", 1)]})
        qp = build_quiver(parse_graph(doc))
        assert not any(a.owner == "x" for a in qp.arrows)
        # a has valency 3, so it contributes three arrows
        assert sum(a.owner == "a" for a in qp.arrows) == 3

    def test_multiplicity_two_rejected(self):
        doc = make_doc("abc", {"1": "ab", "2": "bc"},
                       {"a": [("1", 0)], "b": [("1", 1), ("2", 0)],
                        "c": [("2", 1)]},
                       mult={"a": 2, "c": 2})
        with pytest.raises(UnsupportedMultiplicity):
            build_quiver(parse_graph(doc))


class TestDot:
    def test_deterministic_and_structured(self, square_doc):
        qp = build_quiver(parse_graph(square_doc))
        dot = emit_quiver_dot(qp)
        assert dot == emit_quiver_dot(build_quiver(parse_graph(square_doc)))
        lines = dot.splitlines()
        assert lines[0] == "digraph quiver {"
        assert lines[-1] == "}"
        assert sum(1 for l in lines if "->" in l) == len(qp.arrows)
        for v in qp.quiver_vertices:
            assert '  "%s";' % v in lines
