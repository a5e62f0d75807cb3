import json

import pytest
from hypothesis import strategies as st

from arq2d.model import Euclid, Params, Tube


def params_strategy(lo=1, hi=5):
    return st.builds(Params, st.integers(lo, hi), st.integers(lo, hi))


@st.composite
def param_vertex(draw, span=8, ht_max=6, pmax=5):
    P = draw(params_strategy(1, pmax))
    if draw(st.booleans()):
        v = Tube(draw(st.sampled_from("UP")), draw(st.integers(0, 1)),
                 draw(st.integers(-span, span)), draw(st.integers(0, ht_max)))
    else:
        v = Euclid(draw(st.integers(0, 1)), draw(st.integers(-span, span)),
                   draw(st.integers(-span, span)))
    return P, v


@st.composite
def param_vertex_pair(draw, span=8, ht_max=6, pmax=5):
    P, v = draw(param_vertex(span, ht_max, pmax))
    if draw(st.booleans()):
        w = Tube(draw(st.sampled_from("UP")), draw(st.integers(0, 1)),
                 draw(st.integers(-span, span)), draw(st.integers(0, ht_max)))
    else:
        w = Euclid(draw(st.integers(0, 1)), draw(st.integers(-span, span)),
                   draw(st.integers(-span, span)))
    return P, v, w


SQUARE_DOC = {
    "vertices": [{"id": v, "multiplicity": 1} for v in "abcd"],
    "edges": [{"id": "1", "ends": ["a", "b"]},
              {"id": "2", "ends": ["b", "c"]},
              {"id": "3", "ends": ["c", "d"]},
              {"id": "4", "ends": ["d", "a"]}],
    "rotation": {"a": [{"edge": "1", "slot": 0}, {"edge": "4", "slot": 1}],
                 "b": [{"edge": "2", "slot": 0}, {"edge": "1", "slot": 1}],
                 "c": [{"edge": "3", "slot": 0}, {"edge": "2", "slot": 1}],
                 "d": [{"edge": "4", "slot": 0}, {"edge": "3", "slot": 1}]},
}


@pytest.fixture
def square_doc():
    return json.loads(json.dumps(SQUARE_DOC))


@pytest.fixture
def square_path(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(json.dumps(SQUARE_DOC))
    return str(path)


# acceptance criteria report lines: (number, title, ok, elapsed, detail)
ACCEPTANCE_ROWS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_ROWS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num, title, ok, elapsed, detail in sorted(ACCEPTANCE_ROWS):
        verdict = "PASS" if ok else "FAIL"
        tr.write_line("criterion %2d %-38s %s (%6.1fs)  %s"
                      % (num, title, verdict, elapsed, detail))
