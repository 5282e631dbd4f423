from pathlib import Path

import pytest

from iccolor.errors import FormatError
from iccolor.formats import (dumps_coloring, dumps_icd, dumps_pg, loads_coloring, loads_icd,
                             loads_pg, read_icd)
from iccolor.testkit.shapes import icosahedron, tetrahedron

FIXTURES = Path(__file__).parent / "fixtures"


def test_pg_round_trip_is_byte_identical():
    text = dumps_pg(icosahedron(), "twelve vertices")
    again = dumps_pg(loads_pg(text), "twelve vertices")
    assert text == again
    assert text.startswith("# twelve vertices\npg 12 30\nv 0:")


def test_pg_round_trip_preserves_faces():
    g = icosahedron()
    h = loads_pg(dumps_pg(g))
    assert [f.vertices for f in g.faces()] == [f.vertices for f in h.faces()]


@pytest.mark.parametrize("text,msg", [
    ("v 0: 1\n", "before header"),
    ("pg 2 1\nv 0: 1\n", "announces 2 vertices"),
    ("pg 2 2\nv 0: 1\nv 1: 0\n", "announces 2 edges"),
    ("pg 1 0\nv 0 1\n", "missing ':'"),
    ("pg 2 1\nv 0: 1\nv 0: 1\n", "listed twice"),
    ("pg 1 0\nw 0:\n", "unknown record"),
    ("", "missing"),
    ("pg 2 1\nv 0: a\nv 1: 0\n", "line 2"),
])
def test_pg_errors(text, msg):
    with pytest.raises(FormatError, match=msg):
        loads_pg(text)


def test_crossing_flag_only_in_icd():
    g = tetrahedron()
    text = dumps_icd(g, [0])
    with pytest.raises(FormatError):
        loads_pg(text)
    h, flags = loads_icd(text)
    assert flags == {0} and h.num_edges == 6


def test_icd_unknown_flag():
    with pytest.raises(FormatError, match="unknown vertices"):
        loads_icd(dumps_pg(tetrahedron()) + "x 9\n")


def test_k5_fixture_file():
    g, flags = read_icd(FIXTURES / "k5.icd")
    assert flags == {5}
    assert g.num_vertices == 6 and g.degree(5) == 4


def test_coloring_round_trip():
    col = {3: 1, 0: 2, 10: 5}
    text = dumps_coloring(col)
    assert text == "v 0 2\nv 3 1\nv 10 5\n"
    assert loads_coloring(text) == col
    with pytest.raises(FormatError):
        loads_coloring("v 1\n")
