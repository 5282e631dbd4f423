from collections import Counter
from pathlib import Path

import pytest

from iccolor.embedding import validate_hypotheses
from iccolor.errors import DrawingError
from iccolor.planarize import (CrossingMap, ICDrawing, color_drawing, lift_coloring, planarize,
                               restore_edges)
from iccolor.reducer import color
from iccolor.testkit.generate import GenSpec, gen_instance
from iccolor.testkit.shapes import cube, tetrahedron

FIXTURES = Path(__file__).parent / "fixtures"


def k5():
    return ICDrawing.read(FIXTURES / "k5.icd")


def test_k5_abstract_graph_is_k5():
    edges = k5().abstract_edges()
    assert edges == sorted((a, b) for a in range(5) for b in range(a + 1, 5))


def test_k5_planarize():
    d = k5()
    planar, cmap = planarize(d)
    assert validate_hypotheses(planar).ok
    assert 5 not in planar
    assert [f.size for f in planar.faces()].count(4) == 1
    assert sorted(restore_edges(planar, cmap)) == d.abstract_edges()


def test_k5_color_drawing_uses_five_colors():
    col = color_drawing(k5())
    assert sorted(col) == [0, 1, 2, 3, 4]
    assert len(set(col.values())) == 5


def test_map_round_trip():
    planar, cmap = planarize(k5())
    text = cmap.dumps(planar)
    again = CrossingMap.loads(text)
    assert again.crossings == cmap.crossings
    assert again.added_edges == cmap.added_edges
    assert text.startswith("map 1\nc 5:")


@pytest.mark.parametrize("seed", range(5))
def test_generated_drawings_round_trip(seed):
    d = gen_instance(GenSpec(40 + 10 * seed, 3, seed, "ic-drawing"))
    d.validate()
    planar, cmap = planarize(d)
    assert Counter(restore_edges(planar, cmap)) == Counter(d.abstract_edges())
    col = lift_coloring(d, cmap, color(planar).coloring, planar)
    assert all(col[u] != col[w] for u, w in d.abstract_edges())


def test_lift_rejects_invalid_input():
    d = k5()
    planar, cmap = planarize(d)
    with pytest.raises(ValueError):
        lift_coloring(d, cmap, {v: 1 for v in planar.vertices}, planar)


def test_dependent_crossings_rejected():
    # crossings inside two adjacent cube faces share end-vertices 0 and 1
    g = cube()
    first, second = [f for f in g.faces() if {0, 1} <= f.vertex_set()]
    g.insert_vertex_in_face(first, 8)
    g.insert_vertex_in_face(g.face_containing(second.vertices), 9)
    with pytest.raises(DrawingError, match="not independent"):
        ICDrawing(g, frozenset({8, 9})).validate()


def test_dummy_degree_checked():
    with pytest.raises(DrawingError, match="degree 3"):
        ICDrawing(tetrahedron(), frozenset({0})).validate()
