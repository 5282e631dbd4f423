import random
from dataclasses import replace

import pytest

from iccolor.embedding import (cyclic_adjacency, is_valid_cyclic_coloring, validate_hypotheses)
from iccolor.errors import ExtensionError, InvalidInstanceError
from iccolor.reducer import (KINDS, ROLES, ConfigurationMatch, apply_reduction, color,
                             color_degenerate, extend_coloring, find_all_matches,
                             find_configuration, find_matches, verify_match)
from iccolor.testkit.fixtures import FIXTURES, _carved, _Triangulation, double_octahedron
from iccolor.testkit.generate import GenSpec, gen_big_faces, gen_instance, geodesic_faces
from iccolor.testkit.shapes import (cube, icosahedron, octahedron, octahedron_with_apex,
                                    pinwheel, prism, tetrahedron)

# what each extension step must find: (cyclic degree, uncolored, repeated colors)
SCRIPTS = {
    "SepCycle2": [],
    "SepCycle3": [],
    "LowDegree": [(5, 0, 1)],
    "NonPentagonalFive": [(5, 0, 1)],
    "SquareFiveFive": [(6, 1, 1), (6, 0, 2)],
    "CloseFiveOnQuad": [(6, 1, 1), (5, 0, 1)],
    "CloseSixOnQuad": [(7, 1, 2), (5, 0, 1)],
    "Pentagon65": [(6, 1, 1), (7, 1, 2), (5, 0, 1)],
    "Pentagon66": [(7, 1, 2), (7, 1, 2), (5, 0, 1)],
}

# what the fixtures actually show, frozen: (cyclic degree, uncolored, repeats, distinct)
OBSERVED = {
    "LowDegree": [(5, 0, 2, 3)],
    "NonPentagonalFive": [(5, 0, 2, 3)],
    "SquareFiveFive": [(6, 1, 2, 3), (6, 0, 3, 3)],
    "CloseFiveOnQuad": [(6, 1, 1, 4), (5, 0, 2, 3)],
    "CloseSixOnQuad": [(7, 1, 2, 4), (5, 0, 1, 4)],
    "Pentagon65": [(6, 1, 1, 4), (7, 1, 2, 4), (5, 0, 1, 4)],
    "Pentagon66": [(7, 1, 2, 4), (7, 1, 2, 4), (5, 0, 1, 4)],
}

SIZES = {"SepCycle2": 10, "SepCycle3": 7, "LowDegree": 12, "NonPentagonalFive": 12,
         "SquareFiveFive": 42}


def test_kinds_and_roles():
    assert set(KINDS) == set(ROLES) == set(FIXTURES)
    assert len(KINDS) == 9


@pytest.mark.parametrize("kind", KINDS)
def test_fixture_round_trip(kind):
    g = FIXTURES[kind]()
    assert validate_hypotheses(g).ok
    assert g.num_vertices == SIZES.get(kind, 162)
    m = find_matches(g, kind)[0]
    assert verify_match(g, m) == []
    reduced, plan = apply_reduction(g, m)
    assert all(validate_hypotheses(h).ok for h in reduced)
    assert all(h.num_vertices < g.num_vertices for h in reduced)
    assert [(s.cyclic_degree, s.uncolored, s.repeats) for s in plan.script] == SCRIPTS[kind]
    seen = []
    col = extend_coloring(g, plan, [color(h).coloring for h in reduced], seen)
    assert is_valid_cyclic_coloring(g, col, 5)
    if kind.startswith("SepCycle"):
        assert len(reduced) == 2 and plan.cycle
    else:
        got = [(s.cyclic_degree, s.uncolored, s.repeats, s.distinct) for s in seen]
        assert got == OBSERVED[kind]
        for s, step in zip(seen, plan.script):
            assert s.repeats >= step.repeats and s.distinct <= 4


def test_match_accessors():
    m = find_matches(pinwheel(), "LowDegree")[0]
    assert tuple(m.roles()) == ROLES["LowDegree"]
    assert m["center"] == m.bind[0]
    assert -1 not in m.vertices
    with pytest.raises(KeyError):
        m["nonexistent"]


def test_priority_order():
    g = octahedron_with_apex()
    assert find_configuration(g).kind == "SepCycle3"
    assert find_configuration(double_octahedron()).kind == "SepCycle2"
    assert find_configuration(icosahedron()).kind == "NonPentagonalFive"
    m = find_configuration(tetrahedron())
    assert (m.kind, m.bind) == ("LowDegree", (0, -1, -1))


def test_find_configuration_is_first_of_all_matches():
    g = gen_instance(GenSpec(80, 6, 4, "with-quads"))
    ms = find_all_matches(g)
    assert ms and find_configuration(g) == min(ms, key=ConfigurationMatch.key)


def test_verify_rejects_forged_match():
    g = icosahedron()
    m = find_matches(g, "NonPentagonalFive")[0]
    forged = ConfigurationMatch("NonPentagonalFive", (m.bind[0], m.bind[0], m.bind[2]))
    assert verify_match(g, forged)
    wrong_kind = ConfigurationMatch("SquareFiveFive", m.bind + (0,) * 6)
    assert verify_match(g, wrong_kind)


def test_extension_detects_missing_slack():
    g = icosahedron()
    m = find_matches(g, "NonPentagonalFive")[0]
    (h,), plan = apply_reduction(g, m)
    col = color(h).coloring
    step = plan.script[0]
    plan.script[0] = replace(step, repeats=step.repeats + 2)
    with pytest.raises(ExtensionError, match="repeated colors"):
        extend_coloring(g, plan, [col])
    plan.script[0] = replace(step, cyclic_degree=6)
    with pytest.raises(ExtensionError, match="cyclic degree"):
        extend_coloring(g, plan, [col])


@pytest.mark.parametrize("shape", [tetrahedron, octahedron, icosahedron, octahedron_with_apex,
                                   pinwheel, double_octahedron])
def test_color_small_shapes(shape):
    g = shape()
    res = color(g)
    assert is_valid_cyclic_coloring(g, res.coloring, 5)


def test_color_rejects_invalid():
    with pytest.raises(InvalidInstanceError):
        color(prism())
    with pytest.raises(InvalidInstanceError):
        color(cube())


def test_trace_format():
    g = gen_instance(GenSpec(40, 3, 2, "with-quads"))
    res = color(g)
    assert res.steps == len(res.trace) > 0
    for i, line in enumerate(res.trace):
        assert line.startswith(f"step {i}: ")
        assert line.split()[2] in KINDS and "→ n=" in line


def test_color_is_deterministic():
    g = gen_instance(GenSpec(120, 8, 11, "with-quads"))
    assert color(g).coloring == color(g.copy()).coloring


@pytest.mark.parametrize("seed", range(2))
def test_every_match_round_trips(seed):
    """Apply every detected match, not just the first, on carved geodesic spheres."""
    rng = random.Random(seed)
    t = _Triangulation(geodesic_faces(2))
    for _ in range(rng.randint(0, 300)):
        t.flip_keeping_degree(*t.random_edge(rng))
    used, chosen = set(), []
    edges = [(u, w) for (u, w) in t.where if u < w]
    rng.shuffle(edges)
    for u, w in edges:
        p, q = t.diagonal(u, w)
        quad = {u, w, p, q}
        if len(quad) == 4 and not used & quad and rng.random() < 0.5:
            used |= quad
            chosen.append(((u, w), (u, q, w, p)))
    g = _carved(t, chosen)
    matches = find_all_matches(g)
    kinds = {m.kind for m in matches}
    assert len(kinds) >= 3
    for m in matches[::7]:
        assert verify_match(g, m) == []
        reduced, plan = apply_reduction(g, m)
        col = extend_coloring(g, plan, [color(h).coloring for h in reduced])
        assert is_valid_cyclic_coloring(g, col, 5)


def test_low_degree_on_quad_keeps_quad_whole():
    # degree-3 vertices on a 4-face: the hole must be fanned without splitting the 4-face
    hits = 0
    for seed in range(40):
        g = gen_instance(GenSpec(30, 3, seed, "with-quads"))
        for m in find_matches(g, "LowDegree"):
            v = m["center"]
            if g.degree(v) == 3 and g.quad_of(v) is not None:
                hits += 1
                (h,), plan = apply_reduction(g, m)
                assert validate_hypotheses(h).ok
                col = extend_coloring(g, plan, [color(h).coloring])
                assert is_valid_cyclic_coloring(g, col, 5)
    assert hits > 0


@pytest.mark.parametrize("max_face", [4, 5, 6])
def test_color_degenerate_bound(max_face):
    g = gen_big_faces(80, 4, max_face, max_face)
    col = color_degenerate(g)
    adj = cyclic_adjacency(g)
    assert all(col[u] != col[w] for u in adj for w in adj[u])
    assert max(col.values()) <= max_face + 3


def test_color_degenerate_rejects_shared_big_faces():
    with pytest.raises(InvalidInstanceError):
        color_degenerate(cube())
