import hashlib

import pytest

from iccolor.embedding import is_valid_cyclic_coloring, validate_hypotheses
from iccolor.errors import GenerationError, OracleSizeError
from iccolor.formats import dumps_pg
from iccolor.testkit.generate import (GenSpec, corpus_specs, gen_big_faces, gen_dense,
                                      gen_instance, geodesic_faces)
from iccolor.testkit.oracle import oracle_color
from iccolor.testkit.shapes import (cube, icosahedron, octahedron, octahedron_with_apex,
                                    pinwheel, prism, tetrahedron, triangle)

# cyclic chromatic numbers, frozen from exhaustive search
CHROMATIC = [
    (tetrahedron, 4),
    (octahedron, 3),
    (icosahedron, 4),
    (cube, 4),
    (prism, 6),
    (octahedron_with_apex, 4),
    (triangle, 3),
    (pinwheel, 5),
]


@pytest.mark.parametrize("shape,k", CHROMATIC)
def test_oracle_threshold(shape, k):
    g = shape()
    lo = oracle_color(g, k - 1, max_n=40)
    hi = oracle_color(g, k, max_n=40)
    assert not lo.feasible and lo.witness is None
    assert hi.feasible and is_valid_cyclic_coloring(g, hi.witness, k)


def test_oracle_monotone():
    g = icosahedron()
    feas = [oracle_color(g, k).feasible for k in range(1, 8)]
    assert feas == sorted(feas)


def test_oracle_size_guard(monkeypatch):
    g = pinwheel()
    with pytest.raises(OracleSizeError):
        oracle_color(g, 5)
    monkeypatch.setenv("ICCOLOR_MAX_ORACLE_N", "30")
    assert oracle_color(g, 5).feasible


# sha256 prefixes of the .pg/.icd text, frozen on first generation
FROZEN = {
    GenSpec(50, 5, 1, "with-quads"): "12e7d400cfcb45cd",
    GenSpec(4, 0, 7): "ce16018d37b12921",
    GenSpec(100, 0, 42): "e53a9d14af209cf8",
    GenSpec(30, 3, 5, "ic-drawing"): "0a8753308f982c73",
}


@pytest.mark.parametrize("spec", list(FROZEN))
def test_generator_is_deterministic(spec):
    inst = gen_instance(spec)
    text = inst.dumps() if spec.mode == "ic-drawing" else dumps_pg(inst)
    assert hashlib.sha256(text.encode()).hexdigest()[:16] == FROZEN[spec]


def test_base_is_tetrahedron():
    g = gen_instance(GenSpec(4, 0, 123))
    assert g.num_vertices == 4 and g.num_edges == 6


def test_with_quads_has_exact_quads():
    g = gen_instance(GenSpec(50, 5, 1, "with-quads"))
    assert validate_hypotheses(g).ok
    assert sum(f.size == 4 for f in g.faces()) == 5


@pytest.mark.parametrize("bad", [
    dict(n=3), dict(n=10, q=3), dict(n=10, q=-1), dict(n=10, mode="x"), dict(n=10, seed=-1)])
def test_genspec_rejects(bad):
    with pytest.raises(ValueError):
        GenSpec(**bad)


def test_generation_error_reports_count():
    with pytest.raises(GenerationError) as exc:
        gen_instance(GenSpec(8, 2, 0, "with-quads"))
    assert exc.value.achieved is not None and exc.value.achieved < 2


def test_geodesic_sizes():
    for level, n in [(0, 12), (1, 42), (2, 162)]:
        tris = geodesic_faces(level)
        assert len({v for t in tris for v in t}) == n
        assert len(tris) == 2 * n - 4


def test_dense_has_min_degree_five():
    g = gen_dense(1, 2, 3)
    assert validate_hypotheses(g).ok
    assert min(g.degree(v) for v in g.vertices) >= 4


@pytest.mark.parametrize("max_face", [4, 5, 6])
def test_big_faces(max_face):
    g = gen_big_faces(60, 3, max_face, 9)
    sizes = [f.size for f in g.faces()]
    assert max(sizes) == max_face
    big = [f.vertex_set() for f in g.faces() if f.size > 3]
    assert len(big) == 3
    for i in range(len(big)):
        for j in range(i):
            assert not big[i] & big[j]


def test_corpus_specs_deterministic():
    a, b = corpus_specs(20), corpus_specs(20)
    assert a == b
    assert all(10 <= s.n <= 300 for s in a)
