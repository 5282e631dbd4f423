"""One small instance per configuration kind, for round-trip tests.

Separating cycles and the low-degree cases are built directly. The
configurations that live around a pentagonal vertex are found by a seeded
search: start from a subdivided icosahedron, keep its vertex 0 (degree five)
as the hub, and carve vertex-disjoint 4-faces so that every neighbor of the
hub lies on one. The first carving that produces the wanted configuration
at the hub is returned, so the result is the same on every run.
"""

from __future__ import annotations

import random
from functools import lru_cache

from ..embedding import PlaneGraph
from .generate import _Triangulation, geodesic_faces
from .shapes import icosahedron, octahedron, octahedron_with_apex


def double_octahedron() -> PlaneGraph:
    """Two octahedra glued along edge 0-1, which becomes a separating pair of parallel edges."""
    a = octahedron().rotation()
    b = {v + 10: [x + 10 for x in ns] for v, ns in octahedron().rotation().items()}
    glue = {10: 0, 11: 1}
    b = {glue.get(v, v): [glue.get(x, x) for x in ns] for v, ns in b.items()}
    rot = {}
    for v in sorted(set(a) | set(b)):
        if v in a and v in b:
            other = 1 - v
            ra, rb = a[v], b[v]
            ra = ra[ra.index(other):] + ra[:ra.index(other)]
            rb = rb[rb.index(other):] + rb[:rb.index(other)]
            rot[v] = ra + rb
        else:
            rot[v] = a.get(v) or b[v]
    return PlaneGraph.from_rotation(rot)


def quad_icosahedron() -> PlaneGraph:
    """Icosahedron with edge 0-1 removed: two degree-4 vertices on one 4-face."""
    g = icosahedron()
    e = next(e for e, u, w in g.edges() if {u, w} == {0, 1})
    g.delete_edge(e)
    return g


def _quads_near(t: _Triangulation, hub: int):
    """Edges whose removal makes a 4-face avoiding the hub but touching its neighbors."""
    ring = t.nbrs[hub]
    out = []
    for (u, w) in sorted(t.where):
        if u > w:
            continue
        p, q = t.diagonal(u, w)
        quad = {u, w, p, q}
        if hub in quad or not quad & ring or len(quad) != 4:
            continue
        out.append(((u, w), (u, q, w, p)))
    return out


def _carved(t: _Triangulation, chosen) -> PlaneGraph:
    gone = set()
    quads = []
    for (u, w), quad in chosen:
        gone |= {t.where[(u, w)], t.where[(w, u)]}
        quads.append(quad)
    faces = [tri for k, tri in enumerate(t.tris) if k not in gone] + quads
    return PlaneGraph.from_faces(faces)


@lru_cache(maxsize=None)
def _hub_search(kind: str, level: int = 2, tries: int = 20000, seed: int = 0):
    from ..reducer import find_matches

    t = _Triangulation(geodesic_faces(level))
    hub = 0
    ring = sorted(t.nbrs[hub])
    cands = _quads_near(t, hub)
    rng = random.Random(seed)
    for _ in range(tries):
        chosen, used = [], set()
        covered = set()
        for v in rng.sample(ring, len(ring)):
            if v in covered:
                continue
            opts = [c for c in cands if v in c[1] and not used & set(c[1])]
            if not opts:
                break
            c = rng.choice(opts)
            chosen.append(c)
            used |= set(c[1])
            covered |= set(c[1]) & set(ring)
        else:
            g = _carved(t, chosen)
            ms = [m for m in find_matches(g, kind) if m.bind[0] == hub]
            if ms:
                return g.rotation()
    raise LookupError(f"no {kind} fixture found")


def hub_fixture(kind: str) -> PlaneGraph:
    return PlaneGraph.from_rotation(_hub_search(kind))


@lru_cache(maxsize=None)
def _square_search():
    from ..reducer import find_matches

    t = _Triangulation(geodesic_faces(1))
    for (u, w) in sorted(t.where):
        if u > w:
            continue
        p, q = t.diagonal(u, w)
        g = _carved(t, [((u, w), (u, q, w, p))])
        if find_matches(g, "SquareFiveFive"):
            return g.rotation()
    raise LookupError("no SquareFiveFive fixture found")


def square_fixture() -> PlaneGraph:
    """Once-subdivided icosahedron with one 4-face carrying two adjacent degree-5 vertices."""
    return PlaneGraph.from_rotation(_square_search())


FIXTURES = {
    "SepCycle2": double_octahedron,
    "SepCycle3": octahedron_with_apex,
    "LowDegree": quad_icosahedron,
    "NonPentagonalFive": icosahedron,
    "SquareFiveFive": square_fixture,
    "CloseFiveOnQuad": lambda: hub_fixture("CloseFiveOnQuad"),
    "CloseSixOnQuad": lambda: hub_fixture("CloseSixOnQuad"),
    "Pentagon65": lambda: hub_fixture("Pentagon65"),
    "Pentagon66": lambda: hub_fixture("Pentagon66"),
}
