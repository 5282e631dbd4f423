"""Seeded random instance generators.

Triangulations grow from a tetrahedron by stacking vertices into random faces,
interleaved with random diagonal flips. Vertex-disjoint 4-faces are then
carved out by deleting edges whose two triangles form a quadrilateral.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..embedding import PlaneGraph
from ..errors import GenerationError

MODES = ("triangulation", "with-quads", "ic-drawing")


@dataclass(frozen=True)
class GenSpec:
    n: int
    q: int = 0
    seed: int = 0
    mode: str = "triangulation"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.n < 4:
            raise ValueError("n must be at least 4")
        if self.q < 0 or 4 * self.q > self.n:
            raise ValueError("need 0 <= 4*q <= n")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")


class _Triangulation:
    """Oriented triangle soup with O(1) stacking and flips."""

    def __init__(self, tris=((0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2))):
        self.tris: list[tuple[int, int, int]] = []
        self.where: dict[tuple[int, int], int] = {}
        self.nbrs: dict[int, set[int]] = {}
        for t in tris:
            self._add(tuple(t))
            for x in t:
                self.nbrs.setdefault(x, set()).update(y for y in t if y != x)
        self.n = max(self.nbrs) + 1

    def _add(self, t):
        self.tris.append(t)
        i = len(self.tris) - 1
        a, b, c = t
        self.where[(a, b)] = self.where[(b, c)] = self.where[(c, a)] = i

    def _remove(self, i):
        a, b, c = self.tris[i]
        for e in ((a, b), (b, c), (c, a)):
            del self.where[e]
        last = self.tris.pop()
        if i < len(self.tris):
            self.tris[i] = last
            x, y, z = last
            self.where[(x, y)] = self.where[(y, z)] = self.where[(z, x)] = i

    def stack(self, i):
        a, b, c = self.tris[i]
        x = self.n
        self.n += 1
        self._remove(i)
        for t in ((a, b, x), (b, c, x), (c, a, x)):
            self._add(t)
        self.nbrs[x] = {a, b, c}
        for v in (a, b, c):
            self.nbrs[v].add(x)

    def diagonal(self, u, w):
        """``(p, q)``: apexes of the triangles on directed edges u->w and w->u."""
        t1, t2 = self.tris[self.where[(u, w)]], self.tris[self.where[(w, u)]]
        p = next(x for x in t1 if x not in (u, w))
        q = next(x for x in t2 if x not in (u, w))
        return p, q

    def flip(self, u, w):
        p, q = self.diagonal(u, w)
        if p == q or q in self.nbrs[p] or len(self.nbrs[u]) <= 3 or len(self.nbrs[w]) <= 3:
            return False
        for i in sorted((self.where[(u, w)], self.where[(w, u)]), reverse=True):
            self._remove(i)
        self._add((p, u, q))
        self._add((q, w, p))
        self.nbrs[u].discard(w)
        self.nbrs[w].discard(u)
        self.nbrs[p].add(q)
        self.nbrs[q].add(p)
        return True

    def flip_keeping_degree(self, u, w, low=5):
        """Flip only if no degree drops below ``low`` and no separating triangle appears."""
        p, q = self.diagonal(u, w)
        if len(self.nbrs[u]) <= low or len(self.nbrs[w]) <= low:
            return False
        if p == q or q in self.nbrs[p] or (self.nbrs[p] & self.nbrs[q]) != {u, w}:
            return False
        return self.flip(u, w)

    def random_edge(self, rng):
        a, b, c = self.tris[rng.randrange(len(self.tris))]
        return ((a, b), (b, c), (c, a))[rng.randrange(3)]


def _grow(n: int, rng: random.Random, flips_per_vertex: int = 2) -> _Triangulation:
    t = _Triangulation()
    while t.n < n:
        t.stack(rng.randrange(len(t.tris)))
        for _ in range(flips_per_vertex):
            t.flip(*t.random_edge(rng))
    for _ in range(n):
        t.flip(*t.random_edge(rng))
    return t


def random_triangulation(n: int, rng: random.Random, flips_per_vertex: int = 2) -> PlaneGraph:
    return PlaneGraph.from_faces(_grow(n, rng, flips_per_vertex).tris)


def geodesic_faces(level: int) -> list[tuple[int, int, int]]:
    """Icosahedron with every triangle split into four, ``level`` times over."""
    up, lo = [1, 2, 3, 4, 5], [6, 7, 8, 9, 10]
    tris = []
    for i in range(5):
        j = (i + 1) % 5
        tris += [(0, up[i], up[j]), (up[j], up[i], lo[i]), (lo[i], lo[j], up[j]), (11, lo[j], lo[i])]
    n = 12
    for _ in range(level):
        mid: dict[frozenset, int] = {}

        def m(a, b):
            nonlocal n
            key = frozenset((a, b))
            if key not in mid:
                mid[key] = n
                n += 1
            return mid[key]

        out = []
        for a, b, c in tris:
            ab, bc, ca = m(a, b), m(b, c), m(c, a)
            out += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
        tris = out
    return tris


def gen_dense(level: int, q: int, seed: int, flips: int | None = None) -> PlaneGraph:
    """Minimum degree five instance: a shuffled geodesic sphere with ``q`` carved 4-faces.

    Flips never push a degree below five nor create a separating triangle,
    so the colorer has to use the configurations around degree-5 vertices.
    """
    rng = random.Random(seed)
    t = _Triangulation(geodesic_faces(level))
    for _ in range(len(t.tris) if flips is None else flips):
        t.flip_keeping_degree(*t.random_edge(rng))
    faces, _ = _carve(t, q, rng, False)
    return PlaneGraph.from_faces(faces)


def _carve(t: _Triangulation, q: int, rng: random.Random, separable_diagonals: bool):
    used: set[int] = set()
    quads = []
    gone: set[int] = set()
    for _ in range(10 * q):
        if len(quads) == q:
            break
        u, w = t.random_edge(rng)
        i, j = t.where[(u, w)], t.where[(w, u)]
        if i in gone or j in gone:
            continue
        p, r = t.diagonal(u, w)
        if p == r or used & {u, w, p, r}:
            continue
        if separable_diagonals and r in t.nbrs[p]:
            continue
        used |= {u, w, p, r}
        gone |= {i, j}
        quads.append((u, r, w, p))
    if len(quads) < q:
        raise GenerationError(f"placed only {len(quads)} of {q} disjoint 4-faces", achieved=len(quads))
    faces = [tri for k, tri in enumerate(t.tris) if k not in gone] + quads
    return faces, quads


def carve_quads(g: PlaneGraph, q: int, rng: random.Random, *,
                separable_diagonals: bool = False) -> list[tuple[int, int, int, int]]:
    """Delete up to ``q`` edges of ``g`` so their triangle pairs become vertex-disjoint 4-faces.

    With ``separable_diagonals`` the opposite corners of each new 4-face must
    be non-adjacent, so that both diagonals can later be drawn as a crossing.
    """
    used: set[int] = set()
    quads = []
    for _ in range(10 * q):
        if len(quads) == q:
            break
        e = rng.choice(g.edges())[0]
        f1, f2 = g.face_of_dart(2 * e), g.face_of_dart(2 * e + 1)
        if f1.size != 3 or f2.size != 3:
            continue
        u, w = g.tail(2 * e), g.head(2 * e)
        a = (set(f1.vertices) - {u, w}).pop()
        b = (set(f2.vertices) - {u, w}).pop()
        if a == b or used & {u, w, a, b}:
            continue
        if separable_diagonals and g.adjacent(a, b):
            continue
        g.delete_edge(e)
        used |= {u, w, a, b}
        quads.append((u, a, w, b))
    if len(quads) < q:
        raise GenerationError(f"placed only {len(quads)} of {q} disjoint 4-faces", achieved=len(quads))
    return quads


def gen_instance(spec: GenSpec):
    """A :class:`PlaneGraph`, or an ``ICDrawing`` in ``ic-drawing`` mode."""
    rng = random.Random(spec.seed)
    t = _grow(spec.n, rng)
    if spec.mode == "triangulation":
        return PlaneGraph.from_faces(t.tris)
    faces, _ = _carve(t, spec.q, rng, spec.mode == "ic-drawing")
    g = PlaneGraph.from_faces(faces)
    if spec.mode == "with-quads":
        return g
    from ..planarize import ICDrawing

    dummies = []
    for f in [f for f in g.faces() if f.size == 4]:
        cur = g.face_containing(f.vertices)
        dummies.append(g.insert_vertex_in_face(cur))
    return ICDrawing(g, frozenset(dummies))


def gen_big_faces(n: int, count: int, max_face: int, seed: int) -> PlaneGraph:
    """Triangulation with ``count`` vertex-disjoint faces of size 4..``max_face``.

    The first big face is grown to exactly ``max_face`` when possible.
    """
    rng = random.Random(seed)
    g = random_triangulation(n, rng)
    used: set[int] = set()
    made = 0
    for attempt in range(50 * count):
        if made == count:
            break
        f = rng.choice(g.faces())
        if f.size != 3 or used & f.vertex_set():
            continue
        target = max_face if made == 0 else rng.randint(4, max_face)
        region = set(f.vertices)
        seed_dart = f.darts[0]
        while g.face_of_dart(seed_dart).size < target:
            cur = g.face_of_dart(seed_dart)
            options = []
            for d in cur.darts:
                t = _triangles_of_face_pair(g, d)
                if t is not None and t not in region and t not in used:
                    options.append(d)
            if not options:
                break
            d = rng.choice(options)
            region.add(_triangles_of_face_pair(g, d))
            if d == seed_dart:
                seed_dart = g.rot_next(d ^ 1)
            g.delete_edge(d >> 1)
        used |= region
        made += 1
    if made < count:
        raise GenerationError(f"placed only {made} of {count} big faces", achieved=made)
    return g


def _triangles_of_face_pair(g: PlaneGraph, d: int):
    """Apex of the triangle across dart ``d`` from its face, if it is a triangle."""
    other = g.face_of_dart(d ^ 1)
    if other.size != 3:
        return None
    rest = set(other.vertices) - {g.tail(d), g.head(d)}
    return rest.pop() if len(rest) == 1 else None


def corpus_specs(count: int, lo: int = 10, hi: int = 300, seed: int = 0) -> list[GenSpec]:
    """Deterministic mix of plain triangulations and instances with up to n/10 4-faces."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(lo, hi)
        q = rng.randint(0, n // 10)
        out.append(GenSpec(n, q, seed * 1_000_003 + i, "with-quads" if q else "triangulation"))
    return out


def corpus(count: int, lo: int = 10, hi: int = 300, seed: int = 0):
    """Yield ``(spec, graph)``; specs whose 4-faces do not fit are retried with fewer."""
    for spec in corpus_specs(count, lo, hi, seed):
        while True:
            try:
                yield spec, gen_instance(spec)
                break
            except GenerationError as exc:
                spec = GenSpec(spec.n, exc.achieved, spec.seed, "with-quads" if exc.achieved else "triangulation")
