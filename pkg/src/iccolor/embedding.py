"""Plane multigraphs stored as rotation systems.

Every edge ``k`` owns the two darts ``2k`` and ``2k + 1`` (``twin(d) = d ^ 1``).
Each vertex keeps the counterclockwise cyclic order of its outgoing darts.
Faces are never stored; they are traced with the single convention

    next(d) = rot_next(twin(d))

i.e. walk along ``d``, turn around, and take the dart that follows the
reversed dart in the rotation of the vertex reached. A face is identified
by its smallest dart and its boundary starts at that dart, so identical
rotation systems always produce identical face ids.

Face walks are cached. A surgery only evicts the walks passing through the
vertices whose rotation it touched, so local edits stay local.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DisconnectedError, EmbeddingError, FormatError, LoopError


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[int, ...]
    vertices: tuple[int, ...]  # vertices[i] is the tail of darts[i]

    @property
    def size(self) -> int:
        return len(self.darts)

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def has_consecutive(self, a: int, b: int) -> bool:
        k = len(self.vertices)
        for i in range(k):
            x, y = self.vertices[i], self.vertices[(i + 1) % k]
            if (x == a and y == b) or (x == b and y == a):
                return True
        return False


class PlaneGraph:
    def __init__(self) -> None:
        self._rot: dict[int, list[int]] = {}
        self._tail: dict[int, int] = {}
        self._pos: dict[int, int] = {}
        self._next_edge = 0
        self._dart_face: dict[int, Face] = {}
        self._vertex_faces: dict[int, set[Face]] = {}
        self._faces: list[Face] | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rotation(cls, rotation: Mapping[int, Sequence[int]]) -> "PlaneGraph":
        """Build from ``{v: [neighbors in ccw order]}``.

        Parallel edges are listed with multiplicity. Their dart pairing is not
        recoverable from the lists alone, so every planar-compatible pairing
        is tried until the result has genus 0.
        """
        for u, nbrs in rotation.items():
            for x in nbrs:
                if x == u:
                    raise FormatError(f"loop at vertex {u}")
                if x not in rotation:
                    raise FormatError(f"vertex {u} lists unknown neighbor {x}")
        occ: dict[tuple[int, int], list[int]] = {}
        for u in sorted(rotation):
            for i, x in enumerate(rotation[u]):
                occ.setdefault((u, x), []).append(i)
        multi = []
        for (u, x), where in occ.items():
            back = occ.get((x, u), [])
            if len(back) != len(where):
                raise FormatError(f"edge {u}-{x} listed {len(where)} times at {u} but {len(back)} at {x}")
            if u < x and len(where) > 1:
                multi.append((u, x))
        choices = [range(len(occ[key])) for key in multi]
        last_error = None
        for shifts in itertools.islice(itertools.product(*choices), 4096):
            shift = dict(zip(multi, shifts))
            g = cls._build(rotation, occ, shift)
            comps = g.components()
            if g.num_vertices - g.num_edges + g.num_faces == 2 * len(comps) or not multi:
                return g
            last_error = "no planar pairing of parallel edges"
        raise FormatError(last_error or "no planar pairing of parallel edges")

    @classmethod
    def _build(cls, rotation, occ, shift) -> "PlaneGraph":
        g = cls()
        dart_at: dict[tuple[int, int], int] = {}
        for u in sorted(rotation):
            for i, x in enumerate(rotation[u]):
                if x < u:
                    continue
                mine = occ[(u, x)]
                theirs = occ[(x, u)]
                k = mine.index(i)
                m = len(mine)
                j = theirs[(shift.get((u, x), 0) - k) % m] if m > 1 else theirs[0]
                e = g._next_edge
                g._next_edge += 1
                dart_at[(u, i)] = 2 * e
                dart_at[(x, j)] = 2 * e + 1
                g._tail[2 * e] = u
                g._tail[2 * e + 1] = x
        for u in sorted(rotation):
            g._set_rot(u, [dart_at[(u, i)] for i in range(len(rotation[u]))])
        return g

    @classmethod
    def from_faces(cls, cycles: Iterable[Sequence[int]]) -> "PlaneGraph":
        """Build a simple plane graph from its consistently oriented face cycles."""
        succ: dict[int, dict[int, int]] = {}
        directed: set[tuple[int, int]] = set()
        for cyc in cycles:
            k = len(cyc)
            for i in range(k):
                u, x, w = cyc[i - 1], cyc[i], cyc[(i + 1) % k]
                if (x, w) in directed:
                    raise EmbeddingError(f"directed edge {x}->{w} used twice")
                directed.add((x, w))
                succ.setdefault(x, {})[u] = w
        for x, w in directed:
            if (w, x) not in directed:
                raise EmbeddingError(f"edge {x}-{w} borders only one face")
        rotation = {}
        for x, nxt in succ.items():
            start = min(nxt)
            order = [start]
            while True:
                y = nxt[order[-1]]
                if y == start:
                    break
                order.append(y)
            if len(order) != len(nxt):
                raise EmbeddingError(f"faces around vertex {x} do not form a single cycle")
            rotation[x] = order
        return cls.from_rotation(rotation)

    def copy(self) -> "PlaneGraph":
        g = PlaneGraph()
        g._rot = {v: list(ds) for v, ds in self._rot.items()}
        g._tail = dict(self._tail)
        g._pos = dict(self._pos)
        g._next_edge = self._next_edge
        g._dart_face = dict(self._dart_face)
        g._vertex_faces = {v: set(fs) for v, fs in self._vertex_faces.items()}
        g._faces = self._faces
        return g

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self._rot)

    def __contains__(self, v) -> bool:
        return v in self._rot

    @property
    def vertices(self) -> list[int]:
        return sorted(self._rot)

    @property
    def num_vertices(self) -> int:
        return len(self._rot)

    @property
    def num_edges(self) -> int:
        return len(self._tail) // 2

    @property
    def num_faces(self) -> int:
        return len(self.faces())

    def darts(self) -> list[int]:
        return sorted(self._tail)

    def darts_at(self, v: int) -> list[int]:
        return list(self._rot[v])

    def tail(self, d: int) -> int:
        return self._tail[d]

    def head(self, d: int) -> int:
        return self._tail[d ^ 1]

    @staticmethod
    def twin(d: int) -> int:
        return d ^ 1

    def rot_next(self, d: int) -> int:
        ds = self._rot[self._tail[d]]
        return ds[(self._pos[d] + 1) % len(ds)]

    def rot_prev(self, d: int) -> int:
        ds = self._rot[self._tail[d]]
        return ds[self._pos[d] - 1]

    def degree(self, v: int) -> int:
        return len(self._rot[v])

    def neighbors(self, v: int) -> list[int]:
        """Neighbors in rotation order, with multiplicity."""
        return [self._tail[d ^ 1] for d in self._rot[v]]

    def neighbor_set(self, v: int) -> set[int]:
        return {self._tail[d ^ 1] for d in self._rot[v]}

    def adjacent(self, u: int, w: int) -> bool:
        return any(self._tail[d ^ 1] == w for d in self._rot[u])

    def edges(self) -> list[tuple[int, int, int]]:
        """``(edge id, u, w)`` with ``u`` the tail of the even dart."""
        return [(d >> 1, self._tail[d], self._tail[d ^ 1]) for d in sorted(self._tail) if d % 2 == 0]

    def darts_between(self, u: int, w: int) -> list[int]:
        return [d for d in self._rot[u] if self._tail[d ^ 1] == w]

    def rotation(self) -> dict[int, list[int]]:
        return {v: self.neighbors(v) for v in sorted(self._rot)}

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in sorted(self._rot):
            if s in seen:
                continue
            seen.add(s)
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.neighbor_set(x):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    # -- faces ------------------------------------------------------------

    def faces(self) -> list[Face]:
        """All faces ordered by id."""
        if self._faces is None:
            out = {}
            for d in self._tail:
                f = self.face_of_dart(d)
                out[f.id] = f
            self._faces = [out[k] for k in sorted(out)]
        return self._faces

    def face(self, fid: int) -> Face:
        f = self.face_of_dart(fid)
        if f.id != fid:
            raise KeyError(f"no face with id {fid}")
        return f

    def face_of_dart(self, d: int) -> Face:
        f = self._dart_face.get(d)
        if f is None:
            f = self._walk(d)
        return f

    def faces_at(self, v: int) -> list[Face]:
        """Faces incident with ``v``, one per outgoing dart, in rotation order."""
        return [self.face_of_dart(d) for d in self._rot[v]]

    def quads_at(self, v: int) -> list[Face]:
        out, seen = [], set()
        for f in self.faces_at(v):
            if f.size == 4 and f.id not in seen:
                seen.add(f.id)
                out.append(f)
        return out

    def quad_of(self, v: int) -> Face | None:
        qs = self.quads_at(v)
        return qs[0] if qs else None

    def link_walk(self, v: int) -> list[int]:
        """Boundary walk left behind if ``v`` were deleted (its cyclic neighbors in order)."""
        ds = self._rot[v]
        walk: list[int] = []
        for k in range(len(ds) - 1, -1, -1):
            f = self.face_of_dart(ds[k])
            i = f.darts.index(ds[k])
            walk.extend((f.vertices[i:] + f.vertices[:i])[1:-1])
        return walk

    def _walk(self, d: int) -> Face:
        rot, pos, tail = self._rot, self._pos, self._tail
        walk = [d]
        limit = len(tail)
        x = d ^ 1
        while True:
            ds = rot[tail[x]]
            x = ds[(pos[x] + 1) % len(ds)]
            if x == d:
                break
            walk.append(x)
            if len(walk) > limit:
                raise EmbeddingError("rotation system is not a permutation pair")
            x ^= 1
        k = walk.index(min(walk))
        walk = walk[k:] + walk[:k]
        f = Face(walk[0], tuple(walk), tuple(tail[y] for y in walk))
        for y in walk:
            self._dart_face[y] = f
        for v in set(f.vertices):
            self._vertex_faces.setdefault(v, set()).add(f)
        return f

    def _dirty(self, *vs: int) -> None:
        """Forget the cached faces through ``vs``."""
        self._faces = None
        for v in vs:
            for f in self._vertex_faces.pop(v, ()):
                for y in f.darts:
                    if self._dart_face.get(y) is f:
                        del self._dart_face[y]
                for u in set(f.vertices):
                    if u != v:
                        self._vertex_faces.get(u, set()).discard(f)

    def _set_rot(self, v: int, ds: list[int]) -> None:
        self._dirty(v)
        self._rot[v] = ds
        for i, d in enumerate(ds):
            self._pos[d] = i

    # -- surgery ----------------------------------------------------------

    def add_vertex(self, v: int | None = None) -> int:
        if v is None:
            v = max(self._rot, default=-1) + 1
        if v in self._rot:
            raise EmbeddingError(f"vertex {v} already exists")
        self._rot[v] = []
        return v

    def delete_edge(self, e: int) -> None:
        for d in (2 * e, 2 * e + 1):
            v = self._tail.pop(d)
            ds = self._rot[v]
            ds.remove(d)
            self._pos.pop(d)
            self._set_rot(v, ds)

    def delete_vertex(self, v: int) -> None:
        for d in list(self._rot[v]):
            if d in self._tail:
                self.delete_edge(d >> 1)
        self._dirty(v)
        del self._rot[v]

    def add_edge_in_face(self, face: Face, u: int, w: int,
                         corner_u: int | None = None, corner_w: int | None = None) -> int:
        """Split ``face`` by a new edge ``u-w``; returns the edge id.

        ``corner_u`` / ``corner_w`` index the boundary position to use when a
        vertex occurs more than once on the face (default: first occurrence).
        """
        if u == w:
            raise LoopError(f"edge {u}-{w} would be a loop")
        i = face.vertices.index(u) if corner_u is None else corner_u
        j = face.vertices.index(w) if corner_w is None else corner_w
        if face.vertices[i] != u or face.vertices[j] != w:
            raise EmbeddingError("corner does not belong to the requested vertex")
        e = self._next_edge
        self._next_edge += 1
        a, b = 2 * e, 2 * e + 1
        self._tail[a] = u
        self._tail[b] = w
        for new, at in ((a, face.darts[i]), (b, face.darts[j])):
            v = self._tail[at]
            ds = self._rot[v]
            ds.insert(self._pos[at], new)
            self._set_rot(v, ds)
        return e

    def contract_edge(self, e: int, keep: int) -> None:
        """Contract edge ``e``; the merged vertex keeps the id ``keep``."""
        a = 2 * e if self._tail[2 * e] == keep else 2 * e + 1
        if self._tail[a] != keep:
            raise EmbeddingError(f"vertex {keep} is not an end of edge {e}")
        b = a ^ 1
        gone = self._tail[b]
        if gone == keep:
            raise LoopError(f"edge {e} is a loop")
        if len(self.darts_between(keep, gone)) > 1:
            raise LoopError(f"contracting {keep}-{gone} turns a parallel edge into a loop")
        rw = self._rot[gone]
        k = self._pos[b]
        seq = rw[k + 1:] + rw[:k]
        ru = self._rot[keep]
        ia = self._pos[a]
        self._dirty(gone)
        for d in seq:
            self._tail[d] = keep
        self._set_rot(keep, ru[:ia] + seq + ru[ia + 1:])
        del self._tail[a], self._tail[b], self._pos[a], self._pos[b]
        del self._rot[gone]

    def insert_vertex_in_face(self, face: Face, v: int | None = None) -> int:
        """Add a new vertex inside ``face`` joined to every boundary corner."""
        x = self.add_vertex(v)
        spokes = []
        for d in face.darts:
            e = self._next_edge
            self._next_edge += 1
            b = self._tail[d]
            self._tail[2 * e] = b
            self._tail[2 * e + 1] = x
            ds = self._rot[b]
            ds.insert(self._pos[d], 2 * e)
            self._set_rot(b, ds)
            spokes.append(2 * e + 1)
        self._set_rot(x, spokes[::-1])
        return x

    def suppress_2faces(self) -> int:
        """Delete one edge of every 2-face bounded by two distinct edges."""
        removed = 0
        while True:
            for f in self.faces():
                if f.size == 2 and f.darts[0] >> 1 != f.darts[1] >> 1:
                    self.delete_edge(max(f.darts[0] >> 1, f.darts[1] >> 1))
                    removed += 1
                    break
            else:
                return removed

    def face_containing(self, vs: Iterable[int]) -> Face | None:
        """Largest face containing all of ``vs`` (lowest id on ties)."""
        vs = set(vs)
        if not vs:
            return None
        best = None
        for f in sorted(set(self.faces_at(min(vs))), key=lambda f: f.id):
            if vs <= f.vertex_set() and (best is None or f.size > best.size):
                best = f
        return best

    def identify_vertices(self, vs: Sequence[int]) -> int:
        """Merge vertices lying on a common face; the result keeps ``vs[0]``.

        Pairs are merged one at a time through an auxiliary edge drawn inside
        the largest face holding both, which keeps the embedding planar.
        Resulting 2-faces are left for :meth:`suppress_2faces`.
        """
        rep = vs[0]
        if self.face_containing(vs) is None:
            raise EmbeddingError(f"vertices {list(vs)} do not share a face")
        for other in vs[1:]:
            if other == rep:
                continue
            if self.adjacent(rep, other):
                raise LoopError(f"identifying adjacent vertices {rep} and {other}")
            f = self.face_containing((rep, other))
            if f is None:
                raise EmbeddingError(f"vertices {rep} and {other} do not share a face")
            e = self.add_edge_in_face(f, rep, other)
            self.contract_edge(e, keep=rep)
        return rep

    def triangulate_face(self, face: Face, apex: int | None = None) -> list[int]:
        """Fan-triangulate ``face`` from ``apex`` (default: lowest id vertex).

        With the default policy, apexes whose fan would duplicate an existing
        edge are skipped in favour of the next lowest id; if every apex
        collides the lowest one is used anyway.
        """
        if face.size <= 3:
            return []
        if apex is None:
            apex = self._fan_apex(face)
        i = face.vertices.index(apex)
        cur = face.darts[i]
        added = []
        while True:
            f = self.face_of_dart(cur)
            if f.size <= 3:
                return added
            s = f.darts.index(cur)
            j = (s + 2) % f.size
            e = self.add_edge_in_face(f, apex, f.vertices[j], corner_u=s, corner_w=j)
            added.append(e)
            cur = 2 * e

    def _fan_apex(self, face: Face) -> int:
        verts = face.vertices
        k = len(verts)
        for a in sorted(set(verts)):
            if verts.count(a) > 1:
                continue
            i = verts.index(a)
            targets = [verts[(i + t) % k] for t in range(2, k - 1)]
            if a in targets or len(set(targets)) != len(targets):
                continue
            if any(self.adjacent(a, t) for t in targets):
                continue
            return a
        return min(verts)


# -- module level operations ----------------------------------------------


def trace_faces(rotation: Mapping[int, Sequence[int]]) -> list[Face]:
    """Trace the faces of a connected rotation system."""
    g = PlaneGraph.from_rotation(rotation)
    comps = g.components()
    if len(comps) > 1:
        raise DisconnectedError(comps)
    return g.faces()


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return "admissible" if self.ok else "\n".join(self.violations)


def validate_hypotheses(g: PlaneGraph) -> ValidationReport:
    """Check faces of size 3/4 only, vertex-disjoint 4-faces, loopless, connected, genus 0."""
    rep = ValidationReport()
    for d in g.darts():
        if d % 2 == 0 and g.tail(d) == g.head(d):
            rep.violations.append(f"loop at vertex {g.tail(d)}")
    for v in g.vertices:
        if g.degree(v) == 0:
            rep.violations.append(f"isolated vertex {v}")
    comps = g.components()
    if len(comps) > 1:
        rep.violations.append(f"graph is disconnected ({len(comps)} components)")
    elif g.num_vertices:
        chi = g.num_vertices - g.num_edges + g.num_faces
        if chi != 2:
            rep.violations.append(f"embedding is not planar (V-E+F = {chi})")
    owner: dict[int, int] = {}
    for f in g.faces():
        if f.size not in (3, 4):
            rep.violations.append(f"face f{f.id} has size {f.size}")
        elif len(f.vertex_set()) != f.size:
            rep.violations.append(f"face f{f.id} boundary repeats a vertex")
        if f.size == 4:
            clash = {}
            for v in f.vertex_set():
                if v in owner:
                    clash.setdefault(owner[v], []).append(v)
                else:
                    owner[v] = f.id
            for other, vs in sorted(clash.items()):
                rep.violations.append(
                    f"4-faces share vertices: f{other} and f{f.id} share {sorted(vs)}")
    return rep


def cyclic_neighbors(g: PlaneGraph, v: int) -> set[int]:
    if v not in g:
        raise KeyError(f"unknown vertex {v}")
    out: set[int] = set()
    for f in g.faces_at(v):
        out.update(f.vertices)
    out.discard(v)
    return out


def cyclic_degree(g: PlaneGraph, v: int) -> int:
    return len(cyclic_neighbors(g, v))


def cyclic_adjacency(g: PlaneGraph) -> dict[int, set[int]]:
    """The graph joining every two distinct vertices that share a face."""
    adj: dict[int, set[int]] = {v: set() for v in g.vertices}
    for f in g.faces():
        vs = f.vertex_set()
        for x in vs:
            adj[x].update(vs)
    for x in adj:
        adj[x].discard(x)
    return adj


def is_valid_cyclic_coloring(g: PlaneGraph, coloring: Mapping[int, int],
                             palette: int | None = None) -> bool:
    for v in g.vertices:
        c = coloring.get(v)
        if c is None:
            return False
        if palette is not None and not 1 <= c <= palette:
            return False
    for f in g.faces():
        seen = {}
        for v in f.vertices:
            c = coloring[v]
            if seen.get(c, v) != v:
                return False
            seen[c] = v
    return True


# -- vertex taxonomy ------------------------------------------------------


@dataclass(frozen=True)
class VertexClass:
    degree: int
    incident_4faces: tuple[int, ...]
    pentagonal: bool
    solitary: bool | None = None  # only meaningful for pentagonal vertices
    close_faces: tuple[int, ...] = ()


def _is_pentagonal(g: PlaneGraph, v: int) -> bool:
    if g.degree(v) != 5 or g.quads_at(v):
        return False
    if any(f.size != 3 for f in g.faces_at(v)):
        return False
    return all(g.quads_at(u) for u in g.neighbors(v))


def _close_faces(g: PlaneGraph, v: int) -> list[Face]:
    nb = g.neighbors(v)
    out: dict[int, Face] = {}
    for i in range(len(nb)):
        a, b = nb[i], nb[(i + 1) % len(nb)]
        for f in g.quads_at(a):
            if f.has_consecutive(a, b):
                out[f.id] = f
    return [out[k] for k in sorted(out)]


def classify(g: PlaneGraph) -> dict[int, VertexClass]:
    out = {}
    for v in g.vertices:
        quads = tuple(f.id for f in g.quads_at(v))
        if _is_pentagonal(g, v):
            close = tuple(f.id for f in _close_faces(g, v))
            out[v] = VertexClass(g.degree(v), quads, True, not close, close)
        else:
            out[v] = VertexClass(g.degree(v), quads, False)
    return out


def is_pentagonal(g: PlaneGraph, v: int) -> bool:
    return _is_pentagonal(g, v)


def face_proximity(g: PlaneGraph, v: int, face: Face) -> str:
    """``"close"`` or ``"distant"`` for a 4-face near pentagonal ``v``."""
    if not _is_pentagonal(g, v):
        raise EmbeddingError(f"vertex {v} is not pentagonal")
    if face.size != 4 or not (face.vertex_set() & g.neighbor_set(v)):
        raise EmbeddingError(f"face f{face.id} is not a 4-face incident with a neighbor of {v}")
    return "close" if any(f.id == face.id for f in _close_faces(g, v)) else "distant"


def across(g: PlaneGraph, x: int, y: int, z: int) -> Face | None:
    """Face on the far side of edge ``x-y`` from the triangle ``x y z``."""
    for d in g.darts_between(x, y):
        f1, f2 = g.face_of_dart(d), g.face_of_dart(d ^ 1)
        if f1.size == 3 and z in f1.vertices:
            return f2
        if f2.size == 3 and z in f2.vertices:
            return f1
    return None


def apex_across(g: PlaneGraph, x: int, y: int, z: int) -> int | None:
    """Third vertex of the triangle sharing edge ``x-y`` with triangle ``x y z``."""
    f = across(g, x, y, z)
    if f is None or f.size != 3:
        return None
    rest = set(f.vertices) - {x, y}
    return rest.pop() if len(rest) == 1 else None


def wings(g: PlaneGraph, v: int, w: int) -> tuple[int | None, int | None]:
    """Common neighbors of ``w`` with the two neighbors of ``v`` flanking it."""
    nb = g.neighbors(v)
    i = nb.index(w)
    a, b = nb[i - 1], nb[(i + 1) % len(nb)]
    return apex_across(g, w, a, v), apex_across(g, w, b, v)


def sidedness(g: PlaneGraph, v: int, w: int) -> str:
    """Classify neighbor ``w`` of pentagonal ``v`` against its distant 4-face."""
    if not _is_pentagonal(g, v) or w not in g.neighbor_set(v):
        raise EmbeddingError(f"{w} is not a neighbor of pentagonal vertex {v}")
    f = g.quad_of(w)
    if f is None:
        raise EmbeddingError(f"vertex {w} is not on a 4-face")
    if face_proximity(g, v, f) != "distant":
        raise EmbeddingError(f"4-face of {w} is close to {v}")
    on = sum(1 for x in wings(g, v, w) if x is not None and x in f.vertex_set())
    return ("double-sided", "one-sided", "degree-five-case")[on]


def face_neighbors(face: Face, w: int) -> tuple[int, int]:
    """The two neighbors of ``w`` along the boundary of ``face``."""
    k = face.size
    i = face.vertices.index(w)
    return face.vertices[i - 1], face.vertices[(i + 1) % k]


def parallel_groups(g: PlaneGraph) -> list[tuple[int, int, list[int]]]:
    out = []
    for u in g.vertices:
        cnt = Counter(g.neighbors(u))
        for x, c in sorted(cnt.items()):
            if c > 1 and u < x:
                out.append((u, x, [d >> 1 for d in g.darts_between(u, x)]))
    return out
