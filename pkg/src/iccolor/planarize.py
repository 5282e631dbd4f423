"""Drawings with independent crossings and their plane counterparts.

A crossing is encoded as a flagged degree-4 dummy vertex whose rotation
``a b c d`` alternates the two crossing edges ``a-c`` and ``b-d``. Removing
the crossed edges and closing the crossing region gives a plane graph whose
4-faces are exactly the crossings; a cyclic coloring of it is a proper
coloring of the drawn graph and vice versa.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .embedding import PlaneGraph, is_valid_cyclic_coloring, validate_hypotheses
from .errors import DrawingError, FormatError, InvalidInstanceError
from .formats import _lines, dumps_icd, loads_icd


@dataclass
class ICDrawing:
    graph: PlaneGraph
    dummies: frozenset[int]

    @classmethod
    def loads(cls, text: str) -> "ICDrawing":
        g, flags = loads_icd(text)
        return cls(g, frozenset(flags))

    @classmethod
    def read(cls, path) -> "ICDrawing":
        return cls.loads(Path(path).read_text())

    def dumps(self, comment: str | None = None) -> str:
        return dumps_icd(self.graph, self.dummies, comment)

    @property
    def true_vertices(self) -> list[int]:
        return [v for v in self.graph.vertices if v not in self.dummies]

    def crossings(self) -> dict[int, tuple[int, int, int, int]]:
        return {x: tuple(self.graph.neighbors(x)) for x in sorted(self.dummies)}

    def validate(self) -> None:
        """Raise :class:`DrawingError` unless every crossing is a valid, independent one."""
        g = self.graph
        owner: dict[int, int] = {}
        for x in sorted(self.dummies):
            if g.degree(x) != 4:
                raise DrawingError(f"crossing vertex {x} has degree {g.degree(x)}, expected 4")
            ends = g.neighbors(x)
            if len(set(ends)) != 4:
                raise DrawingError(f"crossing vertex {x} repeats an end-vertex")
            for y in ends:
                if y in self.dummies:
                    raise DrawingError(f"crossing vertices {x} and {y} are adjacent")
                if y in owner:
                    raise DrawingError(
                        f"crossings {owner[y]} and {x} are not independent (share end-vertex {y})")
                owner[y] = x

    def abstract_edges(self) -> list[tuple[int, int]]:
        """Edge multiset of the drawn graph, crossed edges included."""
        out = []
        for _, u, w in self.graph.edges():
            if u not in self.dummies and w not in self.dummies:
                out.append((min(u, w), max(u, w)))
        for a, b, c, d in self.crossings().values():
            out += [(min(a, c), max(a, c)), (min(b, d), max(b, d))]
        return sorted(out)


@dataclass(frozen=True)
class Crossing:
    dummy: int
    first: tuple[int, int]
    second: tuple[int, int]
    face: tuple[int, int, int, int]


@dataclass
class CrossingMap:
    crossings: dict[int, Crossing] = field(default_factory=dict)
    added_edges: list[tuple[int, int]] = field(default_factory=list)

    def face_id(self, g: PlaneGraph, dummy: int) -> int:
        want = set(self.crossings[dummy].face)
        for f in g.faces():
            if f.size == 4 and f.vertex_set() == want:
                return f.id
        raise KeyError(dummy)

    def dumps(self, g: PlaneGraph | None = None) -> str:
        lines = [f"map {len(self.crossings)}"]
        for x, c in sorted(self.crossings.items()):
            fid = f" f{self.face_id(g, x)}" if g is not None else ""
            lines.append(f"c {x}: {c.first[0]} {c.first[1]} {c.second[0]} {c.second[1]} "
                         f"face {' '.join(map(str, c.face))}{fid}")
        lines += [f"a {u} {w}" for u, w in self.added_edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "CrossingMap":
        cm = cls()
        for lineno, line in _lines(text):
            tok = line.replace(":", " ").split()
            try:
                if tok[0] == "map":
                    continue
                if tok[0] == "c":
                    x, a, c, b, d = map(int, tok[1:6])
                    face = tuple(map(int, tok[7:11]))
                    cm.crossings[x] = Crossing(x, (a, c), (b, d), face)
                elif tok[0] == "a":
                    cm.added_edges.append((int(tok[1]), int(tok[2])))
                else:
                    raise FormatError(f"line {lineno}: unknown record {tok[0]!r}")
            except (ValueError, IndexError):
                raise FormatError(f"line {lineno}: malformed map record") from None
        return cm


def planarize(drawing: ICDrawing) -> tuple[PlaneGraph, CrossingMap]:
    """Replace every crossing by a 4-face and triangulate everything else."""
    drawing.validate()
    g = drawing.graph.copy()
    cmap = CrossingMap()
    for x in sorted(drawing.dummies):
        a, b, c, d = g.neighbors(x)
        cmap.crossings[x] = Crossing(x, (a, c), (b, d), (a, b, c, d))
        # close each region between consecutive crossing spokes into a triangle
        for k in range(4):
            dk = g.darts_at(x)[k]
            f = g.face_of_dart(dk)
            if f.size > 3:
                i = f.darts.index(dk)
                u, w = f.vertices[(i + 1) % f.size], f.vertices[i - 1]
                g.add_edge_in_face(f, u, w, corner_u=(i + 1) % f.size, corner_w=(i - 1) % f.size)
                cmap.added_edges.append((u, w))
        g.delete_vertex(x)
    quads = {frozenset(c.face) for c in cmap.crossings.values()}
    while True:
        todo = [f for f in g.faces() if f.size > 3 and f.vertex_set() not in quads]
        if not todo:
            break
        f = todo[0]
        for e in g.triangulate_face(f):
            _, u, w = next(t for t in g.edges() if t[0] == e)
            cmap.added_edges.append((u, w))
    report = validate_hypotheses(g)
    if not report.ok:
        raise InvalidInstanceError(report)
    return g, cmap


def restore_edges(planar: PlaneGraph, cmap: CrossingMap) -> list[tuple[int, int]]:
    """Edge multiset of the drawn graph recovered from the plane graph."""
    edges = Counter((min(u, w), max(u, w)) for _, u, w in planar.edges())
    edges.subtract((min(u, w), max(u, w)) for u, w in cmap.added_edges)
    for c in cmap.crossings.values():
        for u, w in (c.first, c.second):
            edges[(min(u, w), max(u, w))] += 1
    return sorted(edges.elements())


def lift_coloring(drawing: ICDrawing, cmap: CrossingMap, coloring: Mapping[int, int],
                  planar: PlaneGraph | None = None) -> dict[int, int]:
    """Turn a cyclic coloring of the plane graph into a proper coloring of the drawing."""
    if planar is not None and not is_valid_cyclic_coloring(planar, coloring):
        raise ValueError("input coloring is not cyclic-valid on the planarized graph")
    lifted = {v: coloring[v] for v in drawing.true_vertices}
    for u, w in drawing.abstract_edges():
        if lifted[u] == lifted[w]:
            raise ValueError(f"lifted coloring is improper on edge {u}-{w}")
    return lifted


def color_drawing(drawing: ICDrawing) -> dict[int, int]:
    from .reducer import color

    planar, cmap = planarize(drawing)
    result = color(planar)
    return lift_coloring(drawing, cmap, result.coloring, planar)
