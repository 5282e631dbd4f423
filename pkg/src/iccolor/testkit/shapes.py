"""Named plane graphs and small builders used by tests, fixtures and the CLI."""

from __future__ import annotations

from collections import deque
from typing import Sequence

from ..embedding import PlaneGraph
from ..errors import EmbeddingError


def orient_faces(cycles: Sequence[Sequence[int]]) -> list[list[int]]:
    """Flip face cycles so every shared edge is traversed in opposite directions."""
    cycles = [list(c) for c in cycles]
    by_edge: dict[frozenset, list[int]] = {}
    for i, c in enumerate(cycles):
        for j in range(len(c)):
            by_edge.setdefault(frozenset((c[j], c[(j + 1) % len(c)])), []).append(i)

    def directed(c):
        return {(c[j], c[(j + 1) % len(c)]) for j in range(len(c))}

    done = [False] * len(cycles)
    for start in range(len(cycles)):
        if done[start]:
            continue
        done[start] = True
        queue = deque([start])
        while queue:
            i = queue.popleft()
            mine = directed(cycles[i])
            for x, y in mine:
                for k in by_edge[frozenset((x, y))]:
                    if k == i:
                        continue
                    theirs = directed(cycles[k])
                    if done[k]:
                        if (x, y) in theirs:
                            raise EmbeddingError("face cycles are not consistently orientable")
                        continue
                    if (x, y) in theirs:
                        cycles[k].reverse()
                    done[k] = True
                    queue.append(k)
    return cycles


def cone_close(cycles: Sequence[Sequence[int]], apex: int) -> list[list[int]]:
    """Close a disk patch by coning its boundary cycle to a new vertex ``apex``."""
    cycles = orient_faces(cycles)
    directed = set()
    for c in cycles:
        for j in range(len(c)):
            directed.add((c[j], c[(j + 1) % len(c)]))
    boundary = [(x, y) for x, y in directed if (y, x) not in directed]
    return cycles + [[y, x, apex] for x, y in sorted(boundary)]


def build(cycles: Sequence[Sequence[int]]) -> PlaneGraph:
    return PlaneGraph.from_faces(orient_faces(cycles))


def tetrahedron() -> PlaneGraph:
    return build([(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])


def triangle() -> PlaneGraph:
    return PlaneGraph.from_rotation({0: [1, 2], 1: [2, 0], 2: [0, 1]})


def octahedron() -> PlaneGraph:
    ring = [1, 2, 3, 4]
    faces = []
    for i in range(4):
        a, b = ring[i], ring[(i + 1) % 4]
        faces += [(0, a, b), (5, a, b)]
    return build(faces)


def icosahedron() -> PlaneGraph:
    up = [1, 2, 3, 4, 5]
    lo = [6, 7, 8, 9, 10]
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces += [(0, up[i], up[j]), (up[i], up[j], lo[i]),
                  (up[j], lo[j], lo[i]), (11, lo[i], lo[j])]
    return build(faces)


def cube() -> PlaneGraph:
    return build([(0, 1, 2, 3), (4, 5, 6, 7), (0, 1, 5, 4), (1, 2, 6, 5),
                  (2, 3, 7, 6), (3, 0, 4, 7)])


def prism() -> PlaneGraph:
    """Prism over K3: two triangles joined by three 4-faces."""
    return build([(0, 1, 2), (3, 4, 5), (0, 1, 4, 3), (1, 2, 5, 4), (2, 0, 3, 5)])


def octahedron_with_apex() -> PlaneGraph:
    """Octahedron with a degree-3 vertex stacked into face 0-1-2."""
    g = octahedron()
    f = next(f for f in g.faces() if f.vertex_set() == {0, 1, 2})
    g.insert_vertex_in_face(f, 6)
    return g


def pentagon_flower(kinds: Sequence[str] = ("double",) * 5,
                    extra: Sequence[int] = (0,) * 5) -> PlaneGraph:
    """A degree-5 hub (vertex 0) whose neighbors ``1..5`` each lie on their own 4-face.

    ``kinds[i]`` places the 4-face of neighbor ``i + 1`` relative to the two
    wing vertices it shares with the hub's other neighbors: ``"double"``
    (neither wing), ``"one"`` (the wing toward the next neighbor) or
    ``"five"`` (both wings; forces degree five). ``extra[i]`` adds fan
    vertices around the neighbor to raise its degree. The outside is closed
    by a cone vertex. With the defaults this is the pinwheel: a solitary
    pentagonal hub with five distant 4-faces.
    """
    hub, ring = 0, [1, 2, 3, 4, 5]
    wing = [6, 7, 8, 9, 10]  # wing[i] sits across edge ring[i]-ring[i+1]
    nxt = [11]

    def fresh():
        nxt[0] += 1
        return nxt[0] - 1

    faces: list[tuple[int, ...]] = []
    for i in range(5):
        a, b = ring[i], ring[(i + 1) % 5]
        faces += [(hub, a, b), (a, b, wing[i])]
    for i in range(5):
        a, after, before = ring[i], wing[i], wing[i - 1]
        fans = [fresh() for _ in range(extra[i])]
        if kinds[i] == "double":
            p, s, t = fresh(), fresh(), fresh()
            path = [after] + fans + [p]
            faces += [(a, path[k], path[k + 1]) for k in range(len(path) - 1)]
            faces += [(a, p, s, t), (a, t, before)]
        elif kinds[i] == "one":
            s, t = fresh(), fresh()
            faces.append((a, after, s, t))
            path = [t] + fans + [before]
            faces += [(a, path[k], path[k + 1]) for k in range(len(path) - 1)]
        elif kinds[i] == "five":
            if extra[i]:
                raise ValueError("a neighbor with both wings on its 4-face has degree five")
            faces.append((a, after, fresh(), before))
        else:
            raise ValueError(f"unknown kind {kinds[i]!r}")
    return build(cone_close(faces, fresh()))


def pinwheel() -> PlaneGraph:
    return pentagon_flower()
