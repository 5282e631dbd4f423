"""Constructive cyclic 5-coloring by reducible configurations.

The colorer repeatedly finds a reducible configuration, shrinks the graph
around it, colors the smaller graph(s) and extends the coloring back. Nine
configuration kinds are recognised, checked in this priority order:

``SepCycle2``
    two parallel edges bounding a cycle with vertices on both sides
``SepCycle3``
    a triangle that is not a face
``LowDegree``
    a vertex of degree at most four
``NonPentagonalFive``
    a degree-5 vertex on triangles only with a neighbor on no 4-face
``SquareFiveFive``
    a 4-face with two adjacent degree-5 vertices
``CloseFiveOnQuad`` / ``CloseSixOnQuad``
    a degree-5 / degree-6 vertex of a 4-face adjacent to a pentagonal vertex
    whose consecutive neighbors span an edge of that 4-face
``Pentagon65`` / ``Pentagon66``
    a pentagonal vertex with a degree-6 neighbor that shares a common
    neighbor of degree 5 / 6 with the next neighbor, arranged around two
    4-faces

Separating cycles come first so that every later identification joins two
vertices at distance two in a graph without separating triangles, which can
never create a loop.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence

from .embedding import (
    Face,
    PlaneGraph,
    ValidationReport,
    cyclic_adjacency,
    cyclic_neighbors,
    is_valid_cyclic_coloring,
    validate_hypotheses,
)
from .errors import (
    CounterexampleCandidate,
    EmbeddingError,
    ExtensionError,
    InvalidInstanceError,
    ReductionError,
)

KINDS = (
    "SepCycle2",
    "SepCycle3",
    "LowDegree",
    "NonPentagonalFive",
    "SquareFiveFive",
    "CloseFiveOnQuad",
    "CloseSixOnQuad",
    "Pentagon65",
    "Pentagon66",
)

PALETTE = 5
BASE_SIZE = 6

_RING = ("hub", "n1", "n2", "n3", "n4", "n5")
ROLES = {
    "SepCycle2": ("u", "w"),
    "SepCycle3": ("a", "b", "c"),
    "LowDegree": ("center", "keep", "merge"),
    "NonPentagonalFive": ("center", "keep", "merge"),
    "SquareFiveFive": ("p1", "p2", "p3", "p4", "apex", "p1_out", "p1_far", "p2_out", "p2_far"),
    "CloseFiveOnQuad": _RING + ("opp", "corner", "back"),
    "CloseSixOnQuad": _RING + ("opp", "corner", "back", "side"),
    "Pentagon65": _RING + ("apex", "wing", "apex_quad", "apex_mid"),
    "Pentagon66": _RING + ("apex", "wing", "apex_quad", "apex_mid", "apex_far"),
}


@dataclass(frozen=True)
class ConfigurationMatch:
    """A located configuration: its kind and the vertices bound to each role.

    ``edges`` holds the two parallel edge ids of a ``SepCycle2`` match.
    Optional roles that do not apply (``LowDegree`` with cyclic degree below
    five has no identification pair) are bound to ``-1``.
    """

    kind: str
    bind: tuple[int, ...]
    edges: tuple[int, ...] = ()

    def __getitem__(self, role: str) -> int:
        try:
            return self.bind[ROLES[self.kind].index(role)]
        except ValueError:
            raise KeyError(f"{self.kind} has no role {role!r}") from None

    def roles(self) -> dict[str, int]:
        return dict(zip(ROLES[self.kind], self.bind))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for v in self.bind if v >= 0)

    def key(self) -> tuple:
        return (KINDS.index(self.kind), self.bind, self.edges)


@dataclass(frozen=True)
class ExtensionStep:
    """Recolor ``vertex`` once its counterparts are colored.

    When the step runs, the vertex has ``cyclic_degree`` cyclic neighbors,
    exactly ``uncolored`` of them still without a color, and the colored ones
    repeat colors at least ``repeats`` times. Together these leave at most
    four distinct colors around it.
    """

    vertex: int
    cyclic_degree: int
    uncolored: int
    repeats: int


@dataclass
class ReplayPlan:
    match: ConfigurationMatch
    surgery: list[tuple] = field(default_factory=list)
    representative: dict[int, int] = field(default_factory=dict)
    script: list[ExtensionStep] = field(default_factory=list)
    cycle: tuple[int, ...] = ()
    sides: tuple[frozenset[int], ...] = ()


@dataclass(frozen=True)
class Slack:
    """What an extension step actually saw."""

    vertex: int
    cyclic_degree: int
    uncolored: int
    repeats: int
    distinct: int
    color: int


@dataclass
class ColorResult:
    coloring: dict[int, int]
    trace: list[str]
    steps: int


# -- local geometry helpers ------------------------------------------------


class _Ctx:
    """Per-graph lookups shared by all detectors during one scan."""

    def __init__(self, g: PlaneGraph):
        self.g = g
        self.quad: dict[int, Face] = {}
        for f in g.faces():
            if f.size == 4:
                for v in f.vertices:
                    self.quad.setdefault(v, f)
        self._pent: dict[int, bool] = {}

    def pentagonal(self, v: int) -> bool:
        got = self._pent.get(v)
        if got is None:
            g = self.g
            got = (g.degree(v) == 5 and v not in self.quad
                   and all(u in self.quad for u in g.neighbors(v)))
            self._pent[v] = got
        return got


def _ring_from(g: PlaneGraph, center: int, first: int, second: int) -> list[int] | None:
    """Neighbors of ``center`` in cyclic order starting ``first, second, ...``.

    Either rotation direction is used, whichever puts ``second`` right after
    ``first``. Returns ``None`` when the two are not consecutive or when
    ``center`` has parallel edges.
    """
    nb = g.neighbors(center)
    if len(set(nb)) != len(nb) or first not in nb:
        return None
    i = nb.index(first)
    k = len(nb)
    if nb[(i + 1) % k] == second:
        return [nb[(i + t) % k] for t in range(k)]
    if nb[i - 1] == second:
        return [nb[(i - t) % k] for t in range(k)]
    return None


def _face_between(g: PlaneGraph, center: int, x: int, y: int) -> Face | None:
    """The face at ``center`` lying between its consecutive neighbors ``x`` and ``y``."""
    for d in g.darts_at(center):
        if g.head(d) != x:
            continue
        if g.head(g.rot_next(d)) == y:
            return g.face_of_dart(g.rot_next(d))
        if g.head(g.rot_prev(d)) == y:
            return g.face_of_dart(d)
    return None


def _is_triangle(g: PlaneGraph, center: int, x: int, y: int) -> bool:
    f = _face_between(g, center, x, y)
    return f is not None and f.size == 3


def _quad_edge(ctx: _Ctx, x: int, y: int) -> Face | None:
    """The 4-face containing edge ``x-y``, if any."""
    f = ctx.quad.get(x)
    if f is not None and f.has_consecutive(x, y):
        return f
    return None


def _quad_partner(f: Face, x: int, not_this: int) -> int:
    k = f.size
    i = f.vertices.index(x)
    a, b = f.vertices[i - 1], f.vertices[(i + 1) % k]
    return b if a == not_this else a


def _quad_opposite(f: Face, x: int) -> int:
    i = f.vertices.index(x)
    return f.vertices[(i + 2) % f.size]


def _distinct(vs: Sequence[int]) -> bool:
    return len(set(vs)) == len(vs)


# -- separating cycles -----------------------------------------------------


def _sides(g: PlaneGraph, cycle_darts: Sequence[int]):
    """Split the graph along a cycle given by its darts ``c0->c1, c1->c2, ...``.

    Returns ``(left, right, left_chords, right_chords)``: vertex sets strictly
    on each side and the non-cycle edges joining two cycle vertices on each side.
    """
    cyc = [g.tail(d) for d in cycle_darts]
    on = set(cyc)
    cycle_edges = {d >> 1 for d in cycle_darts}
    sector: list[list[int]] = [[], []]
    k = len(cycle_darts)
    for i in range(k):
        dn = cycle_darts[i]
        dp = cycle_darts[i - 1] ^ 1
        for side, (start, stop) in enumerate(((dn, dp), (dp, dn))):
            x = g.rot_next(start)
            while x != stop:
                sector[side].append(x)
                x = g.rot_next(x)
    out = []
    for side in (0, 1):
        seen: set[int] = set()
        queue = deque(g.head(d) for d in sector[side] if g.head(d) not in on)
        seen.update(queue)
        while queue:
            x = queue.popleft()
            for y in g.neighbor_set(x):
                if y not in on and y not in seen:
                    seen.add(y)
                    queue.append(y)
        out.append(seen)
    chords = [sorted({d >> 1 for d in sector[s] if g.head(d) in on} - cycle_edges) for s in (0, 1)]
    return out[0], out[1], chords[0], chords[1]


def _scan_sep2(g: PlaneGraph, ctx: _Ctx) -> Iterator[list[ConfigurationMatch]]:
    for u in g.vertices:
        ds = g.darts_at(u)
        by_head: dict[int, list[int]] = {}
        for d in ds:
            by_head.setdefault(g.head(d), []).append(d)
        found = []
        for w in sorted(by_head):
            group = by_head[w]
            if w < u or len(group) < 2:
                continue
            pairs = [(group[i], group[(i + 1) % len(group)]) for i in range(len(group))]
            for d1, d2 in pairs[:1] if len(group) == 2 else pairs:
                left, right, _, _ = _sides(g, [d1, d2 ^ 1])
                if left and right and not left & right:
                    found.append(ConfigurationMatch("SepCycle2", (u, w), tuple(sorted((d1 >> 1, d2 >> 1)))))
        if found:
            yield sorted(found, key=ConfigurationMatch.key)


def _scan_sep3(g: PlaneGraph, ctx: _Ctx) -> Iterator[list[ConfigurationMatch]]:
    facial = {f.vertex_set() for f in g.faces() if f.size == 3}
    nbr = {v: g.neighbor_set(v) for v in g.vertices}
    for a in g.vertices:
        found = []
        for b in sorted(x for x in nbr[a] if x > a):
            for c in sorted(x for x in nbr[a] & nbr[b] if x > b):
                if frozenset((a, b, c)) not in facial:
                    found.append(ConfigurationMatch("SepCycle3", (a, b, c)))
        if found:
            yield found


def _triangle_darts(g: PlaneGraph, a: int, b: int, c: int) -> list[int]:
    return [g.darts_between(a, b)[0], g.darts_between(b, c)[0], g.darts_between(c, a)[0]]


# -- single-vertex configurations -------------------------------------------


def _scan_low(g: PlaneGraph, ctx: _Ctx) -> Iterator[list[ConfigurationMatch]]:
    for v in g.vertices:
        if g.degree(v) > 4:
            continue
        m = _low_match(g, v)
        if m is not None:
            yield [m]


def _low_match(g: PlaneGraph, v: int) -> ConfigurationMatch | None:
    cyc = cyclic_neighbors(g, v)
    if len(cyc) < 5:
        return ConfigurationMatch("LowDegree", (v, -1, -1))
    if g.degree(v) != 4 or len(cyc) != 5:
        return None
    link = g.link_walk(v)
    if len(link) != 5 or not _distinct(link):
        return None
    nb = g.neighbor_set(v)
    far = [i for i, x in enumerate(link) if x not in nb]
    if len(far) != 1:
        return None
    p = far[0]
    return ConfigurationMatch("LowDegree", (v, link[p - 1], link[(p + 2) % 5]))


def _scan_nonpent(g: PlaneGraph, ctx: _Ctx) -> Iterator[list[ConfigurationMatch]]:
    for v in g.vertices:
        if g.degree(v) != 5 or v in ctx.quad:
            continue
        nb = g.neighbors(v)
        if not _distinct(nb):
            continue
        free = [x for x in nb if x not in ctx.quad]
        if not free:
            continue
        keep = min(free)
        i = nb.index(keep)
        yield [ConfigurationMatch("NonPentagonalFive", (v, keep, nb[(i + 2) % 5]))]


# -- 4-face configurations ---------------------------------------------------


def _scan_square(g: PlaneGraph, ctx: _Ctx) -> Iterator[list[ConfigurationMatch]]:
    cands: dict[int, list[ConfigurationMatch]] = {}
    for f in g.faces():
        if f.size != 4:
            continue
        vs = f.vertices
        for i in range(4):
            for p1, p2 in ((vs[i], vs[(i + 1) % 4]), (vs[(i + 1) % 4], vs[i])):
                if g.degree(p1) != 5 or g.degree(p2) != 5:
                    continue
                m = _square_match(g, ctx, f, p1, p2)
                if m is not None:
                    cands.setdefault(p1, []).append(m)
    for p1 in sorted(cands):
        yield sorted(cands[p1], key=ConfigurationMatch.key)


def _square_match(g, ctx, f, p1, p2):
    p3 = _quad_partner(f, p2, p1)
    p4 = _quad_partner(f, p1, p2)
    nb1 = g.neighbors(p1)
    # rings start across the edge p1p2 and run away from the 4-face
    r1 = _ring_from(g, p1, p2, _next_off_quad(g, p1, p2, f))
    r2 = _ring_from(g, p2, p1, _next_off_quad(g, p2, p1, f))
    if r1 is None or r2 is None or len(nb1) != 5:
        return None
    apex = r1[1]
    if r2[1] != apex or r1[4] != p4 or r2[4] != p3:
        return None
    bind = (p1, p2, p3, p4, apex, r1[2], r1[3], r2[2], r2[3])
    if not _distinct(bind):
        return None
    return ConfigurationMatch("SquareFiveFive", bind)


def _next_off_quad(g: PlaneGraph, x: int, y: int, quad: Face) -> int | None:
    """The neighbor of ``x`` next to ``y`` on the side away from ``quad``."""
    for d in g.darts_between(x, y):
        for e in (g.rot_next(d), g.rot_prev(d)):
            z = g.head(e)
            f = _face_between(g, x, y, z)
            if f is not None and f.id != quad.id and f.size == 3:
                return z
    return None


# -- configurations around a pentagonal vertex ------------------------------


def _hub_rings(g: PlaneGraph, hub: int):
    nb = g.neighbors(hub)
    for i in range(5):
        for step in (1, -1):
            yield [nb[(i + step * t) % 5] for t in range(5)]


def _scan_close(kind: str, degree: int):
    def scan(g: PlaneGraph, ctx: _Ctx) -> Iterator[list[ConfigurationMatch]]:
        for hub in g.vertices:
            if not ctx.pentagonal(hub):
                continue
            found = []
            for ring in _hub_rings(g, hub):
                n1, n2 = ring[0], ring[1]
                if g.degree(n1) != degree:
                    continue
                q = _quad_edge(ctx, n1, n2)
                if q is None:
                    continue
                m = _close_match(g, kind, degree, hub, ring, q)
                if m is not None:
                    found.append(m)
            if found:
                yield sorted(found, key=ConfigurationMatch.key)
    return scan


def _close_match(g, kind, degree, hub, ring, q):
    n1, n2 = ring[0], ring[1]
    r = _ring_from(g, n1, hub, n2)
    opp = _quad_partner(q, n1, n2)
    corner = _quad_opposite(q, n1)
    if r is None or r[2] != opp or r[-1] != ring[4]:
        return None
    extra = (r[3],) if degree == 5 else (r[3], r[4])
    bind = (hub, *ring, opp, corner, *extra)
    if not _distinct(bind):
        return None
    return ConfigurationMatch(kind, bind)


def _scan_pentagon(kind: str, apex_degree: int):
    def scan(g: PlaneGraph, ctx: _Ctx) -> Iterator[list[ConfigurationMatch]]:
        for hub in g.vertices:
            if not ctx.pentagonal(hub):
                continue
            found = []
            for ring in _hub_rings(g, hub):
                if g.degree(ring[0]) != 6:
                    continue
                m = _pentagon_match(g, ctx, kind, apex_degree, hub, ring)
                if m is not None:
                    found.append(m)
            if found:
                yield sorted(found, key=ConfigurationMatch.key)
    return scan


def _pentagon_match(g, ctx, kind, apex_degree, hub, ring):
    n1, n2 = ring[0], ring[1]
    r1 = _ring_from(g, n1, hub, n2)
    if r1 is None or r1[-1] != ring[4]:
        return None
    apex = r1[2]
    if g.degree(apex) != apex_degree or not _is_triangle(g, n1, n2, apex):
        return None
    wing = r1[3]
    if not _is_triangle(g, n1, apex, wing):
        return None
    if _quad_edge(ctx, n1, wing) is None:
        return None
    qa = _quad_edge(ctx, apex, n2)
    if qa is None:
        return None
    ra = _ring_from(g, apex, n2, n1)
    if ra is None or ra[2] != wing:
        return None
    apex_quad = _quad_partner(qa, apex, n2)
    if ra[-1] != apex_quad:
        return None
    if apex_degree == 5:
        extra = (ra[3],)
    else:
        extra = (ra[4], ra[3])
    bind = (hub, *ring, apex, wing, apex_quad, *extra)
    if not _distinct(bind):
        return None
    return ConfigurationMatch(kind, bind)


_SCANNERS: dict[str, Callable[[PlaneGraph, _Ctx], Iterator[list[ConfigurationMatch]]]] = {
    "SepCycle2": _scan_sep2,
    "SepCycle3": _scan_sep3,
    "LowDegree": _scan_low,
    "NonPentagonalFive": _scan_nonpent,
    "SquareFiveFive": _scan_square,
    "CloseFiveOnQuad": _scan_close("CloseFiveOnQuad", 5),
    "CloseSixOnQuad": _scan_close("CloseSixOnQuad", 6),
    "Pentagon65": _scan_pentagon("Pentagon65", 5),
    "Pentagon66": _scan_pentagon("Pentagon66", 6),
}


def find_matches(g: PlaneGraph, kind: str) -> list[ConfigurationMatch]:
    """Every match of one kind, in tie-break order."""
    ctx = _Ctx(g)
    out = []
    for group in _SCANNERS[kind](g, ctx):
        out.extend(group)
    return out


def find_all_matches(g: PlaneGraph) -> list[ConfigurationMatch]:
    ctx = _Ctx(g)
    out = []
    for kind in KINDS:
        for group in _SCANNERS[kind](g, ctx):
            out.extend(group)
    return out


def find_configuration(g: PlaneGraph) -> ConfigurationMatch | None:
    """First match in priority order; lowest anchor vertex, then lowest binding."""
    ctx = _Ctx(g)
    for kind in KINDS:
        for group in _SCANNERS[kind](g, ctx):
            return group[0]
    return None


# -- match verification -----------------------------------------------------


def verify_match(g: PlaneGraph, m: ConfigurationMatch) -> list[str]:
    """Re-check every clause of the configuration from scratch; returns failures."""
    r = m.roles()
    bad: list[str] = []

    def need(ok: bool, msg: str) -> None:
        if not ok:
            bad.append(msg)

    def adj(x, y) -> bool:
        return g.adjacent(x, y)

    def deg(x) -> int:
        return g.degree(x)

    def on_quad_edge(x, y) -> bool:
        return any(f.has_consecutive(x, y) for f in g.quads_at(x))

    def pentagonal(x) -> bool:
        return (deg(x) == 5 and not g.quads_at(x)
                and all(g.quads_at(u) for u in g.neighbors(x)))

    for v in m.vertices:
        if v not in g:
            return [f"vertex {v} is not in the graph"]
    named = [v for v in m.bind if v >= 0]
    need(_distinct(named), "bound vertices are not pairwise distinct")

    if m.kind == "SepCycle2":
        u, w = r["u"], r["w"]
        need(len(m.edges) == 2, "needs two edges")
        ends = [{g.tail(2 * e), g.head(2 * e)} for e in m.edges if 2 * e in g.darts()]
        need(len(ends) == 2 and all(x == {u, w} for x in ends), "edges do not join u and w")
        if not bad:
            d1 = next(d for d in (2 * m.edges[0], 2 * m.edges[0] + 1) if g.tail(d) == u)
            d2 = next(d for d in (2 * m.edges[1], 2 * m.edges[1] + 1) if g.tail(d) == w)
            left, right, _, _ = _sides(g, [d1, d2])
            need(bool(left) and bool(right) and not left & right, "2-cycle does not separate")
    elif m.kind == "SepCycle3":
        a, b, c = r["a"], r["b"], r["c"]
        need(adj(a, b) and adj(b, c) and adj(c, a), "not a triangle")
        if not bad:
            facial = any(f.size == 3 and f.vertex_set() == {a, b, c} for f in g.faces_at(a))
            need(not facial, "triangle is a face")
            left, right, _, _ = _sides(g, _triangle_darts(g, a, b, c))
            need(bool(left) and bool(right), "triangle does not separate")
    elif m.kind == "LowDegree":
        v = r["center"]
        need(deg(v) <= 4, "degree exceeds four")
        cyc = cyclic_neighbors(g, v)
        if r["keep"] < 0:
            need(len(cyc) < 5, "cyclic degree is not below five")
        else:
            need(deg(v) == 4 and len(cyc) == 5, "expected degree 4 with cyclic degree 5")
            need(len(g.quads_at(v)) == 1, "expected exactly one incident 4-face")
            a, b = r["keep"], r["merge"]
            need(adj(v, a) and adj(v, b), "pair must be neighbors")
            need(not adj(a, b), "pair is adjacent")
            q = g.quads_at(v)
            need(bool(q) and a in q[0].vertex_set() and b not in q[0].vertex_set(),
                 "pair must straddle the 4-face")
    elif m.kind == "NonPentagonalFive":
        v, a, b = r["center"], r["keep"], r["merge"]
        need(deg(v) == 5, "degree is not five")
        need(not g.quads_at(v), "vertex lies on a 4-face")
        need(all(f.size == 3 for f in g.faces_at(v)), "vertex lies on a non-triangle")
        need(adj(v, a) and adj(v, b), "pair must be neighbors")
        need(not g.quads_at(a), "kept neighbor lies on a 4-face")
        need(not adj(a, b), "pair is adjacent")
        need(bool(g.neighbor_set(a) & g.neighbor_set(b) & g.neighbor_set(v)),
             "pair has no common neighbor around the vertex")
    elif m.kind == "SquareFiveFive":
        p1, p2, p3, p4 = r["p1"], r["p2"], r["p3"], r["p4"]
        quads = [f for f in g.quads_at(p1) if f.vertex_set() == {p1, p2, p3, p4}]
        need(bool(quads), "no 4-face on p1..p4")
        if quads:
            f = quads[0]
            need(f.has_consecutive(p1, p2) and f.has_consecutive(p2, p3)
                 and f.has_consecutive(p3, p4) and f.has_consecutive(p4, p1), "wrong cyclic order")
        need(deg(p1) == 5 and deg(p2) == 5, "degrees are not five")
        x = r["apex"]
        need(adj(x, p1) and adj(x, p2) and _is_triangle(g, p1, p2, x), "apex is not across p1p2")
        need(adj(p1, r["p1_out"]) and adj(x, r["p1_out"]), "p1_out is not a common neighbor of p1 and apex")
        need(adj(p1, r["p1_far"]) and adj(p4, r["p1_far"]), "p1_far is not a common neighbor of p1 and p4")
        need(adj(p2, r["p2_out"]) and adj(x, r["p2_out"]), "p2_out is not a common neighbor of p2 and apex")
        need(adj(p2, r["p2_far"]) and adj(p3, r["p2_far"]), "p2_far is not a common neighbor of p2 and p3")
    elif m.kind in ("CloseFiveOnQuad", "CloseSixOnQuad", "Pentagon65", "Pentagon66"):
        hub = r["hub"]
        ring = [r[f"n{i}"] for i in range(1, 6)]
        need(pentagonal(hub), "hub is not pentagonal")
        need(_ring_from(g, hub, ring[0], ring[1]) == ring, "n1..n5 are not the hub's neighbors in order")
        n1, n2 = ring[0], ring[1]
        if m.kind in ("CloseFiveOnQuad", "CloseSixOnQuad"):
            want = 5 if m.kind == "CloseFiveOnQuad" else 6
            need(deg(n1) == want, f"n1 does not have degree {want}")
            need(on_quad_edge(n1, n2), "edge n1n2 is not on a 4-face (hub not close)")
            need(adj(n1, r["opp"]) and on_quad_edge(n1, r["opp"]), "opp is not n1's 4-face neighbor")
            need(adj(n1, r["back"]) and adj(r["opp"], r["back"]), "back is not next to opp")
            if m.kind == "CloseSixOnQuad":
                need(adj(r["side"], n1) and adj(r["side"], ring[4]),
                     "side is not a common neighbor of n1 and n5")
        else:
            want = 5 if m.kind == "Pentagon65" else 6
            x, wing = r["apex"], r["wing"]
            need(deg(n1) == 6, "n1 does not have degree six")
            need(adj(x, n1) and adj(x, n2), "apex is not a common neighbor of n1 and n2")
            need(deg(x) == want, f"apex does not have degree {want}")
            need(adj(wing, n1) and adj(wing, x), "wing is not a common neighbor of n1 and apex")
            need(on_quad_edge(n1, wing), "edge n1-wing is not on a 4-face")
            need(on_quad_edge(n2, x), "edge n2-apex is not on a 4-face")
            need(on_quad_edge(x, r["apex_quad"]), "apex_quad is not apex's 4-face neighbor")
            need(adj(r["apex_mid"], x), "apex_mid is not a neighbor of apex")
            if m.kind == "Pentagon66":
                need(adj(r["apex_far"], x) and adj(r["apex_far"], wing),
                     "apex_far is not a common neighbor of apex and wing")
                need(adj(r["apex_mid"], r["apex_far"]) and adj(r["apex_mid"], r["apex_quad"]),
                     "apex_mid does not sit between apex_far and apex_quad")
    else:
        bad.append(f"unknown kind {m.kind}")
    return bad


# -- surgery ------------------------------------------------------------------


def _hole_dart(g: PlaneGraph, v: int) -> int:
    """A dart on the face that deleting ``v`` will leave behind."""
    f = g.face_of_dart(g.darts_at(v)[0])
    for d in f.darts:
        if g.tail(d) != v and g.head(d) != v:
            return d
    raise ReductionError(f"cannot locate the face around vertex {v}")


def _finish(h: PlaneGraph, host: PlaneGraph, m: ConfigurationMatch) -> None:
    h.suppress_2faces()
    report = validate_hypotheses(h)
    if not report.ok:
        raise ReductionError(f"{m.kind} produced an invalid graph: {report}")
    if h.num_vertices >= host.num_vertices:
        raise ReductionError(f"{m.kind} did not shrink the graph")


def _delete_and_merge(g: PlaneGraph, m: ConfigurationMatch, remove: Sequence[int],
                      groups: Sequence[Sequence[int]], plan: ReplayPlan) -> PlaneGraph:
    h = g.copy()
    for v in remove:
        h.delete_vertex(v)
        plan.surgery.append(("delete", v))
    rep = {v: v for v in g.vertices if v not in remove}
    try:
        for grp in groups:
            grp = sorted(grp)
            keep = h.identify_vertices(grp)
            plan.surgery.append(("identify", tuple(grp)))
            for x in grp:
                rep[x] = keep
    except EmbeddingError as exc:
        raise ReductionError(f"{m.kind} at {m.bind}: {exc}") from exc
    plan.representative = rep
    return h


def apply_reduction(g: PlaneGraph, m: ConfigurationMatch) -> tuple[list[PlaneGraph], ReplayPlan]:
    """Shrink ``g`` around ``m``; returns the reduced graph(s) and how to undo it."""
    plan = ReplayPlan(m)
    r = m.roles()
    kind = m.kind

    if kind in ("SepCycle2", "SepCycle3"):
        return _split(g, m, plan)

    if kind == "LowDegree":
        v = r["center"]
        if r["keep"] < 0:
            h = g.copy()
            cyc = len(cyclic_neighbors(g, v))
            d = _hole_dart(g, v)
            # fan from a 4-face neighbor so the rest of that 4-face stays on one triangle
            apex = None
            quads = g.quads_at(v)
            if quads:
                vs = quads[0].vertices
                i = vs.index(v)
                apex = min(vs[i - 1], vs[(i + 1) % 4])
            h.delete_vertex(v)
            plan.surgery.append(("delete", v))
            added = h.triangulate_face(h.face_of_dart(d), apex=apex)
            plan.surgery.append(("triangulate", tuple(added)))
            plan.representative = {x: x for x in g.vertices if x != v}
            plan.script = [ExtensionStep(v, cyc, 0, 0)]
        else:
            h = _delete_and_merge(g, m, [v], [(r["keep"], r["merge"])], plan)
            plan.script = [ExtensionStep(v, 5, 0, 1)]
    elif kind == "NonPentagonalFive":
        v = r["center"]
        h = _delete_and_merge(g, m, [v], [(r["keep"], r["merge"])], plan)
        plan.script = [ExtensionStep(v, 5, 0, 1)]
    elif kind == "SquareFiveFive":
        h = _delete_and_merge(g, m, [r["p1"], r["p2"]],
                              [(r["apex"], r["p3"]), (r["p1_out"], r["p4"])], plan)
        plan.script = [ExtensionStep(r["p2"], 6, 1, 1), ExtensionStep(r["p1"], 6, 0, 2)]
    elif kind == "CloseFiveOnQuad":
        h = _delete_and_merge(g, m, [r["hub"], r["n1"]],
                              [(r["n2"], r["n4"]), (r["opp"], r["n5"])], plan)
        plan.script = [ExtensionStep(r["n1"], 6, 1, 1), ExtensionStep(r["hub"], 5, 0, 1)]
    elif kind == "CloseSixOnQuad":
        h = _delete_and_merge(g, m, [r["hub"], r["n1"]],
                              [(r["n2"], r["n5"]), (r["opp"], r["side"])], plan)
        plan.script = [ExtensionStep(r["n1"], 7, 1, 2), ExtensionStep(r["hub"], 5, 0, 1)]
    elif kind == "Pentagon65":
        h = _delete_and_merge(g, m, [r["hub"], r["n1"], r["apex"]],
                              [(r["n2"], r["n5"], r["wing"])], plan)
        x = plan.representative[r["n2"]]
        y = r["apex_quad"]
        f = h.face_containing((x, y))
        if f is None:
            raise ReductionError(f"Pentagon65 at {m.bind}: no face holds {x} and {y}")
        try:
            h.add_edge_in_face(f, x, y)
        except EmbeddingError as exc:
            raise ReductionError(f"Pentagon65 at {m.bind}: {exc}") from exc
        plan.surgery.append(("add_edge", x, y))
        plan.script = [ExtensionStep(r["apex"], 6, 1, 1), ExtensionStep(r["n1"], 7, 1, 2),
                       ExtensionStep(r["hub"], 5, 0, 1)]
    elif kind == "Pentagon66":
        h = _delete_and_merge(g, m, [r["hub"], r["n1"], r["apex"]],
                              [(r["n2"], r["n5"], r["wing"]), (r["apex_quad"], r["apex_far"])], plan)
        plan.script = [ExtensionStep(r["apex"], 7, 1, 2), ExtensionStep(r["n1"], 7, 1, 2),
                       ExtensionStep(r["hub"], 5, 0, 1)]
    else:
        raise ValueError(f"unknown kind {kind}")
    _finish(h, g, m)
    return [h], plan


def _split(g: PlaneGraph, m: ConfigurationMatch, plan: ReplayPlan):
    r = m.roles()
    if m.kind == "SepCycle2":
        u, w = r["u"], r["w"]
        d1 = next(d for d in (2 * m.edges[0], 2 * m.edges[0] + 1) if g.tail(d) == u)
        d2 = next(d for d in (2 * m.edges[1], 2 * m.edges[1] + 1) if g.tail(d) == w)
        darts = [d1, d2]
        cycle = (u, w)
    else:
        cycle = (r["a"], r["b"], r["c"])
        darts = _triangle_darts(g, *cycle)
    left, right, lchords, rchords = _sides(g, darts)
    if not left or not right or left & right:
        raise ReductionError(f"{m.kind} at {m.bind}: cycle does not separate")
    out = []
    for keep, drop, chords in ((left, right, rchords), (right, left, lchords)):
        h = g.copy()
        for v in sorted(drop):
            h.delete_vertex(v)
        for e in chords:
            h.delete_edge(e)
        plan.surgery.append(("side", tuple(sorted(keep))))
        _finish(h, g, m)
        out.append(h)
    plan.cycle = cycle
    plan.sides = (frozenset(left) | set(cycle), frozenset(right) | set(cycle))
    plan.representative = {v: v for v in g.vertices}
    return out, plan


# -- extension ----------------------------------------------------------------


def _slack(g: PlaneGraph, v: int, col: Mapping[int, int]) -> tuple[int, int, int, set[int]]:
    nbrs = cyclic_neighbors(g, v)
    colored = [col[u] for u in nbrs if u in col]
    distinct = set(colored)
    return len(nbrs), len(nbrs) - len(colored), len(colored) - len(distinct), distinct


def extend_coloring(g: PlaneGraph, plan: ReplayPlan, colorings: Sequence[Mapping[int, int]],
                    observed: list[Slack] | None = None, palette: int = PALETTE) -> dict[int, int]:
    """Lift colorings of the reduced graph(s) back to ``g``.

    Raises :class:`ExtensionError` if a scripted vertex finds less room
    than the configuration promises, or if the result is not cyclic-valid.
    """
    if plan.cycle:
        first, second = colorings
        perm: dict[int, int] = {}
        for c in plan.cycle:
            perm[second[c]] = first[c]
        free = iter(sorted(set(range(1, palette + 1)) - set(perm.values())))
        for c in range(1, palette + 1):
            if c not in perm:
                perm[c] = next(free)
        col = {v: first[v] for v in plan.sides[0]}
        for v in plan.sides[1]:
            col[v] = perm[second[v]]
    else:
        (reduced,) = colorings
        col = {v: reduced[x] for v, x in plan.representative.items()}
        for step in plan.script:
            v = step.vertex
            cyc, unc, rep, seen = _slack(g, v, col)
            free = [c for c in range(1, palette + 1) if c not in seen]
            where = f"{plan.match.kind} at vertex {v}"
            if cyc != step.cyclic_degree:
                raise ExtensionError(f"{where}: cyclic degree {cyc}, expected {step.cyclic_degree}")
            if unc != step.uncolored:
                raise ExtensionError(f"{where}: {unc} uncolored cyclic neighbors, expected {step.uncolored}")
            if rep < step.repeats:
                raise ExtensionError(f"{where}: only {rep} repeated colors, expected {step.repeats}")
            if not free:
                raise ExtensionError(f"{where}: no color left")
            col[v] = free[0]
            if observed is not None:
                observed.append(Slack(v, cyc, unc, rep, len(seen), free[0]))
    if not is_valid_cyclic_coloring(g, col, palette):
        raise ExtensionError(f"{plan.match.kind}: extended coloring is not cyclic-valid")
    return col


# -- driver ---------------------------------------------------------------------


def _fmt_step(i: int, m: ConfigurationMatch, sizes: Sequence[int]) -> str:
    ids = ",".join(str(v) for v in m.bind)
    if m.edges:
        ids += ";e=" + ",".join(map(str, m.edges))
    return f"step {i}: {m.kind} bind={ids} → n={','.join(map(str, sizes))}"


def _component(g: PlaneGraph, keep: Sequence[int]) -> PlaneGraph:
    h = g.copy()
    mine = set(keep)
    for v in g.vertices:
        if v not in mine:
            h.delete_vertex(v)
    return h


def color(g: PlaneGraph, *, base_size: int = BASE_SIZE, check: bool = True) -> ColorResult:
    """Cyclic 5-coloring of a plane graph with vertex-disjoint 4-faces and no larger faces.

    Disconnected inputs are colored one component at a time.
    """
    comps = g.components()
    if len(comps) > 1:
        coloring: dict[int, int] = {}
        trace: list[str] = []
        steps = 0
        for comp in comps:
            res = color(_component(g, comp), base_size=base_size, check=check)
            coloring.update(res.coloring)
            trace.extend(res.trace)
            steps += res.steps
        return ColorResult(dict(sorted(coloring.items())), trace, steps)
    if check:
        report = validate_hypotheses(g)
        if not report.ok:
            raise InvalidInstanceError(report)
    from .testkit.oracle import oracle_color

    trace = []
    root = _Frame(g.copy())
    stack = [root]
    while stack:
        fr = stack[-1]
        if fr.plan is None and fr.result is None:
            if fr.graph.num_vertices <= base_size:
                res = oracle_color(fr.graph, PALETTE, max_n=base_size)
                if not res.feasible:
                    raise CounterexampleCandidate(fr.graph, "base case is not 5-colorable")
                fr.result = res.witness
            else:
                m = find_configuration(fr.graph)
                if m is None:
                    raise CounterexampleCandidate(fr.graph)
                reduced, plan = apply_reduction(fr.graph, m)
                trace.append(_fmt_step(len(trace), m, [h.num_vertices for h in reduced]))
                fr.plan = plan
                fr.children = [_Frame(h) for h in reduced]
                stack.extend(reversed(fr.children))
                continue
        elif fr.result is None:
            fr.result = extend_coloring(fr.graph, fr.plan, [c.result for c in fr.children])
            fr.children = []
        stack.pop()
    coloring = root.result
    if not is_valid_cyclic_coloring(g, coloring, PALETTE):
        raise ExtensionError("final coloring is not cyclic-valid")
    return ColorResult(dict(sorted(coloring.items())), trace, len(trace))


@dataclass
class _Frame:
    graph: PlaneGraph
    plan: ReplayPlan | None = None
    children: list["_Frame"] = field(default_factory=list)
    result: dict[int, int] | None = None


# -- degeneracy coloring -------------------------------------------------------


def color_degenerate(g: PlaneGraph) -> dict[int, int]:
    """Greedy coloring along a smallest-last order of the face-clique graph.

    Requires the faces of size four or more to be pairwise vertex-disjoint;
    then the order has back-degree at most ``max_face + 2`` and the result
    uses at most ``max_face + 3`` colors.
    """
    big = [f for f in g.faces() if f.size >= 4]
    report = ValidationReport()
    owner: dict[int, int] = {}
    for f in big:
        for v in f.vertex_set():
            if v in owner:
                report.violations.append(f"faces f{owner[v]} and f{f.id} of size >= 4 share vertex {v}")
            owner[v] = f.id
    if not report.ok:
        raise InvalidInstanceError(report)
    max_face = max((f.size for f in g.faces()), default=3)
    adj = cyclic_adjacency(g)
    order, back = _smallest_last(adj)
    if back > max_face + 2:
        raise InvalidInstanceError(ValidationReport(
            [f"degeneracy {back} exceeds max face size + 2 = {max_face + 2}"]))
    col: dict[int, int] = {}
    for v in order:
        used = {col[u] for u in adj[v] if u in col}
        c = 1
        while c in used:
            c += 1
        col[v] = c
    if max(col.values(), default=0) > max_face + 3:
        raise InvalidInstanceError(ValidationReport(["palette bound exceeded"]))
    return dict(sorted(col.items()))


def _smallest_last(adj: Mapping[int, set[int]]) -> tuple[list[int], int]:
    """Coloring order (reverse removal order) and the largest back-degree met."""
    deg = {v: len(ns) for v, ns in adj.items()}
    buckets: dict[int, set[int]] = {}
    for v, d in deg.items():
        buckets.setdefault(d, set()).add(v)
    removed: set[int] = set()
    seq = []
    worst = 0
    for _ in range(len(adj)):
        d = min(k for k, b in buckets.items() if b)
        v = min(buckets[d])
        buckets[d].discard(v)
        worst = max(worst, d)
        removed.add(v)
        seq.append(v)
        for u in adj[v]:
            if u not in removed:
                buckets[deg[u]].discard(u)
                deg[u] -= 1
                buckets.setdefault(deg[u], set()).add(u)
    return seq[::-1], worst
