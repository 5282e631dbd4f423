"""Exact charge bookkeeping for plane graphs with 3- and 4-faces.

Every vertex of degree d starts with d - 6 and every face of size d with
2d - 6, so by Euler's formula a connected plane graph always totals -12.
The redistribution rules only move charge between elements:

======  ==============================================================  ======
rule    condition                                                       amount
======  ==============================================================  ======
S1      a 5-vertex receives from its 4-face                             1
S2      a d-vertex, d >= 6, sends to its 4-face                         d - 6
PC      a pentagonal vertex receives from each close 4-face             1
P5a     deg w = 5, exactly one of a, b has degree 6                     1/5
P5b     deg w = 5, both a and b have degree >= 7                        2/5
P6a     deg w = 6, one of a, b has degree 5 and the other degree 6      1/4
P6b     deg w = 6, deg a + deg b >= 12                                  1/2
P7a     deg w = 7, one-sided, a and b both of degree 5                  3/10
P7b     deg w = 7, one-sided, at most one of a, b of degree 5           1/2
P7c     deg w = 7, double-sided                                         1/2
P8plus  deg w >= 8                                                      1/2
======  ==============================================================  ======

In the P rules a pentagonal vertex receives from the 4-face ``f`` of its
neighbor ``w`` when ``f`` is distant; ``a`` and ``b`` are the neighbors of
``w`` along ``f``. Since no total can ever be non-negative, the audit lists
the negative elements and looks for a reducible configuration near each.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .embedding import PlaneGraph, face_neighbors, _close_faces, _is_pentagonal, sidedness

RULES = ("S1", "S2", "PC", "P5a", "P5b", "P6a", "P6b", "P7a", "P7b", "P7c", "P8plus")
AMOUNTS = {
    "S1": Fraction(1),
    "PC": Fraction(1),
    "P5a": Fraction(1, 5),
    "P5b": Fraction(2, 5),
    "P6a": Fraction(1, 4),
    "P6b": Fraction(1, 2),
    "P7a": Fraction(3, 10),
    "P7b": Fraction(1, 2),
    "P7c": Fraction(1, 2),
    "P8plus": Fraction(1, 2),
}
AUDIT_RADIUS = 3


def vertex_key(v: int) -> str:
    return f"v{v}"


def face_key(fid: int) -> str:
    return f"f{fid}"


def fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Transfer:
    rule: str
    source: str
    sink: str
    amount: Fraction

    def __str__(self) -> str:
        return f"rule={self.rule} from={self.source} to={self.sink} amount={fmt(self.amount)}"


@dataclass
class ChargeLedger:
    charge: dict[str, Fraction] = field(default_factory=dict)
    log: list[Transfer] = field(default_factory=list)

    def total(self) -> Fraction:
        return sum(self.charge.values(), Fraction(0))

    def move(self, rule: str, source: str, sink: str, amount: Fraction) -> None:
        if (amount * 20).denominator != 1:
            raise ValueError(f"{rule}: amount {amount} is not a multiple of 1/20")
        self.charge[source] -= amount
        self.charge[sink] += amount
        self.log.append(Transfer(rule, source, sink, amount))

    def negative(self) -> list[str]:
        return [k for k, q in self.charge.items() if q < 0]


def initial_charges(g: PlaneGraph) -> ChargeLedger:
    led = ChargeLedger()
    for v in g.vertices:
        led.charge[vertex_key(v)] = Fraction(g.degree(v) - 6)
    for f in g.faces():
        led.charge[face_key(f.id)] = Fraction(2 * f.size - 6)
    return led


def firing_rules(deg_w: int, deg_a: int, deg_b: int, side: str) -> list[tuple[str, Fraction]]:
    """Which of the P rules fire for neighbor ``w`` of degree ``deg_w``.

    ``deg_a`` and ``deg_b`` are the degrees of the neighbors of ``w`` along its
    distant 4-face; ``side`` is ``"one-sided"``, ``"double-sided"`` or
    ``"degree-five-case"``.
    """
    out = []
    pair = (deg_a, deg_b)
    if deg_w == 5:
        if pair.count(6) == 1:
            out.append("P5a")
        if min(pair) >= 7:
            out.append("P5b")
    elif deg_w == 6:
        if sorted(pair) == [5, 6]:
            out.append("P6a")
        if sum(pair) >= 12:
            out.append("P6b")
    elif deg_w == 7:
        if side == "one-sided":
            if pair == (5, 5):
                out.append("P7a")
            if pair.count(5) <= 1:
                out.append("P7b")
        elif side == "double-sided":
            out.append("P7c")
    elif deg_w >= 8:
        out.append("P8plus")
    return [(r, AMOUNTS[r]) for r in out]


def apply_rules(g: PlaneGraph, order: tuple[str, ...] | list[str] | None = None) -> ChargeLedger:
    """Initial charges followed by every rule, in ``order`` (default: table order)."""
    led = initial_charges(g)
    order = RULES if order is None else tuple(order)
    unknown = set(order) - set(RULES)
    if unknown:
        raise ValueError(f"unknown rules {sorted(unknown)}")
    pent = [v for v in g.vertices if _is_pentagonal(g, v)]
    for rule in order:
        if rule in ("S1", "S2"):
            for v in g.vertices:
                quads = g.quads_at(v)
                if not quads:
                    continue
                if len(quads) != 1:
                    raise ValueError(f"vertex {v} lies on {len(quads)} 4-faces")
                d = g.degree(v)
                if rule == "S1" and d == 5:
                    led.move("S1", face_key(quads[0].id), vertex_key(v), AMOUNTS["S1"])
                elif rule == "S2" and d > 6:
                    led.move("S2", vertex_key(v), face_key(quads[0].id), Fraction(d - 6))
        elif rule == "PC":
            for v in pent:
                for f in _close_faces(g, v):
                    led.move("PC", face_key(f.id), vertex_key(v), AMOUNTS["PC"])
        else:
            for v in pent:
                for w, f, deg_a, deg_b, side in _distant_neighbors(g, v):
                    for r, amount in firing_rules(g.degree(w), deg_a, deg_b, side):
                        if r == rule:
                            led.move(r, face_key(f.id), vertex_key(v), amount)
    return led


def _distant_neighbors(g: PlaneGraph, v: int):
    close = {f.id for f in _close_faces(g, v)}
    for w in g.neighbors(v):
        f = g.quad_of(w)
        if f is None or f.id in close:
            continue
        a, b = face_neighbors(f, w)
        yield w, f, g.degree(a), g.degree(b), sidedness(g, v, w)


# -- audit --------------------------------------------------------------------


@dataclass
class Finding:
    element: str
    charge: Fraction
    match: object | None
    distance: int | None


@dataclass
class AuditReport:
    initial_total: Fraction
    final_total: Fraction
    findings: list[Finding]
    ledger: ChargeLedger

    @property
    def anomalies(self) -> list[Finding]:
        return [x for x in self.findings if x.match is None]

    @property
    def ok(self) -> bool:
        return self.final_total == self.initial_total == -12 and bool(self.findings) and not self.anomalies

    def text(self, with_log: bool = True) -> str:
        lines = [
            f"total = {fmt(self.final_total)}",
            f"initial total = {fmt(self.initial_total)}",
            f"negative = {len(self.findings)}",
        ]
        for x in self.findings:
            if x.match is None:
                near = "none (anomaly)"
            else:
                near = f"{x.match.kind} bind={','.join(map(str, x.match.bind))} dist={x.distance}"
            lines.append(f"{x.element} charge={fmt(x.charge)} nearest={near}")
        lines.append(f"anomalies = {len(self.anomalies)}")
        if with_log:
            lines += [str(t) for t in self.ledger.log]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        data = {
            "total": fmt(self.final_total),
            "initial_total": fmt(self.initial_total),
            "negative": [
                {
                    "element": x.element,
                    "charge": fmt(x.charge),
                    "nearest": None if x.match is None else {
                        "kind": x.match.kind, "bind": list(x.match.bind), "distance": x.distance},
                }
                for x in self.findings
            ],
            "anomalies": len(self.anomalies),
            "log": [
                {"rule": t.rule, "from": t.source, "to": t.sink, "amount": fmt(t.amount)}
                for t in self.ledger.log
            ],
            "final": {k: fmt(q) for k, q in self.ledger.charge.items()},
        }
        return json.dumps(data, indent=2) + "\n"


def _element_vertices(g: PlaneGraph, key: str) -> set[int]:
    if key[0] == "v":
        return {int(key[1:])}
    return set(g.face(int(key[1:])).vertices)


def _distances(g: PlaneGraph, start: set[int], radius: int) -> dict[int, int]:
    dist = {v: 0 for v in start}
    queue = deque(start)
    while queue:
        x = queue.popleft()
        if dist[x] == radius:
            continue
        for y in g.neighbor_set(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def audit(g: PlaneGraph, radius: int = AUDIT_RADIUS) -> AuditReport:
    from .reducer import find_all_matches

    led = apply_rules(g)
    initial = initial_charges(g).total()
    matches = find_all_matches(g)
    findings = []
    for key in led.negative():
        dist = _distances(g, _element_vertices(g, key), radius)
        best = None
        for m in matches:
            near = [dist[v] for v in m.vertices if v in dist]
            if near:
                cand = (min(near), m.key(), m)
                if best is None or cand[:2] < best[:2]:
                    best = cand
        findings.append(Finding(key, led.charge[key], best[2] if best else None,
                                best[0] if best else None))
    return AuditReport(initial, led.total(), findings, led)
