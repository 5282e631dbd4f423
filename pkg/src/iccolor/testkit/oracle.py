"""Exhaustive cyclic k-colorability decision, independent of the reducer."""

from __future__ import annotations

import os
from dataclasses import dataclass

from ..embedding import PlaneGraph, cyclic_adjacency
from ..errors import OracleSizeError

DEFAULT_MAX_N = 20


def max_oracle_n() -> int:
    raw = os.environ.get("ICCOLOR_MAX_ORACLE_N")
    return int(raw) if raw else DEFAULT_MAX_N


@dataclass
class OracleResult:
    feasible: bool
    witness: dict[int, int] | None
    nodes: int


def oracle_color(g: PlaneGraph, k: int, max_n: int | None = None) -> OracleResult:
    """Decide cyclic ``k``-colorability by backtracking on the cyclic adjacency graph.

    Branches on the uncolored vertex seeing the most distinct colors (lowest
    id on ties) and never opens more than one fresh color per node.
    """
    limit = max_oracle_n() if max_n is None else max_n
    if g.num_vertices > limit:
        raise OracleSizeError(
            f"{g.num_vertices} vertices exceed the oracle guard {limit} "
            "(raise it with ICCOLOR_MAX_ORACLE_N)")
    adj = cyclic_adjacency(g)
    order = sorted(adj)
    color: dict[int, int] = {}
    nodes = 0

    def pick() -> int:
        best, key = None, None
        for v in order:
            if v in color:
                continue
            sat = len({color[u] for u in adj[v] if u in color})
            cand = (-sat, v)
            if key is None or cand < key:
                best, key = v, cand
        return best

    def search(used: int) -> bool:
        nonlocal nodes
        if len(color) == len(order):
            return True
        v = pick()
        taken = {color[u] for u in adj[v] if u in color}
        for c in range(1, min(k, used + 1) + 1):
            if c in taken:
                continue
            nodes += 1
            color[v] = c
            if search(max(used, c)):
                return True
            del color[v]
        return False

    if search(0):
        return OracleResult(True, dict(sorted(color.items())), nodes)
    return OracleResult(False, None, nodes)
