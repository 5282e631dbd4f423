"""Text formats: ``.pg`` plane graphs, ``.icd`` drawings, ``.map`` sidecars, colorings.

``.pg``::

    # comment
    pg <n> <m>
    v <id>: <ccw neighbor ids, parallel edges repeated>

``.icd`` is a ``.pg`` file plus one line ``x <dummy ids>`` flagging crossing
vertices. Faces are always derived from the rotation, never stored.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Mapping

from .embedding import PlaneGraph
from .errors import FormatError


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse(text: str, allow_crossings: bool):
    header = None
    rotation: dict[int, list[int]] = {}
    dummies: set[int] = set()
    for lineno, line in _lines(text):
        tok = line.split()
        try:
            if tok[0] == "pg":
                if header is not None or len(tok) != 3:
                    raise FormatError(f"line {lineno}: bad header")
                header = (int(tok[1]), int(tok[2]))
            elif tok[0] == "v":
                if header is None:
                    raise FormatError(f"line {lineno}: vertex line before header")
                head, _, rest = line[1:].partition(":")
                if not _:
                    raise FormatError(f"line {lineno}: missing ':'")
                v = int(head)
                if v in rotation:
                    raise FormatError(f"line {lineno}: vertex {v} listed twice")
                rotation[v] = [int(x) for x in rest.split()]
            elif tok[0] == "x" and allow_crossings:
                dummies.update(int(x) for x in tok[1:])
            else:
                raise FormatError(f"line {lineno}: unknown record {tok[0]!r}")
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: {exc}") from None
    if header is None:
        raise FormatError("missing 'pg <n> <m>' header")
    n, m = header
    if len(rotation) != n:
        raise FormatError(f"header announces {n} vertices, found {len(rotation)}")
    deg = sum(len(x) for x in rotation.values())
    if deg != 2 * m:
        raise FormatError(f"header announces {m} edges, rotations hold {deg / 2:g}")
    unknown = dummies - set(rotation)
    if unknown:
        raise FormatError(f"crossing flags name unknown vertices {sorted(unknown)}")
    return PlaneGraph.from_rotation(rotation), dummies


def loads_pg(text: str) -> PlaneGraph:
    return _parse(text, allow_crossings=False)[0]


def loads_icd(text: str) -> tuple[PlaneGraph, set[int]]:
    return _parse(text, allow_crossings=True)


def dumps_pg(g: PlaneGraph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"pg {g.num_vertices} {g.num_edges}")
    for v, nbrs in g.rotation().items():
        out.append(f"v {v}: " + " ".join(map(str, nbrs)) if nbrs else f"v {v}:")
    return "\n".join(out) + "\n"


def dumps_icd(g: PlaneGraph, dummies: Iterable[int], comment: str | None = None) -> str:
    return dumps_pg(g, comment) + "x " + " ".join(map(str, sorted(dummies))) + "\n"


def read_pg(path) -> PlaneGraph:
    return loads_pg(Path(path).read_text())


def read_icd(path) -> tuple[PlaneGraph, set[int]]:
    return loads_icd(Path(path).read_text())


def dumps_coloring(coloring: Mapping[int, int]) -> str:
    return "".join(f"v {v} {coloring[v]}\n" for v in sorted(coloring))


def loads_coloring(text: str) -> dict[int, int]:
    out = {}
    for lineno, line in _lines(text):
        tok = line.split()
        if len(tok) != 3 or tok[0] != "v":
            raise FormatError(f"line {lineno}: expected 'v <id> <color>'")
        out[int(tok[1])] = int(tok[2])
    return out
