"""Command-line entry point: ``iccolor <command> ...``.

Exit status: 0 success, 1 invalid input, 2 infeasible or anomaly,
3 an internal invariant that the coloring theorem guarantees was violated.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import formats
from .embedding import is_valid_cyclic_coloring, validate_hypotheses
from .errors import (CounterexampleCandidate, DrawingError, FormatError, GenerationError,
                     InternalInvariantError, InvalidInstanceError, OracleSizeError)

OK, INVALID, INFEASIBLE, INTERNAL = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        self.code = code
        self.message = message


def _read_pg(path: str):
    try:
        return formats.read_pg(path)
    except OSError as exc:
        raise _Exit(INVALID, f"{path}: {exc.strerror}") from None


def _read_drawing(path: str):
    from .planarize import ICDrawing

    try:
        return ICDrawing.read(path)
    except OSError as exc:
        raise _Exit(INVALID, f"{path}: {exc.strerror}") from None


# -- commands -----------------------------------------------------------------


def cmd_check(args, out, err) -> int:
    g = _read_pg(args.file)
    report = validate_hypotheses(g)
    if report.ok:
        out.write(f"ok: {g.num_vertices} vertices, {g.num_edges} edges, "
                  f"{sum(1 for f in g.faces() if f.size == 4)} 4-faces\n")
        return OK
    err.write(str(report) + "\n")
    return INVALID


def _color_one(path: str, trace: bool) -> tuple[int, str, str]:
    """Color one file; returns (status, stdout text, stderr text)."""
    from .reducer import color

    try:
        g = _read_pg(path)
        result = color(g)
        if not is_valid_cyclic_coloring(g, result.coloring):
            return INTERNAL, "", f"{path}: produced coloring failed re-verification\n"
        note = "".join(line + "\n" for line in result.trace) if trace else ""
        return OK, formats.dumps_coloring(result.coloring), note
    except _Exit as exc:
        return exc.code, "", exc.message + "\n"
    except FormatError as exc:
        return INVALID, "", f"{path}: {exc}\n"
    except InvalidInstanceError as exc:
        return INVALID, "", f"{path}: invalid instance\n{exc.report}\n"
    except CounterexampleCandidate as exc:
        dump = formats.dumps_pg(exc.graph, "counterexample candidate")
        return INTERNAL, "", f"{path}: {exc}\n{dump}{_audit_text(exc.graph)}"
    except InternalInvariantError as exc:
        return INTERNAL, "", f"{path}: {type(exc).__name__}: {exc}\n"


def _audit_text(g) -> str:
    from .discharge import audit

    try:
        return audit(g).text(with_log=False)
    except Exception as exc:  # diagnostics only
        return f"audit failed: {exc}\n"


def cmd_color(args, out, err) -> int:
    jobs = max(1, args.jobs)
    items = [(p, args.trace) for p in args.files]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_color_one, *zip(*items)))
    else:
        results = [_color_one(*it) for it in items]
    status = OK
    for (path, _), (code, text, note) in zip(items, results):
        if len(items) > 1:
            out.write(f"# {path}\n")
        out.write(text)
        err.write(note)
        status = max(status, code)
    return status


def cmd_convert(args, out, err) -> int:
    from .planarize import planarize

    drawing = _read_drawing(args.file)
    planar, cmap = planarize(drawing)
    stem = Path(args.out) if args.out else Path(args.file).with_suffix("")
    pg_path, map_path = stem.with_suffix(".pg"), stem.with_suffix(".map")
    pg_path.write_text(formats.dumps_pg(planar))
    map_path.write_text(cmap.dumps(planar))
    out.write(f"wrote {pg_path}\nwrote {map_path}\n")
    return OK


def cmd_color_drawing(args, out, err) -> int:
    from .planarize import color_drawing

    drawing = _read_drawing(args.file)
    coloring = color_drawing(drawing)
    for u, w in drawing.abstract_edges():
        if coloring[u] == coloring[w]:
            raise _Exit(INTERNAL, f"lifted coloring is improper on {u}-{w}")
    out.write(formats.dumps_coloring(coloring))
    return OK


def cmd_oracle(args, out, err) -> int:
    from .testkit.oracle import oracle_color

    g = _read_pg(args.file)
    res = oracle_color(g, args.k, max_n=args.max_n)
    out.write(f"{'feasible' if res.feasible else 'infeasible'} k={args.k} nodes={res.nodes}\n")
    if res.witness is not None:
        out.write(formats.dumps_coloring(res.witness))
    return OK if res.feasible else INFEASIBLE


def cmd_audit(args, out, err) -> int:
    from .discharge import audit

    g = _read_pg(args.file)
    report = validate_hypotheses(g)
    if not report.ok:
        err.write(str(report) + "\n")
        return INVALID
    rep = audit(g)
    out.write(rep.to_json() if args.json else rep.text(with_log=not args.no_log))
    if rep.final_total != -12 or rep.initial_total != -12:
        err.write("charge is not conserved\n")
        return INTERNAL
    if rep.anomalies:
        err.write(f"{len(rep.anomalies)} negative elements without a nearby configuration\n")
        return INFEASIBLE
    return OK


def cmd_gen(args, out, err) -> int:
    from .testkit.generate import GenSpec, gen_instance

    try:
        spec = GenSpec(args.n, args.quads, args.seed, args.mode)
    except ValueError as exc:
        raise _Exit(INVALID, str(exc)) from None
    inst = gen_instance(spec)
    comment = f"gen n={spec.n} q={spec.q} seed={spec.seed} mode={spec.mode}"
    text = inst.dumps(comment) if spec.mode == "ic-drawing" else formats.dumps_pg(inst, comment)
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return OK


def cmd_degen(args, out, err) -> int:
    from .reducer import color_degenerate

    g = _read_pg(args.file)
    coloring = color_degenerate(g)
    out.write(formats.dumps_coloring(coloring))
    return OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="iccolor", description="Cyclic 5-coloring of plane graphs "
                                "with vertex-disjoint 4-faces, and drawings with independent crossings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="validate a .pg instance")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("color", help="cyclic 5-coloring of .pg instances")
    s.add_argument("files", nargs="+", metavar="file")
    s.add_argument("--trace", action="store_true", help="write the reduction trace to stderr")
    s.add_argument("--jobs", type=int, default=1, help="color several files in parallel")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("convert", help="planarize a .icd drawing into .pg plus a .map sidecar")
    s.add_argument("file")
    s.add_argument("--out", help="output stem (default: input path without suffix)")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("color-drawing", help="proper 5-coloring of a .icd drawing")
    s.add_argument("file")
    s.set_defaults(func=cmd_color_drawing)

    s = sub.add_parser("oracle", help="exhaustive cyclic k-colorability check")
    s.add_argument("file")
    s.add_argument("--k", type=int, default=5)
    s.add_argument("--max-n", type=int, default=None,
                   help="size guard (default: $ICCOLOR_MAX_ORACLE_N or 20)")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("audit", help="charge ledger and negative-element diagnostics")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.add_argument("--no-log", action="store_true", help="omit the rule application log")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("gen", help="generate a random instance")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--quads", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mode", default="triangulation",
                   choices=("triangulation", "with-quads", "ic-drawing"))
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("degen", help="greedy coloring for disjoint faces of any size")
    s.add_argument("file")
    s.set_defaults(func=cmd_degen)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; here 2 means infeasible
        return INVALID if exc.code else OK
    try:
        return args.func(args, out, err)
    except _Exit as exc:
        err.write(exc.message + "\n")
        return exc.code
    except InvalidInstanceError as exc:
        err.write(f"invalid instance\n{exc.report}\n")
        return INVALID
    except (FormatError, DrawingError, OracleSizeError, GenerationError) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return INVALID
    except InternalInvariantError as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
