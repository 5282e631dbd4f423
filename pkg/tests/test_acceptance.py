"""Acceptance criteria. Each test prints one ``criterion N ...: PASS|FAIL`` line.

Run on its own with ``pytest tests/test_acceptance.py -v`` or as a script.
"""

import io
import time
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import pytest

from iccolor.cli import main
from iccolor.discharge import AMOUNTS, apply_rules, firing_rules, initial_charges
from iccolor.embedding import cyclic_adjacency, is_valid_cyclic_coloring, validate_hypotheses
from iccolor.formats import dumps_pg, loads_coloring
from iccolor.reducer import (KINDS, apply_reduction, color, color_degenerate, extend_coloring,
                             find_configuration, find_matches, verify_match)
from iccolor.testkit.fixtures import FIXTURES
from iccolor.testkit.generate import corpus, gen_big_faces
from iccolor.testkit.oracle import oracle_color
from iccolor.testkit.shapes import prism

HERE = Path(__file__).parent
CORPUS_SIZE = 1000

# extension steps promised by the reducibility arguments: (cyclic degree, uncolored, repeats)
PROMISED = {
    "SepCycle2": [],
    "SepCycle3": [],
    "LowDegree": [(5, 0, 1)],
    "NonPentagonalFive": [(5, 0, 1)],
    "SquareFiveFive": [(6, 1, 1), (6, 0, 2)],
    "CloseFiveOnQuad": [(6, 1, 1), (5, 0, 1)],
    "CloseSixOnQuad": [(7, 1, 2), (5, 0, 1)],
    "Pentagon65": [(6, 1, 1), (7, 1, 2), (5, 0, 1)],
    "Pentagon66": [(7, 1, 2), (7, 1, 2), (5, 0, 1)],
}


@lru_cache(maxsize=None)
def shared_corpus():
    return tuple(corpus(CORPUS_SIZE, 10, 300, seed=0))


@pytest.fixture
def say(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number} {title}: {'PASS' if ok else 'FAIL'} ({detail})")
    return emit


def test_criterion_1_charge_identity(say):
    t0 = time.perf_counter()
    bad = []
    for spec, g in shared_corpus():
        before, after = initial_charges(g).total(), apply_rules(g).total()
        if before != -12 or after != -12:
            bad.append((spec, before, after))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    say(1, "charge identity", ok,
        f"{CORPUS_SIZE} instances, {len(bad)} off -12/1, {elapsed:.1f}s")
    assert not bad, bad[:3]
    assert elapsed < 60


def test_criterion_2_configuration_completeness(say, tmp_path):
    t0 = time.perf_counter()
    missing = []
    for spec, g in shared_corpus():
        if find_configuration(g) is None:
            dump = tmp_path / f"none_{spec.seed}.pg"
            dump.write_text(dumps_pg(g, repr(spec)))
            missing.append(str(dump))
    elapsed = time.perf_counter() - t0
    ok = not missing and elapsed < 60
    say(2, "configuration completeness", ok,
        f"{CORPUS_SIZE} instances, {len(missing)} without a configuration, {elapsed:.1f}s")
    assert not missing, missing
    assert elapsed < 60


def test_criterion_3_theorem_at_desk_scale(say):
    worst, failures = 0.0, []
    for spec, g in shared_corpus():
        t0 = time.perf_counter()
        try:
            col = color(g).coloring
            valid = is_valid_cyclic_coloring(g, col, 5)
        except Exception as exc:
            valid = False
            failures.append((spec, repr(exc)))
        dt = time.perf_counter() - t0
        worst = max(worst, dt)
        if not valid and (not failures or failures[-1][0] != spec):
            failures.append((spec, "invalid coloring"))
    ok = not failures and worst <= 5
    say(3, "theorem at desk scale", ok,
        f"{CORPUS_SIZE - len(failures)}/{CORPUS_SIZE} valid, worst {worst:.2f}s per instance")
    assert not failures, failures[:3]
    assert worst <= 5


def test_criterion_4_oracle_agreement(say):
    t0 = time.perf_counter()
    disagree = []
    small = list(corpus(200, 4, 12, seed=4))
    for spec, g in small:
        res = oracle_color(g, 5)
        mine = color(g).coloring
        if not (res.feasible and is_valid_cyclic_coloring(g, res.witness, 5)
                and is_valid_cyclic_coloring(g, mine, 5)):
            disagree.append(spec)
    p = prism()
    prism_ok = not oracle_color(p, 5).feasible and oracle_color(p, 6).feasible
    elapsed = time.perf_counter() - t0
    ok = not disagree and prism_ok and elapsed < 120
    say(4, "oracle agreement", ok,
        f"{len(small)} instances n<=12, {len(disagree)} disagreements, "
        f"prism k=5 infeasible and k=6 feasible: {prism_ok}, {elapsed:.1f}s")
    assert not disagree and prism_ok and elapsed < 120


def test_criterion_5_k5_end_to_end(say):
    out, err = io.StringIO(), io.StringIO()
    t0 = time.perf_counter()
    code = main(["color-drawing", str(HERE / "fixtures" / "k5.icd")], out, err)
    elapsed = time.perf_counter() - t0
    col = loads_coloring(out.getvalue())
    proper = all(col[a] != col[b] for a in col for b in col if a < b)
    ok = code == 0 and len(col) == 5 and len(set(col.values())) == 5 and proper and elapsed < 1
    say(5, "K5 end to end", ok, f"exit {code}, colors {sorted(col.values())}, {elapsed:.2f}s")
    assert ok


def _round_trip(kind):
    g = FIXTURES[kind]()
    t0 = time.perf_counter()
    m = find_matches(g, kind)[0]
    problems = verify_match(g, m)
    reduced, plan = apply_reduction(g, m)
    if not all(validate_hypotheses(h).ok for h in reduced):
        problems.append("reduced graph fails the hypotheses")
    seen = []
    col = extend_coloring(g, plan, [color(h).coloring for h in reduced], seen)
    if not is_valid_cyclic_coloring(g, col, 5):
        problems.append("extended coloring invalid")
    script = [(s.cyclic_degree, s.uncolored, s.repeats) for s in plan.script]
    if script != PROMISED[kind]:
        problems.append(f"script {script} differs from {PROMISED[kind]}")
    for s, (cyc, unc, rep) in zip(seen, PROMISED[kind]):
        if s.cyclic_degree != cyc or s.uncolored != unc or s.repeats < rep or s.distinct > 4:
            problems.append(f"vertex {s.vertex} saw {s}")
    if kind.startswith("SepCycle"):
        shared = plan.cycle
        if len({col[v] for v in shared}) != len(shared):
            problems.append("cycle colors collide")
    return problems, time.perf_counter() - t0


def test_criterion_6_reduction_round_trips(say):
    report, worst = {}, 0.0
    for kind in KINDS:
        problems, dt = _round_trip(kind)
        worst = max(worst, dt)
        report[kind] = problems
    failed = [k for k, p in report.items() if p]
    ok = not failed and worst < 1
    say(6, "reduction round-trips", ok,
        f"{len(KINDS) - len(failed)}/{len(KINDS)} kinds, worst {worst:.2f}s")
    assert not failed, {k: report[k] for k in failed}
    assert worst < 1


def _expected(dw, a, b, side):
    """The rule table restated independently of the implementation."""
    if dw == 5:
        if (a == 6) != (b == 6):
            return "P5a"
        if a >= 7 and b >= 7:
            return "P5b"
    if dw == 6:
        if {a, b} == {5, 6}:
            return "P6a"
        if a + b >= 12:
            return "P6b"
    if dw == 7 and side == "one-sided":
        return "P7a" if a == b == 5 else "P7b"
    if dw == 7 and side == "double-sided":
        return "P7c"
    if dw >= 8:
        return "P8plus"
    return None


def test_criterion_7_rule_guards(say):
    t0 = time.perf_counter()
    allowed = {Fraction(1, 5), Fraction(1, 4), Fraction(3, 10), Fraction(2, 5), Fraction(1, 2)}
    cases, errors = 0, []
    for dw in range(5, 10):
        for a in range(5, 10):
            for b in range(5, 10):
                for side in ("one-sided", "double-sided"):
                    cases += 1
                    fired = firing_rules(dw, a, b, side)
                    want = _expected(dw, a, b, side)
                    if len(fired) > 1 or [r for r, _ in fired] != ([want] if want else []):
                        errors.append((dw, a, b, side, fired))
                    for r, amount in fired:
                        if amount not in allowed or amount != AMOUNTS[r]:
                            errors.append((dw, a, b, side, r, amount))
    elapsed = time.perf_counter() - t0
    ok = not errors and elapsed < 1
    say(7, "rule-guard exactness", ok, f"{cases} degree patterns, {len(errors)} mismatches")
    assert not errors, errors[:5]


def test_criterion_8_degeneracy_bound(say):
    import random

    t0 = time.perf_counter()
    rng = random.Random(8)
    over, runs = [], 0
    for i in range(100):
        max_face = (4, 5, 6)[i % 3]
        g = gen_big_faces(rng.randint(30, 200), rng.randint(1, 4), max_face, i)
        bound = max(f.size for f in g.faces()) + 3
        col = color_degenerate(g)
        adj = cyclic_adjacency(g)
        proper = all(col[u] != col[w] for u in adj for w in adj[u])
        runs += 1
        if not proper or max(col.values()) > bound:
            over.append(i)
    elapsed = time.perf_counter() - t0
    ok = not over and elapsed < 60
    say(8, "degeneracy bound", ok, f"{runs} instances, {len(over)} over max face + 3, {elapsed:.1f}s")
    assert not over and elapsed < 60


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
