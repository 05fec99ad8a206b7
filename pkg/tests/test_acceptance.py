"""Acceptance gate: one PASS/FAIL line per primary criterion.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time

import pytest

from matimage.cli import RunConfig, cmd_verify_commutator, cmd_verify_table
from matimage.commutator import image_subspace
from matimage.gf import kth_root, make_field
from matimage.mat import Matrix2, jordan_form
from matimage.oracle import Subspace, enumerate_image
from matimage.polys import CommutatorPoly, PowerSumPoly
from matimage.waring import ImagePattern, classify_image, solve, table_rows

F2, F3, F5, F9 = make_field(2), make_field(3), make_field(5), make_field(3, 2)
RESULTS: dict[str, tuple[bool, str]] = {}
TRACE_ZERO = [Matrix2.of(F3, [[1, 0], [0, -1]]), Matrix2.of(F3, [[0, 1], [0, 0]]), Matrix2.of(F3, [[0, 0], [1, 0]])]


def _record(name, ok, detail):
    RESULTS[name] = (ok, detail)
    return ok, detail


def _max_time(records):
    return max((r["wall_time"] or 0.0) for r in records if r.get("wall_time") is not None)


def table_linear():
    t0 = time.perf_counter()
    recs = cmd_verify_table(RunConfig(F3, 1, 1, count=5))
    total = time.perf_counter() - t0
    bad = [r["id"] for r in recs if r["status"] != "pass"]
    rows = {r["row"] for r in recs}
    ok = not bad and len(rows) == len(table_rows()) and _max_time(recs) <= 10 and total <= 900
    return _record(
        "table, linear case (q=3, k=1)",
        ok,
        f"{len(recs) - len(bad)}/{len(recs)} instances over {len(rows)} rows equal the oracle; "
        f"max {_max_time(recs):.3f}s per instance, {total:.1f}s total; non-pass: {bad[:5]}",
    )


def table_power():
    recs = cmd_verify_table(RunConfig(F5, 7, 7, count=5))
    gated = [r for r in recs if r["gate"]]
    bad = [r["id"] for r in gated if r["status"] != "pass"]
    ok = bool(gated) and len(gated) == len(recs) and not bad and _max_time(recs) <= 5
    return _record(
        "table, power case (q=5, k=7)",
        ok,
        f"{len(gated) - len(bad)}/{len(gated)} gated instances equal the oracle; "
        f"max {_max_time(recs):.3f}s per instance; failures: {bad[:5]}",
    )


def row_space_rows():
    compared, bad = 0, []
    for field in (F2, F3, F5):
        for k1 in (1, 2, 3):
            for k2 in (1, 2, 3):
                recs = cmd_verify_table(RunConfig(field, k1, k2, count=5, timing=False))
                for r in recs:
                    if r.get("table_image", "full") == ImagePattern.FULL.value:
                        continue
                    compared += 1
                    if r["status"] != "pass":
                        bad.append((str(field), k1, k2, r["id"]))
    return _record(
        "row-space rows are gate-free (q in 2,3,5; k in 1,2,3)",
        compared > 0 and not bad,
        f"{compared - len(bad)}/{compared} row-space instances equal the oracle; failures: {bad[:5]}",
    )


def commutator_certification():
    t0 = time.perf_counter()
    recs = cmd_verify_commutator(RunConfig(F3, random_pairs=1000, seed=0))
    total = time.perf_counter() - t0
    not_closed = [r["id"] for r in recs if not r["oracle"]["is_subspace"]]
    failed = [r["id"] for r in recs if r["status"] != "pass"]
    inv_bad, eq_bad, row_bad = [], [], []
    for r in recs:
        A, B = (Matrix2.parse(F3, r["inputs"][k]) for k in "AB")
        if (A - B).det() and r["oracle"]["dim"] != 4:
            inv_bad.append(r["id"])
        if A == B:
            # the image is A times the trace-zero matrices: the 27-element
            # trace-zero space itself when A is scalar, |A sl2| in general
            expected = Subspace.span_of(F3, [A @ E for E in TRACE_ZERO])
            sizes_ok = r["oracle"]["size"] == 3**expected.dim and r["oracle"]["dim"] == expected.dim
            if not sizes_ok or (A.is_scalar() and (r["oracle"]["size"] != 27 or expected != Subspace.span_of(F3, TRACE_ZERO))):
                eq_bad.append(r["id"])
    # diagonal A with a zero entry against the matching upper triangular B
    for mu in F3.nonzero():
        A = Matrix2.diag(F3, mu, F3.zero)
        B = Matrix2(mu, F3.one, F3.zero, F3.zero)
        sub, cert = image_subspace(CommutatorPoly(A, B))
        if not (cert.is_subspace and sub.dim == 2 and all(not m.c and not m.d for m in sub.matrices())):
            row_bad.append(str(mu))
    ok = not (not_closed or failed or inv_bad or eq_bad or row_bad) and total <= 1200
    return _record(
        "commutator images are subspaces (q=3)",
        ok,
        f"{len(recs) - len(not_closed)}/{len(recs)} images closed, {len(failed)} failed records, "
        f"difference-invertible dim!=4: {len(inv_bad)}, equal-constant image wrong: {len(eq_bad)}, "
        f"first-row cases wrong: {row_bad}; {total:.1f}s",
    )


def solver_membership():
    rng = random.Random(2024)
    bad = 0
    for _ in range(100):
        A = Matrix2.from_code(F3, rng.randrange(1, 81))
        B = Matrix2.from_code(F3, rng.randrange(1, 81))
        poly = PowerSumPoly(A, B, rng.randint(1, 4), rng.randint(1, 4))
        C = Matrix2.from_code(F3, rng.randrange(81))
        found = solve(poly, C)
        if (found is not None) != (C in enumerate_image(poly)) or (found is not None and poly(*found) != C):
            bad += 1
    return _record("solver verdicts match the oracle (q=3)", bad == 0, f"{100 - bad}/100 instances agree")


def unit_properties():
    problems = []
    rng = random.Random(99)
    for field in (F3, F5, F9):
        for _ in range(1000):
            a, b, c = (field.from_code(rng.randrange(field.q)) for _ in range(3))
            if not ((a + b) + c == a + (b + c) and (a * b) * c == a * (b * c) and a + b == b + a
                    and a * b == b * a and a * (b + c) == a * b + a * c and (not a or a * a.inv() == field.one)):
                problems.append(f"axioms {field}")
                break
    for m in Matrix2.all(F3):
        jd = jordan_form(m)
        if not (jd.P.det() and jd.P @ m.embed(jd.J.field) @ jd.P.inv() == jd.J):
            problems.append(f"jordan {m}")
    for k in range(1, 13):
        powers = {x**k for x in F5.elements()}
        for a in F5.elements():
            r = kth_root(a, k)
            if (r is None) == (a in powers) or (r is not None and r**k != a):
                problems.append(f"root {a}^(1/{k})")

    def rand_inv():
        while True:
            q = Matrix2.from_code(F5, rng.randrange(625))
            if q.det():
                return q

    for _ in range(200):
        A = Matrix2.from_code(F5, rng.randrange(1, 625))
        B = Matrix2.of(F5, [[A.a * 2, A.b * 2], [A.c, A.d]]) if rng.random() < 0.5 else Matrix2.from_code(F5, rng.randrange(1, 625))
        if B.is_zero():
            continue
        Q = rand_inv()
        p, pq = classify_image(PowerSumPoly(A, B, 2, 3)), classify_image(PowerSumPoly(A.conj(Q), B.conj(Q), 2, 3))
        if p.variant is not pq.variant or p.subspace().conj(Q) != pq.subspace():
            problems.append(f"power-sum equivariance {A} {B}")
    for _ in range(200):
        A = Matrix2.from_code(F5, rng.randrange(1, 625))
        B = A + Matrix2.of(F5, [[1, 2], [2, 4]]) * rng.randrange(1, 5) if rng.random() < 0.5 else Matrix2.from_code(F5, rng.randrange(1, 625))
        if B.is_zero():
            continue
        Q = rand_inv()
        s, _ = image_subspace(CommutatorPoly(A, B))
        sq, _ = image_subspace(CommutatorPoly(A.conj(Q), B.conj(Q)))
        if s.conj(Q) != sq:
            problems.append(f"commutator equivariance {A} {B}")
    return _record(
        "unit property suites",
        not problems,
        "field axioms (F_3, F_5, F_9), Jordan over M(2,F_3), roots over F_5 k<=12, "
        f"equivariance for both maps; problems: {problems[:5]}",
    )


CRITERIA = [table_linear, table_power, row_space_rows, commutator_certification, solver_membership, unit_properties]


def _line(name):
    ok, detail = RESULTS[name]
    return f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"


@pytest.fixture(scope="module", autouse=True)
def _report(request):
    yield
    tr = request.config.pluginmanager.getplugin("terminalreporter")
    lines = [_line(name) for name in RESULTS]
    if tr is not None:
        tr.write_sep("=", "acceptance criteria")
        for line in lines:
            tr.write_line(line)
    else:
        print("\n".join(lines))


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    ok, detail = criterion()
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for criterion in CRITERIA:
        ok, _ = criterion()
        print(_line(next(reversed(RESULTS))), flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
