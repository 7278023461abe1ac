"""Acceptance criteria, one test per criterion, each reported as a PASS/FAIL line."""

import contextlib
import io
import json
import random
import time
from math import factorial, gcd
from pathlib import Path

import jsonschema

from toricaut.automorphisms import AutomorphismAnalysis, Status
from toricaut.cli import main
from toricaut.cone import build_cone, transform
from toricaut.lattice import (
    IntMatrix,
    hermite_row_basis,
    is_unimodular,
    lattice_equal,
    smith_normal_form,
)
from toricaut.report import examples, load_schema
from toricaut.surface import remark_operator_check, surface_normal_form, surface_verdict

from conftest import random_cones, random_unimodular, record_criterion

RANDOM_SUITE_BUDGET = 60.0
_suite_seconds: dict[int, float] = {}
SUITE2 = random_cones(2024, 500, ns=(2, 3), rmax=5, lo=-4, hi=4)


def _criterion(number, title, failures, started=None, detail=""):
    if started is not None:
        _suite_seconds[number] = time.perf_counter() - started
        detail = (detail + "; " if detail else "") + f"{_suite_seconds[number]:.2f}s"
    ok = not failures
    record_criterion(f"criterion {number}", title, ok, detail if ok else f"{len(failures)} failures, first: {failures[0]}")
    assert ok, failures[:5]


# --------------------------------------------------------------- 1


def test_criterion_1_golden_examples():
    failures = []
    slow = []
    expected_status = {
        "ex1": Status.CONNECTED, "ex2": Status.NOT_CONNECTED, "ex3": Status.CONNECTED,
        "ex4": Status.NOT_CONNECTED, "ex5": Status.NOT_CONNECTED,
        "torus-1": Status.DEGENERATE, "torus-2": Status.DEGENERATE,
    }
    for name in [f"affine-space-{n}" for n in range(1, 5)] + list(expected_status):
        t0 = time.perf_counter()
        (res,) = examples(name)
        dt = time.perf_counter() - t0
        if dt >= 1.0:
            slow.append((name, dt))
        failures += [(name, check) for check, ok in res.checks if not ok]
        want = expected_status.get(name, Status.CONNECTED)
        if res.report.status is not want:
            failures.append((name, f"status {res.report.status}"))
    # checks not covered by the corpus assertions
    rep = {n: examples(n)[0].report for n in ("ex1", "ex2", "ex4", "ex5")}
    if rep["ex1"].class_group["ray_classes"] != [[1], [1]]:
        failures.append(("ex1", "classes"))
    if rep["ex4"].class_group["ray_classes"] != [[1], [-1], [1], [-1]]:
        failures.append(("ex4", "classes"))
    if rep["ex5"].component_group["element_orders"] != [1, 2, 2, 2, 3, 3]:
        failures.append(("ex5", "element orders"))
    failures += [(n, f"took {dt:.2f}s") for n, dt in slow]
    _criterion(1, "golden examples", failures)


# --------------------------------------------------------------- 2


def test_criterion_2_criterion_equivalence():
    t0 = time.perf_counter()
    failures = []
    for c in SUITE2:
        a = AutomorphismAnalysis(c)
        if {p.tau for p in a.admissible} != set(a.class_admissible):
            failures.append(("sets differ", c.rays))
        elif a.lattice_verdict() != a.class_verdict():
            failures.append(("verdicts differ", c.rays))
    assert len(SUITE2) >= 500
    _criterion(2, f"criterion equivalence on {len(SUITE2)} cones", failures, t0)


# --------------------------------------------------------------- 3


def test_criterion_3_order_bound_and_identity():
    t0 = time.perf_counter()
    failures = []
    for c in SUITE2:
        a = AutomorphismAnalysis(c)
        if a.component_group.order > factorial(c.r):
            failures.append(("bound", c.rays))
        if not a.remark_identity.equal:
            failures.append(("identity", c.rays, tuple(a.remark_identity)))
    _criterion(3, "component-group bound and quotient order identity", failures, t0)


# --------------------------------------------------------------- 4


def _invariants(c):
    a = AutomorphismAnalysis(c)
    cg = a.component_group
    return a.verdict.status, (a.group.free_rank, a.group.torsion), cg.order, tuple(sorted(cg.element_orders))


def test_criterion_4_gl_invariance():
    t0 = time.perf_counter()
    rng = random.Random(4)
    failures = []
    cones = random_cones(404, 100, ns=(2, 3), rmax=5, lo=-4, hi=4)
    for c in cones:
        u = random_unimodular(rng, c.n, bound=5)
        if max(abs(x) for row in u for x in row) > 5 or not is_unimodular(IntMatrix.from_rows(u)):
            failures.append(("bad U", u))
            continue
        if _invariants(c) != _invariants(transform(c, u)):
            failures.append((c.rays, u))
    _criterion(4, "GL_n(Z)-invariance on 100 cones", failures, t0)


# --------------------------------------------------------------- 5


def test_criterion_5_surface_cross_check():
    t0 = time.perf_counter()
    failures = []
    count = 0
    for b in range(1, 31):
        for a in range(b):
            if gcd(a, b) != 1:
                continue
            count += 1
            c = build_cone(2, [[0, 1], [b, -a]])
            f = surface_normal_form(c)
            sv = surface_verdict(f)
            an = AutomorphismAnalysis(c)
            if sv.status is not an.verdict.status:
                failures.append(("verdict", a, b))
            if sv.status is Status.NOT_CONNECTED:
                if not remark_operator_check(f):
                    failures.append(("operator", a, b))
                if an.component_group.order != 2:
                    failures.append(("order", a, b))
    _criterion(5, f"surface cross-check on {count} pairs (a,b)", failures, t0)


# --------------------------------------------------------------- 6


def test_criterion_6_kernel_algebra():
    t0 = time.perf_counter()
    rng = random.Random(6)
    failures = []
    for _ in range(1000):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        a = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)], n)
        d = smith_normal_form(a)
        if d.U @ a @ d.W != d.S or not (is_unimodular(d.U) and is_unimodular(d.W)):
            failures.append(("snf", a.tolist()))
        if any(d.invariants[i + 1] % d.invariants[i] for i in range(len(d.invariants) - 1)):
            failures.append(("divisibility", a.tolist()))
        h = hermite_row_basis(a).basis
        if hermite_row_basis(h).basis != h:
            failures.append(("hnf idempotence", a.tolist()))
        # equivalence relation: reflexive, symmetric, transitive on row-equivalent copies
        u1 = IntMatrix.from_rows(random_unimodular(rng, m))
        u2 = IntMatrix.from_rows(random_unimodular(rng, m))
        b = u1 @ a
        c = u2 @ b
        if not lattice_equal(a, a):
            failures.append(("reflexive", a.tolist()))
        if not (lattice_equal(a, b) and lattice_equal(b, a)):
            failures.append(("symmetric", a.tolist()))
        if not (lattice_equal(b, c) and lattice_equal(a, c)):
            failures.append(("transitive", a.tolist()))
        # symmetry also on a pair that usually differs
        other = IntMatrix.from_rows([[2 * x for x in row] for row in a.data], n)
        if lattice_equal(a, other) != lattice_equal(other, a):
            failures.append(("symmetric pair", a.tolist()))
    _criterion(6, "kernel algebra on 1000 random matrices", failures, t0)


# --------------------------------------------------------------- 7


def _run(args):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(args)
    return code, buf.getvalue()


def test_criterion_7_cli_contract():
    failures = []
    code, out = _run(["examples", "all"])
    if code != 0:
        failures.append(("examples all exit", code))
    golden = Path(__file__).parent / "golden"
    manifest = json.loads((golden / "manifest.json").read_text())
    schema = load_schema()
    for name, case in sorted(manifest.items()):
        code, out = _run(case["args"])
        if code != case["exit"]:
            failures.append((name, "exit", code))
        if out != (golden / name).read_text(encoding="utf-8"):
            failures.append((name, "bytes differ"))
        if name.endswith(".json"):
            doc = json.loads(out)
            if "error" in doc:
                if doc["error"]["exit_code"] != case["exit"]:
                    failures.append((name, "error exit code"))
            else:
                try:
                    jsonschema.validate(doc, schema)
                except jsonschema.ValidationError as exc:
                    failures.append((name, exc.message))
    _criterion(7, f"CLI contract on {len(manifest)} golden cases", failures)


# --------------------------------------------------------------- budget


def test_randomized_suites_within_budget():
    # runs last in file order; suites that did not run count as zero
    total = sum(_suite_seconds.values())
    record_criterion("timing", "randomized suites within budget", total < RANDOM_SUITE_BUDGET, f"{total:.2f}s total")
    assert total < RANDOM_SUITE_BUDGET
