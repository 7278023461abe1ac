"""Input parsing, end-to-end analysis and the built-in example corpus."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field, fields
from math import factorial
from pathlib import Path
from typing import Any, Callable

from .automorphisms import DEFAULT_CAP, AutomorphismAnalysis, Status
from .classgroup import realizes
from .cone import Cone, build_cone, split_degenerate
from .errors import CriteriaMismatchError, InputError
from .surface import remark_operator, remark_operator_check, surface_normal_form, surface_verdict

SCHEMA_VERSION = 1

EXIT_CODES = {
    Status.CONNECTED: 0,
    Status.NOT_CONNECTED: 10,
    Status.DEGENERATE: 11,
}
EXIT_INPUT_ERROR = 2
EXIT_CAP_EXCEEDED = 3

DEGENERATE_COMPONENT_NOTE = "not computed (out of scope; may be infinite)"


@dataclass
class ParsedInput:
    n: int
    rays: list[list[int]]
    rays_are_dual: bool = False
    reduce: bool = False
    # sigma generators derived from dual input, else None
    dual_generators: list[list[int]] | None = None


def _as_int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what} must be an integer, got {x!r}")
    return x


def dual_to_primal_2d(gens) -> list[list[int]]:
    """Rays of ``sigma`` from generators of a two-dimensional ``sigma^vee``."""
    dual = build_cone(2, gens, reduce=True)
    if dual.r != 2 or dual.rank != 2:
        raise InputError("dual cone must be two-dimensional (otherwise sigma contains a line)")
    u1, u2 = dual.rays
    out = []
    for u, other in ((u1, u2), (u2, u1)):
        v = (-u[1], u[0])
        if v[0] * other[0] + v[1] * other[1] < 0:
            v = (-v[0], -v[1])
        out.append(list(v))
    return out


def parse_input(source: str | Path) -> ParsedInput:
    """Parse a JSON cone description given inline or as a file path (``-`` reads stdin)."""
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif source.lstrip().startswith("{"):
        text = source
    elif source == "-":
        import sys

        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    if "lattice_rank" not in doc or "rays" not in doc:
        raise InputError('input needs "lattice_rank" and "rays"')
    n = _as_int(doc["lattice_rank"], "lattice_rank")
    if n < 0:
        raise InputError("lattice_rank must be nonnegative")
    raw = doc["rays"]
    if not isinstance(raw, list):
        raise InputError('"rays" must be a list')
    rays = []
    for ray in raw:
        if not isinstance(ray, list) or len(ray) != n:
            raise InputError(f"ragged ray {ray!r}: expected {n} integer entries")
        rays.append([_as_int(x, "ray entry") for x in ray])
    dual = bool(doc.get("rays_are_dual", False))
    reduce = bool(doc.get("reduce", False))
    unknown = set(doc) - {"lattice_rank", "rays", "rays_are_dual", "reduce"}
    if unknown:
        raise InputError(f"unknown keys {sorted(unknown)}")
    if dual:
        if n != 2:
            raise InputError("rays_are_dual is only supported for lattice_rank 2")
        return ParsedInput(n, dual_to_primal_2d(rays), True, reduce, dual_generators=rays)
    return ParsedInput(n, rays, False, reduce)


# ------------------------------------------------------------------ report


@dataclass
class AnalysisReport:
    schema_version: int
    input: dict
    validation: dict
    degenerate_split: dict | None
    class_group: dict
    blocks: list
    verdict: dict
    component_group: dict
    remark_check: dict | None
    neutral_component: dict | None
    surface: dict | None
    criteria: dict | None = None
    timings: dict | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("criteria", "timings"):
            if d[key] is None:
                del d[key]
        return d

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})

    @property
    def status(self) -> Status:
        return Status(self.verdict["status"])

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


def _one_based(seq):
    return [i + 1 for i in seq]


def _class_dict(an: AutomorphismAnalysis) -> dict:
    g = an.group
    return {
        "free_rank": g.free_rank,
        "torsion": list(g.torsion),
        "description": g.describe(),
        "ray_classes": [list(c.coords) for c in an.classes],
    }


def analyze(
    cone: Cone,
    *,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
    surface: bool = False,
    verbose: bool = False,
    timings: bool = False,
) -> AnalysisReport:
    """Run the whole pipeline on a validated cone."""
    clock = {}
    t0 = time.perf_counter()
    an = AutomorphismAnalysis(cone, cap=cap, jobs=jobs)
    rep = cone.report
    validation = {
        "pointed": True if rep is None else rep.pointed,
        "full_dimensional": an.full_dimensional,
        "rank": cone.rank,
        "rejected_rays": [] if rep is None else [{"ray": list(v), "reason": why} for v, why in rep.rejected_rays],
        "warnings": [] if rep is None else list(rep.warnings),
    }
    split = None
    if not an.full_dimensional:
        sub, q = split_degenerate(cone)
        split = {"q": q, "lattice_rank": sub.n, "rays": [list(v) for v in sub.rays]}
    cls = _class_dict(an)
    clock["class_group"] = time.perf_counter() - t0

    blocks = [_one_based(b) for b in an.blocks]
    verdict = an.verdict
    clock["verdict"] = time.perf_counter() - t0
    verdict_d: dict[str, Any] = {
        "status": verdict.status.value,
        "witness": None,
        "neutral_component_note": verdict.neutral_component_note,
    }
    if verdict.witness is not None:
        verdict_d["witness"] = {
            "tau": _one_based(verdict.witness.tau),
            "L": verdict.witness.L.tolist(),
            "moved": _one_based(verdict.moved),
        }

    remark = neutral = None
    if an.full_dimensional:
        cg = an.component_group
        comp = {
            "computed": True,
            "order": cg.order,
            "abelian": cg.abelian,
            "name": cg.name,
            "description": cg.describe(),
            "element_orders": list(cg.element_orders),
            "generators": list(cg.generators),
            "order_bound": factorial(cone.r),
            "elements": [
                {"tau": _one_based(e.tau), "images": [list(x.coords) for x in e.images]} for e in cg.elements
            ],
            "table": [list(row) for row in cg.table],
            "note": None,
        }
        ri = an.remark_identity
        remark = {"lhs": ri.lhs, "admissible": ri.admissible, "kernel": ri.kernel, "rhs": ri.rhs, "equal": ri.equal}
        ns = an.neutral_component
        neutral = {
            "statement": ns.statement,
            "blocks": [
                {
                    "indices": _one_based(b.indices),
                    "degree": list(b.degree.coords),
                    "size": b.size,
                    "factor": b.factor,
                    "translations": b.translations,
                }
                for b in ns.blocks
            ],
            "grading": [list(d.coords) for d in ns.grading],
        }
    else:
        comp = {"computed": False, "note": DEGENERATE_COMPONENT_NOTE}
    clock["component_group"] = time.perf_counter() - t0

    surf = None
    if surface and cone.n == 2 and cone.r == 2 and an.full_dimensional:
        f = surface_normal_form(cone)
        sv = surface_verdict(f)
        if sv.status != verdict.status or (an.component_group.order != sv.component_order):
            raise CriteriaMismatchError(f"surface criterion disagrees with the general pipeline on {cone.rays}")
        op = remark_operator(f) if sv.status is Status.NOT_CONNECTED else None
        surf = {
            "a": f.a,
            "b": f.b,
            "swapped": f.swapped,
            "basis_change": f.basis_change.tolist(),
            "status": sv.status.value,
            "ray_classes": list(sv.ray_classes),
            "component_order": sv.component_order,
            "remark_operator": None if op is None else op.tolist(),
            "remark_check": None if op is None else remark_operator_check(f),
            "agrees_with_general": True,
        }

    criteria = None
    if verbose and an.full_dimensional:
        criteria = {
            "lattice_admissible": [{"tau": _one_based(p.tau), "L": p.L.tolist()} for p in an.admissible],
            "class_admissible": [_one_based(t) for t in an.class_admissible],
            "sets_equal": an.criteria_agree(),
        }
    clock["total"] = time.perf_counter() - t0

    return AnalysisReport(
        schema_version=SCHEMA_VERSION,
        input={"lattice_rank": cone.n, "rays": [list(v) for v in cone.rays]},
        validation=validation,
        degenerate_split=split,
        class_group=cls,
        blocks=blocks,
        verdict=verdict_d,
        component_group=comp,
        remark_check=remark,
        neutral_component=neutral,
        surface=surf,
        criteria=criteria,
        timings={k: round(v, 6) for k, v in clock.items()} if timings else None,
    )


def analyze_input(parsed: ParsedInput, **kwargs) -> AnalysisReport:
    cone = build_cone(parsed.n, parsed.rays, reduce=parsed.reduce)
    return analyze(cone, **kwargs)


# ------------------------------------------------------------ text output


def _table(rows: list[tuple[str, str]]) -> list[str]:
    width = max((len(k) for k, _ in rows), default=0)
    return [f"  {k.ljust(width)}  {v}" for k, v in rows]


def _fmt(x) -> str:
    if isinstance(x, list):
        return "(" + ",".join(_fmt(y) for y in x) + ")"
    return str(x)


def render_text(report: AnalysisReport) -> str:
    d = report.to_dict()
    out = [f"toricaut report (schema {d['schema_version']})", "", "input"]
    out += _table([
        ("lattice_rank", str(d["input"]["lattice_rank"])),
        ("rays", " ".join(_fmt(v) for v in d["input"]["rays"]) or "-"),
    ])
    v = d["validation"]
    out += ["", "validation"]
    out += _table([(k, str(v[k])) for k in ("pointed", "full_dimensional", "rank")])
    for rej in v["rejected_rays"]:
        out += _table([("rejected", f"{_fmt(rej['ray'])}: {rej['reason']}")])
    for w in v["warnings"]:
        out += _table([("warning", w)])
    if d["degenerate_split"]:
        s = d["degenerate_split"]
        out += ["", "degenerate split"]
        out += _table([
            ("q", str(s["q"])),
            ("lattice_rank", str(s["lattice_rank"])),
            ("rays", " ".join(_fmt(r) for r in s["rays"]) or "-"),
        ])
    c = d["class_group"]
    out += ["", "class group"]
    out += _table([
        ("free_rank", str(c["free_rank"])),
        ("torsion", _fmt(c["torsion"])),
        ("description", c["description"]),
    ] + [(f"[D_{i + 1}]", _fmt(x)) for i, x in enumerate(c["ray_classes"])])
    out += ["", "blocks", "  " + (" ".join("{" + ",".join(map(str, b)) + "}" for b in d["blocks"]) or "-")]
    vd = d["verdict"]
    out += ["", "verdict"]
    rows = [("status", vd["status"])]
    if vd["witness"]:
        rows += [
            ("witness tau", _fmt(vd["witness"]["tau"])),
            ("witness L", _fmt(vd["witness"]["L"])),
            ("moved", _fmt(vd["witness"]["moved"])),
        ]
    rows.append(("note", vd["neutral_component_note"]))
    out += _table(rows)
    cg = d["component_group"]
    out += ["", "component group"]
    if cg["computed"]:
        out += _table([
            ("order", str(cg["order"])),
            ("abelian", str(cg["abelian"])),
            ("name", str(cg["name"])),
            ("element_orders", _fmt(cg["element_orders"])),
            ("order_bound", str(cg["order_bound"])),
            ("generators", _fmt(cg["generators"])),
        ])
        for i, e in enumerate(cg["elements"]):
            out += _table([(f"element {i}", f"tau={_fmt(e['tau'])} images={_fmt(e['images'])}")])
        out += ["  table"] + ["    " + " ".join(str(x).rjust(2) for x in row) for row in cg["table"]]
    else:
        out += _table([("note", cg["note"])])
    if d["remark_check"]:
        r = d["remark_check"]
        out += ["", "quotient order identity"]
        out += _table([(k, str(r[k])) for k in ("lhs", "admissible", "kernel", "rhs", "equal")])
    if d["neutral_component"]:
        nc = d["neutral_component"]
        out += ["", "neutral component"]
        out += _table([
            (
                "block " + _fmt(b["indices"]),
                f"degree {_fmt(b['degree'])}  size {b['size']}  {b['factor']}"
                + ("  [translations]" if b["translations"] else ""),
            )
            for b in nc["blocks"]
        ] + [("grading", " ".join(_fmt(g) for g in nc["grading"]))])
    if d["surface"]:
        s = d["surface"]
        out += ["", "surface normal form"]
        out += _table([(k, _fmt(s[k])) for k in (
            "a", "b", "swapped", "basis_change", "status", "ray_classes",
            "component_order", "remark_operator", "remark_check", "agrees_with_general",
        )])
    if "criteria" in d:
        cr = d["criteria"]
        out += ["", "criteria"]
        out += _table([
            ("lattice_admissible", " ".join(_fmt(p["tau"]) for p in cr["lattice_admissible"])),
            ("class_admissible", " ".join(_fmt(t) for t in cr["class_admissible"])),
            ("sets_equal", str(cr["sets_equal"])),
        ])
    if "timings" in d:
        out += ["", "timings"] + _table([(k, f"{v:.6f}s") for k, v in d["timings"].items()])
    return "\n".join(out) + "\n"


# -------------------------------------------------------- example corpus


Check = tuple[str, bool]


@dataclass
class ExampleResult:
    name: str
    report: AnalysisReport
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)


def _cg(rep: AnalysisReport):
    return rep.component_group


def _affine_checks(n: int) -> Callable[[Cone, AnalysisReport], list[Check]]:
    def checks(cone, rep):
        nc = rep.neutral_component
        return [
            ("Cl trivial", rep.class_group["free_rank"] == 0 and rep.class_group["torsion"] == []),
            ("Connected", rep.status is Status.CONNECTED),
            ("component group order 1", _cg(rep)["order"] == 1),
            ("one block of size n", rep.blocks == [list(range(1, n + 1))]),
            (
                f"neutral component GL({n}) with translations",
                len(nc["blocks"]) == 1 and nc["blocks"][0]["size"] == n and nc["blocks"][0]["translations"],
            ),
            ("all n! permutations admissible", rep.remark_check["admissible"] == factorial(n)),
        ]

    return checks


def _torus_checks(n: int):
    def checks(cone, rep):
        return [
            ("NotConnectedDegenerate", rep.status is Status.DEGENERATE),
            (f"torus factor q = {n}", rep.degenerate_split is not None and rep.degenerate_split["q"] == n),
            ("component group not computed", not _cg(rep)["computed"]),
        ]

    return checks


def _ex1(cone, rep):
    s = rep.surface
    return [
        ("Cl = Z/2", rep.class_group["torsion"] == [2] and rep.class_group["free_rank"] == 0),
        ("classes (1,1)", rep.class_group["ray_classes"] == [[1], [1]]),
        ("Connected", rep.status is Status.CONNECTED),
        ("surface normal form (a,b) = (1,2)", (s["a"], s["b"]) == (1, 2)),
    ]


def _ex2(cone, rep):
    s = rep.surface
    g = AutomorphismAnalysis(cone).group
    dual = parse_input('{"lattice_rank":2,"rays":[[1,0],[2,3]],"rays_are_dual":true}')
    return [
        ("Cl = Z/3", rep.class_group["torsion"] == [3] and rep.class_group["free_rank"] == 0),
        ("classes ([D1],[D2]) = (2,1)", realizes(g, cone, 0, [3], [((), (2,)), ((), (1,))])),
        ("NotConnected", rep.status is Status.NOT_CONNECTED),
        ("witness swaps the rays", rep.verdict["witness"]["tau"] == [2, 1]),
        ("witness L = [[2,3],[-1,-2]]", rep.verdict["witness"]["L"] == [[2, 3], [-1, -2]]),
        ("component group Z/2", _cg(rep)["order"] == 2 and _cg(rep)["name"] == "Z/2"),
        ("surface normal form (a,b) = (2,3)", (s["a"], s["b"]) == (2, 3)),
        ("swapping operator verified", s["remark_check"] is True),
        ("dual input (1,0),(2,3) gives rays (0,1),(3,-2)", dual.rays == [[0, 1], [3, -2]]),
    ]


def _ex3(cone, rep):
    s = rep.surface
    return [
        ("Connected", rep.status is Status.CONNECTED),
        ("surface normal form (a,b) = (2,5)", (s["a"], s["b"]) == (2, 5)),
        ("only the identity permutation is admissible", rep.remark_check["admissible"] == 1),
    ]


def _ex4(cone, rep):
    g = AutomorphismAnalysis(cone).group
    nc = rep.neutral_component
    return [
        ("Cl = Z", rep.class_group["free_rank"] == 1 and rep.class_group["torsion"] == []),
        ("classes (1,-1,1,-1)", realizes(g, cone, 1, [], [((1,), ()), ((-1,), ()), ((1,), ()), ((-1,), ())])),
        ("blocks {1,3},{2,4}", rep.blocks == [[1, 3], [2, 4]]),
        ("NotConnected", rep.status is Status.NOT_CONNECTED),
        ("component group Z/2", _cg(rep)["order"] == 2 and _cg(rep)["name"] == "Z/2"),
        (
            "neutral component GL(2) x GL(2) without translations",
            [b["factor"] for b in nc["blocks"]] == ["GL(2)", "GL(2)"],
        ),
    ]


def _ex5(cone, rep):
    g = AutomorphismAnalysis(cone).group
    target = [((), (1, 0)), ((), (0, 1)), ((), (1, 1))]
    cg = _cg(rep)
    return [
        ("Cl = Z/2 + Z/2", rep.class_group["torsion"] == [2, 2] and rep.class_group["free_rank"] == 0),
        ("classes (1,0),(0,1),(1,1)", realizes(g, cone, 0, [2, 2], target)),
        ("NotConnected", rep.status is Status.NOT_CONNECTED),
        ("component group order 6", cg["order"] == 6),
        ("nonabelian", cg["abelian"] is False),
        ("identified as S3", cg["name"] == "S3"),
        ("bound r! = 6 attained", cg["order"] == cg["order_bound"] == 6),
        ("three singleton blocks", rep.blocks == [[1], [2], [3]]),
    ]


def _corpus() -> dict[str, tuple[int, list[list[int]], Callable]]:
    return {
        "ex1": (2, [[0, 1], [2, -1]], _ex1),
        "ex2": (2, [[0, 1], [3, -2]], _ex2),
        "ex3": (2, [[0, 1], [5, -2]], _ex3),
        "ex4": (3, [[1, -1, 0], [1, 0, -1], [0, 1, 0], [0, 0, 1]], _ex4),
        "ex5": (3, [[2, 0, 1], [0, 2, 1], [0, 0, 1]], _ex5),
    }


ALL_EXAMPLES = ["affine-space-1", "affine-space-2", "affine-space-3", "affine-space-4",
                "ex1", "ex2", "ex3", "ex4", "ex5", "torus-1", "torus-2"]


def example_input(name: str) -> tuple[int, list[list[int]], Callable]:
    corpus = _corpus()
    if name in corpus:
        return corpus[name]
    for prefix in ("affine-space-", "torus-"):
        suffix = name[len(prefix):]
        if name.startswith(prefix) and suffix.isdigit() and int(suffix) >= 1:
            n = int(suffix)
            if prefix == "torus-":
                return n, [], _torus_checks(n)
            return n, [[int(i == j) for j in range(n)] for i in range(n)], _affine_checks(n)
    raise InputError(f"unknown example {name!r}; known: ex1..ex5, affine-space-N, torus-N, all")


def run_example(name: str, **kwargs) -> ExampleResult:
    n, rays, checks = example_input(name)
    cone = build_cone(n, rays)
    kwargs.setdefault("surface", True)
    rep = analyze(cone, **kwargs)
    return ExampleResult(name, rep, checks(cone, rep))


def examples(name: str = "all", **kwargs) -> list[ExampleResult]:
    names = ALL_EXAMPLES if name == "all" else [name]
    return [run_example(nm, **kwargs) for nm in names]


def load_schema() -> dict:
    """JSON Schema for :class:`AnalysisReport` documents."""
    from importlib.resources import files

    return json.loads(files("toricaut").joinpath("report_schema.json").read_text(encoding="utf-8"))
