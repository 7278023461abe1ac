import contextlib
import io
import json
import re
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from toricaut.cli import main
from toricaut.errors import InputError
from toricaut.report import (
    ALL_EXAMPLES,
    AnalysisReport,
    analyze_input,
    examples,
    load_schema,
    parse_input,
    render_text,
)

GOLDEN = Path(__file__).parent / "golden"
MANIFEST = json.loads((GOLDEN / "manifest.json").read_text())


def run(args):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(args)
    return code, buf.getvalue()


@pytest.mark.parametrize("name", sorted(MANIFEST))
def test_golden_byte_for_byte(name):
    case = MANIFEST[name]
    code, out = run(case["args"])
    assert code == case["exit"]
    assert out == (GOLDEN / name).read_text(encoding="utf-8")


@pytest.mark.parametrize("name", sorted(n for n in MANIFEST if n.endswith(".json")))
def test_golden_documents_validate(name):
    doc = json.loads((GOLDEN / name).read_text())
    if "error" in doc:
        assert set(doc) == {"schema_version", "error"}
        assert set(doc["error"]) == {"kind", "message", "exit_code"}
        assert doc["error"]["exit_code"] == MANIFEST[name]["exit"]
    else:
        jsonschema.validate(doc, load_schema())


def test_schema_rejects_unknown_fields():
    doc = json.loads((GOLDEN / "ex2.json").read_text())
    doc["extra"] = 1
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, load_schema())


# ------------------------------------------------------------ parsing


@pytest.mark.parametrize(
    "text",
    [
        "[1, 2]",
        '{"rays": []}',
        '{"lattice_rank": 2, "rays": [[1, 0, 0]]}',
        '{"lattice_rank": 2, "rays": [[1, "x"]]}',
        '{"lattice_rank": 2, "rays": [[1, 0]], "colour": 1}',
        '{"lattice_rank": 3, "rays": [[1, 0, 0]], "rays_are_dual": true}',
        '{"lattice_rank": -1, "rays": []}',
        '{"lattice_rank": 2, "rays": [[1.5, 0]]}',
    ],
)
def test_parse_errors(text):
    with pytest.raises(InputError):
        parse_input(text)


def test_parse_dual():
    p = parse_input('{"lattice_rank":2,"rays":[[1,0],[2,3]],"rays_are_dual":true}')
    assert p.rays == [[0, 1], [3, -2]]
    assert p.dual_generators == [[1, 0], [2, 3]]


def test_parse_file_and_missing(tmp_path):
    f = tmp_path / "cone.json"
    f.write_text('{"lattice_rank":2,"rays":[[0,1],[3,-2]]}', encoding="utf-8")
    assert parse_input(str(f)).rays == [[0, 1], [3, -2]]
    assert parse_input(f).n == 2
    with pytest.raises(InputError):
        parse_input(str(tmp_path / "missing.json"))


def test_stdin_input():
    proc = subprocess.run(
        [sys.executable, "-m", "toricaut", "analyze", "-", "--format", "json"],
        input='{"lattice_rank":2,"rays":[[0,1],[3,-2]]}',
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 10
    assert json.loads(proc.stdout)["component_group"]["name"] == "Z/2"


def test_text_errors_go_to_stderr(capsys):
    assert main(["analyze", '{"lattice_rank":2,"rays":[[0,0]]}']) == 2
    captured = capsys.readouterr()
    assert captured.out == "" and "error (input)" in captured.err


def test_unknown_example():
    assert run(["examples", "ex9", "--format", "json"])[0] == 2


# ------------------------------------------------------- text vs json


def text_sections(text):
    sections, current = {}, None
    for line in text.splitlines():
        if line and not line.startswith(" "):
            current = sections.setdefault(line, [])
        elif line.strip() and current is not None:
            current.append(line.strip())
    return sections


def kv(lines):
    out = {}
    for line in lines:
        m = re.match(r"(\S+(?: \S+)?)\s{2,}(.*)$", line)
        if m:
            out[m.group(1)] = m.group(2)
    return out


def fmt(x):
    if isinstance(x, list):
        return "(" + ",".join(fmt(y) for y in x) + ")"
    return str(x)


@pytest.mark.parametrize("name", ALL_EXAMPLES + ["ex2-verbose"])
def test_text_and_json_agree(name):
    if name == "ex2-verbose":
        p = parse_input('{"lattice_rank":2,"rays":[[0,1],[3,-2]]}')
        rep = analyze_input(p, surface=True, verbose=True)
    else:
        rep = examples(name)[0].report
    d = rep.to_dict()
    s = text_sections(render_text(rep))
    c = kv(s["class group"])
    assert c["free_rank"] == str(d["class_group"]["free_rank"])
    assert c["torsion"] == fmt(d["class_group"]["torsion"])
    for i, x in enumerate(d["class_group"]["ray_classes"]):
        assert c[f"[D_{i + 1}]"] == fmt(x)
    blocks = ["{" + ",".join(map(str, b)) + "}" for b in d["blocks"]]
    assert s["blocks"][0].split() == (blocks or ["-"])
    v = kv(s["verdict"])
    assert v["status"] == d["verdict"]["status"]
    if d["verdict"]["witness"]:
        w = d["verdict"]["witness"]
        assert (v["witness tau"], v["witness L"], v["moved"]) == (fmt(w["tau"]), fmt(w["L"]), fmt(w["moved"]))
    cg = d["component_group"]
    t = kv(s["component group"])
    if cg["computed"]:
        for key in ("order", "element_orders", "order_bound", "generators"):
            assert t[key] == fmt(cg[key])
        for i, e in enumerate(cg["elements"]):
            assert t[f"element {i}"] == f"tau={fmt(e['tau'])} images={fmt(e['images'])}"
        rows = s["component group"][-len(cg["table"]):]
        assert [list(map(int, r.split())) for r in rows] == cg["table"]
        r = kv(s["quotient order identity"])
        assert all(r[k] == str(d["remark_check"][k]) for k in ("lhs", "admissible", "kernel", "rhs", "equal"))
        n = kv(s["neutral component"])
        for b in d["neutral_component"]["blocks"]:
            assert n[f"block {fmt(b['indices'])}"].startswith(f"degree {fmt(b['degree'])}  size {b['size']}")
        assert n["grading"] == " ".join(fmt(g) for g in d["neutral_component"]["grading"])
    else:
        split = kv(s["degenerate split"])
        assert split["q"] == str(d["degenerate_split"]["q"])
        assert split["lattice_rank"] == str(d["degenerate_split"]["lattice_rank"])
    if d["surface"]:
        sf = kv(s["surface normal form"])
        for key, val in d["surface"].items():
            assert sf[key] == fmt(val)
    if "criteria" in d:
        cr = kv(s["criteria"])
        assert cr["lattice_admissible"] == " ".join(fmt(p["tau"]) for p in d["criteria"]["lattice_admissible"])


# ------------------------------------------------------- misc contract


def test_round_trip():
    rep = examples("ex5")[0].report
    again = AnalysisReport.from_dict(json.loads(rep.to_json()))
    assert again == rep
    assert again.exit_code == 10


def test_timings_opt_in():
    base = json.loads(run(["analyze", '{"lattice_rank":2,"rays":[[0,1],[3,-2]]}', "--format", "json"])[1])
    timed = json.loads(
        run(["analyze", '{"lattice_rank":2,"rays":[[0,1],[3,-2]]}', "--format", "json", "--timings"])[1]
    )
    assert "timings" not in base and "total" in timed["timings"]
    jsonschema.validate(timed, load_schema())


def test_jobs_do_not_change_output():
    args = ["analyze", '{"lattice_rank":3,"rays":[[2,0,1],[0,2,1],[0,0,1]]}', "--format", "json", "--verbose"]
    assert run(args) == run(args + ["--jobs", "2"])


def test_examples_command():
    code, out = run(["examples", "all"])
    assert code == 0
    assert out.strip().endswith(f"{len(ALL_EXAMPLES)}/{len(ALL_EXAMPLES)} examples passed")
    assert "FAIL" not in out
    code, out = run(["examples", "ex5", "--format", "json"])
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    jsonschema.validate(doc["examples"][0]["report"], load_schema())


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toricaut", "examples", "ex2"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout + proc.stderr
