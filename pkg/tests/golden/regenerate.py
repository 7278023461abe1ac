"""Rewrite the golden CLI outputs listed in manifest.json.

Run after an intentional change to the report format, then review the diff.
"""

import contextlib
import io
import json
from pathlib import Path

from toricaut.cli import main

HERE = Path(__file__).parent


def run(args):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(args)
    return code, buf.getvalue()


if __name__ == "__main__":
    manifest = json.loads((HERE / "manifest.json").read_text())
    for name, case in manifest.items():
        code, out = run(case["args"])
        if code != case["exit"]:
            raise SystemExit(f"{name}: exit {code}, manifest says {case['exit']}")
        (HERE / name).write_text(out, encoding="utf-8")
        print(f"wrote {name}")
