"""Rewrite expected/*.out from the current CLI. Review the diff before committing."""

import contextlib
import io
import json
import os
import tempfile
import shutil
from pathlib import Path

from stingy.cli import main

HERE = Path(__file__).parent


def run_case(argv, workdir):
    out = io.StringIO()
    cwd = os.getcwd()
    os.chdir(workdir)
    try:
        with contextlib.redirect_stdout(out):
            code = main(argv)
    finally:
        os.chdir(cwd)
    return code, out.getvalue()


if __name__ == "__main__":
    cases = json.loads((HERE / "cases.json").read_text())
    (HERE / "expected").mkdir(exist_ok=True)
    for name, case in cases.items():
        with tempfile.TemporaryDirectory() as tmp:
            for f in HERE.glob("*.json"):
                shutil.copy(f, tmp)
            code, text = run_case(case["argv"], tmp)
        assert code == case["exit"], (name, code)
        (HERE / "expected" / f"{name}.out").write_text(text)
        print(f"{name}: exit {code}")
