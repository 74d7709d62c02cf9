"""Print the standard worked examples through the command-line interface.

    python3 scripts/run_examples.py

Each bundled spec under specs/ is run through ``multiproj proj`` and a one-line
summary is printed with its wall time.
"""

from __future__ import annotations

import contextlib
import io
import json
import sys
import time
from pathlib import Path

from multiproj.cli import main as cli_main

ROOT = Path(__file__).resolve().parent.parent


def summarize(doc: dict) -> str:
    if doc["status"] == "empty":
        return "empty spectrum"
    n = len(doc["charts"])
    text = f"{n} chart{'s' if n != 1 else ''}, dim {doc['dimension']}, separated={str(doc['separated']).lower()}"
    if doc.get("separation_witness"):
        a, b = doc["separation_witness"]
        text += f", witness {a} / {b}"
    return text


def main() -> int:
    for path in sorted((ROOT / "specs").glob("*.json")):
        buf = io.StringIO()
        start = time.perf_counter()
        with contextlib.redirect_stdout(buf):
            code = cli_main(["proj", str(path)])
        elapsed = time.perf_counter() - start
        if code:
            print(f"{path.stem:20s} exit {code}")
            continue
        print(f"{path.stem:20s} {summarize(json.loads(buf.getvalue()))} ({elapsed * 1000:.0f} ms)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
