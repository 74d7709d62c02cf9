"""Freeze oracle-derived fixtures and golden CLI outputs under tests/.

    python3 scripts/freeze_fixtures.py            # both
    python3 scripts/freeze_fixtures.py --f1       # oracle fixture only
    python3 scripts/freeze_fixtures.py --golden   # CLI golden files only

The F1 fixture is computed by the brute-force oracles in tests/oracles.py
alone (Gale dual by box search, chambers by subset-cone enumeration), never
by the package's chamber code.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from itertools import product
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402
from golden_cases import GOLDEN  # noqa: E402

F1_RAYS = [(1, 0), (0, 1), (-1, 1), (0, -1)]

def f1_fixture(box: int = 6) -> dict:
    degrees = [tuple(col) for col in zip(*oracles.saturated_kernel_by_search([list(r) for r in zip(*F1_RAYS)]))]
    r = len(degrees[0])
    chambers: dict[tuple, dict] = {}
    for w in product(range(-box, box + 1), repeat=r):
        ineqs = oracles.chamber_by_subsets(degrees, w)
        if ineqs is None:
            continue
        key = tuple(sorted((tuple(sorted(i + 1 for i in s)) for s in oracles.relevant_at(degrees, w)), key=lambda t: (len(t), t)))
        rays = sorted(oracles.rays_of_inequalities(ineqs, r))
        entry = chambers.setdefault(key, {"rays": rays, "sample": list(w)})
        if entry["rays"] != rays:
            raise AssertionError(f"inconsistent oracle chambers for {key}")
    out = []
    for key in sorted(chambers):
        supports = [set(s) for s in key]
        minimal = [sorted(s) for s in supports if not any(t < s for t in supports)]
        contracted = [j for j in range(1, len(degrees) + 1) if all(j in s for s in supports)]
        out.append({
            "rays": [list(x) for x in chambers[key]["rays"]],
            "sample_point": chambers[key]["sample"],
            "relevant_supports": [list(s) for s in key],
            "minimal_supports": minimal,
            "contracted": contracted,
        })
    return {"fan_rays": [list(x) for x in F1_RAYS], "degrees": [list(d) for d in degrees], "chambers": out}


def run_cli(args: list[str]) -> tuple[int, str]:
    from multiproj.cli import main

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(args)
    return code, buf.getvalue()


def freeze_golden() -> None:
    import os

    os.chdir(ROOT)
    target = ROOT / "tests" / "golden"
    target.mkdir(exist_ok=True)
    for stem, args in GOLDEN:
        code, out = run_cli(args)
        if code != 0:
            raise SystemExit(f"{stem}: exit code {code}")
        (target / f"{stem}.json").write_text(out)
        print(f"wrote tests/golden/{stem}.json")


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--f1", action="store_true")
    ap.add_argument("--golden", action="store_true")
    args = ap.parse_args(argv)
    both = not (args.f1 or args.golden)
    if args.f1 or both:
        from multiproj.serialize import dumps

        path = ROOT / "tests" / "fixtures" / "f1_chambers.json"
        path.parent.mkdir(exist_ok=True)
        path.write_text(dumps(f1_fixture()))
        print(f"wrote {path.relative_to(ROOT)}")
    if args.golden or both:
        freeze_golden()


if __name__ == "__main__":
    main()
