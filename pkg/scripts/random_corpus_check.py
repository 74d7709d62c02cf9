"""Exhaustive separatedness soundness check over the random corpus.

The acceptance suite samples chart pairs on the larger rings to stay inside
its time budget. This script checks every pair of every ring instead.

    python3 scripts/random_corpus_check.py [--size 200] [--seed 20240611]

Prints one line per ring with a violation and a final tally. Exit status is 1
when any pair passes the sufficient test but fails the exact one.
"""

from __future__ import annotations

import argparse
import sys
import time
from itertools import combinations
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from corpus import CorpusConfig, corpus  # noqa: E402
from multiproj.proj import build_proj, is_separated_exact, is_separated_sufficient  # noqa: E402


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = CorpusConfig()
    parser.add_argument("--size", type=int, default=defaults.size)
    parser.add_argument("--seed", type=int, default=defaults.seed)
    args = parser.parse_args(argv)

    cfg = CorpusConfig(size=args.size, seed=args.seed)
    start = time.perf_counter()
    pairs = sufficient = violations = 0
    dim_failures = 0
    for ring in corpus(cfg):
        p = build_proj(ring)
        if p.dimension != ring.num_vars - ring.rank:
            dim_failures += 1
            print(f"dimension {p.dimension} for {ring.free_degrees}")
        bad = 0
        for a, b in combinations(p.charts, 2):
            pairs += 1
            if is_separated_sufficient(p, [a, b]):
                sufficient += 1
                if not is_separated_exact(p, [a, b])[0]:
                    bad += 1
        if bad:
            violations += bad
            print(f"{bad} violations for {ring.free_degrees}")
    elapsed = time.perf_counter() - start
    print(
        f"{cfg.size} rings, {pairs} chart pairs, {sufficient} pass the sufficient test, "
        f"{violations} violations, {dim_failures} dimension failures ({elapsed:.1f}s)"
    )
    return 1 if violations or dim_failures else 0


if __name__ == "__main__":
    sys.exit(main())
