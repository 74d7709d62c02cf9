"""Seeded random corpus of monomial gradings shared by the property suites."""

from __future__ import annotations

import random
from dataclasses import dataclass

from multiproj.grading import GradedPolyRing, relevant_supports
from multiproj.lattice import FgAbelianGroup, GroupHom, IntegerMatrix, rank


@dataclass(frozen=True)
class CorpusConfig:
    size: int = 200
    max_vars: int = 8
    max_rank: int = 4
    entry_range: tuple[int, int] = (-2, 3)
    seed: int = 20240611


def random_grading(rng: random.Random, cfg: CorpusConfig) -> GradedPolyRing:
    """Free grading with a full-dimensional degree cone and a relevant monomial."""
    lo, hi = cfg.entry_range
    while True:
        r = rng.randint(1, cfg.max_rank)
        k = rng.randint(r + 1, cfg.max_vars)
        degs = [tuple(rng.randint(lo, hi) for _ in range(r)) for _ in range(k)]
        # full rank of the degrees gives both a full-dimensional cone and the
        # relevant monomial T_1 ... T_k
        if rank(degs) == r:
            return GradedPolyRing.from_degrees(degs)


def corpus(cfg: CorpusConfig = CorpusConfig()) -> list[GradedPolyRing]:
    rng = random.Random(cfg.seed)
    return [random_grading(rng, cfg) for _ in range(cfg.size)]


def random_surjection(rng: random.Random, r: int) -> GroupHom:
    """Surjective ``Z^r -> Z^s`` with ``1 <= s <= r``: unimodular rows kept partially."""
    s = rng.randint(1, r)
    while True:
        rows = [[rng.randint(-2, 2) for _ in range(r)] for _ in range(s)]
        h = GroupHom(FgAbelianGroup.free(r), FgAbelianGroup.free(s), IntegerMatrix.from_rows(rows, cols=r))
        if h.is_surjective():
            return h


def check_nonempty(ring: GradedPolyRing) -> bool:
    return bool(relevant_supports(ring))
