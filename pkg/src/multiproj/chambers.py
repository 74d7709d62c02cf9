"""Chamber decomposition of the degree cone.

For a generic degree ``w`` the relevant supports at ``w`` are the ``I`` with
``w`` in the interior of ``cone(deg T_i : i in I)``; their chart cones form
the fan of the GIT model at ``w``.  Chambers are the maximal open regions on
which this collection is constant.

Enumeration cuts the degree cone by every hyperplane spanned by ``r - 1``
degree vectors, then merges adjacent cells whose relevant-support collections
agree (the arrangement can be finer than the chamber structure when
``r >= 3``).  The merged union is convex, so each chamber is the cone over the
rays of its cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .cones import RationalCone, cone_from_generators, intersect, is_face
from .grading import GradedPolyRing, LimitExceeded, support_key
from .lattice import FgAbelianGroup, IntegerMatrix, Vector, cokernel, dot, kernel_basis, primitive, rank
from .proj import character_lattice, ray_images

MAX_RANK = 6
MAX_VARS = 12


class WallPointError(ValueError):
    """The degree lies on a wall (or the boundary), not in an open chamber."""

    def __init__(self, point, incident: list[int]):
        self.point = tuple(point)
        self.incident = list(incident)
        super().__init__(f"{self.point} lies on a wall; incident chambers {self.incident}")


@dataclass(frozen=True)
class Chamber:
    cone: RationalCone
    sample_point: Vector
    relevant_supports: tuple[frozenset[int], ...]
    fan: tuple[RationalCone, ...]
    maximal_cones: tuple[RationalCone, ...]
    ray_images: tuple[Vector, ...] = field(default=(), compare=False, repr=False)

    @property
    def minimal_supports(self) -> list[frozenset[int]]:
        s = self.relevant_supports
        return [a for a in s if not any(b < a for b in s)]


@dataclass(frozen=True)
class ChamberFan:
    ring: GradedPolyRing
    degree_cone: RationalCone
    chambers: tuple[Chamber, ...]
    walls: tuple[tuple[int, int, RationalCone], ...]
    M_basis: tuple[Vector, ...]

    def adjacency(self) -> dict[int, list[int]]:
        adj = {i: [] for i in range(len(self.chambers))}
        for a, b, _ in self.walls:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def locate(self, w: Sequence) -> int:
        w = tuple(w)
        if not self.degree_cone.contains(w):
            raise ValueError(f"{w} is not in the degree cone")
        for i, c in enumerate(self.chambers):
            if c.cone.interior_contains(w):
                return i
        raise WallPointError(w, [i for i, c in enumerate(self.chambers) if c.cone.contains(w)])


@dataclass(frozen=True)
class ModelSummary:
    dimension: int
    complete: bool
    simplicial: bool
    separated: bool
    n_maximal_cones: int
    rays: tuple[Vector, ...]
    variables_used: tuple[int, ...]
    contracted: tuple[int, ...]


@dataclass(frozen=True)
class EmbeddingReport:
    picard_group: FgAbelianGroup
    picard_matches_grading: bool
    effective_cone: RationalCone
    chamber_fan: ChamberFan
    ample_chamber: int | None
    all_gen: bool
    conditional: bool
    summaries: tuple[ModelSummary, ...]


# ---------------------------------------------------------------------------


def _hyperplanes(degrees: Sequence[Vector], r: int) -> list[Vector]:
    if r == 1:
        return [(1,)]
    dirs = sorted({primitive(d) for d in degrees if any(d)})
    out = set()
    for sub in combinations(dirs, r - 1):
        if rank(sub) != r - 1:
            continue
        (normal,) = kernel_basis(IntegerMatrix.from_rows(sub))
        out.add(normal)
    return sorted(out)


def _split(cell: RationalCone, h: Vector) -> list[RationalCone]:
    vals = [dot(h, g) for g in cell.generators]
    if not (any(v > 0 for v in vals) and any(v < 0 for v in vals)):
        return [cell]
    out = []
    for s in (h, tuple(-a for a in h)):
        part = RationalCone.from_inequalities(list(cell.facets) + [s], cell.equations, cell.ambient_dim)
        if part.is_full_dimensional():
            out.append(part)
    return out


def arrangement_cells(ring: GradedPolyRing) -> list[RationalCone]:
    """Full-dimensional cells of the degree-vector hyperplane arrangement in the degree cone."""
    cells = [ring.degree_cone()]
    for h in _hyperplanes(ring.free_degrees, ring.rank):
        cells = [part for c in cells for part in _split(c, h)]
    return cells


class _SupportCones:
    """Cones of all full-rank supports, built once per ring."""

    def __init__(self, ring: GradedPolyRing):
        fd = ring.free_degrees
        r = ring.rank
        self.cones = []
        for size in range(r, ring.num_vars + 1):
            for sub in combinations(range(ring.num_vars), size):
                vecs = [fd[i] for i in sub]
                if rank(vecs) == r:
                    self.cones.append((frozenset(sub), cone_from_generators(vecs, r)))

    def relevant_at(self, w: Sequence) -> tuple[frozenset[int], ...]:
        return tuple(sorted((s for s, c in self.cones if c.interior_contains(w)), key=support_key))


def _fan(supports, v, m) -> tuple[tuple[RationalCone, ...], tuple[RationalCone, ...]]:
    cones = {}
    for s in supports:
        cones[s] = cone_from_generators([v[j] for j in range(len(v)) if j not in s], m)
    minimal = [a for a in supports if not any(b < a for b in supports)]
    fan = tuple(sorted(set(cones.values()), key=lambda c: (c.dimension(), c.rays)))
    maximal = tuple(sorted({cones[s] for s in minimal}, key=lambda c: c.rays))
    return fan, maximal


@lru_cache(maxsize=64)
def enumerate_chambers(ring: GradedPolyRing, max_rank: int = MAX_RANK, max_vars: int = MAX_VARS) -> ChamberFan:
    r, k = ring.rank, ring.num_vars
    if r > max_rank or k > max_vars:
        raise LimitExceeded(f"chamber enumeration limited to rank <= {max_rank} and <= {max_vars} variables")
    dc = ring.degree_cone()
    if r == 0 or not dc.is_full_dimensional():
        raise ValueError("chamber enumeration needs a full-dimensional degree cone")
    sc = _SupportCones(ring)
    groups: dict[tuple, list[RationalCone]] = {}
    for cell in arrangement_cells(ring):
        key = sc.relevant_at(cell.relative_interior_point())
        groups.setdefault(key, []).append(cell)

    M = character_lattice(ring)
    v = ray_images(M, k)
    chambers = []
    for key, cells in groups.items():
        cone = cone_from_generators([g for c in cells for g in c.generators], r)
        sample = cone.relative_interior_point()
        assert sc.relevant_at(sample) == key
        fan, maximal = _fan(key, v, len(M))
        chambers.append(Chamber(cone, sample, key, fan, maximal, tuple(v)))
    chambers.sort(key=lambda c: (c.cone.rays, c.cone.lineality))

    walls = []
    for i, j in combinations(range(len(chambers)), 2):
        meet = intersect(chambers[i].cone, chambers[j].cone)
        if meet.dimension() == r - 1:
            walls.append((i, j, meet))
    return ChamberFan(ring, dc, tuple(chambers), tuple(walls), M)


def chamber_of(ring: GradedPolyRing, w: Sequence) -> Chamber:
    cf = enumerate_chambers(ring)
    return cf.chambers[cf.locate(w)]


# ---------------------------------------------------------------------------
# fans


def fan_axioms_hold(cones: Sequence[RationalCone]) -> bool:
    """Pairwise intersections are faces of both cones."""
    for a, b in combinations(cones, 2):
        meet = intersect(a, b)
        if not (is_face(meet, a) and is_face(meet, b)):
            return False
    return True


def fan_is_complete(maximal_cones: Sequence[RationalCone], m: int) -> bool:
    """Support equals ``N_R``: pure full-dimensional, every facet shared by exactly two cones.

    Valid for collections already satisfying :func:`fan_axioms_hold`.
    """
    if m == 0:
        return True
    if not maximal_cones or any(not c.is_full_dimensional() for c in maximal_cones):
        return False
    counts: dict[RationalCone, int] = {}
    for c in maximal_cones:
        for f in c.facets:
            facet = RationalCone.from_inequalities(c.facets, [f], m)
            counts[facet] = counts.get(facet, 0) + 1
    return all(n == 2 for n in counts.values())


def chamber_model_summary(c: Chamber) -> ModelSummary:
    v = c.ray_images
    k = len(v)
    m = len(v[0]) if v else 0
    used = sorted({j for s in c.relevant_supports for j in range(k) if j not in s})
    rays = sorted({r for cone in c.fan for r in cone.rays})
    return ModelSummary(
        dimension=m,
        complete=fan_is_complete(c.maximal_cones, m),
        simplicial=all(x.is_simplicial() for x in c.fan),
        separated=fan_axioms_hold(c.maximal_cones),
        n_maximal_cones=len(c.maximal_cones),
        rays=tuple(rays),
        variables_used=tuple(used),
        contracted=tuple(j for j in range(k) if j not in used),
    )


def embedding_report(
    ring: GradedPolyRing, ample_class: Sequence | None = None, all_gen: bool = False
) -> EmbeddingReport:
    cf = enumerate_chambers(ring)
    k = ring.num_vars
    M = cf.M_basis
    pic, _ = cokernel(IntegerMatrix.from_columns(M, k) if M else IntegerMatrix.zero(k, 0))
    ample = None
    if ample_class is not None:
        w = tuple(Fraction(a) for a in ample_class)
        if len(w) != ring.rank:
            raise ValueError("ample class has the wrong dimension")
        ample = cf.locate(w)
    return EmbeddingReport(
        picard_group=pic,
        picard_matches_grading=pic == ring.group and ring.degree_map.hom.is_surjective(),
        effective_cone=cf.degree_cone,
        chamber_fan=cf,
        ample_chamber=ample,
        all_gen=all_gen,
        conditional=not all_gen,
        summaries=tuple(chamber_model_summary(c) for c in cf.chambers),
    )
