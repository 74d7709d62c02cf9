"""Multihomogeneous spectra of monomially graded polynomial rings.

``Proj^D k[T_1..T_k]`` is a toric prevariety with torus ``Spec k[M]``,
``M = ker(d)``.  The chart ``D_+(f)`` of a relevant monomial with support ``I``
is the affine toric variety of the simplicial cone

    sigma_I = cone(v_j : j not in I)  in  N = Hom(M, Z),

where ``v_j`` is the restriction of the j-th coordinate functional to ``M``.
Charts glue along ``D_+(fg)``, i.e. ``sigma_I`` and ``sigma_J`` are glued
along ``sigma_{I u J}``; the prevariety is separated iff that gluing cone is
exactly ``sigma_I cap sigma_J`` for every pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .cones import (
    RationalCone,
    cone_from_generators,
    has_full_dim_intersection,
    lineality_split_hilbert_basis,
    simplicial_meet_generators,
)
from .grading import (
    DEFAULT_MAX_VARS,
    GradedPolyRing,
    LimitExceeded,
    is_relevant_support,
    relevant_supports,
    support_cone,
)
from .lattice import FgAbelianGroup, GroupHom, IntegerMatrix, Vector, dot, hermite_normal_form, is_zero, kernel_basis, solve_rational

DEFAULT_MAX_CHARTS = 25
DEFAULT_DEGREE_BOUND = 64


@dataclass(frozen=True)
class Chart:
    support: frozenset[int]
    degree_cone: RationalCone
    sigma: RationalCone
    chart_semigroup: tuple[Vector, ...] | None = None

    def label(self, names: Sequence[str]) -> str:
        return "*".join(names[i] for i in sorted(self.support))


@dataclass(frozen=True)
class ProjData:
    ring: GradedPolyRing
    M_basis: tuple[Vector, ...]
    charts: tuple[Chart, ...]
    dimension: int | None
    separated: bool
    separation_witness: tuple[frozenset[int], frozenset[int]] | None = None
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def empty(self) -> bool:
        return not self.charts

    @property
    def supports(self) -> list[frozenset[int]]:
        return [c.support for c in self.charts]

    def chart(self, support: Iterable[int]) -> Chart:
        return self._index[frozenset(support)]

    def ray_images(self) -> list[Vector]:
        return ray_images(self.M_basis, self.ring.num_vars)


def character_lattice(ring: GradedPolyRing) -> tuple[Vector, ...]:
    """Z-basis of ``M = ker(d)``, torsion of ``D`` included."""
    return tuple(ring.degree_map.hom.kernel())


def ray_images(M_basis: Sequence[Vector], k: int) -> list[Vector]:
    """``v_j = e_j^* restricted to M``, in coordinates dual to ``M_basis``."""
    return [tuple(b[j] for b in M_basis) for j in range(k)]


def chart_cone(ring: GradedPolyRing, support: Iterable[int], M_basis: Sequence[Vector] | None = None) -> RationalCone:
    support = frozenset(support)
    if not is_relevant_support(ring, support):
        raise ValueError(f"support {sorted(support)} is not relevant")
    if M_basis is None:
        M_basis = character_lattice(ring)
    v = ray_images(M_basis, ring.num_vars)
    sigma = cone_from_generators([v[j] for j in range(ring.num_vars) if j not in support], len(M_basis))
    assert sigma.is_simplicial(), "chart cone of a relevant support must be simplicial"
    return sigma


def chart_semigroup_generators(
    ring: GradedPolyRing, support: Iterable[int], M_basis: Sequence[Vector] | None = None
) -> list[Vector]:
    """Generators of ``sigma^dual cap M`` in ``M_basis`` coordinates.

    These are the degree-zero Laurent monomials generating ``S_(f)``; use
    :func:`to_exponents` for exponent vectors.
    """
    support = frozenset(support)
    if M_basis is None:
        M_basis = character_lattice(ring)
    m = len(M_basis)
    if m == 0:
        return []
    v = ray_images(M_basis, ring.num_vars)
    dual = RationalCone.from_inequalities(
        [v[j] for j in range(ring.num_vars) if j not in support], [], m
    )
    return lineality_split_hilbert_basis(dual)


def to_exponents(M_basis: Sequence[Vector], u: Sequence[int]) -> Vector:
    k = len(M_basis[0])
    return tuple(sum(c * b[i] for c, b in zip(u, M_basis)) for i in range(k))


def _pair_separated(a: Chart, b: Chart, glue: Chart) -> bool:
    # sigma_{I u J} is spanned by a subset of the independent rays of sigma_I
    # (and of sigma_J), so it is a face of both and lies in the meet; the pair
    # glues correctly iff the meet is no larger.
    lin, rays = simplicial_meet_generators(a.sigma, b.sigma)
    return not lin and all(glue.sigma.contains(r) for r in rays)


def _exact_check(charts: Sequence[Chart], index: dict) -> tuple[bool, tuple | None]:
    for a, b in combinations(charts, 2):
        glue = index[a.support | b.support]
        if not _pair_separated(a, b, glue):
            return False, (a.support, b.support)
    return True, None


def build_proj(
    ring: GradedPolyRing, max_vars: int = DEFAULT_MAX_VARS, semigroups: bool = False
) -> ProjData:
    M = character_lattice(ring)
    m = len(M)
    supports = relevant_supports(ring, max_vars)
    charts = []
    for s in supports:
        sigma = chart_cone(ring, s, M)
        sg = tuple(chart_semigroup_generators(ring, s, M)) if semigroups else None
        charts.append(Chart(s, support_cone(ring, s), sigma, sg))
    index = {c.support: c for c in charts}
    separated, witness = _exact_check(charts, index)
    return ProjData(
        ring=ring,
        M_basis=M,
        charts=tuple(charts),
        dimension=m if charts else None,
        separated=separated,
        separation_witness=witness,
        _index=index,
    )


def _select(p: ProjData, chart_subset) -> list[Chart]:
    if chart_subset is None:
        return list(p.charts)
    out = []
    for c in chart_subset:
        out.append(c if isinstance(c, Chart) else p.chart(c))
    return out


def is_separated_exact(p: ProjData, chart_subset=None) -> tuple[bool, tuple | None]:
    """Fan test: every pair of chart cones meets exactly in its gluing cone."""
    return _exact_check(_select(p, chart_subset), p._index)


def is_separated_sufficient(p: ProjData, chart_subset=None) -> bool:
    """Pairwise full-dimensional overlap of the degree cones (sufficient only)."""
    charts = _select(p, chart_subset)
    return all(has_full_dim_intersection(a.degree_cone, b.degree_cone) for a, b in combinations(charts, 2))


def overlap_graph(p: ProjData) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(len(p.charts)))
    for i, j in combinations(range(len(p.charts)), 2):
        if has_full_dim_intersection(p.charts[i].degree_cone, p.charts[j].degree_cone):
            g.add_edge(i, j)
    return g


def maximal_separated_subcollections(p: ProjData, max_charts: int = DEFAULT_MAX_CHARTS) -> list[list[frozenset[int]]]:
    if len(p.charts) > max_charts:
        raise LimitExceeded(f"{len(p.charts)} charts exceeds the clique-enumeration limit of {max_charts}")
    if p.empty:
        return []
    cliques = [sorted(c) for c in nx.find_cliques(overlap_graph(p))]
    cliques.sort()
    return [[p.charts[i].support for i in c] for c in cliques]


# ---------------------------------------------------------------------------
# restriction to a ray of degrees


@dataclass(frozen=True)
class RayRestriction:
    """The N-graded subring ``S^d`` and the covering hypothesis.

    ``generators`` are exponent vectors generating the monoid of monomials
    with degree in ``Z d``; ``weights[i]`` is ``n`` with ``deg = n d``.
    """

    ring: GradedPolyRing
    direction: Vector
    generators: tuple[Vector, ...]
    weights: tuple[int, ...]
    covering_supports: tuple[frozenset[int], ...]
    hypothesis_holds: bool
    nonnegative: bool

    def weighted_ring(self) -> GradedPolyRing:
        """Polynomial ring on the generators with their ``N``-weights (relations ignored)."""
        names = [f"u{i + 1}" for i in range(len(self.generators))]
        return GradedPolyRing.from_degrees([(w,) for w in self.weights], var_names=names)


def restrict_to_ray(
    ring: GradedPolyRing, d: Sequence[int], degree_bound: int = DEFAULT_DEGREE_BOUND, max_vars: int = DEFAULT_MAX_VARS
) -> RayRestriction:
    group = ring.group
    d = group.reduce(tuple(d))
    r = group.free_rank
    if is_zero(d[:r]):
        raise ValueError("restriction needs a degree with nonzero free part")
    k = ring.num_vars
    # lattice L = {a in Z^k : deg(a) in Z d}: kernel of [d | -d_vec] into D, projected
    ext = GroupHom(
        FgAbelianGroup.free(k + 1),
        group,
        IntegerMatrix.from_columns(ring.degree_map.hom.matrix.columns() + [tuple(-a for a in d)], group.ngens),
    )
    L = hermite_normal_form((v[:k] for v in ext.kernel()), k)
    # rational cone: a >= 0 with free degree on the line through d
    perp = [tuple(row) for row in _line_equations(d[:r])]
    fd = ring.free_degrees
    eqs = [tuple(dot(p, fd[i]) for i in range(k)) for p in perp]
    ineqs = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    cone = RationalCone.from_inequalities(ineqs, eqs, k)
    # coordinates of the cone in the basis L
    coords = []
    for g in cone.generators:
        y = solve_rational(L, g)
        coords.append(y)
    lcone = cone_from_generators(coords, len(L)) if L else RationalCone.zero(0)
    gens, weights = [], []
    pivot = next(i for i in range(r) if d[i] != 0)
    for y in lineality_split_hilbert_basis(lcone):
        a = tuple(sum(c * b[i] for c, b in zip(y, L)) for i in range(k))
        n = sum(a[i] * fd[i][pivot] for i in range(k)) // d[pivot]
        if n > degree_bound:
            raise LimitExceeded(f"monoid generator of degree {n}*d exceeds the bound {degree_bound}")
        gens.append(a)
        weights.append(n)
    order = sorted(range(len(gens)), key=lambda i: (weights[i], gens[i]))
    gens = tuple(gens[i] for i in order)
    weights = tuple(weights[i] for i in order)

    supports = relevant_supports(ring, max_vars)
    covering = tuple(s for s in supports if support_cone(ring, s).interior_contains(d[:r]))
    cover_set = set(covering)
    # closed orbit of D_+(f_J) lies in D_+(f_I) iff I is contained in J
    holds = bool(supports) and all(any(i <= j for i in cover_set) for j in supports)
    return RayRestriction(
        ring=ring,
        direction=d,
        generators=gens,
        weights=weights,
        covering_supports=covering,
        hypothesis_holds=holds,
        nonnegative=all(w >= 0 for w in weights),
    )


def _line_equations(d: Sequence[int]) -> list[Vector]:
    return kernel_basis(IntegerMatrix.from_rows([d]))
