"""Monomially graded polynomial rings ``k[T_1..T_k]`` over a group ``D``.

The grading is a homomorphism ``d: Z^k -> D`` sending ``e_i`` to ``deg(T_i)``.
Every monomial is homogeneous.  For a monomial ``f`` the homogeneous divisors
of its powers are exactly the monomials supported on ``supp(f)``, so the cone
of ``f`` is spanned by the free parts of ``deg(T_i)``, ``i in supp(f)``, and
``f`` is relevant iff those degrees have full rational rank.  Torsion in ``D``
never affects relevance.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .cones import RationalCone, cone_from_generators
from .lattice import FgAbelianGroup, GroupHom, IntegerMatrix, Vector, cokernel, is_finite_index_subgroup

DEFAULT_MAX_VARS = 20


class LimitExceeded(RuntimeError):
    """A configured size limit was exceeded."""


@dataclass(frozen=True)
class DegreeVector:
    free: Vector
    torsion: Vector = ()

    def __iter__(self):
        return iter(self.free + self.torsion)

    def __str__(self):
        s = "(" + ", ".join(map(str, self.free)) + ")"
        if self.torsion:
            s += " + torsion(" + ", ".join(map(str, self.torsion)) + ")"
        return s


@dataclass(frozen=True)
class Monomial:
    exponents: Vector

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be nonnegative")

    @classmethod
    def from_support(cls, support: Iterable[int], k: int) -> Monomial:
        s = set(support)
        return cls(tuple(int(i in s) for i in range(k)))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)

    def squarefree_part(self) -> Monomial:
        return Monomial(tuple(min(e, 1) for e in self.exponents))

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def format(self, names: Sequence[str]) -> str:
        parts = []
        for n, e in zip(names, self.exponents):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class DegreeMap:
    """``d: Z^k -> D``; column ``i`` is ``deg(T_i)``."""

    hom: GroupHom

    def __post_init__(self):
        if self.hom.source.torsion:
            raise ValueError("a degree map is defined on a free group Z^k")

    @classmethod
    def from_degrees(cls, degrees: Sequence[Sequence[int]], group: FgAbelianGroup | None = None) -> DegreeMap:
        degrees = [tuple(d) for d in degrees]
        if group is None:
            r = len(degrees[0]) if degrees else 0
            group = FgAbelianGroup.free(r)
        for d in degrees:
            if len(d) != group.ngens:
                raise ValueError(f"degree {d} does not have {group.ngens} coordinates for {group}")
        m = IntegerMatrix.from_columns(degrees, group.ngens)
        return cls(GroupHom(FgAbelianGroup.free(len(degrees)), group, m))

    @property
    def group(self) -> FgAbelianGroup:
        return self.hom.target

    @property
    def num_vars(self) -> int:
        return self.hom.source.free_rank

    def degree(self, i: int) -> DegreeVector:
        col = self.hom.matrix.column(i)
        r = self.group.free_rank
        return DegreeVector(col[:r], col[r:])

    def free_degrees(self) -> list[Vector]:
        r = self.group.free_rank
        return [c[:r] for c in self.hom.matrix.columns()]

    def __call__(self, exponents: Sequence[int]) -> DegreeVector:
        img = self.hom(exponents)
        r = self.group.free_rank
        return DegreeVector(img[:r], img[r:])


@dataclass(frozen=True)
class GradedPolyRing:
    var_names: tuple[str, ...]
    degree_map: DegreeMap

    def __post_init__(self):
        object.__setattr__(self, "var_names", tuple(self.var_names))
        if len(self.var_names) != self.degree_map.num_vars:
            raise ValueError("one degree per variable is required")

    @classmethod
    def from_degrees(
        cls,
        degrees: Sequence[Sequence[int]],
        group: FgAbelianGroup | None = None,
        var_names: Sequence[str] | None = None,
    ) -> GradedPolyRing:
        dm = DegreeMap.from_degrees(degrees, group)
        names = tuple(var_names) if var_names is not None else tuple(f"T{i + 1}" for i in range(len(degrees)))
        return cls(names, dm)

    @classmethod
    def from_fan_rays(cls, rays: Sequence[Sequence[int]], var_names: Sequence[str] | None = None) -> GradedPolyRing:
        """Cox-ring grading of a toric variety with the given ray generators.

        ``D = Z^k / M`` where ``M -> Z^k`` is ``u -> (<u, v_i>)_i``; the degree
        of ``T_i`` is the class of ``e_i``.
        """
        group, proj = cokernel(IntegerMatrix.from_rows(rays))
        degrees = proj.matrix.columns()
        return cls.from_degrees(degrees, group, var_names)

    @property
    def num_vars(self) -> int:
        return self.degree_map.num_vars

    @property
    def group(self) -> FgAbelianGroup:
        return self.degree_map.group

    @property
    def rank(self) -> int:
        return self.group.free_rank

    @cached_property
    def free_degrees(self) -> list[Vector]:
        return self.degree_map.free_degrees()

    def monomial(self, *exponents: int) -> Monomial:
        return Monomial(exponents)

    def degree_cone(self) -> RationalCone:
        return cone_from_generators(self.free_degrees, self.rank)


def _check(ring: GradedPolyRing, m: Monomial):
    if len(m.exponents) != ring.num_vars:
        raise ValueError(f"monomial has {len(m.exponents)} exponents, ring has {ring.num_vars} variables")


def degree_of(ring: GradedPolyRing, m: Monomial) -> DegreeVector:
    _check(ring, m)
    return ring.degree_map(m.exponents)


def support_cone(ring: GradedPolyRing, support: Iterable[int]) -> RationalCone:
    """Cone spanned by the free degrees of the variables in ``support``."""
    fd = ring.free_degrees
    return cone_from_generators([fd[i] for i in sorted(support)], ring.rank)


def cone_of_monomial(ring: GradedPolyRing, m: Monomial) -> RationalCone:
    _check(ring, m)
    return support_cone(ring, m.support)


def is_relevant_support(ring: GradedPolyRing, support: Iterable[int]) -> bool:
    fd = ring.free_degrees
    return is_finite_index_subgroup([fd[i] for i in support], ring.group)


def is_relevant(ring: GradedPolyRing, m: Monomial) -> bool:
    _check(ring, m)
    return is_relevant_support(ring, m.support)


def relevant_supports(ring: GradedPolyRing, max_vars: int = DEFAULT_MAX_VARS) -> list[frozenset[int]]:
    """Supports of relevant square-free monomials, ordered by size then lexicographically."""
    k = ring.num_vars
    if k > max_vars:
        raise LimitExceeded(f"{k} variables exceeds the limit of {max_vars} for support enumeration")
    out = []
    for size in range(ring.rank, k + 1):
        for sub in combinations(range(k), size):
            if is_relevant_support(ring, sub):
                out.append(frozenset(sub))
    return out


def relevant_squarefree_monomials(ring: GradedPolyRing, max_vars: int = DEFAULT_MAX_VARS) -> list[Monomial]:
    k = ring.num_vars
    return [Monomial.from_support(s, k) for s in relevant_supports(ring, max_vars)]


def support_key(support: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    s = tuple(sorted(support))
    return len(s), s


def regrade(ring: GradedPolyRing, delta: GroupHom) -> GradedPolyRing:
    """The same ring graded by ``delta o d``."""
    if delta.source != ring.group:
        raise ValueError(f"regrading source {delta.source} does not match the grading group {ring.group}")
    return GradedPolyRing(ring.var_names, DegreeMap(delta.compose(ring.degree_map.hom)))
