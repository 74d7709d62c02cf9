"""Rational polyhedral cones in Q^n, exact throughout.

A :class:`RationalCone` is stored in canonical form: a Hermite-reduced basis of
its lineality space plus the primitive extreme rays of its pointed part taken
in the orthogonal complement of that space, sorted.  Two cones are equal iff
their canonical forms are equal, so cones can be used as dict keys.

Conversions between generators and inequalities use the double-description
method with the combinatorial adjacency test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from .lattice import (
    IntegerMatrix,
    Vector,
    dot,
    hermite_normal_form,
    inverse_unimodular,
    is_zero,
    kernel_basis,
    primitive,
    primitive_int,
    project_orthogonal,
    rank,
    integer_eliminate,
    smith_normal_form,
    solve_rational,
)


class NotPointedError(ValueError):
    pass


def _neg(v: Sequence[int]) -> Vector:
    return tuple(-a for a in v)


def double_description(
    inequalities: Iterable[Sequence[int]], n: int, orthant: bool = False
) -> tuple[list[Vector], list[Vector]]:
    """Generators of ``{x in Q^n : <a, x> >= 0 for all a}``.

    Returns ``(lineality, rays)``: a basis of the lineality space and the
    extreme rays (modulo lineality), all primitive integer vectors.  With
    ``orthant=True`` the constraints ``x >= 0`` are imposed first.
    """
    eye = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    zsets: list[int]  # bitmask of inequalities tight at each ray
    if orthant:
        lin, rays = [], eye
        zsets = [((1 << n) - 1) ^ (1 << i) for i in range(n)]
        seen = n
    else:
        lin, rays, zsets, seen = eye, [], [], 0
    for a in inequalities:
        a = tuple(a)
        if is_zero(a):
            continue
        bit = 1 << seen
        seen += 1
        piv = next((i for i, l in enumerate(lin) if dot(a, l) != 0), None)
        if piv is not None:
            l = lin.pop(piv)
            s = dot(a, l)
            if s < 0:
                l, s = _neg(l), -s
            lin = [primitive_int([s * x - dot(a, v) * y for x, y in zip(v, l)]) for v in lin]
            new_rays = []
            for r in rays:
                t = dot(a, r)
                new_rays.append(primitive_int([s * x - t * y for x, y in zip(r, l)]) if t else r)
            rays = new_rays + [l]
            zsets = [z | bit for z in zsets] + [bit - 1]
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            zsets = [z | bit if v == 0 else z for z, v in zip(zsets, vals)]
            continue
        zero = [i for i, v in enumerate(vals) if v == 0]
        out_rays = [rays[i] for i in pos] + [rays[i] for i in zero]
        out_z = [zsets[i] for i in pos] + [zsets[i] | bit for i in zero]
        for p in pos:
            zp = zsets[p]
            for q in neg:
                common = zp & zsets[q]
                if any(
                    common & zo == common for o, zo in enumerate(zsets) if o != p and o != q
                ):
                    continue
                vp, vq = vals[p], vals[q]
                out_rays.append(primitive_int([vp * y - vq * x for x, y in zip(rays[p], rays[q])]))
                out_z.append(common | bit)
        rays, zsets = out_rays, out_z
    return lin, rays


def _canonical_rays(rays: Iterable[Sequence[int]], lineality: Sequence[Vector]) -> tuple[Vector, ...]:
    out = set()
    for r in rays:
        p = primitive(project_orthogonal(r, lineality)) if lineality else primitive(r)
        if not is_zero(p):
            out.add(p)
    return tuple(sorted(out))


@dataclass(frozen=True)
class RationalCone:
    """A rational polyhedral cone through the origin.

    Equality and hashing use ``(ambient_dim, rays, lineality)`` only.
    ``facets`` are inner normals of the facets, taken inside ``span(cone)``;
    ``equations`` is an integer basis of the orthogonal complement of the span.
    """

    ambient_dim: int
    rays: tuple[Vector, ...]
    lineality: tuple[Vector, ...] = ()
    facets: tuple[Vector, ...] = field(default=(), compare=False, repr=False)
    equations: tuple[Vector, ...] = field(default=(), compare=False, repr=False)

    # -- construction -------------------------------------------------------

    @classmethod
    def _from_generators_int(cls, gens: list[Vector], n: int) -> RationalCone:
        if not gens:
            eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
            return cls(n, (), (), (), eye)
        if rank(gens) == len(gens):
            return cls._simplicial(gens, n)
        # dual cone: its lineality is the orthogonal complement, its rays the facets
        perp, normals = double_description(gens, n)
        perp = hermite_normal_form(perp, n)
        ineqs = list(normals) + perp + [_neg(e) for e in perp]
        lin, rays = double_description(ineqs, n)
        lin = hermite_normal_form(lin, n)
        rays = _canonical_rays(rays, lin)
        span_perp = perp
        facets = _canonical_rays(normals, span_perp)
        return cls(n, rays, tuple(lin), facets, tuple(perp))

    @classmethod
    def _simplicial(cls, gens: list[Vector], n: int) -> RationalCone:
        # linearly independent generators: facet normals form the dual basis in the span
        gens = [primitive(g) for g in gens]
        perp = hermite_normal_form(kernel_basis(IntegerMatrix.from_rows(gens, n), n), n)
        d = len(gens)
        aug = [[dot(a, b) for b in gens] + [int(i == j) for j in range(d)] for i, a in enumerate(gens)]
        red, _ = integer_eliminate(aug, d)  # Gram matrix is nonsingular: pivot j sits at column j
        den = lcm(*(row[j] for j, row in enumerate(red)))
        scale = [den // row[j] for j, row in enumerate(red)]
        facets = set()
        for i in range(d):
            c = [row[d + i] * sc for row, sc in zip(red, scale)]
            facets.add(primitive_int([sum(cj * g[t] for cj, g in zip(c, gens)) for t in range(n)]))
        return cls(n, tuple(sorted(set(gens))), (), tuple(sorted(facets)), tuple(perp))

    @classmethod
    def from_inequalities(
        cls, inequalities: Iterable[Sequence[int]], equations: Iterable[Sequence[int]] = (), n: int | None = None
    ) -> RationalCone:
        ineqs = [primitive(a) for a in inequalities]
        eqs = [primitive(e) for e in equations]
        if n is None:
            n = len((ineqs + eqs)[0])
        if any(len(v) != n for v in ineqs + eqs):
            raise ValueError("dimension mismatch")
        lin, rays = double_description(ineqs + eqs + [_neg(e) for e in eqs], n)
        gens = list(rays) + list(lin) + [_neg(l) for l in lin]
        return cls._from_generators_int(gens, n)

    @classmethod
    def zero(cls, n: int) -> RationalCone:
        return cone_from_generators([], n)

    @classmethod
    def full(cls, n: int) -> RationalCone:
        return cls.from_inequalities([], [], n)

    # -- queries ------------------------------------------------------------

    @property
    def generators(self) -> list[Vector]:
        return list(self.rays) + list(self.lineality) + [_neg(l) for l in self.lineality]

    def dimension(self) -> int:
        return self.ambient_dim - len(self.equations)

    def is_pointed(self) -> bool:
        return not self.lineality

    def is_full_dimensional(self) -> bool:
        return not self.equations

    def is_zero(self) -> bool:
        return not self.rays and not self.lineality

    def is_simplicial(self) -> bool:
        return self.is_pointed() and len(self.rays) == self.dimension()

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return all(dot(e, v) == 0 for e in self.equations) and all(dot(f, v) >= 0 for f in self.facets)

    def relative_interior_contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return all(dot(e, v) == 0 for e in self.equations) and all(dot(f, v) > 0 for f in self.facets)

    def interior_contains(self, v: Sequence) -> bool:
        return self.is_full_dimensional() and self.relative_interior_contains(v)

    def contains_cone(self, other: RationalCone) -> bool:
        return all(self.contains(g) for g in other.generators)

    def relative_interior_point(self) -> Vector:
        """Sum of the extreme rays; lies in the relative interior."""
        return tuple(sum(r[i] for r in self.rays) for i in range(self.ambient_dim))

    def dual(self) -> RationalCone:
        gens = list(self.facets) + list(self.equations) + [_neg(e) for e in self.equations]
        return RationalCone._from_generators_int(gens, self.ambient_dim)

    def face_containing(self, v: Sequence) -> RationalCone:
        """Smallest face containing the point ``v`` of the cone."""
        tight = [f for f in self.facets if dot(f, v) == 0]
        return RationalCone.from_inequalities(self.facets, list(self.equations) + tight, self.ambient_dim)

    def faces(self) -> list[RationalCone]:
        """All faces (pointed cones only), via subsets of tight facets."""
        out = {self}
        for k in range(1, len(self.facets) + 1):
            for sub in combinations(self.facets, k):
                out.add(RationalCone.from_inequalities(self.facets, list(self.equations) + list(sub), self.ambient_dim))
        return sorted(out, key=lambda c: (c.dimension(), c.rays, c.lineality))

    def __str__(self):
        body = ", ".join(str(r) for r in self.rays)
        if self.lineality:
            body += "; lineality " + ", ".join(str(l) for l in self.lineality)
        return f"cone[{body}]"


def cone_from_generators(vectors: Iterable[Sequence], n: int) -> RationalCone:
    """Cone spanned by ``vectors`` in Q^n; zero vectors are discarded."""
    gens = []
    for v in vectors:
        if len(v) != n:
            raise ValueError(f"vector {tuple(v)} does not have dimension {n}")
        if not is_zero(v):
            gens.append(primitive(v))
    return RationalCone._from_generators_int(sorted(set(gens)), n)


def dimension(c: RationalCone) -> int:
    return c.dimension()


def intersect(a: RationalCone, b: RationalCone) -> RationalCone:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("dimension mismatch")
    return RationalCone.from_inequalities(
        list(a.facets) + list(b.facets), list(a.equations) + list(b.equations), a.ambient_dim
    )


def simplicial_meet_generators(a: RationalCone, b: RationalCone) -> tuple[list[Vector], list[Vector]]:
    """``(lineality, rays)`` generating ``a cap b`` for simplicial ``a`` (not canonicalized)."""
    if not a.is_simplicial():
        raise ValueError("first cone must be simplicial")
    R = a.rays
    n = a.ambient_dim
    # coordinates with respect to the rays of a: a is the orthant
    ineqs = [tuple(dot(f, r) for r in R) for f in b.facets]
    for e in b.equations:
        row = tuple(dot(e, r) for r in R)
        ineqs += [row, _neg(row)]
    lin, rays = double_description(ineqs, len(R), orthant=True)
    back = lambda y: primitive_int([sum(c * r[t] for c, r in zip(y, R)) for t in range(n)])
    return [back(y) for y in lin], [back(y) for y in rays]


def has_full_dim_intersection(a: RationalCone, b: RationalCone) -> bool:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("dimension mismatch")
    n = a.ambient_dim
    if a.equations or b.equations:
        return n == 0
    lin, rays = double_description(list(a.facets) + list(b.facets), n)
    return rank(lin + rays) == n


def relative_interior_contains(c: RationalCone, v: Sequence) -> bool:
    return c.relative_interior_contains(v)


def is_face(face: RationalCone, of: RationalCone) -> bool:
    if face.ambient_dim != of.ambient_dim:
        raise ValueError("dimension mismatch")
    if not of.contains_cone(face):
        return False
    return of.face_containing(face.relative_interior_point()) == face


# ---------------------------------------------------------------------------
# Hilbert bases


def _triangulate(c: RationalCone) -> list[list[Vector]]:
    """Pulling triangulation of a pointed cone into simplicial cones."""
    d = c.dimension()
    rays = list(c.rays)
    if d == 0:
        return []
    if len(rays) == d:
        return [rays]
    apex = rays[0]
    out = []
    for f in c.facets:
        if dot(f, apex) == 0:
            continue
        facet = cone_from_generators([r for r in rays if dot(f, r) == 0], c.ambient_dim)
        for simplex in _triangulate(facet):
            out.append([apex] + simplex)
    return out


def _saturated_basis(c: RationalCone) -> list[Vector]:
    """Z-basis of the lattice Z^n intersected with span(c)."""
    n = c.ambient_dim
    return kernel_basis(IntegerMatrix.from_rows(c.equations, cols=n)) if c.equations else [
        tuple(int(i == j) for j in range(n)) for i in range(n)
    ]


def parallelepiped_points(simplex: Sequence[Vector], lattice_basis: Sequence[Vector]) -> list[Vector]:
    """Lattice points of the half-open fundamental parallelepiped of ``simplex``.

    Points are enumerated as coset representatives of ``Lambda / Z<simplex>``
    via the Smith form of the simplex in lattice coordinates.
    """
    n = len(simplex[0])
    d = len(simplex)
    coords = []
    for g in simplex:
        y = solve_rational(lattice_basis, g)
        coords.append(tuple(int(a) for a in y))
    A = IntegerMatrix.from_columns(coords, d)
    U, S, _ = smith_normal_form(A)
    Uinv = inverse_unimodular(U)
    factors = S.diagonal()
    points = []

    def reps(i, acc):
        if i == d:
            yield acc
            return
        for c in range(factors[i]):
            yield from reps(i + 1, acc + (c,))

    for c in reps(0, ()):
        y = Uinv @ c
        lam = solve_rational(coords, y)
        frac = [a - (a.numerator // a.denominator) for a in lam]
        x = tuple(sum(f * g[i] for f, g in zip(frac, simplex)) for i in range(n))
        points.append(tuple(int(a) for a in x))
    return points


def hilbert_basis(c: RationalCone) -> list[Vector]:
    """Minimal generating set of the monoid ``c`` intersected with Z^n."""
    if not c.is_pointed():
        raise NotPointedError("Hilbert basis requested for a cone containing a line")
    if c.is_zero():
        return []
    basis = _saturated_basis(c)
    candidates = set()
    for simplex in _triangulate(c):
        candidates.update(simplex)
        candidates.update(p for p in parallelepiped_points(simplex, basis) if not is_zero(p))
    cand = sorted(candidates)
    out = []
    for x in cand:
        reducible = any(
            y != x and c.contains(tuple(a - b for a, b in zip(x, y))) for y in cand
        )
        if not reducible:
            out.append(x)
    return out


def lineality_split_hilbert_basis(c: RationalCone) -> list[Vector]:
    """Monoid generators of ``c`` intersected with Z^n for a possibly non-pointed cone.

    The lattice part of the lineality space contributes ``+-`` basis vectors;
    the pointed quotient is handled by :func:`hilbert_basis` and lifted back.
    """
    n = c.ambient_dim
    if c.is_pointed():
        return hilbert_basis(c)
    # saturated basis of Z^n cap lineality, completed to a basis of Z^n
    perp = kernel_basis(IntegerMatrix.from_rows(c.lineality, cols=n))
    lin_lattice = kernel_basis(IntegerMatrix.from_rows(perp, cols=n)) if perp else [
        tuple(int(i == j) for j in range(n)) for i in range(n)
    ]
    l = len(lin_lattice)
    K = IntegerMatrix.from_columns(lin_lattice, n)
    U, _, _ = smith_normal_form(K)
    P = inverse_unimodular(U)
    quot = [tuple((U @ g)[l:]) for g in c.generators]
    qcone = cone_from_generators(quot, n - l)
    gens = []
    for y in hilbert_basis(qcone):
        gens.append(P @ ((0,) * l + tuple(y)))
    for v in lin_lattice:
        gens.append(tuple(v))
        gens.append(_neg(v))
    return sorted(set(gens))
