"""Exact integer linear algebra.

Smith normal form, integer kernels and cokernels, and finitely generated
abelian groups in invariant-factor form.  Everything is plain Python ``int``
(arbitrary precision) and :class:`fractions.Fraction`; there is no floating
point and no fixed-width arithmetic anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from operator import mul
from typing import Iterable, Sequence

Vector = tuple[int, ...]


# ---------------------------------------------------------------------------
# small vector helpers


def dot(u: Sequence, v: Sequence):
    return sum(map(mul, u, v))


def vgcd(v: Iterable[int]) -> int:
    return gcd(*v)


def primitive_int(v: Sequence[int]) -> Vector:
    """``primitive`` for integer input."""
    g = gcd(*v)
    if g <= 1:
        return tuple(v)
    return tuple(a // g for a in v)


def primitive(v: Sequence) -> Vector:
    """Scale a rational vector to the primitive integer vector on its ray."""
    if all(type(a) is int for a in v):
        return primitive_int(v)
    den = 1
    for a in v:
        if isinstance(a, Fraction):
            den = den * a.denominator // gcd(den, a.denominator)
    return primitive_int([int(a * den) for a in v])


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntegerMatrix:
    """Row-major integer matrix that remembers its shape even when empty."""

    rows: int
    cols: int
    entries: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntegerMatrix:
        rows = tuple(tuple(int(a) for a in r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("column count required for a matrix without rows")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: int) -> IntegerMatrix:
        columns = [tuple(c) for c in columns]
        return cls.from_rows(
            (tuple(c[i] for c in columns) for i in range(rows)), cols=len(columns)
        )

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls.from_rows(
            (tuple(int(i == j) for j in range(n)) for i in range(n)), cols=n
        )

    @classmethod
    def zero(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls.from_rows(((0,) * cols for _ in range(rows)), cols=cols)

    @property
    def T(self) -> IntegerMatrix:
        return IntegerMatrix.from_rows(
            (tuple(r[j] for r in self.entries) for j in range(self.cols)), cols=self.rows
        )

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            oc = other.columns()
            return IntegerMatrix.from_rows(
                (tuple(dot(r, c) for c in oc) for r in self.entries), cols=other.cols
            )
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(dot(r, v) for r in self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def diagonal(self) -> list[int]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def as_matrix(m, cols: int | None = None) -> IntegerMatrix:
    if isinstance(m, IntegerMatrix):
        return m
    return IntegerMatrix.from_rows(m, cols=cols)


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(m) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(U, S, V)`` with ``U @ m @ V == S``.

    ``U`` and ``V`` are unimodular, ``S`` is diagonal with nonnegative entries
    ``d1 | d2 | ...``.  Pivot choice: smallest nonzero absolute value in the
    remaining block; rows are cleared before columns.
    """
    m = as_matrix(m)
    n, p = m.rows, m.cols
    A = [list(r) for r in m.entries]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(p)] for i in range(p)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    for t in range(min(n, p)):
        best = None
        for i in range(t, n):
            for j in range(t, p):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, n):
                add_row(i, t, -(A[i][t] // A[t][t]))
            for j in range(t + 1, p):
                add_col(j, t, -(A[t][j] // A[t][t]))
            # remainders left behind become the next, strictly smaller, pivot
            smaller = None
            for i in range(t + 1, n):
                if A[i][t] and (smaller is None or abs(A[i][t]) < abs(smaller[2])):
                    smaller = ("r", i, A[i][t])
            for j in range(t + 1, p):
                if A[t][j] and (smaller is None or abs(A[t][j]) < abs(smaller[2])):
                    smaller = ("c", j, A[t][j])
            if smaller is not None:
                if smaller[0] == "r":
                    swap_rows(t, smaller[1])
                else:
                    swap_cols(t, smaller[1])
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, p) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]

    return (
        IntegerMatrix.from_rows(U, cols=n),
        IntegerMatrix.from_rows(A, cols=p),
        IntegerMatrix.from_rows(V, cols=p),
    )


def invariant_factors(m) -> list[int]:
    _, S, _ = smith_normal_form(m)
    return [d for d in S.diagonal() if d != 0]


# ---------------------------------------------------------------------------
# rational elimination


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for a in r:
            if isinstance(a, Fraction):
                den = den * a.denominator // gcd(den, a.denominator)
        out.append([int(a * den) for a in r])
    return out


def integer_eliminate(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan: integer rows, each pivot column cleared elsewhere."""
    rows = _integer_rows(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r]
        for i in range(len(rows)):
            f = rows[i][c]
            if i != r and f != 0:
                row = [p[c] * a - f * b for a, b in zip(rows[i], p)]
                g = 0
                for a in row:
                    g = gcd(g, a)
                rows[i] = [a // g for a in row] if g > 1 else row
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    red, pivots = integer_eliminate(rows, ncols)
    return [[Fraction(a, row[c]) for a in row] for row, c in zip(red, pivots)], pivots


def rank(vectors: Iterable[Sequence]) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return len(integer_eliminate(vectors, len(vectors[0]))[1])


def solve_rational(columns: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Solve ``sum_j y_j * columns[j] == b`` exactly; ``None`` if inconsistent.

    Free variables (dependent columns) are set to zero.
    """
    n = len(b)
    k = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(b[i])] for i in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    y = [Fraction(0)] * k
    for row, c in zip(red, pivots):
        y[c] = row[k]
    return tuple(y)


def project_orthogonal(v: Sequence, basis: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Orthogonal projection of ``v`` onto the complement of ``span(basis)``."""
    if not basis:
        return tuple(Fraction(a) for a in v)
    gram = [[Fraction(dot(a, b)) for b in basis] for a in basis]
    rhs = [Fraction(dot(a, v)) for a in basis]
    # basis is independent, so the Gram system is nonsingular
    coeffs = solve_rational([[gram[i][j] for i in range(len(basis))] for j in range(len(basis))], rhs)
    return tuple(
        Fraction(v[i]) - sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(len(v))
    )


def inverse_unimodular(m: IntegerMatrix) -> IntegerMatrix:
    n = m.rows
    aug = [[Fraction(a) for a in m.entries[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    inv = [[red[i][n + j] for j in range(n)] for i in range(n)]
    if any(a.denominator != 1 for r in inv for a in r):
        raise ValueError("matrix is not unimodular")
    return IntegerMatrix.from_rows([[int(a) for a in r] for r in inv], cols=n)


# ---------------------------------------------------------------------------
# Hermite normal form (used only to make lattice bases canonical)


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> list[Vector]:
    """Row-style HNF of the lattice spanned by ``rows``; zero rows dropped."""
    A = [list(r) for r in rows if not is_zero(r)]
    out: list[list[int]] = []
    col = 0
    while A and col < ncols:
        nz = [r for r in A if r[col] != 0]
        if not nz:
            col += 1
            continue
        rest = [r for r in A if r[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            nxt = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                (nxt if r[col] != 0 else rest).append(r)
            nz = nxt
        p = nz[0]
        if p[col] < 0:
            p = [-a for a in p]
        for i, prev in enumerate(out):
            q = prev[col] // p[col]
            out[i] = [a - q * b for a, b in zip(prev, p)]
        out.append(p)
        A = [r for r in rest if not is_zero(r)]
        col += 1
    return [tuple(r) for r in out]


# ---------------------------------------------------------------------------
# kernels and cokernels


def kernel_basis(m, cols: int | None = None) -> list[Vector]:
    """Z-basis of ``{v : m v = 0}`` in Hermite normal form."""
    m = as_matrix(m, cols)
    _, S, V = smith_normal_form(m)
    r = sum(1 for d in S.diagonal() if d != 0)
    basis = [V.column(j) for j in range(r, m.cols)]
    return hermite_normal_form(basis, m.cols)


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^free_rank + Z/d1 + ... + Z/ds`` with ``d1 | d2 | ... | ds``, all ``>= 2``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(d < 2 for d in self.torsion):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def free(cls, r: int) -> FgAbelianGroup:
        return cls(r, ())

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def order_of_torsion(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def reduce(self, v: Sequence[int]) -> Vector:
        """Canonical coordinates: torsion entries reduced into ``[0, d)``."""
        if len(v) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(v)}")
        r = self.free_rank
        return tuple(v[:r]) + tuple(a % d for a, d in zip(v[r:], self.torsion))

    def relations(self) -> list[Vector]:
        """Columns ``d_i e_{r+i}`` generating the relation lattice."""
        n = self.ngens
        return [
            tuple(d if j == self.free_rank + i else 0 for j in range(n))
            for i, d in enumerate(self.torsion)
        ]

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism of f.g. abelian groups given on generators.

    ``matrix`` has one column per source generator (free generators first,
    then torsion generators) holding the image in target coordinates.
    """

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntegerMatrix = field(compare=False)
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        m = as_matrix(self.matrix, self.source.ngens)
        if m.rows != self.target.ngens or m.cols != self.source.ngens:
            raise ValueError(
                f"matrix shape {m.rows}x{m.cols} does not match "
                f"{self.target.ngens}x{self.source.ngens}"
            )
        cols = [self.target.reduce(c) for c in m.columns()]
        m = IntegerMatrix.from_columns(cols, m.rows)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "_key", m.entries)
        r = self.target.free_rank
        for i, d in enumerate(self.source.torsion):
            img = cols[self.source.free_rank + i]
            if any(img[:r]) or any((d * a) % e for a, e in zip(img[r:], self.target.torsion)):
                raise ValueError(f"torsion generator of order {d} is not mapped to a {d}-torsion element")

    @classmethod
    def from_matrix(cls, rows, source=None, target=None) -> GroupHom:
        m = as_matrix(rows, None if source is None else source.ngens)
        source = source or FgAbelianGroup.free(m.cols)
        target = target or FgAbelianGroup.free(m.rows)
        return cls(source, target, m)

    @classmethod
    def identity(cls, group: FgAbelianGroup) -> GroupHom:
        return cls(group, group, IntegerMatrix.identity(group.ngens))

    @property
    def free_matrix(self) -> IntegerMatrix:
        r, s = self.target.free_rank, self.source.free_rank
        return IntegerMatrix.from_rows((row[:s] for row in self.matrix.entries[:r]), cols=s)

    @property
    def torsion_part(self) -> IntegerMatrix:
        r, s = self.target.free_rank, self.source.free_rank
        return IntegerMatrix.from_rows((row[:s] for row in self.matrix.entries[r:]), cols=s)

    def __call__(self, v: Sequence[int]) -> Vector:
        return self.target.reduce(self.matrix @ self.source.reduce(v))

    def compose(self, first: GroupHom) -> GroupHom:
        """``self o first``."""
        if first.target != self.source:
            raise ValueError("cannot compose: group mismatch")
        return GroupHom(first.source, self.target, self.matrix @ first.matrix)

    def _presentation(self) -> IntegerMatrix:
        # image generators together with the target's relations
        cols = self.matrix.columns() + self.target.relations()
        return IntegerMatrix.from_columns(cols, self.target.ngens)

    def is_surjective(self) -> bool:
        group, _ = cokernel(self._presentation())
        return group.is_trivial()

    def is_surjective_rationally(self) -> bool:
        return rank(self.free_matrix.entries) == self.target.free_rank if self.target.free_rank else True

    def kernel(self) -> list[Vector]:
        """Z-basis of the kernel, for a free source."""
        if self.source.torsion:
            raise NotImplementedError("kernel is only computed for free sources")
        s = self.source.ngens
        pres = self._presentation()
        ker = kernel_basis(pres)
        return hermite_normal_form((v[:s] for v in ker), s)


def cokernel(m, cols: int | None = None) -> tuple[FgAbelianGroup, GroupHom]:
    """``Z^rows / im(m)`` in invariant-factor form, with the quotient map."""
    m = as_matrix(m, cols)
    U, S, _ = smith_normal_form(m)
    diag = S.diagonal()
    rk = sum(1 for d in diag if d != 0)
    tors_idx = [i for i in range(rk) if diag[i] > 1]
    free_idx = list(range(rk, m.rows))
    group = FgAbelianGroup(len(free_idx), tuple(diag[i] for i in tors_idx))
    proj_rows = [U.entries[i] for i in free_idx] + [U.entries[i] for i in tors_idx]
    proj = GroupHom(
        FgAbelianGroup.free(m.rows), group,
        IntegerMatrix.from_rows(proj_rows, cols=m.rows),
    )
    return group, proj


def is_finite_index_subgroup(generators: Iterable[Sequence[int]], ambient: FgAbelianGroup) -> bool:
    """Whether ``generators`` (free-part coordinates) span a finite-index subgroup.

    Torsion is finite, so only the rational rank of the free parts matters.
    """
    gens = [tuple(g[: ambient.free_rank]) for g in generators]
    if ambient.free_rank == 0:
        return True
    return rank(gens) == ambient.free_rank
