import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from multiproj.cones import (
    NotPointedError,
    RationalCone,
    cone_from_generators,
    has_full_dim_intersection,
    hilbert_basis,
    intersect,
    is_face,
    lineality_split_hilbert_basis,
    simplicial_meet_generators,
)
from multiproj.lattice import dot, rank

from oracles import full_cone_facets, hilbert_basis_problems, in_cone


def generator_sets(max_dim=4, max_gens=6, lo=-3, hi=3):
    return st.integers(1, max_dim).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.tuples(*[st.integers(lo, hi)] * n), min_size=1, max_size=max_gens),
        )
    )


@given(generator_sets())
@settings(max_examples=150, deadline=None)
def test_generators_inequalities_round_trip(data):
    n, gens = data
    c = cone_from_generators(gens, n)
    for g in gens:
        assert c.contains(g)
    d = RationalCone.from_inequalities(c.facets, c.equations, n)
    assert d == c
    assert c.dimension() == rank([g for g in gens if any(g)])
    assert c.dual().dual() == c


@given(generator_sets())
@settings(max_examples=150, deadline=None)
def test_facets_match_subset_enumeration(data):
    n, gens = data
    c = cone_from_generators(gens, n)
    assume(c.is_full_dimensional())
    assert set(c.facets) == full_cone_facets(gens, n)


@given(generator_sets(max_dim=3, max_gens=5, lo=-2, hi=2), st.tuples(*[st.integers(-3, 3)] * 3))
@settings(max_examples=150, deadline=None)
def test_membership_matches_caratheodory(data, x):
    n, gens = data
    x = x[:n]
    assert cone_from_generators(gens, n).contains(x) == in_cone(x, gens, n)


@given(generator_sets(max_dim=3), generator_sets(max_dim=3), generator_sets(max_dim=3))
@settings(max_examples=80, deadline=None)
def test_intersection_lattice_laws(a, b, c):
    n = min(a[0], b[0], c[0])
    A, B, C = (cone_from_generators([g[:n] for g in x[1]], n) for x in (a, b, c))
    assert intersect(A, B) == intersect(B, A)
    assert intersect(intersect(A, B), C) == intersect(A, intersect(B, C))
    assert intersect(A, A) == A
    assert has_full_dim_intersection(A, B) == (intersect(A, B).dimension() == n)


@given(generator_sets())
@settings(max_examples=100, deadline=None)
def test_relative_interior_point(data):
    n, gens = data
    c = cone_from_generators(gens, n)
    p = c.relative_interior_point()
    if c.is_pointed() and not c.is_zero():
        assert c.relative_interior_contains(p)
    assert c.contains(p)


@given(generator_sets(max_dim=4, max_gens=4), generator_sets(max_dim=4, max_gens=6))
@settings(max_examples=100, deadline=None)
def test_simplicial_meet_matches_intersection(a, b):
    n = min(a[0], b[0])
    A = cone_from_generators([g[:n] for g in a[1]], n)
    B = cone_from_generators([g[:n] for g in b[1]], n)
    assume(A.is_simplicial())
    lin, rays = simplicial_meet_generators(A, B)
    meet = cone_from_generators(rays + lin + [tuple(-x for x in l) for l in lin], n)
    assert meet == intersect(A, B)


@given(generator_sets(max_dim=3, max_gens=5))
@settings(max_examples=60, deadline=None)
def test_faces_of_pointed_cones(data):
    n, gens = data
    c = cone_from_generators(gens, n)
    assume(c.is_pointed())
    faces = c.faces()
    assert c in faces and RationalCone.zero(n) in faces
    for f in faces:
        assert is_face(f, c)
    for r in c.rays:
        assert is_face(cone_from_generators([r], n), c)


def test_spec_examples():
    a = cone_from_generators([(1, 0), (1, 2)], 2)
    b = cone_from_generators([(1, 1), (0, 1)], 2)
    meet = intersect(a, b)
    assert meet.rays == ((1, 1), (1, 2))
    assert str(cone_from_generators([(1, 0), (1, 1)], 2)) == "cone[(1, 0), (1, 1)]"
    quad = cone_from_generators([(1, 0), (0, 1)], 2)
    assert is_face(cone_from_generators([(1, 0)], 2), quad)
    assert not is_face(cone_from_generators([(1, 1)], 2), quad)
    assert is_face(RationalCone.zero(2), quad)
    assert intersect(cone_from_generators([(1, 0)], 2), cone_from_generators([(0, 1)], 2)).is_zero()


def test_lineality_and_full():
    half = cone_from_generators([(1, 0), (-1, 0), (0, 1)], 2)
    assert half.lineality == ((1, 0),) and half.rays == ((0, 1),)
    assert not half.is_pointed()
    assert RationalCone.full(3).dimension() == 3
    assert RationalCone.full(3).lineality == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    # the zero cone is not a face of a cone containing a line
    assert not is_face(RationalCone.zero(2), half)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        cone_from_generators([(1, 2, 3)], 2)
    with pytest.raises(ValueError):
        intersect(RationalCone.zero(2), RationalCone.zero(3))


def test_hilbert_basis_examples():
    assert hilbert_basis(cone_from_generators([(1, 0), (1, 2)], 2)) == [(1, 0), (1, 1), (1, 2)]
    assert hilbert_basis(cone_from_generators([(1, 0), (0, 1)], 2)) == [(0, 1), (1, 0)]
    with pytest.raises(NotPointedError):
        hilbert_basis(cone_from_generators([(1, 0), (-1, 0)], 2))
    # lower-dimensional cone with a non-primitive span lattice
    assert hilbert_basis(cone_from_generators([(1, 1, 0), (1, -1, 0)], 3)) == [(1, -1, 0), (1, 0, 0), (1, 1, 0)]


def random_pointed_cone(rng: random.Random, n: int) -> RationalCone:
    while True:
        gens = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(rng.randint(n, n + 2))]
        c = cone_from_generators(gens, n)
        if c.is_pointed() and c.is_full_dimensional():
            return c


@pytest.mark.parametrize("seed", range(6))
def test_hilbert_basis_bounded_search(seed):
    rng = random.Random(seed)
    c = random_pointed_cone(rng, 2 + seed % 2)
    assert hilbert_basis_problems(c.rays, 2 + seed % 2, hilbert_basis(c), 10) == []


def test_lineality_split():
    half = cone_from_generators([(1, 0), (-1, 0), (0, 1)], 2)
    gens = set(lineality_split_hilbert_basis(half))
    assert gens == {(1, 0), (-1, 0), (0, 1)}
    full = set(lineality_split_hilbert_basis(RationalCone.full(2)))
    assert full == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    # lineality (1, 1), pointed quotient measured by y - x >= 0
    c = cone_from_generators([(1, 1), (-1, -1), (0, 1)], 2)
    gens = set(lineality_split_hilbert_basis(c))
    assert {(1, 1), (-1, -1)} <= gens
    # a generator of height one makes every lattice point (y - x) q + t (1, 1)
    assert any(dot((-1, 1), g) == 1 for g in gens)
    assert all(c.contains(g) for g in gens)
