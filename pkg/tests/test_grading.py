import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiproj.cones import cone_from_generators
from multiproj.grading import (
    GradedPolyRing,
    LimitExceeded,
    Monomial,
    cone_of_monomial,
    degree_of,
    is_relevant,
    regrade,
    relevant_squarefree_monomials,
    relevant_supports,
)
from multiproj.lattice import FgAbelianGroup, GroupHom, IntegerMatrix

from oracles import matrix_rank

THREE = GradedPolyRing.from_degrees([(1, 0), (1, 1), (0, 1)])


def test_three_variable_relevant_set():
    names = [m.format(THREE.var_names) for m in relevant_squarefree_monomials(THREE)]
    assert names == ["T1*T2", "T1*T3", "T2*T3", "T1*T2*T3"]


def test_degree_and_cone():
    m = Monomial((2, 0, 1))
    assert tuple(degree_of(THREE, m)) == (2, 1)
    assert cone_of_monomial(THREE, m) == cone_from_generators([(1, 0), (0, 1)], 2)
    assert not is_relevant(THREE, Monomial((3, 0, 0)))
    assert is_relevant(THREE, Monomial((3, 0, 1)))
    with pytest.raises(ValueError):
        degree_of(THREE, Monomial((1, 1)))
    with pytest.raises(ValueError):
        Monomial((1, -1))


def test_z2_standard_and_regradings():
    std = GradedPolyRing.from_degrees([(1, 0), (0, 1)])
    assert relevant_supports(std) == [frozenset({0, 1})]
    axis = GradedPolyRing.from_degrees([(1, 0), (1, 0)])
    assert relevant_supports(axis) == []
    total = regrade(std, GroupHom.from_matrix([[1, 1]]))
    assert total.free_degrees == [(1,), (1,)]
    assert relevant_supports(total) == [frozenset({0}), frozenset({1}), frozenset({0, 1})]
    with pytest.raises(ValueError):
        regrade(std, GroupHom.from_matrix([[1, 1, 1]]))


def test_torsion_does_not_affect_relevance():
    group = FgAbelianGroup(1, (2,))
    ring = GradedPolyRing.from_degrees([(1, 1), (1, 0)], group)
    assert relevant_supports(ring) == [frozenset({0}), frozenset({1}), frozenset({0, 1})]
    assert str(degree_of(ring, Monomial((1, 1)))) == "(2) + torsion(1)"
    assert str(ring.degree_map.degree(0)) == "(1) + torsion(1)"


def test_fan_rays_p2():
    ring = GradedPolyRing.from_fan_rays([(1, 0), (0, 1), (-1, -1)])
    assert ring.group == FgAbelianGroup.free(1)
    assert {abs(d[0]) for d in ring.free_degrees} == {1}
    assert len({d for d in ring.free_degrees}) == 1


def test_support_limit():
    ring = GradedPolyRing.from_degrees([(1,)] * 5)
    with pytest.raises(LimitExceeded):
        relevant_supports(ring, max_vars=4)


degree_lists = st.integers(1, 3).flatmap(
    lambda r: st.lists(st.tuples(*[st.integers(-2, 3)] * r), min_size=1, max_size=6)
)


@given(degree_lists)
@settings(max_examples=100, deadline=None)
def test_relevance_is_rank_condition(degrees):
    ring = GradedPolyRing.from_degrees(degrees)
    r = len(degrees[0])
    supports = set(relevant_supports(ring))
    k = len(degrees)
    for mask in range(1, 1 << k):
        s = frozenset(i for i in range(k) if mask >> i & 1)
        assert (s in supports) == (matrix_rank([degrees[i] for i in s]) == r)
    # supports are upward closed
    for s in supports:
        for i in range(k):
            assert s | {i} in supports


@given(degree_lists, st.lists(st.integers(0, 3), min_size=6, max_size=6))
@settings(max_examples=100, deadline=None)
def test_monomial_relevance_laws(degrees, exps):
    ring = GradedPolyRing.from_degrees(degrees)
    m = Monomial(exps[: len(degrees)])
    assert is_relevant(ring, m) == is_relevant(ring, m.squarefree_part())
    if is_relevant(ring, m):
        assert cone_of_monomial(ring, m).relative_interior_contains(tuple(degree_of(ring, m)))
        assert is_relevant(ring, m * m)


def test_regrade_composes_degree_map():
    ring = GradedPolyRing.from_degrees([(1, 0), (0, 1), (1, 1)])
    delta = GroupHom(FgAbelianGroup.free(2), FgAbelianGroup.free(1), IntegerMatrix.from_rows([[1, 2]]))
    new = regrade(ring, delta)
    assert new.free_degrees == [(1,), (2,), (3,)]
    assert new.var_names == ring.var_names
