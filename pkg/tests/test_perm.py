from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from sierpinski.errors import InvalidParameter
from sierpinski.perm import PermGroup, check_perm, compose, cycles, identity, inverse, orbit_partition

perms = st.integers(2, 9).flatmap(lambda m: st.permutations(list(range(m))).map(tuple))


def test_compose_applies_right_first():
    g, h = (1, 2, 0), (0, 2, 1)
    assert compose(g, h) == tuple(g[h[i]] for i in range(3))


@given(perms)
def test_inverse(p):
    assert compose(p, inverse(p)) == identity(len(p))


def test_cycles_and_check():
    assert cycles((1, 0, 3, 4, 2)) == [(0, 1), (2, 3, 4)]
    with pytest.raises(InvalidParameter):
        check_perm((0, 0, 1))


def test_orbit_partition():
    assert orbit_partition(5, [(1, 0, 2, 4, 3)]) == [[0, 1], [2], [3, 4]]


def test_symmetric_group():
    g = PermGroup(4, [(1, 2, 3, 0), (1, 0, 2, 3)])
    assert g.order() == 24 and g.is_transitive()


def test_trivial_group():
    g = PermGroup(5, [])
    assert g.order() == 1 and g.contains(identity(5)) and not g.contains((1, 0, 2, 3, 4))
    assert list(g.elements()) == [identity(5)]


def test_degree_mismatch():
    with pytest.raises(InvalidParameter):
        PermGroup(3, [(1, 0)])


def test_base_prefix_respected():
    g = PermGroup(4, [(1, 2, 3, 0), (1, 0, 2, 3)], base=(2,))
    assert g.base[0] == 2
    assert all(s[2] == 2 for s in g.stabilizer_elements())
    assert len(list(g.stabilizer_elements())) == 6


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 10), st.integers(1, 3), st.integers(0, 10**6))
def test_against_sympy(m, ngens, seed):
    rng = random.Random(seed)
    gens = []
    for _ in range(ngens):
        p = list(range(m))
        rng.shuffle(p)
        gens.append(tuple(p))
    ours = PermGroup(m, gens)
    ref = PermutationGroup([Permutation(list(g)) for g in gens])
    assert ours.order() == ref.order()
    assert sorted(map(sorted, ours.orbits())) == sorted(sorted(o) for o in ref.orbits())
    for _ in range(5):
        p = list(range(m))
        rng.shuffle(p)
        assert ours.contains(p) == ref.contains(Permutation(p))
    if ours.order() <= 5040:
        elems = list(ours.elements())
        assert len(set(elems)) == ours.order()
        assert all(ours.contains(e) for e in elems[:50])
