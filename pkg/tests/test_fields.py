from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sierpinski.errors import InvalidParameter
from sierpinski.fields import finite_field, prime_power, smallest_irreducible

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 81, 121, 128, 243]


def test_gf4_modulus():
    assert finite_field(4).modulus == (1, 1, 1)
    assert finite_field(4).modulus_str() == "t^2 + t + 1"


def test_gf5_is_prime_field():
    F = finite_field(5)
    assert (F.p, F.m) == (5, 1)
    assert all(F.mul(a, b) == a * b % 5 for a in range(5) for b in range(5))
    assert all(F.add(a, b) == (a + b) % 5 for a in range(5) for b in range(5))


@pytest.mark.parametrize("q", [6, 10, 12, 1, 0, 2**17])
def test_not_prime_power(q):
    with pytest.raises(InvalidParameter):
        finite_field(q)


def test_prime_power():
    assert prime_power(81) == (3, 4)
    assert prime_power(12) is None


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 8)])
def test_modulus_is_smallest_irreducible(p, m):
    t = sympy.symbols("t")
    mod = smallest_irreducible(p, m)
    poly = sympy.Poly(list(reversed(mod)), t, modulus=p)
    assert poly.is_irreducible
    # every lexicographically smaller monic polynomial of that degree is reducible
    from itertools import product

    for coeffs in product(range(p), repeat=m):
        cand = [1, *coeffs]
        if tuple(reversed(cand)) == mod:
            break
        assert not sympy.Poly(cand, t, modulus=p).is_irreducible


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_axioms_and_generator(q):
    F = finite_field(q)
    assert F.verify_axioms(samples=300)
    powers = {F.pow(F.generator, e) for e in range(q - 1)}
    assert powers == set(range(1, q))


@pytest.mark.parametrize("q", [4, 8, 9, 27])
def test_exhaustive_small(q):
    F = finite_field(q)
    r = range(q)
    for a in r:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in r:
            assert F.mul(a, b) == F._slow_mul(a, b)
            assert F.sub(F.add(a, b), b) == a


def test_zero_inverse():
    with pytest.raises(ZeroDivisionError):
        finite_field(7).inv(0)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(PRIME_POWERS), st.data())
def test_frobenius_is_additive(q, data):
    F = finite_field(q)
    a = data.draw(st.integers(0, q - 1))
    b = data.draw(st.integers(0, q - 1))
    assert F.pow(F.add(a, b), F.p) == F.add(F.pow(a, F.p), F.pow(b, F.p))
