"""Finite fields GF(p^m).

An element is an int whose base-``p`` digits are the coefficients of a
polynomial of degree < m (lowest digit = constant term), reduced modulo a
fixed monic irreducible polynomial.  The modulus is the lexicographically
smallest one, reading coefficients from the top degree down.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .errors import InvalidParameter

MAX_ORDER = 2**16


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, m)`` with ``q = p**m``, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return (p, m) if q == 1 else None


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by monic ``mod``; coefficient lists are low degree first."""
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _monic_polys(deg: int, p: int):
    """Monic polynomials of degree ``deg`` in lexicographic order of (top..constant) coefficients."""
    for coeffs in product(range(p), repeat=deg):
        yield list(reversed(coeffs)) + [1]


def _is_irreducible(poly: list[int], p: int) -> bool:
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(d, p):
            if not any(_poly_mod(poly, f, p)):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    for poly in _monic_polys(m, p):
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("an irreducible polynomial exists in every degree")


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass
class FiniteField:
    """GF(q) with ``q = p**m``; construct through :func:`finite_field`."""

    p: int
    m: int
    modulus: tuple[int, ...]
    _exp: list[int] = field(default_factory=list, repr=False)
    _log: list[int] = field(default_factory=list, repr=False)
    generator: int = 0

    def __post_init__(self):
        q = self.q
        g = next(x for x in range(1, q) if self._has_full_order(x)) if q > 2 else 1
        self.generator = g
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._slow_mul(exp[i - 1], g)
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self._exp, self._log = exp, log

    @property
    def q(self) -> int:
        return self.p**self.m

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.m):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def _from_digits(self, ds) -> int:
        x = 0
        for d in reversed(ds):
            x = x * self.p + d
        return x

    def _slow_mul(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self._from_digits(_poly_mod(prod, list(self.modulus), self.p))

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _has_full_order(self, x: int) -> bool:
        n = self.q - 1
        return all(self._slow_pow(x, n // r) != 1 for r in _prime_factors(n))

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        return self._from_digits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.m, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
            terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return " + ".join(terms)

    def verify_axioms(self, samples: int = 200, seed: int = 0) -> bool:
        """Spot-check field axioms on random triples; also checks the generator's order."""
        rng = random.Random(seed)
        q = self.q
        if len(set(self._exp)) != q - 1:
            return False
        for _ in range(samples):
            a, b, c = (rng.randrange(q) for _ in range(3))
            if self.add(a, b) != self.add(b, a) or self.mul(a, b) != self.mul(b, a):
                return False
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)):
                return False
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                return False
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)):
                return False
            if self.mul(a, b) != self._slow_mul(a, b):
                return False
            if self.add(a, self.neg(a)) != 0 or (a and self.mul(a, self.inv(a)) != 1):
                return False
        return True


def finite_field(q: int) -> FiniteField:
    pm = prime_power(q)
    if pm is None:
        raise InvalidParameter(f"{q} is not a prime power")
    if q > MAX_ORDER:
        raise InvalidParameter(f"field order {q} exceeds {MAX_ORDER}")
    p, m = pm
    return FiniteField(p, m, smallest_irreducible(p, m))
