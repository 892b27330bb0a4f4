"""Square-free numbers, primality, the ``k(k+1)`` non-Cayley family and its density."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter

MAX_PRIME_INPUT = 2**63 - 1
MAX_SQUAREFREE_INPUT = 10**12
MAX_FAMILY_LIMIT = 10**12
FELLER_TORNIER_PRODUCT = 0.3226340989

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the fixed bases are exact below ``3.3e24``."""
    if n < 1 or n > MAX_PRIME_INPUT:
        raise InvalidParameter(f"is_prime needs 1 <= n <= 2^63-1, got {n}")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_squarefree(n: int) -> bool:
    """Trial division by every ``d`` up to ``n^(1/3)``.

    What remains has at most two prime factors, so it is square-free
    unless it is a perfect square.
    """
    if n < 1 or n > MAX_SQUAREFREE_INPUT:
        raise InvalidParameter(f"is_squarefree needs 1 <= n <= 10^12, got {n}")
    d = 2
    while d * d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return False
        d += 1
    r = math.isqrt(n)
    return n == 1 or r * r != n


def prime_sieve(limit: int) -> np.ndarray:
    """Boolean array ``a`` with ``a[i]`` true iff ``i`` is prime, for ``0 <= i <= limit``."""
    a = np.ones(limit + 1, dtype=bool)
    a[: min(2, limit + 1)] = False
    for p in range(2, math.isqrt(limit) + 1):
        if a[p]:
            a[p * p :: p] = False
    return a


def squarefree_sieve(limit: int) -> np.ndarray:
    """Boolean array ``a`` with ``a[i]`` true iff ``i`` is square-free; ``a[0]`` is false."""
    a = np.ones(limit + 1, dtype=bool)
    a[0] = False
    primes = np.nonzero(prime_sieve(math.isqrt(limit)))[0]
    for p in primes:
        a[int(p) * int(p) :: int(p) * int(p)] = False
    return a


@dataclass(frozen=True)
class NCCandidate:
    k: int
    n: int
    squarefree: bool
    k_plus_1_prime: bool

    @property
    def accepted(self) -> bool:
        return self.squarefree and not self.k_plus_1_prime

    def as_row(self) -> dict:
        return {"k": self.k, "n": self.n, "squarefree": self.squarefree, "k1_prime": self.k_plus_1_prime}


def _max_k(limit: int) -> int:
    """Largest ``k`` with ``k(k+1) <= limit``."""
    k = (math.isqrt(4 * limit + 1) - 1) // 2
    while k * (k + 1) > limit:
        k -= 1
    return k


def nc_family(limit: int, strict: bool = False) -> list[NCCandidate]:
    """Accepted ``k(k+1) <= limit`` (``< limit`` with ``strict``): square-free with ``k+1`` composite.

    ``k`` and ``k+1`` are coprime, so ``k(k+1)`` is square-free exactly when both are.
    """
    if limit > MAX_FAMILY_LIMIT:
        raise InvalidParameter(f"limit {limit} exceeds 10^12")
    if limit < 2:
        return []
    kmax = _max_k(limit - 1 if strict else limit)
    sf = squarefree_sieve(kmax + 1)
    pr = prime_sieve(kmax + 1)
    ks = np.nonzero(sf[1 : kmax + 1] & sf[2 : kmax + 2] & ~pr[2 : kmax + 2])[0] + 1
    return [NCCandidate(int(k), int(k) * (int(k) + 1), True, False) for k in ks]


SEGMENT = 10**7
SEGMENT_THRESHOLD = 10**8


def squarefree_segment(lo: int, hi: int, primes: np.ndarray | None = None) -> np.ndarray:
    """Square-free flags for ``lo <= i < hi`` (``lo >= 1``)."""
    if primes is None:
        primes = np.nonzero(prime_sieve(math.isqrt(max(hi - 1, 1))))[0]
    a = np.ones(hi - lo, dtype=bool)
    for p in primes:
        q = int(p) * int(p)
        if q >= hi:
            break
        a[(-lo) % q :: q] = False
    return a


def squarefree_pair_density(limit: int) -> float:
    """Fraction of ``k <= limit`` with ``k(k+1)`` square-free.

    Above ``SEGMENT_THRESHOLD`` the sieve runs over segments to bound memory.
    """
    if limit < 1:
        raise InvalidParameter("limit must be positive")
    if limit <= SEGMENT_THRESHOLD:
        sf = squarefree_sieve(limit + 1)
        return float(np.count_nonzero(sf[1 : limit + 1] & sf[2 : limit + 2])) / limit
    primes = np.nonzero(prime_sieve(math.isqrt(limit + 1)))[0]
    count = 0
    for lo in range(1, limit + 1, SEGMENT):
        hi = min(lo + SEGMENT, limit + 1)
        sf = squarefree_segment(lo, hi + 1, primes)
        count += int(np.count_nonzero(sf[:-1] & sf[1:]))
    return count / limit


def feller_tornier_product(bound: int) -> float:
    """``prod (1 - 2/p^2)`` over primes ``p <= bound``, summed in log space."""
    if bound < 2:
        raise InvalidParameter("bound must be at least 2")
    p = np.nonzero(prime_sieve(bound))[0].astype(float)
    return float(np.exp(np.sum(np.log1p(-2.0 / (p * p)))))


def feller_tornier_tail_bound(bound: int) -> float:
    """Bound on ``|product(bound) - product(infinity)|``.

    The missing factors satisfy ``sum_{p > B} 2/p^2 < 2/B``, and the
    partial product is at most 1.
    """
    if bound < 2:
        raise InvalidParameter("bound must be at least 2")
    return 2.0 / bound


def undetermined_membership(n: int) -> bool:
    """Not provided: deciding these cases needs external classification results."""
    raise NotImplementedError("membership of the undetermined k(k+1) values is out of scope")


def feller_tornier_tail_estimate(bound: int) -> float:
    """Asymptotic size ``2/(B ln B)`` of the omitted prime sum; smaller than the rigorous bound."""
    if bound < 2:
        raise InvalidParameter("bound must be at least 2")
    return 2.0 / (bound * math.log(bound))
