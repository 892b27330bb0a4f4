"""Laplacian spectra of ``S(n, k)``.

``s2k_laplacian_spectrum`` is the proven ``n = 2`` formula.
``conjectured_laplacian_spectrum`` is the open general formula and is only
ever compared against numerics, never trusted as ground truth.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import InternalInconsistency, InvalidParameter
from .graph import sierpinski
from .linalg import EIG_TOL, MATCH_TOL, laplacian_matrix, multiset_match, sym_eigenvalues
from .spectra import ExactEntry, IteratedRootSpec, RadicalPairEntry, SpectrumSpec

LaplacianSpectrumSpec = SpectrumSpec


def s2k_laplacian_spectrum(k: int) -> SpectrumSpec:
    if k < 2:
        raise InvalidParameter("needs k >= 2")
    entries = [
        ExactEntry(Fraction(0), 1),
        ExactEntry(Fraction(k), comb(k, 2)),
        RadicalPairEntry(Fraction(k + 2, 2), k * k + 4, k - 1),
    ]
    if comb(k - 1, 2):
        entries.insert(2, ExactEntry(Fraction(k + 2), comb(k - 1, 2)))
    return SpectrumSpec("S-laplacian", 2, k, tuple(entries))


def _half(num: int) -> int:
    if num % 2:
        raise InternalInconsistency(f"multiplicity {num}/2 is not an integer")
    return num // 2


def conjectured_laplacian_spectrum(n: int, k: int) -> SpectrumSpec:
    """Values ``k - y`` for ``y`` solving ``f^j(y) = 0`` (j < n) or ``f^j(y) = -2`` (j < n-1), plus ``0``."""
    if n < 2 or k < 2:
        raise InvalidParameter("conjecture is stated for n, k >= 2")
    entries: list = [ExactEntry(Fraction(0), 1)]
    for j in range(n):
        m = _half(k ** (n - j) - 2 * k ** (n - j - 1) + k)
        if m:
            entries.append(IteratedRootSpec(k, j, 0, m, shift=k))
    for j in range(n - 1):
        m = _half((k ** (n - j - 1) - 1) * (k - 2))
        if m:
            entries.append(IteratedRootSpec(k, j, -2, m, shift=k))
    spec = SpectrumSpec("S-laplacian", n, k, tuple(entries))
    if spec.total_multiplicity != k**n:
        raise InternalInconsistency(f"multiplicities sum to {spec.total_multiplicity}, expected {k ** n}")
    return spec


@dataclass
class ConjectureVerdict:
    n: int
    k: int
    match: bool
    max_abs_gap: float | None
    first_divergence: dict | None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "match": self.match,
            "max_abs_gap": self.max_abs_gap,
            "first_divergence": self.first_divergence,
        }


def numeric_laplacian_spectrum(n: int, k: int, budget: int | None = None):
    return sym_eigenvalues(laplacian_matrix(sierpinski(n, k, budget)), EIG_TOL)


def check_conjecture(n: int, k: int, tol: float = MATCH_TOL, budget: int | None = None) -> ConjectureVerdict:
    """Compare the conjectured Laplacian spectrum of ``S(n, k)`` with a numeric eigensolve.

    A mismatch is a finding about the conjecture, reported rather than raised.
    """
    numeric = numeric_laplacian_spectrum(n, k, budget)
    report = multiset_match(conjectured_laplacian_spectrum(n, k).expand(), numeric, tol)
    return ConjectureVerdict(n, k, report.match, report.max_abs_gap, report.first_divergence)


def g_apply(x: float) -> float:
    return x * x - 2


def path_charpoly_eval(n: int, x: float) -> float:
    """``det(x I - L(P_{2^n}))`` via the iterated map ``g(x) = x^2 - 2``.

    The product ``x * prod_{j<n} g^j(2 - x)`` has leading coefficient ``-1``;
    the monic characteristic polynomial is its negative.
    """
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    y = 2.0 - x
    prod = x
    for _ in range(n):
        prod *= y
        y = g_apply(y)
    return -prod


def path_laplacian_closed_form(m: int) -> np.ndarray:
    """Laplacian eigenvalues ``2 - 2 cos(j pi / m)`` of the path on ``m`` vertices."""
    return np.sort(2 - 2 * np.cos(np.arange(m) * np.pi / m))
