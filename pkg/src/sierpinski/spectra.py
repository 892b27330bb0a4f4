"""Closed-form adjacency spectrum of ``S++(n, k)``.

Eigenvalues come in families indexed by the iterated quadratic
``f(x) = x^2 + (2 - k) x - k``: the real solutions of ``f^j(x) = c`` for
``c`` in ``{0, -1, -2}``.  Those solutions are produced by running ``f``
backwards (each value ``r`` has the two preimages
``((k - 2) +- sqrt(k^2 + 4 + 4 r)) / 2``) and then polished with Newton
steps on the forward composition.
"""
from __future__ import annotations

import json
import math
import warnings
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import ComplexRootError, InternalInconsistency, InvalidParameter
from .linalg import EIG_TOL, MATCH_TOL, RealMultiset, adjacency_matrix, det_shift, sym_eigenvalues

DOUBLE_ROOT_DISC = 1e-12
NEGATIVE_DISC_TOL = 1e-9


def f_apply(k: int, x: float) -> float:
    return x * x + (2 - k) * x - k


def f_iterate(k: int, x: float, j: int) -> float:
    for _ in range(j):
        x = f_apply(k, x)
    return x


def _f_iterate_with_derivative(k: int, x: float, j: int) -> tuple[float, float]:
    d = 1.0
    for _ in range(j):
        d *= 2 * x + 2 - k
        x = f_apply(k, x)
    return x, d


def _polish(k: int, x: float, j: int, c: float, steps: int = 4) -> float:
    fx, d = _f_iterate_with_derivative(k, x, j)
    res = abs(fx - c)
    for _ in range(steps):
        if d == 0.0 or res == 0.0:
            break
        step = (fx - c) / d
        # the radical values are already close; a long step means a near-double root
        if abs(step) > 1e-6:
            break
        y = x - step
        fy, dy = _f_iterate_with_derivative(k, y, j)
        if abs(fy - c) >= res:
            break
        x, fx, d, res = y, fy, dy, abs(fy - c)
    return x


def iterated_roots(k: int, depth: int, target: float, polish: bool = True) -> RealMultiset:
    """All ``2**depth`` real solutions of ``f^depth(x) = target`` (with multiplicity)."""
    if depth < 0:
        raise InvalidParameter("depth must be non-negative")
    level = [float(target)]
    half = (k - 2) / 2.0
    for _ in range(depth):
        nxt = []
        for r in level:
            disc = k * k + 4 + 4 * r
            if disc < -NEGATIVE_DISC_TOL:
                raise ComplexRootError(f"f(x) = {r} has no real solution for k={k}")
            if disc <= DOUBLE_ROOT_DISC:
                nxt += [half, half]
            else:
                s = math.sqrt(disc) / 2.0
                nxt += [half - s, half + s]
        level = nxt
    if polish and depth:
        level = [_polish(k, x, depth, target) for x in level]
    return RealMultiset(tuple(level), MATCH_TOL)


@dataclass(frozen=True)
class IteratedRootSpec:
    """Solutions ``y`` of ``f^depth(y) = target``; the eigenvalue is ``y``,
    or ``shift - y`` when ``shift`` is set.  Each has multiplicity ``multiplicity``."""

    k: int
    depth: int
    target: int
    multiplicity: int
    shift: int | None = None

    def __post_init__(self):
        if self.multiplicity <= 0 or self.depth < 0:
            raise InvalidParameter("need multiplicity > 0 and depth >= 0")

    @property
    def count(self) -> int:
        return 2**self.depth * self.multiplicity

    def values(self) -> list[float]:
        ys = iterated_roots(self.k, self.depth, self.target).values
        if self.shift is not None:
            ys = [self.shift - y for y in ys]
        return [y for y in ys for _ in range(self.multiplicity)]

    def as_dict(self) -> dict:
        d = {"kind": "iterated", "j": self.depth, "target": self.target, "mult": self.multiplicity}
        if self.shift is not None:
            d["shift"] = self.shift
        return d


@dataclass(frozen=True)
class ExactEntry:
    value: Fraction
    multiplicity: int

    @property
    def count(self) -> int:
        return self.multiplicity

    def values(self) -> list[float]:
        return [float(self.value)] * self.multiplicity

    def as_dict(self) -> dict:
        v = self.value
        return {"kind": "exact", "value": int(v) if v.denominator == 1 else str(v), "mult": self.multiplicity}


@dataclass(frozen=True)
class RadicalPairEntry:
    """The two values ``center +- sqrt(radicand) / 2``, each with ``multiplicity``."""

    center: Fraction
    radicand: int
    multiplicity: int

    @property
    def count(self) -> int:
        return 2 * self.multiplicity

    def values(self) -> list[float]:
        s = math.sqrt(self.radicand) / 2.0
        c = float(self.center)
        return [c - s] * self.multiplicity + [c + s] * self.multiplicity

    def as_dict(self) -> dict:
        return {"kind": "radical_pair", "center": str(self.center), "radicand": self.radicand, "mult": self.multiplicity}


Entry = IteratedRootSpec | ExactEntry | RadicalPairEntry


@dataclass(frozen=True)
class SpectrumSpec:
    family: str
    n: int
    k: int
    entries: tuple

    @property
    def total_multiplicity(self) -> int:
        return sum(e.count for e in self.entries)

    def expand(self, tol: float = MATCH_TOL) -> RealMultiset:
        vals = [v for e in self.entries for v in e.values()]
        return RealMultiset(tuple(vals), tol)

    def as_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "k": self.k, "entries": [e.as_dict() for e in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    def symbols(self) -> Counter:
        """Exact symbolic content: depth <= 1 families are rewritten as rationals
        and radical pairs, so equal spectra give equal counters."""
        out: Counter = Counter()
        for e in self.entries:
            for key, mult in _symbolic_keys(e):
                out[key] += mult
        return out


def _symbolic_keys(e) -> list[tuple[tuple, int]]:
    if isinstance(e, ExactEntry):
        return [(("exact", Fraction(e.value)), e.multiplicity)]
    if isinstance(e, RadicalPairEntry):
        r = e.radicand
        if r == 0:
            return [(("exact", e.center), 2 * e.multiplicity)]
        root = math.isqrt(r) if r > 0 else -1
        if root * root == r:
            h = Fraction(root, 2)
            return [(("exact", e.center - h), e.multiplicity), (("exact", e.center + h), e.multiplicity)]
        return [(("pair", e.center, r), e.multiplicity)]
    k, c = e.k, e.target
    if e.depth == 0:
        v = Fraction(c) if e.shift is None else Fraction(e.shift - c)
        return [(("exact", v), e.multiplicity)]
    if e.depth == 1:
        center = Fraction(k - 2, 2) if e.shift is None else Fraction(2 * e.shift - k + 2, 2)
        return _symbolic_keys(RadicalPairEntry(center, k * k + 4 + 4 * c, e.multiplicity))
    return [(("iterated", k, e.depth, c, e.shift), e.multiplicity)]


def closed_form_spectrum_pp(n: int, k: int) -> SpectrumSpec:
    """Adjacency spectrum of ``S++(n, k)`` as exact families."""
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    if k < 2:
        raise InvalidParameter("closed form needs k >= 2")
    if n == 1:
        entries = (ExactEntry(Fraction(k), 1), ExactEntry(Fraction(-1), k))
        return SpectrumSpec("S++", n, k, entries)
    extra = comb(k, 2) - 1
    entries: list = [ExactEntry(Fraction(k), 1), IteratedRootSpec(k, n - 1, -1, k)]
    for j in range(n - 1):
        m = k ** (n - 2 - j) * extra
        if m > 0:
            entries.append(IteratedRootSpec(k, j, 0, m))
        entries.append(IteratedRootSpec(k, j, -2, m + 1))
    spec = SpectrumSpec("S++", n, k, tuple(entries))
    expected = (k + 1) * k ** (n - 1)
    if spec.total_multiplicity != expected:
        raise InternalInconsistency(f"multiplicities sum to {spec.total_multiplicity}, expected {expected}")
    return spec


def recursion_exponent(n: int, k: int) -> int:
    return k ** (n - 2) * (comb(k, 2) - 1)


@dataclass
class RecursionReport:
    n: int
    k: int
    points: list[dict]

    @property
    def max_rel_error(self) -> float:
        errs = [p["rel_error"] for p in self.points if not p["skipped"]]
        return max(errs) if errs else float("nan")

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "max_rel_error": self.max_rel_error, "points": self.points}


def _near(x: float, eigs: np.ndarray, gap: float) -> bool:
    return bool(np.min(np.abs(eigs - x)) < gap)


def verify_recursion_pp(n: int, k: int, sample_points, min_gap: float = 1e-3) -> RecursionReport:
    """Compare ``det(xI - A_n)`` with ``(x(x+2))^e det(f(x) I - A_{n-1})`` pointwise."""
    from .graph import sierpinski_pp

    if n < 2:
        raise InvalidParameter("recursion needs n >= 2")
    a_n = adjacency_matrix(sierpinski_pp(n, k))
    a_prev = adjacency_matrix(sierpinski_pp(n - 1, k))
    eig_n = np.array(sym_eigenvalues(a_n, EIG_TOL).values)
    eig_prev = np.array(sym_eigenvalues(a_prev, EIG_TOL).values)
    e = recursion_exponent(n, k)
    points = []
    for x in sample_points:
        x = float(x)
        fx = f_apply(k, x)
        if _near(x, eig_n, min_gap) or _near(fx, eig_prev, min_gap):
            warnings.warn(f"sample point {x} lies within {min_gap} of an eigenvalue; skipped")
            points.append({"x": x, "skipped": True, "lhs": None, "rhs": None, "rel_error": None})
            continue
        lhs = det_shift(a_n, x)
        rhs = (x * (x + 2)) ** e * det_shift(a_prev, fx)
        rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs))
        points.append({"x": x, "skipped": False, "lhs": lhs, "rhs": rhs, "rel_error": rel})
    return RecursionReport(n, k, points)


def recursion_sample_points(n: int, k: int, count: int, seed: int = 0, min_gap: float = 1e-3) -> list[float]:
    """``count`` random points in ``[-k-1, k+1]`` far enough from both spectra."""
    rng = np.random.default_rng(seed)
    eig_n = np.array(closed_form_spectrum_pp(n, k).expand().values)
    eig_prev = np.array(closed_form_spectrum_pp(n - 1, k).expand().values)
    pts: list[float] = []
    while len(pts) < count:
        x = float(rng.uniform(-k - 1, k + 1))
        if not (_near(x, eig_n, 10 * min_gap) or _near(f_apply(k, x), eig_prev, 10 * min_gap)):
            pts.append(x)
    return pts
