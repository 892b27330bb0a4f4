"""Dense symmetric eigenvalues, determinants and eigenvalue multisets.

The eigensolver is a cyclic Jacobi method.  Each sweep visits every
off-diagonal pair once, grouped into round-robin rounds of disjoint pairs so
that a whole round of plane rotations is applied as one vectorised update
(disjoint rotations commute, so this equals applying them one by one).
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, NumericFailure
from .graph import Graph

EIG_TOL = 1e-10
MATCH_TOL = 1e-8


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    if g.edges:
        e = np.array(g.edges)
        a[e[:, 0], e[:, 1]] = 1.0
        a[e[:, 1], e[:, 0]] = 1.0
    return a


def laplacian_matrix(g: Graph) -> np.ndarray:
    a = adjacency_matrix(g)
    return np.diag(a.sum(axis=1)) - a


def incidence_matrix(g: Graph) -> np.ndarray:
    """Vertex-by-edge 0/1 matrix, columns in ``g.edges`` order."""
    x = np.zeros((g.n, g.m))
    for j, (u, v) in enumerate(g.edges):
        x[u, j] = x[v, j] = 1.0
    return x


def as_sym_matrix(m) -> np.ndarray:
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidParameter("expected a square matrix")
    if not np.all(np.isfinite(a)):
        raise InvalidParameter("matrix has non-finite entries")
    if not np.array_equal(a, a.T):
        raise InvalidParameter("matrix is not symmetric")
    return a


@dataclass(frozen=True)
class RealMultiset:
    values: tuple[float, ...]
    tol: float = MATCH_TOL

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidParameter("tolerance must be positive")
        object.__setattr__(self, "values", tuple(sorted(float(v) for v in self.values)))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def to_json(self) -> str:
        return json.dumps({"values": list(self.values), "tol": self.tol})

    @classmethod
    def from_json(cls, text: str) -> "RealMultiset":
        obj = json.loads(text)
        return cls(tuple(obj["values"]), obj["tol"])


@dataclass(frozen=True)
class MatchReport:
    match: bool
    max_abs_gap: float | None
    first_divergence: dict | None
    reason: str = ""

    def __bool__(self):
        return self.match

    def as_dict(self) -> dict:
        return {
            "match": self.match,
            "max_abs_gap": self.max_abs_gap,
            "first_divergence": self.first_divergence,
            "reason": self.reason,
        }


def multiset_match(a, b, tol: float = MATCH_TOL) -> MatchReport:
    """Sort both sides and compare pairwise.

    Sort-then-zip is only reliable while ``tol`` is well below the smallest
    gap between distinct eigenvalues.
    """
    xs = sorted(float(v) for v in a)
    ys = sorted(float(v) for v in b)
    if len(xs) != len(ys):
        return MatchReport(
            False, None, {"index": None, "left_size": len(xs), "right_size": len(ys)}, "cardinality mismatch"
        )
    if not xs:
        return MatchReport(True, 0.0, None)
    gaps = np.abs(np.array(xs) - np.array(ys))
    worst = float(gaps.max())
    bad = np.nonzero(gaps > tol)[0]
    if len(bad):
        i = int(bad[0])
        return MatchReport(False, worst, {"index": i, "left": xs[i], "right": ys[i]}, "value mismatch")
    return MatchReport(True, worst, None)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Partition all pairs of ``range(n)`` into rounds of disjoint pairs (circle method)."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p >= 0 and q >= 0:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    # subtracting the diagonal's share from ||A||^2 would cancel catastrophically
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def sym_eigenvalues(m, tol: float = EIG_TOL, max_sweeps: int = 60) -> RealMultiset:
    """All eigenvalues of a real symmetric matrix, ascending.

    Iterates until the off-diagonal Frobenius norm drops below
    ``tol * ||M||_F``; by Weyl's inequality each returned value is then
    within that distance of a true eigenvalue.
    """
    a = as_sym_matrix(m).copy()
    n = a.shape[0]
    norm = float(np.linalg.norm(a))
    if n <= 1 or norm == 0.0:
        return RealMultiset(tuple(np.diag(a)), MATCH_TOL)
    rounds = _round_robin(n)
    target = tol * norm
    for _ in range(max_sweeps):
        if _off_norm(a) < target:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            app, aqq = a[p, p], a[q, q]
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                tau = np.where(active, (aqq - app) / (2.0 * np.where(active, apq, 1.0)), 0.0)
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            c, s = c[:, None], s[:, None]
            # J^T A by rows; (J^T A)^T = A J since A is symmetric; then rows again
            for _ in range(2):
                rp, rq = a[p, :], a[q, :]
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a = np.ascontiguousarray(a.T)
        a = 0.5 * (a + a.T)
    else:
        if _off_norm(a) >= target:
            raise NumericFailure(f"Jacobi did not converge in {max_sweeps} sweeps")
    return RealMultiset(tuple(np.diag(a)), MATCH_TOL)


def determinant(m) -> float:
    """Determinant by Gaussian elimination with partial pivoting."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    det = 1.0
    for col in range(n):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if a[piv, col] == 0.0:
            return 0.0
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            det = -det
        det *= a[col, col]
        if col + 1 < n:
            factors = a[col + 1:, col] / a[col, col]
            a[col + 1:, col:] -= np.outer(factors, a[col, col:])
    return float(det)


def det_shift(m, x: float) -> float:
    """``det(x I - M)``."""
    a = np.asarray(m, dtype=float)
    return determinant(x * np.eye(a.shape[0]) - a)
