"""Canonical forms, automorphism groups, vertex-transitivity and Cayley tests.

Canonical labelling is individualization-refinement: refine an ordered
partition to an equitable one, individualize a vertex of the first smallest
non-singleton cell, recurse.  Each leaf (discrete partition) is a labelling;
the canonical one minimises ``(refinement trace, relabelled edge list)``.
Leaves that reproduce the first or best certificate yield automorphisms,
which prune the search by orbits and by jumping back to the common ancestor.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import NamedTuple

from .config import CANONICAL_LIMIT, GROUP_BUDGET
from .errors import ResourceLimit
from .graph import Graph
from .perm import Perm, PermGroup, compose, identity, is_identity, orbit_partition


class Certificate(NamedTuple):
    """Relabelling-invariant graph fingerprint: the canonically relabelled edge list."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def hexdigest(self) -> str:
        text = f"{self.n};" + ";".join(f"{u},{v}" for u, v in self.edges)
        return hashlib.sha256(text.encode()).hexdigest()


def _refine(adj: list[list[int]], cells: list[list[int]]) -> tuple[list[list[int]], tuple]:
    n = sum(len(c) for c in cells)
    cell_of = [0] * n
    trace = []
    while True:
        for ci, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = ci
        new: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                key = tuple(sorted(cell_of[w] for w in adj[v]))
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                new.append(cell)
                continue
            split = True
            keys = sorted(groups)
            trace.append((len(new), tuple((key, len(groups[key])) for key in keys)))
            new.extend(groups[key] for key in keys)
        cells = new
        if not split:
            return cells, tuple(trace)


@dataclass
class _Leaf:
    path: tuple[int, ...]
    traces: tuple
    order: list[int]
    cert: tuple


@dataclass
class CanonicalResult:
    certificate: Certificate
    labeling: list[int]
    automorphisms: list[Perm] = field(default_factory=list)
    leaves: int = 0


class _Search:
    def __init__(self, g: Graph):
        self.n = g.n
        self.adj = [sorted(a) for a in g.adj]
        self.edges = g.edges
        self.first: _Leaf | None = None
        self.best: _Leaf | None = None
        self.autos: list[Perm] = []
        self.leaves = 0

    def _cert(self, order: list[int]) -> tuple:
        lab = [0] * self.n
        for i, v in enumerate(order):
            lab[v] = i
        return tuple(sorted((min(lab[u], lab[v]), max(lab[u], lab[v])) for u, v in self.edges))

    def run(self) -> CanonicalResult:
        if self.n == 0:
            return CanonicalResult(Certificate(0, ()), [])
        cells, t = _refine(self.adj, [list(range(self.n))])
        self._visit(cells, (), (t,))
        best = self.best
        return CanonicalResult(Certificate(self.n, best.cert), best.order, self.autos, self.leaves)

    def _leaf(self, cells, path, traces):
        self.leaves += 1
        order = [c[0] for c in cells]
        cert = self._cert(order)
        leaf = _Leaf(path, traces, order, cert)
        if self.first is None:
            self.first = self.best = leaf
            return None
        for ref in (self.first, self.best):
            if traces == ref.traces and cert == ref.cert:
                gamma = [0] * self.n
                for a, b in zip(ref.order, order):
                    gamma[a] = b
                gamma = tuple(gamma)
                if not is_identity(gamma) and gamma not in self.autos:
                    self.autos.append(gamma)
                return _common_prefix(path, ref.path)
        if (traces, cert) < (self.best.traces, self.best.cert):
            self.best = leaf
        return None

    def _visit(self, cells, path, traces):
        if len(cells) == self.n:
            return self._leaf(cells, path, traces)
        depth = len(path)
        size = min(len(c) for c in cells if len(c) > 1)
        ci = next(i for i, c in enumerate(cells) if len(c) == size)
        explored: list[int] = []
        uf_for = -1
        reps: list[int] = []
        for v in cells[ci]:
            if explored:
                if uf_for != len(self.autos):
                    fixing = [a for a in self.autos if all(a[p] == p for p in path)]
                    reps = [0] * self.n
                    for cell in orbit_partition(self.n, fixing):
                        for x in cell:
                            reps[x] = cell[0]
                    uf_for = len(self.autos)
                seen = {reps[w] for w in explored}
                if reps[v] in seen:
                    continue
            child = cells[:ci] + [[v], [w for w in cells[ci] if w != v]] + cells[ci + 1:]
            child, t = _refine(self.adj, child)
            child_traces = traces + (t,)
            first_eq = child_traces == self.first.traces[: depth + 2] if self.first else True
            if not first_eq and self.best is not None and child_traces > self.best.traces[: depth + 2]:
                continue
            explored.append(v)
            jump = self._visit(child, path + (v,), child_traces)
            if jump is not None and jump < depth:
                return jump
        return None


def _common_prefix(a: tuple, b: tuple) -> int:
    i = 0
    while i < len(a) and i < len(b) and a[i] == b[i]:
        i += 1
    return i


def _check_limit(g: Graph, limit: int | None) -> None:
    limit = CANONICAL_LIMIT if limit is None else limit
    if g.n > limit:
        raise ResourceLimit(f"{g.n} vertices exceeds canonicalization limit {limit}")


def canonical_labeling(g: Graph, limit: int | None = None) -> CanonicalResult:
    _check_limit(g, limit)
    return _Search(g).run()


def canonical_form(g: Graph, limit: int | None = None) -> Certificate:
    return canonical_labeling(g, limit).certificate


def are_isomorphic(g: Graph, h: Graph, limit: int | None = None) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g, limit) == canonical_form(h, limit)


def automorphism_group(g: Graph, limit: int | None = None, base=()) -> PermGroup:
    return PermGroup(g.n, canonical_labeling(g, limit).automorphisms, base=base)


def orbits(group: PermGroup) -> list[list[int]]:
    return group.orbits()


def is_vertex_transitive(g: Graph, limit: int | None = None) -> bool:
    if not g.is_regular():
        return False
    return len(automorphism_group(g, limit).orbits()) == 1


def ball_cut_vertex_witness(g: Graph, v: int, radius: int) -> bool:
    """Whether ``v`` is a cut vertex of the subgraph induced by its closed ball."""
    dist = g.distances_from(v)
    ball = {u for u, d in enumerate(dist) if 0 <= d <= radius}
    rest = ball - {v}
    if not rest:
        return False
    start = min(rest)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w in rest and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) < len(rest)


@dataclass
class CayleyVerdict:
    cayley: bool | str
    group_order: int | None
    regular_subgroup_generators: list[Perm] | None = None

    def __bool__(self):
        return self.cayley is True

    def as_dict(self) -> dict:
        gens = self.regular_subgroup_generators
        return {
            "cayley": self.cayley,
            "group_order": self.group_order,
            "regular_subgroup_generators": None if gens is None else [list(p) for p in gens],
        }


def _closure(n: int, gens: list[Perm]) -> dict[int, Perm] | None:
    """Elements of ``<gens>`` keyed by image of 0, or None once it cannot be semiregular of order dividing n."""
    e = identity(n)
    elems = {0: e}
    queue = [e]
    while queue:
        x = queue.pop()
        for s in gens:
            y = compose(x, s)
            z = elems.get(y[0])
            if z is not None:
                if z != y:
                    return None
                continue
            if any(i == a for i, a in enumerate(y)):
                return None
            elems[y[0]] = y
            queue.append(y)
    if n % len(elems):
        return None
    return elems


def find_regular_subgroup(g: Graph, group: PermGroup) -> list[Perm] | None:
    """Generators of a subgroup of ``group`` acting regularly on the vertices, or None."""
    n = g.n
    chain = PermGroup(n, group.generators, base=(0,))
    trans0 = chain.transversals[0] if chain.base and chain.base[0] == 0 else {0: identity(n)}
    stab = list(chain.stabilizer_elements())
    cand_cache: dict[int, list[Perm]] = {}

    def candidates(v: int) -> list[Perm]:
        if v not in cand_cache:
            u = trans0[v]
            cs = (compose(u, s) for s in stab)
            cand_cache[v] = [c for c in cs if all(i != a for i, a in enumerate(c))]
        return cand_cache[v]

    seen: set[frozenset] = set()

    def search(elems: dict[int, Perm], gens: list[Perm]) -> list[Perm] | None:
        if len(elems) == n:
            return gens
        v = next(x for x in range(n) if x not in elems)
        for c in candidates(v):
            new = _closure(n, gens + [c])
            if new is None:
                continue
            key = frozenset(new.values())
            if key in seen:
                continue
            seen.add(key)
            found = search(new, gens + [c])
            if found is not None:
                return found
        return None

    return search({0: identity(n)}, [])


def is_cayley(g: Graph, group_budget: int = GROUP_BUDGET, limit: int | None = None) -> CayleyVerdict:
    """Sabidussi test: ``g`` is Cayley iff ``Aut(g)`` has a regular subgroup."""
    if g.n <= 1:
        return CayleyVerdict(True, 1, [])
    if not g.is_regular():
        return CayleyVerdict(False, None)
    group = automorphism_group(g, limit, base=(0,))
    order = group.order()
    if not group.is_transitive():
        return CayleyVerdict(False, order)
    if order > group_budget:
        return CayleyVerdict("unknown", order)
    if order == g.n:
        return CayleyVerdict(True, order, list(group.generators))
    gens = find_regular_subgroup(g, group)
    if gens is None:
        return CayleyVerdict(False, order)
    return CayleyVerdict(True, order, gens)
