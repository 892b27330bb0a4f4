"""Permutations as image tuples and permutation groups with a stabilizer chain.

A permutation ``p`` of ``range(m)`` is the tuple of images ``p[i]``.
``compose(g, h)`` is ``g o h``: apply ``h`` first, then ``g``.
"""
from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InvalidParameter

Perm = tuple[int, ...]


def identity(m: int) -> Perm:
    return tuple(range(m))


def check_perm(p: Sequence[int]) -> Perm:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(len(p))):
        raise InvalidParameter("not a permutation")
    return p


def compose(g: Perm, h: Perm) -> Perm:
    return tuple(g[x] for x in h)


def inverse(g: Perm) -> Perm:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def is_identity(g: Perm) -> bool:
    return all(i == x for i, x in enumerate(g))


def fixed_points(g: Perm) -> list[int]:
    return [i for i, x in enumerate(g) if i == x]


def cycles(g: Perm) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(len(g)):
        if i in seen or g[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = g[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = g[j]
        out.append(tuple(cyc))
    return out


def orbit_partition(m: int, gens: Iterable[Perm]) -> list[list[int]]:
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i, x in enumerate(g):
            a, b = find(i), find(x)
            if a != b:
                parent[max(a, b)] = min(a, b)
    cells: dict[int, list[int]] = {}
    for i in range(m):
        cells.setdefault(find(i), []).append(i)
    return sorted(cells.values())


class PermGroup:
    """Group generated by ``generators`` acting on ``range(degree)``.

    The stabilizer chain (base points, strong generators, transversals) is
    built lazily by the deterministic Schreier-Sims algorithm; ``base``
    optionally fixes the first base points.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (), base: Sequence[int] = ()):
        self.degree = degree
        gens = []
        for g in generators:
            g = check_perm(g)
            if len(g) != degree:
                raise InvalidParameter("generator degree mismatch")
            if not is_identity(g) and g not in gens:
                gens.append(g)
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._base_prefix = tuple(base)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"

    @cached_property
    def _chain(self):
        return _schreier_sims(self.degree, list(self.generators), list(self._base_prefix))

    @property
    def base(self) -> list[int]:
        return list(self._chain[0])

    @property
    def transversals(self) -> list[dict[int, Perm]]:
        return self._chain[2]

    @property
    def strong_generators(self) -> list[list[Perm]]:
        return self._chain[1]

    def order(self) -> int:
        out = 1
        for t in self.transversals:
            out *= len(t)
        return out

    def orbits(self) -> list[list[int]]:
        return orbit_partition(self.degree, self.generators)

    def orbit(self, point: int) -> list[int]:
        return sorted(_transversal(point, self.generators))

    def is_transitive(self) -> bool:
        return len(self.orbits()) <= 1

    def sift(self, g: Perm) -> tuple[Perm, int]:
        return _strip(g, 0, self._chain[0], self._chain[2])

    def contains(self, g: Sequence[int]) -> bool:
        h, j = self.sift(tuple(g))
        return j == len(self.base) and is_identity(h)

    def elements(self, level: int = 0) -> Iterator[Perm]:
        """Every element of the stabilizer of the first ``level`` base points."""
        trans = self.transversals
        result: list[Perm] = [identity(self.degree)]
        for t in reversed(trans[level:]):
            result = [compose(u, g) for u in t.values() for g in result]
        return iter(result)

    def stabilizer_elements(self) -> Iterator[Perm]:
        """Elements fixing the first base point."""
        return self.elements(1)


def _transversal(point: int, gens: Sequence[Perm]) -> dict[int, Perm]:
    m = len(gens[0]) if gens else point + 1
    trans = {point: identity(m)}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g[x]
            if y not in trans:
                trans[y] = compose(g, trans[x])
                queue.append(y)
    return trans


def _strip(g: Perm, start: int, base: list[int], trans: list[dict[int, Perm]]) -> tuple[Perm, int]:
    for level in range(start, len(base)):
        x = g[base[level]]
        u = trans[level].get(x)
        if u is None:
            return g, level
        g = compose(inverse(u), g)
    return g, len(base)


def _first_moved(g: Perm) -> int:
    for i, x in enumerate(g):
        if i != x:
            return i
    raise ValueError("identity has no moved point")


def _schreier_sims(m: int, gens: list[Perm], base: list[int]):
    base = list(base)
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))
    strong = [[g for g in gens if all(g[b] == b for b in base[:i])] for i in range(len(base))]

    def trans_of(level: int) -> dict[int, Perm]:
        if not strong[level]:
            return {base[level]: identity(m)}
        return _transversal(base[level], strong[level])

    trans = [trans_of(i) for i in range(len(base))]
    i = len(base) - 1
    while i >= 0:
        changed = False
        for beta, u_beta in list(trans[i].items()):
            for x in strong[i]:
                schreier = compose(inverse(trans[i][x[beta]]), compose(x, u_beta))
                if is_identity(schreier):
                    continue
                h, j = _strip(schreier, i + 1, base, trans)
                if is_identity(h):
                    continue
                if j == len(base):
                    base.append(_first_moved(h))
                    strong.append([])
                    trans.append({})
                for level in range(i + 1, j + 1):
                    strong[level].append(h)
                    trans[level] = trans_of(level)
                i = j
                changed = True
                break
            if changed:
                break
        if not changed:
            i -= 1
    # drop redundant trailing levels that carry no generators
    while base and len(trans[-1]) == 1 and not strong[-1]:
        base.pop()
        strong.pop()
        trans.pop()
    return base, strong, trans
