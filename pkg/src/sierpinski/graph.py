"""Immutable simple graphs and the Sierpinski graph families.

Vertices of ``sierpinski(n, k)`` are words in ``{1..k}^n`` indexed in
lexicographic order.  Vertices of ``sierpinski_pp(n, k)`` are words in
``{0..k} x {1..k}^(n-1)``: the first letter names the copy of
``S(n-1, k)``, so copies ``1..k`` together form ``S(n, k)`` itself and copy
``0`` is the extra copy matched to its extreme vertices.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Hashable, Iterable, NamedTuple, Sequence

from .config import vertex_budget
from .errors import InvalidParameter, MissingLabels, ResourceLimit

Word = tuple[int, ...]


class Midpoint(NamedTuple):
    """Label of a vertex inserted into edge ``(u, v)`` by :func:`subdivision`."""

    u: Hashable
    v: Hashable


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` is normalised to a sorted tuple of ``(u, v)`` pairs with
    ``u < v``.  ``labels``, when given, holds one distinct hashable label per
    vertex (words for the Sierpinski families).
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParameter("negative vertex count")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidParameter(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidParameter(f"edge ({u}, {v}) out of range")
            e = (u, v) if u < v else (v, u)
            if e in norm:
                raise InvalidParameter(f"duplicate edge {e}")
            norm.add(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.n:
                raise InvalidParameter("one label per vertex required")
            if len(set(labels)) != self.n:
                raise InvalidParameter("labels must be distinct")
            object.__setattr__(self, "labels", labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def _label_index(self) -> dict:
        if self.labels is None:
            raise MissingLabels("graph carries no vertex labels")
        return {lab: i for i, lab in enumerate(self.labels)}

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_set

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def index_of(self, label) -> int:
        return self._label_index[label]

    def label(self, v: int):
        if self.labels is None:
            raise MissingLabels("graph carries no vertex labels")
        return self.labels[v]

    def is_regular(self, d: int | None = None) -> bool:
        degs = set(self.degrees())
        if not degs:
            return True
        return len(degs) == 1 and (d is None or d in degs)

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced on ``vertices``, renumbered in the given order."""
        vs = list(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        edges = [(pos[u], pos[w]) for u in vs for w in self.adj[u] if w in pos and pos[u] < pos[w]]
        labels = None if self.labels is None else tuple(self.labels[v] for v in vs)
        return Graph(len(vs), tuple(edges), labels)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidParameter("not a permutation of the vertex set")
        edges = tuple((perm[u], perm[v]) for u, v in self.edges)
        labels = None
        if self.labels is not None:
            inv = [0] * self.n
            for v, p in enumerate(perm):
                inv[p] = v
            labels = tuple(self.labels[inv[i]] for i in range(self.n))
        return Graph(self.n, edges, labels)

    def distances_from(self, source: int) -> list[int]:
        """BFS distances; unreachable vertices get -1."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def is_connected(self) -> bool:
        return self.n == 0 or min(self.distances_from(0)) >= 0


def _check_budget(order: int, budget: int | None) -> None:
    limit = vertex_budget(budget)
    if order > limit:
        raise ResourceLimit(f"{order} vertices exceeds budget {limit}")


def empty_graph(m: int) -> Graph:
    return Graph(m)


def complete_graph(m: int) -> Graph:
    if m < 1:
        raise InvalidParameter("complete graph needs m >= 1")
    return Graph(m, tuple(combinations(range(m), 2)))


def path_graph(m: int) -> Graph:
    if m < 1:
        raise InvalidParameter("path graph needs m >= 1")
    return Graph(m, tuple((i, i + 1) for i in range(m - 1)))


def cycle_graph(m: int) -> Graph:
    if m < 3:
        raise InvalidParameter("cycle graph needs m >= 3")
    return Graph(m, tuple((i, (i + 1) % m) for i in range(m)))


def word_index(word: Sequence[int], k: int) -> int:
    """Lexicographic index of ``word`` in ``{1..k}^len(word)``."""
    idx = 0
    for a in word:
        idx = idx * k + (a - 1)
    return idx


def words(n: int, k: int) -> list[Word]:
    return list(product(range(1, k + 1), repeat=n))


def _sierpinski_edges(n: int, k: int) -> list[tuple[int, int]]:
    # one edge per (t, prefix, a < b):  prefix a b..b  --  prefix b a..a
    edges = []
    for t in range(n):
        tail = n - t - 1
        step = k**tail
        rep = [(c - 1) * (step - 1) // (k - 1) if k > 1 else 0 for c in range(k + 1)]
        for pre in range(k**t):
            base = pre * k * step
            for a in range(1, k + 1):
                for b in range(a + 1, k + 1):
                    u = base + (a - 1) * step + rep[b]
                    v = base + (b - 1) * step + rep[a]
                    edges.append((u, v))
    return edges


def sierpinski(n: int, k: int, budget: int | None = None) -> Graph:
    """The Sierpinski graph ``S(n, k)`` with word labels."""
    if n < 1 or k < 1:
        raise InvalidParameter("S(n,k) needs n >= 1 and k >= 1")
    _check_budget(k**n, budget)
    return Graph(k**n, tuple(_sierpinski_edges(n, k)), tuple(words(n, k)))


def sierpinski_pp(n: int, k: int, budget: int | None = None) -> Graph:
    """The regular generalized Sierpinski graph ``S++(n, k)``.

    Copy ``i >= 1`` meets copy ``j >= 1`` along ``(i, j, .., j) -- (j, i, .., i)``
    and copy ``0`` meets copy ``u`` along ``(0, u, .., u) -- (u, u, .., u)``.
    """
    if n < 1 or k < 1:
        raise InvalidParameter("S++(n,k) needs n >= 1 and k >= 1")
    order = (k + 1) * k ** (n - 1)
    _check_budget(order, budget)
    if n == 1:
        return Graph(k + 1, tuple(combinations(range(k + 1), 2)), tuple((c,) for c in range(k + 1)))
    size = k ** (n - 1)
    inner = _sierpinski_edges(n - 1, k)
    edges = [(c * size + u, c * size + v) for c in range(k + 1) for u, v in inner]

    def vid(copy: int, letter: int) -> int:
        return copy * size + word_index((letter,) * (n - 1), k)

    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            edges.append((vid(i, j), vid(j, i)))
    for u in range(1, k + 1):
        edges.append((vid(0, u), vid(u, u)))
    labels = tuple((c,) + w for c in range(k + 1) for w in words(n - 1, k))
    return Graph(order, tuple(edges), labels)


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges of ``g`` (in ``g.edges`` order); adjacency is a shared endpoint."""
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)
    edges = set()
    for inc in incident:
        edges.update(combinations(inc, 2))
    return Graph(g.m, tuple(edges), g.edges)


def subdivision(g: Graph) -> Graph:
    """Insert a new vertex into every edge.

    Old vertices keep their indices; edge ``i`` becomes vertex ``g.n + i``,
    labelled by a :class:`Midpoint` of the old labels.
    """
    old = g.labels if g.labels is not None else tuple(range(g.n))
    edges = []
    labels = list(old)
    for i, (u, v) in enumerate(g.edges):
        w = g.n + i
        edges.append((u, w))
        edges.append((v, w))
        labels.append(Midpoint(old[u], old[v]))
    return Graph(g.n + g.m, tuple(edges), tuple(labels))


def is_midpoint(label) -> bool:
    return isinstance(label, Midpoint)


def extreme_vertices(g: Graph) -> list[int]:
    """Indices of the constant words ``(i, .., i)``, ordered by ``i``."""
    if g.labels is None:
        raise MissingLabels("extreme vertices need word labels")
    found = []
    for v, w in enumerate(g.labels):
        if not isinstance(w, tuple) or not w:
            raise MissingLabels(f"label {w!r} is not a word")
        if all(a == w[0] for a in w):
            found.append((w[0], v))
    return [v for _, v in sorted(found)]
