"""Finite groups as multiplication tables, Cayley graphs, affine groups,
strongly partitioned graphs and the enumeration of small SP_1 families.

Group elements are referred to by their index in ``TableGroup.elements``.
A Cayley graph joins ``u`` to ``v`` when ``v u^-1`` lies in the connection
set, so left multiplication by the connection set gives the neighbours and
right multiplications are automorphisms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from typing import Callable, Hashable, NamedTuple, Sequence

from .config import SEARCH_NODE_BUDGET
from .errors import InvalidConnectionSet, InvalidParameter, NotInSP, ResourceLimit
from .fields import FiniteField, finite_field
from .graph import Graph
from .symmetry import are_isomorphic, automorphism_group, canonical_form, is_cayley


@dataclass(frozen=True)
class TableGroup:
    """A finite group given by its Cayley table over ``range(len(elements))``."""

    elements: tuple
    table: tuple[tuple[int, ...], ...]
    name: str = ""
    identity: int = field(init=False)
    inverses: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = len(self.elements)
        ident = next((e for e in range(n) if all(self.table[e][x] == x for x in range(n))), None)
        if ident is None:
            raise InvalidParameter("table has no identity")
        inv = []
        for x in range(n):
            y = next((y for y in range(n) if self.table[x][y] == ident), None)
            if y is None:
                raise InvalidParameter(f"element {x} has no inverse")
            inv.append(y)
        object.__setattr__(self, "identity", ident)
        object.__setattr__(self, "inverses", tuple(inv))

    @classmethod
    def from_operation(cls, elements: Sequence[Hashable], op: Callable, name: str = "") -> "TableGroup":
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        try:
            table = tuple(tuple(index[op(a, b)] for b in elements) for a in elements)
        except KeyError as exc:
            raise InvalidParameter(f"product {exc} leaves the element set") from None
        return cls(elements, table, name)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, h: int, g: int) -> int:
        """``h^g = g^-1 h g``."""
        return self.mul(self.mul(self.inv(g), h), g)

    def index(self, element) -> int:
        return self.elements.index(element)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def is_associative(self) -> bool:
        r = range(self.order)
        t = self.table
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in r for b in r for c in r)

    def is_abelian(self, subset: Sequence[int] | None = None) -> bool:
        s = range(self.order) if subset is None else subset
        return all(self.mul(a, b) == self.mul(b, a) for a in s for b in s)

    def is_subgroup(self, subset) -> bool:
        s = set(subset)
        return self.identity in s and all(self.mul(a, self.inv(b)) in s for a in s for b in s)

    def generated(self, gens) -> frozenset[int]:
        out = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return frozenset(out)

    def right_coset(self, subgroup, g: int) -> frozenset[int]:
        return frozenset(self.mul(h, g) for h in subgroup)

    def right_cosets(self, subgroup) -> list[frozenset[int]]:
        seen: set[int] = set()
        out = []
        for g in range(self.order):
            if g not in seen:
                c = self.right_coset(subgroup, g)
                seen |= c
                out.append(c)
        return out


class AffineElement(NamedTuple):
    """``(x, a)`` acting as ``t -> x t + a``; ``x`` is nonzero."""

    x: int
    a: int


def affine_group(q: int) -> tuple[TableGroup, FiniteField]:
    """The affine group of GF(q) with ``(x, a)(y, b) = (xy, xb + a)``."""
    F = finite_field(q)
    elems = [AffineElement(x, a) for x in F.nonzero() for a in F.elements()]

    def op(u: AffineElement, v: AffineElement) -> AffineElement:
        return AffineElement(F.mul(u.x, v.x), F.add(F.mul(u.x, v.a), u.a))

    return TableGroup.from_operation(elems, op, f"AGL(1,{q})"), F


def cyclic_group(m: int) -> TableGroup:
    if m < 1:
        raise InvalidParameter("order must be positive")
    return TableGroup.from_operation(range(m), lambda a, b: (a + b) % m, f"Z{m}")


def elementary_abelian_group(p: int, m: int) -> TableGroup:
    from itertools import product

    elems = list(product(range(p), repeat=m))
    return TableGroup.from_operation(elems, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)), f"Z{p}^{m}")


def complement_subgroup(group: TableGroup) -> frozenset[int]:
    """``{(x, 0)}`` inside an affine group."""
    return frozenset(i for i, e in enumerate(group.elements) if e.a == 0)


def kernel_subgroup(group: TableGroup) -> frozenset[int]:
    """``{(1, a)}`` inside an affine group."""
    return frozenset(i for i, e in enumerate(group.elements) if e.x == 1)


@dataclass(frozen=True)
class CayleyPresentation:
    group: TableGroup
    connection: frozenset[int]

    def __post_init__(self):
        g = self.group
        c = frozenset(self.connection)
        object.__setattr__(self, "connection", c)
        if any(not 0 <= x < g.order for x in c):
            raise InvalidConnectionSet("connection set element out of range")
        if g.identity in c:
            raise InvalidConnectionSet("connection set contains the identity")
        if any(g.inv(x) not in c for x in c):
            raise InvalidConnectionSet("connection set is not closed under inverses")

    def as_dict(self) -> dict:
        return {
            "group": self.group.name,
            "order": self.group.order,
            "elements": [list(e) if isinstance(e, tuple) else e for e in self.group.elements],
            "table": [list(row) for row in self.group.table],
            "connection_set": sorted(self.connection),
        }


def cayley_graph(pres: CayleyPresentation) -> Graph:
    g = pres.group
    edges = {(min(u, g.mul(c, u)), max(u, g.mul(c, u))) for u in range(g.order) for c in pres.connection}
    return Graph(g.order, tuple(edges), g.elements)


def spp2_presentation(q: int) -> CayleyPresentation:
    """Affine group of GF(q) with connection set ``{(x, 0): x != 1} + {(-1, -1)}``."""
    if q < 3:
        raise InvalidParameter("q must be at least 3")
    group, F = affine_group(q)
    minus = F.neg(1)
    conn = {group.index(AffineElement(x, 0)) for x in F.nonzero() if x != 1}
    conn.add(group.index(AffineElement(minus, minus)))
    return CayleyPresentation(group, frozenset(conn))


def copy_parts(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the copies in a labelled ``S++(n, k)``, grouped by first letter."""
    parts: dict = {}
    for v, w in enumerate(g.labels or ()):
        parts.setdefault(w[0], set()).add(v)
    return [frozenset(parts[c]) for c in sorted(parts)]


def _check_partition(g: Graph, parts) -> list[frozenset[int]]:
    parts = [frozenset(p) for p in parts]
    seen: set[int] = set()
    for p in parts:
        if seen & p:
            raise InvalidParameter("parts overlap")
        seen |= p
    if seen != set(range(g.n)):
        raise InvalidParameter("parts do not cover the vertex set")
    return parts


def _bfs_order(delta: Graph) -> list[int]:
    order: list[int] = []
    seen: set[int] = set()
    for s in sorted(range(delta.n), key=lambda v: -delta.degree(v)):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(delta.adj[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def find_copies(g: Graph, delta: Graph, induced: bool = True, budget: int = SEARCH_NODE_BUDGET):
    """Yield each copy of ``delta`` in ``g`` once, as ``(vertex set, edge set)``.

    Backtracking over embeddings in BFS order of ``delta``.  With
    ``induced`` the copy must be an induced subgraph.
    """
    order = _bfs_order(delta)
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[w] for w in delta.adj[v] if pos[w] < i] for i, v in enumerate(order)]
    nonback = [[j for j in range(i) if j not in back[i]] for i in range(len(order))]
    need = [delta.degree(v) for v in order]
    # lex-leader symmetry breaking: along a stabilizer chain of Aut(delta) with
    # base ``order``, each base point takes the smallest image in its orbit.
    # Orbit members are never earlier base points, so they come later in ``order``.
    chain = automorphism_group(delta, base=order)
    above: list[list[int]] = [[] for _ in order]
    for b, trans in zip(chain.base, chain.transversals):
        for w in trans:
            if w != b:
                above[pos[w]].append(pos[b])
    img: list[int] = []
    used: set[int] = set()
    found: set = set()
    nodes = 0

    def extend(i):
        nonlocal nodes
        if i == len(order):
            vs = frozenset(img)
            es = frozenset(frozenset((img[pos[u]], img[pos[v]])) for u, v in delta.edges)
            key = vs if induced else (vs, es)
            if key not in found:
                found.add(key)
                yield vs, es
            return
        cands = g.adj[img[back[i][0]]] if back[i] else range(g.n)
        for x in cands:
            nodes += 1
            if nodes > budget:
                raise ResourceLimit(f"subgraph search exceeded {budget} nodes")
            if x in used or g.degree(x) < need[i]:
                continue
            if any(img[j] not in g.adj[x] for j in back[i]):
                continue
            if any(x < img[j] for j in above[i]):
                continue
            if induced and any(img[j] in g.adj[x] for j in nonback[i]):
                continue
            img.append(x)
            used.add(x)
            yield from extend(i + 1)
            img.pop()
            used.discard(x)

    yield from extend(0)


def strongly_partitioned_check(
    g: Graph, delta: Graph, parts, induced: bool = True, budget: int = SEARCH_NODE_BUDGET
) -> bool:
    """Each part induces a copy of ``delta`` and ``g`` holds no other copy.

    ``induced=False`` counts every (not necessarily induced) subgraph copy.
    """
    parts = _check_partition(g, parts)
    if delta.n * len(parts) != g.n:
        raise InvalidParameter("part sizes do not match |V(delta)|")
    for p in parts:
        if not are_isomorphic(g.induced_subgraph(sorted(p)), delta):
            return False
    allowed = set(parts)
    for vs, es in find_copies(g, delta, induced, budget=budget):
        if vs not in allowed:
            return False
        if not induced:
            inside = {frozenset(e) for e in g.edges if e[0] in vs and e[1] in vs}
            if es != inside:
                return False
    return True


def connection_constant(g: Graph, parts) -> int:
    """The number of edges between any two parts, which must not depend on the pair."""
    parts = _check_partition(g, parts)
    if len(parts) < 2:
        raise InvalidParameter("need at least two parts")
    where = {v: i for i, p in enumerate(parts) for v in p}
    counts = {(i, j): 0 for i in range(len(parts)) for j in range(i + 1, len(parts))}
    for u, v in g.edges:
        a, b = sorted((where[u], where[v]))
        if a != b:
            counts[(a, b)] += 1
    values = set(counts.values())
    if len(values) != 1:
        raise NotInSP(f"inter-part edge counts vary: {sorted(values)}")
    return values.pop()


def coset_structure_check(pres: CayleyPresentation, parts) -> bool:
    """The part holding the identity is a subgroup and the parts are exactly its right cosets."""
    group = pres.group
    parts = [frozenset(p) for p in parts]
    home = next((p for p in parts if group.identity in p), None)
    if home is None or not group.is_subgroup(home):
        return False
    return set(parts) == set(group.right_cosets(home))


def frobenius_complement_check(group: TableGroup, h) -> bool:
    """``H`` meets each conjugate ``H^g`` with ``g`` outside ``H`` only in the identity."""
    hs = frozenset(h)
    if not group.is_subgroup(hs):
        raise InvalidParameter("H is not a subgroup")
    for g in range(group.order):
        if g in hs:
            continue
        if any(group.conj(x, g) in hs for x in hs if x != group.identity):
            return False
    return True


def frobenius_kernel(group: TableGroup, h) -> frozenset[int]:
    """Elements lying in no conjugate of ``H`` minus the identity, together with the identity."""
    covered = {group.conj(x, g) for g in range(group.order) for x in h if x != group.identity}
    return frozenset(x for x in range(group.order) if x not in covered)


def is_elementary_abelian(group: TableGroup, subset) -> bool:
    s = list(subset)
    if not group.is_subgroup(s) or not group.is_abelian(s):
        return False
    orders = {group.element_order(x) for x in s if x != group.identity}
    if not orders:
        return True
    if len(orders) != 1:
        return False
    p = orders.pop()
    return all(p % d for d in range(2, p)) and _is_power_of(len(s), p)


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass
class FrobeniusStructure:
    """How a connection set ``C = C' + {c}`` sits in a Frobenius group ``N x| H``."""

    complement: frozenset[int]
    kernel: frozenset[int]
    involution: int
    frobenius: bool
    kernel_elementary_abelian: bool
    case: str | None

    def as_dict(self) -> dict:
        return {
            "complement_order": len(self.complement),
            "kernel_order": len(self.kernel),
            "involution": self.involution,
            "frobenius": self.frobenius,
            "kernel_elementary_abelian": self.kernel_elementary_abelian,
            "case": self.case,
        }


def classify_connection_set(pres: CayleyPresentation, h) -> FrobeniusStructure:
    """Split ``C`` into ``C' = C & H`` and the single outside element ``c`` and classify.

    Case ``"kernel"``: ``c`` lies in ``N`` and ``C'`` generates ``H``.
    Case ``"conjugate"``: ``c = n^-1 x n`` for some ``x != 1`` in ``H``,
    ``n != 1`` in ``N``, and ``C' + {x}`` generates ``H``.
    """
    group = pres.group
    hs = frozenset(h)
    inner = pres.connection & hs
    outer = pres.connection - hs
    if len(outer) != 1:
        raise InvalidParameter("connection set must have exactly one element outside H")
    (c,) = outer
    if group.mul(c, c) != group.identity:
        raise InvalidParameter("the outside element is not an involution")
    frob = frobenius_complement_check(group, hs)
    kernel = frobenius_kernel(group, hs)
    case = None
    if frob:
        if c in kernel and group.generated(inner) == hs:
            case = "kernel"
        else:
            for x in hs - {group.identity}:
                if any(group.conj(x, n) == c for n in kernel if n != group.identity):
                    if group.generated(inner | {x}) == hs:
                        case = "conjugate"
                        break
    return FrobeniusStructure(hs, kernel, c, frob, is_elementary_abelian(group, kernel), case)


@dataclass
class SP1Class:
    fingerprint: str
    order: int
    cayley: bool | str
    representative: Graph = field(repr=False, compare=False)

    def as_dict(self) -> dict:
        return {"fingerprint": self.fingerprint, "order": self.order, "cayley": self.cayley}


def _assignment_reps(delta: Graph) -> list[tuple[int, ...]]:
    """Bijections ``V(delta) -> partner slots`` up to precomposition with ``Aut(delta)``."""
    autos = list(automorphism_group(delta).elements())
    reps = []
    for sigma in permutations(range(delta.n)):
        if all(tuple(sigma[a[v]] for v in range(delta.n)) >= sigma for a in autos):
            reps.append(sigma)
    return reps


def sp1_graph(delta: Graph, assignment: Sequence[Sequence[int]]) -> Graph:
    """``k + 1`` copies of ``delta``; vertex ``v`` of copy ``i`` meets the copy in slot ``assignment[i][v]``.

    Slots of copy ``i`` list the other copies in increasing order.
    """
    k = delta.n
    edges = [(i * k + u, i * k + v) for i in range(k + 1) for u, v in delta.edges]
    owner = []
    for i, sigma in enumerate(assignment):
        partners = [j for j in range(k + 1) if j != i]
        owner.append({partners[s]: v for v, s in enumerate(sigma)})
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            edges.append((i * k + owner[i][j], j * k + owner[j][i]))
    return Graph((k + 1) * k, tuple(edges))


def sp1_enumerate(
    delta: Graph, regular_only: bool = True, strict: bool = False, budget: int = 10**6
) -> list[SP1Class]:
    """Isomorphism classes of regular members of ``SP_1(delta)``.

    Copy 0 uses the identity assignment; the others range over assignments
    modulo ``Aut(delta)``.  Classes are deduplicated by canonical form and
    each representative is tested for being a Cayley graph.  ``strict``
    additionally drops graphs that hold a copy of ``delta`` outside the
    designated parts.
    """
    if not regular_only:
        raise NotImplementedError("only the regular members are enumerated")
    if not delta.is_regular() or delta.n < 1:
        raise InvalidParameter("delta must be a nonempty regular graph")
    k = delta.n
    reps = _assignment_reps(delta)
    total = len(reps) ** k
    if total > budget or factorial(k) > budget:
        raise ResourceLimit(f"{total} assignments exceed budget {budget}")
    first = tuple(range(k))
    classes: dict = {}

    def rec(prefix):
        if len(prefix) == k + 1:
            g = sp1_graph(delta, prefix)
            cert = canonical_form(g)
            if cert not in classes:
                classes[cert] = g
            return
        for sigma in reps:
            rec(prefix + [sigma])

    rec([first])
    out = []
    for cert, g in sorted(classes.items(), key=lambda kv: kv[0].hexdigest()):
        if strict:
            parts = [frozenset(range(i * k, (i + 1) * k)) for i in range(k + 1)]
            if not strongly_partitioned_check(g, delta, parts):
                continue
        out.append(SP1Class(cert.hexdigest(), g.n, is_cayley(g).cayley, g))
    return out


def spp2_matches(q: int) -> bool:
    from .graph import sierpinski_pp

    return are_isomorphic(cayley_graph(spp2_presentation(q)), sierpinski_pp(2, q - 1))
