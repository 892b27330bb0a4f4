"""Edge-list text and JSON serialisation of :class:`~sierpinski.graph.Graph`.

Edge-list format::

    <n_vertices> <m_edges>
    # <index> <word>
    <u> <v>

with 0-based ``u < v``.  Comment lines map an index to its word label.
"""
from __future__ import annotations

import json

from .errors import InvalidParameter
from .graph import Graph


def word_to_str(word) -> str:
    if isinstance(word, tuple) and all(isinstance(a, int) for a in word):
        if all(0 <= a < 10 for a in word):
            return "".join(map(str, word))
        return ",".join(map(str, word))
    return str(word)


def str_to_word(text: str) -> tuple[int, ...]:
    if "," in text:
        return tuple(int(a) for a in text.split(","))
    return tuple(int(a) for a in text)


def _word_labels(g: Graph) -> dict[int, str] | None:
    if g.labels is None:
        return None
    return {i: word_to_str(w) for i, w in enumerate(g.labels)}


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    labels = _word_labels(g)
    if labels:
        lines += [f"# {i} {w}" for i, w in labels.items()]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    header = None
    edges = []
    labels: dict[int, tuple] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2:
                labels[int(parts[0])] = str_to_word(parts[1])
            continue
        a, b = line.split()
        if header is None:
            header = (int(a), int(b))
        else:
            edges.append((int(a), int(b)))
    if header is None:
        raise InvalidParameter("missing header line")
    n, m = header
    if len(edges) != m:
        raise InvalidParameter(f"header declares {m} edges, found {len(edges)}")
    lab = None
    if labels:
        if sorted(labels) != list(range(n)):
            raise InvalidParameter("label comments must cover every vertex")
        lab = tuple(labels[i] for i in range(n))
    return Graph(n, tuple(edges), lab)


def to_json_obj(g: Graph) -> dict:
    obj = {"n": g.n, "edges": [[u, v] for u, v in g.edges]}
    labels = _word_labels(g)
    if labels is not None:
        obj["labels"] = {str(i): w for i, w in labels.items()}
    return obj


def to_json(g: Graph) -> str:
    return json.dumps(to_json_obj(g), sort_keys=True)


def from_json(text: str) -> Graph:
    obj = json.loads(text)
    labels = obj.get("labels")
    lab = None
    if labels:
        lab = tuple(str_to_word(labels[str(i)]) for i in range(obj["n"]))
    return Graph(obj["n"], tuple(tuple(e) for e in obj["edges"]), lab)
