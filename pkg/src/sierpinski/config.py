"""Size budgets. ``SIERPINSKI_BUDGET`` overrides the vertex budget."""
from __future__ import annotations

import os

DEFAULT_VERTEX_BUDGET = 20_000
CANONICAL_LIMIT = 256
GROUP_BUDGET = 10**6
SEARCH_NODE_BUDGET = 10**8


def vertex_budget(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("SIERPINSKI_BUDGET")
    if env:
        return int(float(env))
    return DEFAULT_VERTEX_BUDGET
