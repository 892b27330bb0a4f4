"""Sierpinski graphs S(n,k) and S++(n,k): construction, spectra, symmetry and Cayley tests."""
from __future__ import annotations

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ComplexRootError,
    InternalInconsistency,
    InvalidConnectionSet,
    InvalidParameter,
    MissingLabels,
    NotInSP,
    NumericFailure,
    ResourceLimit,
    SierpinskiError,
)
from .graph import (  # noqa: E402
    Graph,
    complete_graph,
    cycle_graph,
    extreme_vertices,
    line_graph,
    path_graph,
    sierpinski,
    sierpinski_pp,
    subdivision,
)

__all__ = [
    "__version__",
    "Graph",
    "complete_graph",
    "cycle_graph",
    "extreme_vertices",
    "line_graph",
    "path_graph",
    "sierpinski",
    "sierpinski_pp",
    "subdivision",
    "ComplexRootError",
    "InternalInconsistency",
    "InvalidConnectionSet",
    "InvalidParameter",
    "MissingLabels",
    "NotInSP",
    "NumericFailure",
    "ResourceLimit",
    "SierpinskiError",
]
