"""Combinatorial flips, 4-connectivity and Hamiltonicity tools for plane triangulations."""

__version__ = "0.1.0"

from .bookembed import (  # noqa: E402
    ArcDiagram,
    BiarcStats,
    augment_to_triangulation,
    biarc_from_subdivision,
    canonical_ordering,
    monotone_biarc_diagram,
    page_assignment,
    verify_plane,
)
from .core import (  # noqa: E402
    PlaneGraph,
    Triangulation,
    TriangulationError,
    canonical_code,
    edges_on_separating_triangles,
    flip,
    is_four_connected,
    separating_triangles,
    simultaneous_flip,
    validate,
)
from .fourconnect import four_connect, sim_flip_set  # noqa: E402
from .generators import FamilySpec, generate  # noqa: E402
from .hamiltonize import HamCycle, eliminate_dummies_subdivisions, hamflip  # noqa: E402
from .tait import partition, verify_partition  # noqa: E402

__all__ = [
    "ArcDiagram",
    "BiarcStats",
    "FamilySpec",
    "HamCycle",
    "PlaneGraph",
    "Triangulation",
    "TriangulationError",
    "__version__",
    "augment_to_triangulation",
    "biarc_from_subdivision",
    "canonical_code",
    "canonical_ordering",
    "edges_on_separating_triangles",
    "eliminate_dummies_subdivisions",
    "flip",
    "four_connect",
    "generate",
    "hamflip",
    "is_four_connected",
    "monotone_biarc_diagram",
    "page_assignment",
    "partition",
    "separating_triangles",
    "sim_flip_set",
    "simultaneous_flip",
    "validate",
    "verify_partition",
    "verify_plane",
]
