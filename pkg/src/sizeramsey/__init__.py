"""Size-Ramsey constructions, adversarial colorings and an exact arrowing engine for cycles."""

from .graph import Color, Coloring, Graph, GraphError, PatternKind, TargetPattern, induced_subgraph

__version__ = "0.1.0"

__all__ = [
    "Color",
    "Coloring",
    "Graph",
    "GraphError",
    "PatternKind",
    "TargetPattern",
    "induced_subgraph",
    "__version__",
]
