"""Exact fractional vertex-arboricity toolkit."""

from .graph import Graph, from_graph6, named_graph, to_graph6
from .intervals import IntervalSet
from .solvers import (
    fractional_chromatic_number,
    fractional_vertex_arboricity,
    largest_induced_forest,
    vertex_arboricity,
)

__all__ = [
    "Graph",
    "IntervalSet",
    "from_graph6",
    "to_graph6",
    "named_graph",
    "fractional_vertex_arboricity",
    "fractional_chromatic_number",
    "largest_induced_forest",
    "vertex_arboricity",
]
__version__ = "0.1.0"
