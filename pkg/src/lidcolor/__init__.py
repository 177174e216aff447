"""Locally identifying colorings of graphs and of path/cycle products."""

from .graph import (
    Graph,
    InvalidParameterError,
    ProductLabeling,
    cartesian_product,
    connected_components,
    cycle_graph,
    family_graph,
    is_bipartite,
    path_graph,
    tensor_product,
)
from .verify import Coloring, InvalidColoringError, LidReport, is_lid, is_proper, lid_report

__version__ = "0.1.0"

__all__ = [
    "Coloring",
    "Graph",
    "InvalidColoringError",
    "InvalidParameterError",
    "LidReport",
    "ProductLabeling",
    "cartesian_product",
    "connected_components",
    "cycle_graph",
    "family_graph",
    "is_bipartite",
    "is_lid",
    "is_proper",
    "lid_report",
    "path_graph",
    "tensor_product",
]
