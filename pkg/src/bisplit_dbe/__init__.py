"""Lines in graph metrics, with an executable check of the de Bruijn-Erdos
property for bisplit graphs."""

from .bisplit import BisplitPartition, RefinedPartition, find_max_partition, refine, validate_partition
from .graph import Graph, GraphError, all_pairs_distances, canonical_form, parse_graph, parse_graph6, to_graph6
from .lines import LineSet, all_lines, has_dbe_property, has_universal_line, line

__version__ = "0.1.0"

__all__ = [
    "BisplitPartition", "RefinedPartition", "find_max_partition", "refine", "validate_partition",
    "Graph", "GraphError", "all_pairs_distances", "canonical_form", "parse_graph", "parse_graph6",
    "to_graph6", "LineSet", "all_lines", "has_dbe_property", "has_universal_line", "line",
]
