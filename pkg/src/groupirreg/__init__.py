"""Group-irregular edge labelings of graphs over finite Abelian groups."""

from .abelian import GroupSpec, all_abelian_groups, parse_group
from .graph import Graph, classify, components, parse_graph, shortest_parity_walk
from .labeler import (
    connected_sg_value,
    label_general,
    label_star_free,
    label_without_even_stars,
    sg_dispatch,
    star_parameters,
)
from .labeling import Labeling
from .oracle import SearchBudget, exact_k, exact_sg, find_irregular_labeling, verify_irregular
from .partition import build_label_set, skolem_partition

__all__ = [
    "GroupSpec",
    "Graph",
    "Labeling",
    "SearchBudget",
    "all_abelian_groups",
    "build_label_set",
    "classify",
    "components",
    "connected_sg_value",
    "exact_k",
    "exact_sg",
    "find_irregular_labeling",
    "label_general",
    "label_star_free",
    "label_without_even_stars",
    "parse_graph",
    "parse_group",
    "sg_dispatch",
    "shortest_parity_walk",
    "skolem_partition",
    "star_parameters",
    "verify_irregular",
]
