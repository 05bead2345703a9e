"""Trees by recursive gluing, cycles as glued paths, and the weight-cone search."""

from .cones import ConeResult, Obstruction, WeightCone, find_weight, weak_homogeneity_cone
from .cycles import (CycleReport, cycle_generating_set_attempt, cycle_gluing_rule, cycle_pattern, outer_path,
                     verify_cycle_factorization)
from .trees import (EDGE_STRATEGIES, PartingResult, TreeResult, choose_edge, edge_type, ladder_weight, parting,
                    split_tree, tree_gb, tree_gluing_rule)

__all__ = [
    "ConeResult", "Obstruction", "WeightCone", "find_weight", "weak_homogeneity_cone",
    "CycleReport", "cycle_generating_set_attempt", "cycle_gluing_rule", "cycle_pattern", "outer_path",
    "verify_cycle_factorization",
    "EDGE_STRATEGIES", "PartingResult", "TreeResult", "choose_edge", "edge_type", "ladder_weight", "parting",
    "split_tree", "tree_gb", "tree_gluing_rule",
]
