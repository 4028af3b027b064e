"""Group-theoretic engines: Coxeter word problem, coset enumeration, free products,
Stallings folding, Smith normal form, largeness and bounded trivialization."""
from .cosets import (CosetTable, FreenessReport, freeness_via_graph_of_groups, group_order,
                     todd_coxeter, tree_of_groups_quotient)
from .freeprod import bounded_freeness_check, free_product_normal_form
from .largeness import largeness_certificate
from .smith import IntMatrix, abelianization, coxeter_abelianization, snf
from .stallings import stallings_membership, subgroup_rank
from .tits import CoxeterWordProblem, collapse_unit_edges, tits_is_identity, tits_reduce
from .trivializer import bounded_trivializer

__all__ = [
    "CosetTable", "FreenessReport", "freeness_via_graph_of_groups", "group_order", "todd_coxeter",
    "tree_of_groups_quotient", "bounded_freeness_check", "free_product_normal_form",
    "largeness_certificate", "IntMatrix", "abelianization", "coxeter_abelianization", "snf",
    "stallings_membership", "subgroup_rank", "CoxeterWordProblem", "collapse_unit_edges",
    "tits_is_identity", "tits_reduce", "bounded_trivializer",
]
