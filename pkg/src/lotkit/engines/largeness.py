"""Largeness certificates for Coxeter-type LOTs."""
from __future__ import annotations

from ..certificates import LARGE, LARGENESS_THEOREM, NOT_APPLICABLE, Certificate
from ..coxeter import coxeter_tree_of
from ..lot import Lot, is_coxeter_type


def largeness_certificate(lot: Lot) -> Certificate:
    """LARGE iff the LOT has at least 3 vertices and every dihedral type is >= 3."""
    cox = is_coxeter_type(lot)
    if not lot.is_tree:
        return Certificate("largeness", NOT_APPLICABLE, LARGENESS_THEOREM, {"failed": "not a tree"})
    if not cox:
        return Certificate("largeness", NOT_APPLICABLE, LARGENESS_THEOREM,
                           {"failed": "not of Coxeter type", "witness": cox.witness})
    tree = coxeter_tree_of(lot)
    labels = [m for _, _, m in tree.edges]
    evidence = {"vertices": len(lot.vertices), "labels": labels, "coxeter_tree": tree.to_text().strip()}
    if len(lot.vertices) < 3:
        return Certificate("largeness", NOT_APPLICABLE, LARGENESS_THEOREM,
                           dict(evidence, failed="fewer than 3 vertices"))
    small = [i for i, m in enumerate(labels) if m < 3]
    if small:
        return Certificate("largeness", NOT_APPLICABLE, LARGENESS_THEOREM,
                           dict(evidence, failed=f"dihedral type < 3 on edges {small}"))
    return Certificate("largeness", LARGE, LARGENESS_THEOREM, evidence)
