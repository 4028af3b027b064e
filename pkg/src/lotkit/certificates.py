"""Typed verdicts with the theorem invoked and checkable evidence."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .words import Word

LARGE = "LARGE"
NOT_APPLICABLE = "NOT_APPLICABLE"
ASPHERICAL = "ASPHERICAL"
UNKNOWN = "UNKNOWN"
NOT_COXETER_TYPE = "NOT_COXETER_TYPE"

# descriptive theorem names used in certificates
LARGENESS_THEOREM = "largeness of Coxeter-type LOT groups (>= 3 vertices, all dihedral types >= 3)"
LABEL_SEPARATED_THEOREM = "label separated Coxeter-type LOTs are aspherical"
SIDE_INJECTIVE_THEOREM = "asphericity from side injectivity of every edge complex"
SYNTACTIC_SIDE_INJECTIVITY = "syntactic side injectivity (hat relator a W = W b, pattern s in both ends)"
TORSION_DEHN = "one-relator presentations with torsion are Dehn presentations"
ARTIN_SIDE_INJECTIVITY = "Artin relator prod(a,b,m) = prod(b,a,m) is side injective for m >= 4"
DEHN_MAJORITY = "Dehn presentation whose majority subwords all contain pattern s"


def jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    if isinstance(obj, (Word, Fraction)):
        return str(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


@dataclass(frozen=True)
class Certificate:
    kind: str           # largeness | rank | side_injectivity | asphericity
    verdict: str
    theorem: str | None = None
    evidence: dict = field(default_factory=dict)
    notes: tuple = ()

    def __bool__(self):
        return self.verdict in (LARGE, ASPHERICAL, "side_injective", "rank_equals_n")

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "theorem": self.theorem,
            "evidence": jsonable(self.evidence),
            "notes": list(self.notes),
        }
