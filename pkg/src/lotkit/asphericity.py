"""Pattern s, syntactic side injectivity, the per-edge dispatcher and the
whole-LOT asphericity certifier.

Pattern s is decided at letter level: a subword may start or stop inside a
syllable.  Reading a word as a walk on the 2m-gon (a and b cross the a- and
b-edge at the current vertex, other letters stay put), a word contains s iff
some subword crosses four consecutive polygon edges, i.e. iff the walk on the
unrolled line spans at least four edges for one of the two starting parities.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cancellation import is_dehn_presentation, relator_root, symmetrized_set
from .certificates import (
    ARTIN_SIDE_INJECTIVITY, ASPHERICAL, DEHN_MAJORITY, LABEL_SEPARATED_THEOREM, NOT_COXETER_TYPE,
    SIDE_INJECTIVE_THEOREM, SYNTACTIC_SIDE_INJECTIVITY, TORSION_DEHN, UNKNOWN, jsonable,
)
from .complexes import hat_presentation
from .coxeter import artin_relator, dihedral_reduction
from .engines.stallings import stallings_membership
from .engines.trivializer import bounded_trivializer
from .errors import ValidationError
from .lot import Lot, is_coxeter_type, is_label_separated
from .presentation import Presentation
from .words import Word, cyclic_involutory_reduce, cyclic_reduce, rotations

ARTIN_M3_WITNESS = "a^2 b a^2 b a^-2 b^-1 a^-2 b^-1"
HAT_READING_NOTE = (
    "edge word carries c^(+-2); the u1 c u3 shape is read on the hat relator, where every "
    "outside syllable is halved"
)
M1_NOTE = (
    "dihedral type < 3: for m = 1 every side is the whole 1-skeleton of the edge complex, "
    "so side injectivity fails wholesale; no certificate is attempted"
)
REFUTATION_NOTE = "a refuted side injectivity does not imply that K(Gamma) is not aspherical"


# ---------------------------------------------------------------------------
# dihedral type of a 1-relator presentation

def dihedral_type_1rel(p: Presentation, a: str, b: str) -> int:
    """m with ``r = (ab)^m`` modulo ``a^2 = b^2 = c = 1`` and cyclic permutation."""
    if len(p.relators) != 1:
        raise ValidationError("dihedral type needs a 1-relator presentation")
    if a == b or a not in p.generators or b not in p.generators:
        raise ValidationError("a and b must be two distinct generators")
    killed = [g for g in p.generators if g not in (a, b)]
    red = cyclic_involutory_reduce(p.relators[0], killed)
    if len(red) % 2:
        raise ValidationError(f"relator reduces to {red}, not to an alternating (ab)^m")
    return len(red) // 2


# ---------------------------------------------------------------------------
# pattern s

def _walk_span(letters, a, b, start):
    pos = start
    lo = hi = pos
    for sym, _ in letters:
        if sym == a:
            pos = pos + 1 if pos % 2 == 0 else pos - 1
        elif sym == b:
            pos = pos - 1 if pos % 2 == 0 else pos + 1
        else:
            continue
        lo, hi = min(lo, pos), max(hi, pos)
        if hi - lo >= 4:
            return True
    return False


def has_pattern_s(w: Word, a: str, b: str) -> bool:
    """Fast decision (linear walk)."""
    if a == b:
        raise ValidationError("pattern s needs two distinct symbols")
    letters = w.letters()
    return _walk_span(letters, a, b, 0) or _walk_span(letters, a, b, 1)


@dataclass(frozen=True)
class PatternS:
    start: int                # letter offsets of the matching subword in w
    stop: int
    anchors: tuple            # four (symbol, exponent) syllables
    d: tuple                  # d1, d2, d3 as Words

    @property
    def subword(self) -> Word:
        out = Word(self.anchors[0:1])
        for d, anc in zip(self.d, self.anchors[1:]):
            out = out * d * Word((anc,))
        return out

    def to_json(self) -> dict:
        return {
            "start": self.start, "stop": self.stop,
            "subword": str(self.subword),
            "anchors": [str(Word((s,))) for s in self.anchors],
            "d": [str(x) for x in self.d],
        }


def match_pattern(t: Word, a: str, b: str) -> PatternS | None:
    """Does ``t`` itself (as a whole) have the shape a^odd d1 b^odd d2 a^odd d3 b^odd
    (either symbol first), with only even a/b syllables inside the d_i?"""
    syl = t.syllables
    if not syl:
        return None
    odd = [k for k, (s, e) in enumerate(syl) if s in (a, b) and e % 2]
    if len(odd) != 4 or odd[0] != 0 or odd[-1] != len(syl) - 1:
        return None
    syms = [syl[k][0] for k in odd]
    if syms[0] == syms[1] or syms[1] == syms[2] or syms[2] == syms[3]:
        return None
    anchors = tuple(syl[k] for k in odd)
    ds = tuple(Word(syl[odd[k] + 1:odd[k + 1]]) for k in range(3))
    return PatternS(0, len(t), anchors, ds)


def find_pattern_s(w: Word, a: str, b: str) -> PatternS | None:
    """Shortest (then leftmost) letter-level subword of ``w`` matching pattern s."""
    if not has_pattern_s(w, a, b):
        return None
    letters = w.letters()
    n = len(letters)
    for length in range(4, n + 1):
        for i in range(n - length + 1):
            m = match_pattern(Word.from_letters(letters[i:i + length]), a, b)
            if m is not None:
                return PatternS(i, i + length, m.anchors, m.d)
    raise AssertionError(f"walk found pattern s in {w} but no subword matches")


def contains_pattern_s(w: Word, a: str, b: str) -> tuple:
    """``(bool, PatternS | None)``."""
    m = find_pattern_s(w, a, b)
    return m is not None, m


def contains_pattern_s_cyclic(w: Word, a: str, b: str) -> bool:
    """Pattern s in some cyclic permutation of ``w``."""
    letters = w.letters()
    return has_pattern_s(Word.from_letters(letters + letters[:-1]), a, b) if letters else False


def brute_force_pattern_s(w: Word, a: str, b: str) -> bool:
    """Oracle: try every contiguous letter subword against the syllable shape."""
    letters = w.letters()
    n = len(letters)
    return any(match_pattern(Word.from_letters(letters[i:j]), a, b) is not None
               for i in range(n) for j in range(i + 1, n + 1))


# ---------------------------------------------------------------------------
# side injectivity certificates

@dataclass(frozen=True)
class SideInjectivityCertificate:
    status: str                  # side_injective | refuted | unknown
    route: str | None = None     # thm8_shape1 | thm8_shape2 | artin_m_ge_4 | torsion_power | dehn_majority | artin_m3
    m: int | None = None
    theorem: str | None = None
    evidence: dict = field(default_factory=dict)
    reason: str | None = None
    notes: tuple = ()
    edge: int | None = None

    def __bool__(self):
        return self.status == "side_injective"

    def to_json(self) -> dict:
        out = {"edge": self.edge, "status": self.status, "route": self.route, "m": self.m}
        if self.theorem:
            out["theorem"] = self.theorem
        if self.status == "unknown":
            out["reason"] = self.reason
        else:
            out["evidence"] = jsonable(self.evidence)
        out["notes"] = list(self.notes)
        return out


def _relation_forms(r: Word, a: str, b: str):
    """All ways to read ``r`` (up to rotation and inversion) as ``p W q^-1 W^-1``
    exactly, with ``{p, q} = {a, b}``; yields ``(p, q, W)``."""
    seen = set()
    for base in (r, r.inverse()):
        for rot in rotations(cyclic_reduce(base)):
            letters = rot.letters()
            n = len(letters)
            if n % 2 or n < 2:
                continue
            k = (n - 2) // 2
            p = letters[0]
            q = letters[k + 1]
            if p[1] != 1 or q[1] != -1 or {p[0], q[0]} != {a, b}:
                continue
            W = Word.from_letters(letters[1:k + 1])
            if Word.from_letters(letters[k + 2:]) != W.inverse():
                continue
            key = (p[0], q[0], W)
            if key not in seen:
                seen.add(key)
                yield key


def _thm8_candidate(A: str, B: str, W: Word):
    """Check the two shapes for ``A W = W B``; return (route, evidence) or (None, reason)."""
    letters = W.letters()
    cpos = [k for k, (s, _) in enumerate(letters) if s not in (A, B)]
    if not cpos:
        return None, "edge word has no outside letter"
    first, last = cpos[0], cpos[-1]
    u1 = Word.from_letters(letters[:first])
    u3 = Word.from_letters(letters[last + 1:])
    ci, cj = letters[first], letters[last]
    if first == last:
        route = "thm8_shape1"
        u2 = None
        eps = ci[1]
        others = {s for s, _ in letters if s not in (A, B)}
        if len(others) != 1:
            return None, "shape 1 needs a single outside generator"
    else:
        route = "thm8_shape2"
        if ci[1] != cj[1]:
            return None, "first and last outside letters have different signs (equal epsilon required)"
        u2 = Word.from_letters(letters[first + 1:last])
        eps = ci[1]
    left = u1.inverse() * Word.letter(A)
    right = u3 * Word.letter(B, -1)
    ok_l, pat_l = contains_pattern_s(left, A, B)
    ok_r, pat_r = contains_pattern_s(right, A, B)
    evidence = {
        "relation": f"{A} ({W}) = ({W}) {B}",
        "u1": str(u1), "u3": str(u3), "epsilon": eps,
        "c_i": ci[0], "c_j": cj[0],
        "u1^-1 a": str(left), "u3 b^-1": str(right),
        "pattern_left": pat_l.to_json() if pat_l else None,
        "pattern_right": pat_r.to_json() if pat_r else None,
    }
    if u2 is not None:
        evidence["u2"] = str(u2)
    if not ok_l:
        return None, f"u1^-1 a = {left} has no subword s"
    if not ok_r:
        return None, f"u3 b^-1 = {right} has no subword s"
    return route, evidence


def thm8_check(p: Presentation, a: str, b: str, W: Word | None = None) -> SideInjectivityCertificate:
    """Syntactic side injectivity for ``<a, b, c.. | a W = W b>``.

    ``W`` may be supplied (e.g. the hat edge word of a LOT edge); otherwise
    the relator is searched for that form.  Both ``a W = W b`` and the
    equivalent ``b W^-1 = W^-1 a`` are tried.
    """
    m = dihedral_type_1rel(p, a, b)
    if m < 3:
        return SideInjectivityCertificate("unknown", m=m, reason=f"dihedral type {m} < 3")
    r = p.relators[0]
    candidates = []
    if W is not None:
        candidates += [(a, b, W), (b, a, W.inverse())]
    for P_, Q_, V in _relation_forms(r, a, b):
        for cand in ((P_, Q_, V),):
            if cand not in candidates:
                candidates.append(cand)
    if not candidates:
        return SideInjectivityCertificate("unknown", m=m, reason="relator is not of the form a W b^-1 W^-1")
    reasons = []
    for A, B, V in candidates:
        route, info = _thm8_candidate(A, B, V)
        if route:
            info["dihedral_type"] = m
            return SideInjectivityCertificate("side_injective", route, m, SYNTACTIC_SIDE_INJECTIVITY, info)
        reasons.append(f"{A} ({V}) = ({V}) {B}: {info}")
    return SideInjectivityCertificate("unknown", m=m, reason="; ".join(reasons))


def _is_torsion_power(r: Word, a: str, b: str, m: int) -> bool:
    s, n = relator_root(cyclic_reduce(r))
    bases = {Word.parse(f"{a} {b}"), Word.parse(f"{b} {a}")}
    bases |= {x.inverse() for x in bases}
    return n == m and s in bases


def _is_artin(r: Word, a: str, b: str, m: int) -> bool:
    target = artin_relator(a, b, m)
    forms = set(rotations(cyclic_reduce(target))) | set(rotations(cyclic_reduce(target.inverse())))
    return cyclic_reduce(r) in forms or any(x in forms for x in rotations(cyclic_reduce(r)))


def artin_m3_refutation(a: str = "a", b: str = "b", budget: int = 1_000_000) -> dict:
    """The trivial word lifting into a b-side of <a,b | aba = bab>, confirmed twice."""
    w = Word.parse(ARTIN_M3_WITNESS.replace("a", "\0").replace("b", b).replace("\0", a))
    pres = Presentation((a, b), (artin_relator(a, b, 3),))
    triv = bounded_trivializer(pres, w, budget)
    side = [Word.parse(f"{b}^2"), Word.parse(f"{a}^2"), Word.parse(f"{b} {a}^2 {b}^-1")]
    member = stallings_membership((a, b), side, w)
    return {
        "witness": w,
        "trivial": triv.trivial,
        "trivializer": triv.to_json(),
        "b_side_member": member.member,
        "expression": member.expression,
        "side_generators": side,
        "has_pattern_s": has_pattern_s(w, a, b),
    }


def _dehn_majority(p: Presentation, a: str, b: str):
    dv = is_dehn_presentation(p)
    if not dv:
        return None, "not certified Dehn (no C'(1/6), C'(1/4)-T(4) or torsion route)"
    r = cyclic_reduce(p.relators[0])
    need = len(r) // 2 + 1
    for member in symmetrized_set(p).members:
        piece = Word.from_letters(member[:need])
        if not has_pattern_s(piece, a, b):
            return None, f"majority subword {piece} has no subword s"
    return {"dehn_routes": list(dv.routes), "majority_length": need, "relator_length": len(r)}, None


def side_injectivity_dispatch(p: Presentation, a: str, b: str, W: Word | None = None,
                              budget: int = 1_000_000) -> SideInjectivityCertificate:
    """Try torsion power, Artin, syntactic shapes, then Dehn majority, in that order."""
    m = dihedral_type_1rel(p, a, b)
    if m < 3:
        return SideInjectivityCertificate("unknown", m=m, reason=M1_NOTE)
    r = p.relators[0]
    if _is_torsion_power(r, a, b, m):
        return SideInjectivityCertificate("side_injective", "torsion_power", m, TORSION_DEHN,
                                          {"root": f"{a} {b}", "exponent": m})
    if _is_artin(r, a, b, m):
        if m >= 4:
            return SideInjectivityCertificate("side_injective", "artin_m_ge_4", m, ARTIN_SIDE_INJECTIVITY,
                                              {"relator": str(artin_relator(a, b, m))})
        ref = artin_m3_refutation(a, b, budget)
        if ref["trivial"] and ref["b_side_member"] and not ref["has_pattern_s"]:
            return SideInjectivityCertificate("refuted", "artin_m3", m, ARTIN_SIDE_INJECTIVITY, ref,
                                              notes=(REFUTATION_NOTE,))
        return SideInjectivityCertificate("unknown", m=m, reason="Artin m = 3 witness could not be confirmed")
    cert = thm8_check(p, a, b, W)
    if cert:
        return cert
    reasons = [cert.reason]
    evidence, why = _dehn_majority(p, a, b)
    if evidence:
        return SideInjectivityCertificate("side_injective", "dehn_majority", m, DEHN_MAJORITY, evidence)
    reasons.append(why)
    return SideInjectivityCertificate("unknown", m=m, reason=" | ".join(reasons))


def edge_dispatch(lot: Lot, i: int, budget: int = 1_000_000) -> SideInjectivityCertificate:
    cox = is_coxeter_type(Lot(lot.vertices, (lot.edges[i],), "graph"))
    if not cox:
        return SideInjectivityCertificate("unknown", reason="edge is not of Coxeter type", edge=i)
    hat = hat_presentation(lot, i)
    notes = []
    red = dihedral_reduction(lot, i)
    if red.note:
        notes.append(red.note)
    if len(hat.presentation.generators) < 2:
        return SideInjectivityCertificate("unknown", m=red.m, reason="degenerate edge", edge=i)
    cert = side_injectivity_dispatch(hat.presentation, hat.a, hat.b, hat.edge_word, budget)
    if cert.route in ("thm8_shape1", "thm8_shape2"):
        notes.append(HAT_READING_NOTE)
    assert cert.m is None or cert.m == red.m or cert.m < 3, "LOT and 1-relator dihedral types disagree"
    evidence = dict(cert.evidence)
    if cert.status != "unknown":
        evidence["hat_presentation"] = hat.presentation.to_text().strip()
    return SideInjectivityCertificate(cert.status, cert.route, red.m, cert.theorem, evidence,
                                      cert.reason, tuple(notes) + cert.notes, i)


# ---------------------------------------------------------------------------
# whole LOT

@dataclass(frozen=True)
class AsphericityReport:
    verdict: str               # ASPHERICAL | UNKNOWN | NOT_COXETER_TYPE
    route: str | None          # label_separated | all_edges_side_injective
    theorem: str | None
    edges: tuple
    notes: tuple = ()

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "route": self.route,
            "theorem": self.theorem,
            "edges": [e.to_json() for e in self.edges],
            "notes": list(self.notes),
        }


def certify_asphericity(lot: Lot, budget: int = 1_000_000) -> AsphericityReport:
    if not lot.is_tree:
        raise ValidationError("asphericity certification needs a tree (LOT)")
    cox = is_coxeter_type(lot)
    if not cox:
        return AsphericityReport(NOT_COXETER_TYPE, None, None, (),
                                 (f"first odd outside syllable: {cox.witness}",))
    edges = tuple(edge_dispatch(lot, i, budget) for i in range(len(lot.edges)))
    notes = sorted({n for e in edges for n in e.notes})
    sep = is_label_separated(lot)
    if sep:
        return AsphericityReport(ASPHERICAL, "label_separated", LABEL_SEPARATED_THEOREM, edges, tuple(notes))
    i, j = sep.witness["edges"]
    notes.append(f"not label separated: edges {i} and {j} share letters {', '.join(sep.witness['intersection'])}")
    if edges and all(e.status == "side_injective" and e.m >= 3 for e in edges):
        return AsphericityReport(ASPHERICAL, "all_edges_side_injective", SIDE_INJECTIVE_THEOREM, edges, tuple(notes))
    if any(e.status == "refuted" for e in edges):
        notes.append(REFUTATION_NOTE)
    return AsphericityReport(UNKNOWN, None, None, edges, tuple(notes))
