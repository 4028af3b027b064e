"""Coxeter graphs and the dictionary between LOTs and Coxeter trees.

Coxeter DSL::

    x -3- y ; y -3- z

Bare symbols declare isolated vertices; ``vertices: ...`` fixes the order.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field

from .errors import ParseError, ValidationError
from .lot import GRAPH, TREE, Edge, Lot, is_coxeter_type, is_prime
from .presentation import Presentation
from .words import (
    SYMBOL_RE,
    Alphabet,
    Word,
    cyclic_involutory_reduce,
    involutory_reduce,
    prod,
)

_CEDGE_RE = re.compile(r"^(?P<a>" + SYMBOL_RE + r")\s*-\s*(?P<m>\d+)\s*-\s*(?P<b>" + SYMBOL_RE + r")$")

EVEN_CASE_NOTE = (
    "closed-form table for an even-length reduced edge word predicts relator xy (m = 1); "
    "direct reduction of x w y^-1 w^-1 modulo squares gives the value reported here"
)


class PaddingWarning(UserWarning):
    """Prime padding was requested but is impossible (fewer than 3 vertices)."""


@dataclass(frozen=True)
class CoxeterGraph:
    vertices: Alphabet
    edges: tuple = ()  # (a, b, m)
    kind: str = TREE

    def __post_init__(self):
        if not isinstance(self.vertices, Alphabet):
            object.__setattr__(self, "vertices", Alphabet(tuple(self.vertices)))
        object.__setattr__(self, "edges", tuple((a, b, int(m)) for a, b, m in self.edges))
        verts = set(self.vertices)
        seen = set()
        for a, b, m in self.edges:
            if a not in verts or b not in verts:
                raise ValidationError(f"edge {a}-{m}-{b} uses an unknown vertex")
            if a == b:
                raise ValidationError(f"loop at {a}: Coxeter graphs are simplicial")
            if frozenset((a, b)) in seen:
                raise ValidationError(f"multiple edges between {a} and {b}")
            if m < 1:
                raise ValidationError(f"edge label {m} < 1")
            seen.add(frozenset((a, b)))
        if self.kind == TREE and not self._is_tree():
            raise ValidationError("Coxeter graph is not a tree; use kind='graph'")

    def _is_tree(self) -> bool:
        n = len(self.vertices)
        if len(self.edges) != n - 1:
            return False
        return _components(self.vertices, [(a, b) for a, b, _ in self.edges]) == 1

    def label(self, a: str, b: str):
        for u, v, m in self.edges:
            if {u, v} == {a, b}:
                return m
        return None

    def labels(self) -> dict:
        return {frozenset((a, b)): m for a, b, m in self.edges}

    def same_labels(self, other: "CoxeterGraph") -> bool:
        return set(self.vertices) == set(other.vertices) and self.labels() == other.labels()

    def to_text(self) -> str:
        return format_coxeter(self)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "edges": [{"a": a, "b": b, "m": m} for a, b, m in self.edges],
        }

    def __str__(self):
        return " ; ".join(f"{a} -{m}- {b}" for a, b, m in self.edges) or " ".join(self.vertices)


def _components(vertices, pairs) -> int:
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in pairs:
        parent[find(a)] = find(b)
    return len({find(v) for v in vertices})


def parse_coxeter(text: str, kind: str | None = None) -> CoxeterGraph:
    declared, edges = [], []
    file_kind = None
    for raw in text.splitlines():
        for stmt in raw.split("#", 1)[0].split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            key, sep, rest = stmt.partition(":")
            if sep and key.strip() == "kind":
                file_kind = rest.strip()
            elif sep and key.strip() == "vertices":
                declared.extend(rest.split())
            elif m := _CEDGE_RE.match(stmt):
                edges.append((m.group("a"), m.group("b"), int(m.group("m"))))
            elif re.fullmatch(SYMBOL_RE, stmt):
                declared.append(stmt)
            else:
                raise ParseError(f"cannot parse Coxeter statement {stmt!r}")
    if not edges and not declared:
        raise ParseError("empty Coxeter graph description")
    order: list = []
    for v in declared + [v for a, b, _ in edges for v in (a, b)]:
        if v not in order:
            order.append(v)
    if kind is None:
        kind = file_kind
    if kind is None:
        # infer: trees by default, general graphs when the edges close a cycle
        kind = TREE if len(edges) == len(order) - 1 and _components(order, [(a, b) for a, b, _ in edges]) == 1 else GRAPH
    return CoxeterGraph(Alphabet(tuple(order)), tuple(edges), kind)


def format_coxeter(g: CoxeterGraph) -> str:
    lines = []
    if g.kind != TREE:
        lines.append(f"kind: {g.kind}")
    seen: list = []
    for a, b, _ in g.edges:
        for v in (a, b):
            if v not in seen:
                seen.append(v)
    if seen != list(g.vertices):
        lines.append("vertices: " + " ".join(g.vertices))
    lines.extend(f"{a} -{m}- {b}" for a, b, m in g.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# dihedral types

@dataclass(frozen=True)
class DihedralReduction:
    m: int
    reduced_relator: Word      # alternating, cyclically reduced mod squares
    reduced_edge_word: Word    # edge word mod squares
    case: int                  # 1..4 by (first letter, parity); 0 for empty
    note: str | None = None

    def to_json(self) -> dict:
        out = {
            "m": self.m,
            "reduced_relator": str(self.reduced_relator),
            "reduced_edge_word": str(self.reduced_edge_word),
            "case": self.case,
        }
        if self.note:
            out["note"] = self.note
        return out


def dihedral_reduction(lot: Lot, i: int) -> DihedralReduction:
    e = lot.edges[i]
    for sym, exp in e.word.syllables:
        if sym not in (e.source, e.target) and exp % 2:
            raise ValidationError(f"edge {i} ({e}) is not of Coxeter type: {sym}^{exp}")
    if e.source == e.target:
        raise ValidationError("dihedral type is undefined for loops")
    rbar = cyclic_involutory_reduce(e.relator())
    m, rem = divmod(len(rbar), 2)
    assert rem == 0 and m % 2 == 1, f"dihedral type must be odd, got relator {rbar}"
    wbar = involutory_reduce(e.word)
    case, note = 0, None
    if len(wbar):
        starts_x = wbar.syllables[0][0] == e.source
        odd = len(wbar) % 2 == 1
        case = {(True, False): 1, (True, True): 2, (False, False): 3, (False, True): 4}[(starts_x, odd)]
        if not odd:
            note = EVEN_CASE_NOTE
    return DihedralReduction(m, rbar, wbar, case, note)


def dihedral_type(lot: Lot, i: int) -> int:
    return dihedral_reduction(lot, i).m


def coxeter_tree_of(lot: Lot) -> CoxeterGraph:
    if not lot.is_tree:
        raise ValidationError("coxeter_tree_of needs a tree")
    edges = tuple((e.source, e.target, dihedral_type(lot, i)) for i, e in enumerate(lot.edges))
    return CoxeterGraph(lot.vertices, edges, TREE)


# ---------------------------------------------------------------------------
# inverse constructions

def _tree_distance(g: CoxeterGraph, u: str, v: str) -> int:
    adj = {x: [] for x in g.vertices}
    for a, b, _ in g.edges:
        adj[a].append(b)
        adj[b].append(a)
    dist = {u: 0}
    queue = [u]
    for x in queue:
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist[v]


def padding_vertices(g: CoxeterGraph) -> list:
    """Outside vertex whose square is inserted into each edge word.

    Edge ``i`` receives the endpoint of edge ``i+1`` (cyclically) lying farther
    from edge ``i``; the closure of every edge then reaches every other edge.
    """
    edges = g.edges
    out = []
    for i, (a, b, _) in enumerate(edges):
        c, d, _ = edges[(i + 1) % len(edges)]
        dc = min(_tree_distance(g, a, c), _tree_distance(g, b, c))
        dd = min(_tree_distance(g, a, d), _tree_distance(g, b, d))
        out.append(c if dc > dd else d)
    return out


def edge_word_for(a: str, b: str, m: int) -> Word:
    """Word on the edge ``a -> b`` reducing to ``(b a)^((m-1)/2)`` mod squares."""
    if m % 2 == 0:
        raise ValidationError(f"label {m} on {a}-{b} is even; only odd labels come from LOT edges")
    if m == 1:
        return Word.letter(a)
    return (Word.letter(b) * Word.letter(a)) ** ((m - 1) // 2)


def lot_from_coxeter_tree(g: CoxeterGraph, prime_padding: bool = False) -> Lot:
    if g.kind != TREE:
        raise ValidationError("lot_from_coxeter_tree needs a Coxeter tree")
    words = [edge_word_for(a, b, m) for a, b, m in g.edges]
    if prime_padding and len(g.vertices) < 3:
        warnings.warn("prime padding needs at least 3 vertices; returning unpadded LOT", PaddingWarning, stacklevel=2)
        prime_padding = False
    if prime_padding:
        padded = []
        for w, z in zip(words, padding_vertices(g)):
            syl = w.syllables
            padded.append(Word(syl[:1] + ((z, 2),) + syl[1:]))
        words = padded
    lot = Lot(g.vertices, tuple(Edge(a, b, w) for (a, b, _), w in zip(g.edges, words)), TREE)
    if prime_padding and not is_prime(lot):
        raise AssertionError(f"padding failed to produce a prime LOT: {lot}")
    return lot


def _require_min_label(g: CoxeterGraph, low: int = 2):
    for a, b, m in g.edges:
        if m < low:
            raise ValidationError(f"edge {a}-{m}-{b}: label must be >= {low}")


def coxeter_presentation(g: CoxeterGraph) -> Presentation:
    _require_min_label(g)
    rels = [Word.letter(x, 2) for x in g.vertices]
    rels += [(Word.letter(a) * Word.letter(b)) ** m for a, b, m in g.edges]
    return Presentation(g.vertices, tuple(rels))


def artin_relator(a: str, b: str, m: int) -> Word:
    return prod(a, b, m) * prod(b, a, m).inverse()


def artin_presentation(g: CoxeterGraph) -> Presentation:
    _require_min_label(g)
    return Presentation(g.vertices, tuple(artin_relator(a, b, m) for a, b, m in g.edges))


def log_from_coxeter_graph(g: CoxeterGraph) -> Lot:
    """Labeled oriented graph whose Wirtinger presentation is the Artin one."""
    _require_min_label(g)
    edges = []
    for a, b, m in g.edges:
        if m % 2:
            edges.append(Edge(a, b, edge_word_for(a, b, m)))
        else:
            edges.append(Edge(a, a, prod(b, a, m - 1)))
    return Lot(g.vertices, tuple(edges), GRAPH)


def odd_spanning_tree(g: CoxeterGraph) -> CoxeterGraph:
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    chosen = []
    for a, b, m in g.edges:
        if m % 2 and find(a) != find(b):
            parent[find(a)] = find(b)
            chosen.append((a, b, m))
    if len(chosen) != len(g.vertices) - 1:
        raise ValidationError("odd-labeled edges do not span the graph (abelianization is not Z_2)")
    return CoxeterGraph(g.vertices, tuple(chosen), TREE)


def epi_lot_for_coxeter(g: CoxeterGraph) -> tuple:
    """Prime Coxeter-type LOT mapping onto ``W(g)``, plus the spanning tree used."""
    tree = odd_spanning_tree(g)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PaddingWarning)
        lot = lot_from_coxeter_tree(tree, prime_padding=len(tree.vertices) >= 3)
    return lot, tree


# ---------------------------------------------------------------------------
# rank

RANK_THEOREM = "Carette-Weidmann rank theorem (all labels >= 6*2^n on n vertices)"
EPI_THEOREM = "LOT group maps onto W(Y) when W(Y)_ab = Z_2"


@dataclass(frozen=True)
class RankCertificate:
    n: int
    threshold: int
    verdict: str                      # rank_equals_n | inconclusive
    theorems: tuple = field(default=(RANK_THEOREM, EPI_THEOREM))
    labels: tuple = ()

    def to_json(self) -> dict:
        return {
            "kind": "rank",
            "n": self.n,
            "threshold": self.threshold,
            "verdict": self.verdict,
            "theorems": list(self.theorems),
            "labels": list(self.labels),
        }


def rank_certificate(g: CoxeterGraph) -> RankCertificate:
    n = len(g.vertices)
    threshold = 6 * 2 ** n
    labels = tuple(m for _, _, m in g.edges)
    ok = all(m >= threshold for m in labels)
    return RankCertificate(n, threshold, "rank_equals_n" if ok else "inconclusive", labels=labels)


def smallest_odd_at_least(t: int) -> int:
    return t if t % 2 else t + 1


def forge_high_rank_lot(n: int) -> tuple:
    """Prime Coxeter-type LOT on ``n`` vertices whose group has rank ``n``."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    verts = tuple(f"x{i}" for i in range(1, n + 1))
    m = smallest_odd_at_least(6 * 2 ** n)
    g = CoxeterGraph(Alphabet(verts), tuple((verts[i], verts[i + 1], m) for i in range(n - 1)), TREE)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PaddingWarning)
        lot = lot_from_coxeter_tree(g, prime_padding=n >= 3)
    assert is_coxeter_type(lot) and coxeter_tree_of(lot) == g
    return lot, rank_certificate(g)
