"""Labeled oriented trees (and graphs), their DSL and structural predicates.

DSL, one edge per ``;`` or newline::

    # comment
    x -[y z^2 x]-> y ; y -[z x^2 y]-> z

Optional directives: ``kind: graph`` (allows loops and cycles) and
``vertices: x y z`` (declares vertices and their order).  A bare symbol on
its own declares an isolated vertex.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import ParseError, ValidationError
from .presentation import Presentation
from .words import SYMBOL_RE, Alphabet, Word, format_word, parse_word

TREE = "tree"
GRAPH = "graph"

_EDGE_RE = re.compile(
    r"^(?P<src>" + SYMBOL_RE + r")\s*-\[(?P<word>[^\]]*)\]->\s*(?P<dst>" + SYMBOL_RE + r")$"
)


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    word: Word

    def relator(self) -> Word:
        x, y = Word.letter(self.source), Word.letter(self.target)
        return x * self.word * y.inverse() * self.word.inverse()

    def support(self) -> frozenset:
        return self.relator().symbols()

    def endpoints(self) -> frozenset:
        return frozenset((self.source, self.target))

    def __str__(self):
        return f"{self.source} -[{format_word(self.word)}]-> {self.target}"


@dataclass(frozen=True)
class Lot:
    vertices: Alphabet
    edges: tuple = ()
    kind: str = TREE

    def __post_init__(self):
        if not isinstance(self.vertices, Alphabet):
            object.__setattr__(self, "vertices", Alphabet(tuple(self.vertices)))
        object.__setattr__(self, "edges", tuple(self.edges))
        self._validate()

    def _validate(self):
        if self.kind not in (TREE, GRAPH):
            raise ValidationError(f"unknown kind {self.kind!r}")
        verts = set(self.vertices)
        if not verts:
            raise ValidationError("a LOT needs at least one vertex")
        seen = set()
        for i, e in enumerate(self.edges):
            for end in (e.source, e.target):
                if end not in verts:
                    raise ValidationError(f"edge {i}: unknown endpoint {end!r}")
            bad = e.word.symbols() - verts
            if bad:
                raise ValidationError(f"edge {i}: unknown symbol {sorted(bad)[0]!r} in edge word")
            if self.kind == TREE:
                key = e.endpoints()
                if e.source == e.target:
                    raise ValidationError(f"edge {i}: loops are only allowed in graph kind")
                if key in seen:
                    raise ValidationError(f"edge {i}: duplicate edge between {e.source} and {e.target}")
                seen.add(key)
            else:
                key = (e.source, e.target, e.word)
                if key in seen:
                    raise ValidationError(f"edge {i}: duplicate edge {e}")
                seen.add(key)
        if self.kind == TREE:
            if len(self.edges) != len(verts) - 1 or not _connected(self):
                raise ValidationError("edges do not form a tree on the vertex set")

    # convenience ------------------------------------------------------
    @property
    def is_tree(self) -> bool:
        return self.kind == TREE

    def relators(self) -> list:
        return [e.relator() for e in self.edges]

    def neighbors(self, v: str) -> list:
        out = []
        for e in self.edges:
            if e.source == v and e.target != v:
                out.append(e.target)
            elif e.target == v and e.source != v:
                out.append(e.source)
        return out

    def to_text(self) -> str:
        return format_lot(self)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "edges": [
                {"source": e.source, "target": e.target, "word": format_word(e.word)}
                for e in self.edges
            ],
        }

    def __str__(self):
        return " ; ".join(str(e) for e in self.edges) or " ".join(self.vertices)


@dataclass(frozen=True)
class PredicateResult:
    """Boolean verdict plus the first violation found (``None`` if it holds)."""

    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class SubLotWitness:
    vertices: tuple
    edges: tuple  # indices into lot.edges

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": list(self.edges)}


def _connected(lot: Lot) -> bool:
    verts = list(lot.vertices)
    start = verts[0]
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in lot.neighbors(v):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(verts)


# ---------------------------------------------------------------------------
# DSL

def parse_lot(text: str, kind: str | None = None) -> Lot:
    """Parse the LOT DSL.  ``kind`` overrides any ``kind:`` directive."""
    declared: list = []
    edges: list = []
    file_kind = TREE
    statements = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0]
        statements.extend(s.strip() for s in line.split(";"))
    for stmt in statements:
        if not stmt:
            continue
        key, sep, rest = stmt.partition(":")
        if sep and key.strip() == "kind":
            file_kind = rest.strip()
            continue
        if sep and key.strip() == "vertices":
            declared.extend(rest.split())
            continue
        m = _EDGE_RE.match(stmt)
        if m:
            wtext = m.group("word").strip()
            word = parse_word(wtext) if wtext else Word()
            edges.append(Edge(m.group("src"), m.group("dst"), word))
        elif re.fullmatch(SYMBOL_RE, stmt):
            declared.append(stmt)
        else:
            raise ParseError(f"cannot parse LOT statement {stmt!r}")
    if not edges and not declared:
        raise ParseError("empty LOT description")
    order: list = []
    for v in declared + [v for e in edges for v in (e.source, e.target)]:
        if v not in order:
            order.append(v)
    return Lot(Alphabet(tuple(order)), tuple(edges), kind or file_kind)


def _appearance_order(lot: Lot) -> list:
    order: list = []
    for e in lot.edges:
        for v in (e.source, e.target):
            if v not in order:
                order.append(v)
    return order


def format_lot(lot: Lot) -> str:
    lines = []
    if lot.kind != TREE:
        lines.append(f"kind: {lot.kind}")
    if _appearance_order(lot) != list(lot.vertices):
        lines.append("vertices: " + " ".join(lot.vertices))
    lines.extend(str(e) for e in lot.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# presentations and predicates

def wirtinger_presentation(lot: Lot) -> Presentation:
    return Presentation(lot.vertices, tuple(lot.relators()))


def is_coxeter_type(lot: Lot) -> PredicateResult:
    """Every syllable of a non-endpoint letter in an edge word has even exponent."""
    for i, e in enumerate(lot.edges):
        for j, (sym, exp) in enumerate(e.word.syllables):
            if sym not in (e.source, e.target) and exp % 2:
                return PredicateResult(False, {"edge": i, "syllable": j, "symbol": sym, "exponent": exp})
    return PredicateResult(True)


def edge_support(lot: Lot, i: int) -> frozenset:
    return lot.edges[i].support()


def adjacent_edge_pairs(lot: Lot) -> list:
    pairs = []
    for i, j in combinations(range(len(lot.edges)), 2):
        if lot.edges[i].endpoints() & lot.edges[j].endpoints():
            pairs.append((i, j))
    return pairs


def is_label_separated(lot: Lot) -> PredicateResult:
    supports = [e.support() for e in lot.edges]
    for i, j in adjacent_edge_pairs(lot):
        common = supports[i] & supports[j]
        if common == supports[i] or common == supports[j]:
            return PredicateResult(False, {"edges": [i, j], "intersection": sorted(common)})
    return PredicateResult(True)


def _parents(lot: Lot, root: str) -> dict:
    adj = {v: [] for v in lot.vertices}
    for e in lot.edges:
        if e.source != e.target:
            adj[e.source].append(e.target)
            adj[e.target].append(e.source)
    parent = {root: None}
    stack = [root]
    while stack:
        w = stack.pop()
        for n in adj[w]:
            if n not in parent:
                parent[n] = w
                stack.append(n)
    return parent


def tree_path(lot: Lot, u: str, v: str) -> list:
    """Vertices on the unique tree path from ``u`` to ``v``."""
    parent = _parents(lot, u)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return path[::-1]


def tree_hull(lot: Lot, verts: Iterable) -> frozenset:
    verts = list(verts)
    if not verts:
        return frozenset()
    parent = _parents(lot, verts[0])
    hull = set(verts)
    for v in verts[1:]:
        while v is not None and v != verts[0]:
            hull.add(v)
            v = parent[v]
    return frozenset(hull)


def induced_edges(lot: Lot, verts: Iterable) -> list:
    vs = set(verts)
    return [i for i, e in enumerate(lot.edges) if e.source in vs and e.target in vs]


def edge_closure(lot: Lot, i: int) -> frozenset:
    """Smallest subLOT vertex set containing edge ``i``."""
    current = frozenset(lot.edges[i].endpoints())
    while True:
        letters = set(current)
        for j in induced_edges(lot, current):
            letters |= lot.edges[j].word.symbols()
        grown = tree_hull(lot, sorted(letters, key=lot.vertices.index))
        if grown == current:
            return current
        current = grown


def _require_tree(lot: Lot):
    if not lot.is_tree:
        raise ValidationError("operation requires a tree (LOT), got a general graph")


def is_prime(lot: Lot) -> PredicateResult:
    _require_tree(lot)
    full = frozenset(lot.vertices)
    for i in range(len(lot.edges)):
        closure = edge_closure(lot, i)
        if closure != full:
            verts = tuple(v for v in lot.vertices if v in closure)
            return PredicateResult(False, SubLotWitness(verts, tuple(induced_edges(lot, closure))))
    return PredicateResult(True)


def is_sublot(lot: Lot, verts: Iterable) -> bool:
    """Connected vertex set whose induced edges only use its own letters."""
    vs = frozenset(verts)
    if not vs or tree_hull(lot, sorted(vs, key=lot.vertices.index)) != vs:
        return False
    return all(lot.edges[j].word.symbols() <= vs for j in induced_edges(lot, vs))


def reorient(lot: Lot, sign_flips: Iterable | str = ()) -> Lot:
    """Negate the exponents of selected syllables.

    ``sign_flips`` is an iterable of ``(edge_index, syllable_index)`` pairs, or
    the string ``"all"``.
    """
    if sign_flips == "all":
        flips = {(i, j) for i, e in enumerate(lot.edges) for j in range(len(e.word.syllables))}
    else:
        flips = set(sign_flips)
    edges = []
    for i, e in enumerate(lot.edges):
        syl = tuple((s, -x if (i, j) in flips else x) for j, (s, x) in enumerate(e.word.syllables))
        edges.append(Edge(e.source, e.target, Word(syl)))
    return Lot(lot.vertices, tuple(edges), lot.kind)


def lot_summary(lot: Lot) -> dict:
    """Predicate summary used by ``lot validate``."""
    cox = is_coxeter_type(lot)
    sep = is_label_separated(lot)
    out = {
        "kind": lot.kind,
        "vertices": list(lot.vertices),
        "edges": lot.to_json()["edges"],
        "canonical": format_lot(lot),
        "coxeter_type": cox.holds,
        "label_separated": sep.holds,
        "prime": None,
    }
    if not cox.holds:
        out["coxeter_witness"] = cox.witness
    if not sep.holds:
        out["label_separation_witness"] = sep.witness
    if lot.is_tree:
        pr = is_prime(lot)
        out["prime"] = pr.holds
        if not pr.holds:
            out["sublot_witness"] = pr.witness.to_json()
    return out
