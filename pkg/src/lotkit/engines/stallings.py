"""Stallings folding for finitely generated subgroups of free groups.

Each edge carries a tag, a word in the subgroup generators ``g1, g2, ...``.
The invariant kept through every fold is that the tags along any closed path
at the base vertex multiply to an expression of that path's label, so a
successful membership trace yields a factorization for free.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ValidationError
from ..words import Word, substitute


@dataclass
class _Edge:
    src: int
    sym: str
    dst: int
    tag: Word


class FoldedGraph:
    BASE = 0

    def __init__(self, alphabet, gens):
        self.alphabet = tuple(alphabet)
        self.gens = tuple(gens)
        self.names = tuple(f"g{i + 1}" for i in range(len(self.gens)))
        for h in self.gens:
            bad = h.symbols() - set(self.alphabet)
            if bad:
                raise ValidationError(f"subgroup generator {h} uses symbols outside the alphabet: {sorted(bad)}")
        self.edges: list = []
        self.nvert = 1
        for name, h in zip(self.names, self.gens):
            self._add_petal(name, h)
        self._fold()

    def _add_petal(self, name, h: Word):
        letters = h.letters()
        if not letters:
            return
        cur = self.BASE
        for k, (sym, sign) in enumerate(letters):
            last = k == len(letters) - 1
            nxt = self.BASE if last else self.nvert
            if not last:
                self.nvert += 1
            tag = Word.letter(name) if last else Word()
            if sign > 0:
                self.edges.append(_Edge(cur, sym, nxt, tag))
            else:
                self.edges.append(_Edge(nxt, sym, cur, tag.inverse()))
            cur = nxt

    def _darts(self, v):
        """(sym, sign, other_end, tag, edge_index) leaving ``v``."""
        for k, e in enumerate(self.edges):
            if e.src == v:
                yield (e.sym, 1, e.dst, e.tag, k)
            if e.dst == v:
                yield (e.sym, -1, e.src, e.tag.inverse(), k)

    def _find_fold(self):
        for v in sorted({e.src for e in self.edges} | {e.dst for e in self.edges}):
            seen = {}
            for sym, sign, other, tag, k in self._darts(v):
                key = (sym, sign)
                if key in seen:
                    if seen[key][3] == k:  # a loop seen from both ends
                        continue
                    return seen[key], (sym, sign, other, tag, k)
                seen[key] = (sym, sign, other, k, tag)
        return None

    def _fold(self):
        while True:
            found = self._find_fold()
            if found is None:
                break
            (sym, sign, v1, k1, t1), (_, _, v2, t2, k2) = found
            if v1 == v2:
                del self.edges[k2]
                continue
            if v2 == self.BASE:
                v1, v2, t1, t2, k1, k2 = v2, v1, t2, t1, k2, k1
            delta = t2.inverse() * t1
            for e in self.edges:
                if e.dst == v2:
                    e.tag = e.tag * delta
                    e.dst = v1
                if e.src == v2:
                    e.tag = delta.inverse() * e.tag
                    e.src = v1
            del self.edges[k2]
        self._renumber()

    def _renumber(self):
        used = sorted({self.BASE} | {e.src for e in self.edges} | {e.dst for e in self.edges})
        relabel = {v: i for i, v in enumerate(used)}
        for e in self.edges:
            e.src, e.dst = relabel[e.src], relabel[e.dst]
        self.nvert = len(used)

    # ----------------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.edges) - self.nvert + 1

    def trace(self, w: Word):
        """Follow ``w`` from the base; return ``(end_vertex, tag_product)`` or ``None`` if stuck."""
        index = {}
        for e in self.edges:
            index[(e.src, e.sym, 1)] = (e.dst, e.tag)
            index[(e.dst, e.sym, -1)] = (e.src, e.tag.inverse())
        v = self.BASE
        expr = Word()
        for sym, sign in w.letters():
            step = index.get((v, sym, sign))
            if step is None:
                return None
            v, tag = step
            expr = expr * tag
        return v, expr

    def evaluate(self, expr: Word) -> Word:
        return substitute(expr, dict(zip(self.names, self.gens)))


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    expression: Word | None = None   # word in g1, g2, ... when member
    generators: tuple = ()

    def __bool__(self):
        return self.member

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "expression": None if self.expression is None else str(self.expression),
            "generators": [str(g) for g in self.generators],
        }


def stallings_membership(alphabet, subgroup_gens, w: Word) -> MembershipResult:
    graph = FoldedGraph(alphabet, subgroup_gens)
    bad = w.symbols() - set(graph.alphabet)
    if bad:
        raise ValidationError(f"word {w} uses symbols outside the alphabet: {sorted(bad)}")
    result = graph.trace(w)
    if result is None or result[0] != FoldedGraph.BASE:
        return MembershipResult(False, None, graph.gens)
    expr = result[1]
    if graph.evaluate(expr) != w:
        raise AssertionError(f"factorization {expr} does not evaluate to {w}")
    return MembershipResult(True, expr, graph.gens)


def subgroup_rank(alphabet, subgroup_gens) -> int:
    return FoldedGraph(alphabet, subgroup_gens).rank
