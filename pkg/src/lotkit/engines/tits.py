"""Word problem in Coxeter groups by braid-move saturation (Tits' solution).

A word is reduced iff no word in its braid-move orbit contains a repeated
letter ``s s``.  Words are processed left to right so each orbit search only
ever deals with a reduced prefix times one generator.
"""
from __future__ import annotations

from collections import deque
from math import gcd

from ..coxeter import TREE, CoxeterGraph
from ..errors import BudgetExceeded, ValidationError
from ..words import Alphabet, Word

DEFAULT_MAX_STATES = 200_000


class CoxeterWordProblem:
    """Shortlex normal forms in ``W(g)``.

    Elements are tuples of vertex indices.  ``max_states`` bounds the total
    number of words visited during orbit searches over the solver's lifetime.
    """

    def __init__(self, g: CoxeterGraph, max_states: int = DEFAULT_MAX_STATES):
        for a, b, m in g.edges:
            if m < 2:
                raise ValidationError(f"edge {a}-{m}-{b}: collapse label-1 edges first (collapse_unit_edges)")
        self.graph = g
        self.symbols = tuple(g.vertices)
        self.index = {s: i for i, s in enumerate(self.symbols)}
        self.max_states = max_states
        self.states = 0
        self.moves = []
        for a, b, m in g.edges:
            i, j = self.index[a], self.index[b]
            p = tuple(i if k % 2 == 0 else j for k in range(m))
            q = tuple(j if k % 2 == 0 else i for k in range(m))
            self.moves.append((p, q))
            self.moves.append((q, p))

    # ----------------------------------------------------------------
    def encode(self, w: Word) -> tuple:
        out = []
        for sym, exp in w.syllables:
            if sym not in self.index:
                raise ValidationError(f"symbol {sym!r} is not a vertex of the Coxeter graph")
            if exp % 2:
                out.append(self.index[sym])
        return tuple(out)

    def decode(self, element: tuple) -> Word:
        return Word(tuple((self.symbols[i], 1) for i in element))

    def _neighbors(self, word: tuple):
        n = len(word)
        for p, q in self.moves:
            m = len(p)
            for k in range(n - m + 1):
                if word[k:k + m] == p:
                    yield word[:k] + q + word[k + m:]

    def _orbit(self, word: tuple):
        """Braid orbit of ``word``; stops early at a word with a repeated letter."""
        seen = {word}
        queue = deque([word])
        while queue:
            w = queue.popleft()
            for k in range(len(w) - 1):
                if w[k] == w[k + 1]:
                    return seen, w[:k] + w[k + 2:]
            for u in self._neighbors(w):
                if u not in seen:
                    seen.add(u)
                    self.states += 1
                    if self.states > self.max_states:
                        raise BudgetExceeded(f"braid-move search exceeded {self.max_states} states", self.max_states)
                    queue.append(u)
        return seen, None

    def normal_form(self, element) -> tuple:
        """Shortlex-least reduced expression."""
        if isinstance(element, Word):
            element = self.encode(element)
        nf: tuple = ()
        for s in element:
            orbit, shorter = self._orbit(nf + (s,))
            if shorter is not None:
                orbit, again = self._orbit(shorter)
                assert again is None, "reduced prefix times a generator lost more than one letter"
            nf = min(orbit, key=lambda w: (len(w), w))
        return nf

    def multiply(self, u: tuple, v: tuple) -> tuple:
        return self.normal_form(u + v)

    def inverse(self, u: tuple) -> tuple:
        return self.normal_form(tuple(reversed(u)))

    def length(self, element) -> int:
        return len(self.normal_form(element))

    def is_identity(self, element) -> bool:
        return not self.normal_form(element)

    def reduced_expressions(self, element) -> set:
        nf = self.normal_form(element)
        orbit, shorter = self._orbit(nf)
        assert shorter is None
        return orbit

    def elements(self, max_length: int | None = None, limit: int = 100_000) -> list:
        """Normal forms in BFS (length) order, up to ``max_length`` or ``limit``."""
        found = {(): None}
        frontier = [()]
        out = [()]
        while frontier:
            nxt = []
            for w in frontier:
                if max_length is not None and len(w) >= max_length:
                    continue
                for s in range(len(self.symbols)):
                    u = self.normal_form(w + (s,))
                    if len(u) > len(w) and u not in found:
                        found[u] = None
                        out.append(u)
                        nxt.append(u)
                        if len(out) > limit:
                            raise BudgetExceeded(f"more than {limit} group elements", limit)
            frontier = sorted(nxt, key=lambda w: (len(w), w))
        return out


def tits_is_identity(g: CoxeterGraph, w: Word, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """Whether ``w`` is trivial in ``W(g)`` (exponents are read mod 2)."""
    solver = CoxeterWordProblem(g, max_states)
    return solver.is_identity(solver.encode(w))


def tits_reduce(g: CoxeterGraph, w: Word, max_states: int = DEFAULT_MAX_STATES) -> Word:
    solver = CoxeterWordProblem(g, max_states)
    return solver.decode(solver.normal_form(solver.encode(w)))


def collapse_unit_edges(g: CoxeterGraph) -> tuple:
    """Identify generators joined by label-1 edges (``xy = 1`` with involutions).

    Returns ``(collapsed_graph, mapping)`` where ``mapping`` sends each vertex
    to its surviving representative.  Parallel labels ``m, m'`` become
    ``gcd(m, m')``; a gcd of 1 triggers further identification.
    """
    rep = {v: v for v in g.vertices}

    def find(v):
        while rep[v] != v:
            v = rep[v]
        return v

    order = {v: i for i, v in enumerate(g.vertices)}
    labels = {}
    for a, b, m in g.edges:
        labels[(a, b)] = m
    changed = True
    while changed:
        changed = False
        merged = {}
        for (a, b), m in labels.items():
            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            if m == 1:
                keep, drop = sorted((ra, rb), key=order.get)
                rep[drop] = keep
                changed = True
                break
            key = tuple(sorted((ra, rb), key=order.get))
            merged[key] = gcd(merged[key], m) if key in merged else m
        else:
            if any(m == 1 for m in merged.values()):
                labels = merged
                changed = True
                continue
            labels = merged
    verts = tuple(v for v in g.vertices if find(v) == v)
    edges = tuple((a, b, m) for (a, b), m in labels.items())
    kind = TREE if len(edges) == len(verts) - 1 else "graph"
    collapsed = CoxeterGraph(Alphabet(verts), edges, kind)
    return collapsed, {v: find(v) for v in g.vertices}
