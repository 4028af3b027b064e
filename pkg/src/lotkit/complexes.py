"""Finite combinatorial models: the edge complexes K_e / L_e, their sides, the
hat presentation, and balls in the Coxeter complex of a Coxeter tree.

Polygon vertices of K_e are the elements of the dihedral group D_m, numbered
around the 2m-gon: vertex ``2i`` is joined to ``2i+1`` by an x double edge and
``2i+1`` to ``2i+2`` by a y double edge (indices mod 2m), vertex 0 being the
identity.  Each outside letter z contributes a double edge from every polygon
vertex to a pendant vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cancellation import relator_root
from .coxeter import CoxeterGraph, dihedral_type
from .engines.stallings import FoldedGraph, stallings_membership
from .engines.tits import CoxeterWordProblem
from .errors import ValidationError
from .lot import Lot, is_coxeter_type
from .presentation import Presentation
from .words import Alphabet, Word, cyclic_reduce, rotations

SINGLE = "single"
DOUBLE = "double"
LOOP = "loop"


# ---------------------------------------------------------------------------
# hat presentation

def halve_outside(w: Word, keep) -> Word:
    """Replace every syllable ``z^p`` (z not in ``keep``) by ``z^(p/2)``."""
    out = []
    for sym, exp in w.syllables:
        if sym in keep:
            out.append((sym, exp))
        else:
            if exp % 2:
                raise ValidationError(f"odd syllable {sym}^{exp}: edge is not of Coxeter type")
            out.append((sym, exp // 2))
    return Word(tuple(out))


@dataclass(frozen=True)
class HatPresentation:
    presentation: Presentation
    a: str
    b: str
    outside: tuple
    edge_word: Word          # the hatted edge word W, relator a W b^-1 W^-1
    proper_power: bool
    root_exponent: int

    @property
    def relator(self) -> Word:
        return self.presentation.relators[0]

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation.to_json(),
            "a": self.a,
            "b": self.b,
            "outside": list(self.outside),
            "edge_word": str(self.edge_word),
            "proper_power": self.proper_power,
            "root_exponent": self.root_exponent,
        }


def edge_letters(lot: Lot, i: int) -> tuple:
    """``x_e`` in vertex order: letters occurring in the reduced relator."""
    support = lot.edges[i].support()
    return tuple(v for v in lot.vertices if v in support)


def hat_presentation(lot: Lot, i: int) -> HatPresentation:
    e = lot.edges[i]
    if e.source == e.target:
        raise ValidationError("hat presentation needs an edge between distinct vertices")
    keep = (e.source, e.target)
    gens = edge_letters(lot, i)
    outside = tuple(g for g in gens if g not in keep)
    rhat = halve_outside(e.relator(), keep)
    what = halve_outside(e.word, keep)
    check = Word.letter(e.source) * what * Word.letter(e.target, -1) * what.inverse()
    assert check == rhat, "halving does not commute with free reduction"
    if rhat:
        _, n = relator_root(cyclic_reduce(rhat))
    else:
        n = 0
    pres = Presentation(Alphabet(gens), (rhat,))
    return HatPresentation(pres, e.source, e.target, outside, what, n > 1, n)


# ---------------------------------------------------------------------------
# 2-complexes

@dataclass(frozen=True)
class Complex2:
    """Vertices, labelled oriented edges and faces given by boundary walks.

    ``edges[k] = (src, dst, label, kind)``; ``faces[f]`` is a tuple of
    ``(edge index, +1|-1)``.
    """

    name: str
    vertices: tuple
    edges: tuple
    faces: tuple = ()
    meta: dict = field(default_factory=dict)

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def face_label(self, f: int) -> Word:
        return Word(tuple((self.edges[k][2], s) for k, s in self.faces[f]))

    def check_walks(self) -> bool:
        """Every face boundary is a closed edge path."""
        for walk in self.faces:
            if not walk:
                continue
            pos = None
            start = None
            for k, s in walk:
                src, dst = self.edges[k][0], self.edges[k][1]
                a, b = (src, dst) if s > 0 else (dst, src)
                if pos is None:
                    start = a
                elif pos != a:
                    return False
                pos = b
            if pos != start:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": [str(v) for v in self.vertices],
            "edges": [{"source": str(s), "target": str(t), "label": lab, "kind": k}
                      for s, t, lab, k in self.edges],
            "faces": [[[k, s] for k, s in walk] for walk in self.faces],
            "euler_characteristic": self.euler_characteristic,
            "meta": {k: (v if isinstance(v, (int, str, bool, list)) else str(v)) for k, v in self.meta.items()},
        }

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name}" {{', "  node [shape=circle, width=0.25, fixedsize=true, label=\"\"];"]
        ids = {v: f"v{k}" for k, v in enumerate(self.vertices)}
        for v in self.vertices:
            lines.append(f'  {ids[v]} [tooltip="{v}"];')
        for src, dst, lab, kind in self.edges:
            style = ' style=dashed' if kind == LOOP else ""
            lines.append(f'  {ids[src]} -> {ids[dst]} [label="{lab}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _polygon_step(v: int, sym: str, a: str, b: str, m: int) -> int:
    """Right multiplication by a or b on the 2m-gon numbering."""
    if sym == a:
        return v + 1 if v % 2 == 0 else v - 1
    return (v + 1) % (2 * m) if v % 2 == 1 else (v - 1) % (2 * m)


def _edge_parameters(lot: Lot, i: int):
    cox = is_coxeter_type(Lot(lot.vertices, (lot.edges[i],), "graph"))
    if not cox:
        raise ValidationError(f"edge {i} is not of Coxeter type: {cox.witness}")
    e = lot.edges[i]
    m = dihedral_type(lot, i)
    z = tuple(g for g in edge_letters(lot, i) if g not in (e.source, e.target))
    return e, m, z


def build_Kbar_e(lot: Lot, i: int) -> Complex2:
    e, m, zs = _edge_parameters(lot, i)
    a, b = e.source, e.target
    n = 2 * m
    verts = list(range(n)) + [(v, z) for v in range(n) for z in zs]
    edges = []
    index = {}   # (tail, label) -> edge index, tail = vertex where reading the label forwards starts
    for v in range(0, n, 2):
        for sym, (p, q) in ((a, (v, v + 1)), (b, (v + 1, (v + 2) % n))):
            for s, t in ((p, q), (q, p)):
                index[(s, sym)] = len(edges)
                edges.append((s, t, sym, DOUBLE))
    for v in range(n):
        for z in zs:
            index[(v, z)] = len(edges)
            edges.append((v, (v, z), z, DOUBLE))
            index[((v, z), z)] = len(edges)
            edges.append(((v, z), v, z, DOUBLE))

    def step(pos, sym):
        if sym in (a, b):
            return _polygon_step(pos, sym, a, b, m)
        return (pos, sym) if isinstance(pos, int) else pos[0]

    r = e.relator()
    faces = []
    for start in range(n):
        pos = start
        walk = []
        for sym, sign in r.letters():
            if sign > 0:
                walk.append((index[(pos, sym)], 1))
                pos = step(pos, sym)
            else:
                nxt = step(pos, sym)
                walk.append((index[(nxt, sym)], -1))
                pos = nxt
        assert pos == start, "relator does not close up on the 2m-gon"
        faces.append(tuple(walk))
    cx = Complex2(f"K_e{i}", tuple(verts), tuple(edges), tuple(faces),
                  {"m": m, "a": a, "b": b, "outside": list(zs), "relator": str(r),
                   "certifiable": m >= 3})
    assert cx.check_walks()
    return cx


def build_Lbar_e(lot: Lot, i: int) -> Complex2:
    """K_e with one edge of each z double edge collapsed: z loops at every polygon vertex."""
    e, m, zs = _edge_parameters(lot, i)
    a, b = e.source, e.target
    n = 2 * m
    hat = hat_presentation(lot, i)
    edges = []
    index = {}
    for v in range(0, n, 2):
        for sym, (p, q) in ((a, (v, v + 1)), (b, (v + 1, (v + 2) % n))):
            for s, t in ((p, q), (q, p)):
                index[(s, sym)] = len(edges)
                edges.append((s, t, sym, DOUBLE))
    for v in range(n):
        for z in zs:
            index[(v, z)] = len(edges)
            edges.append((v, v, z, LOOP))
    rhat = hat.relator
    faces = []
    for start in range(n):
        pos = start
        walk = []
        for sym, sign in rhat.letters():
            if sym in (a, b):
                nxt = _polygon_step(pos, sym, a, b, m)
                walk.append((index[(pos, sym)], 1) if sign > 0 else (index[(nxt, sym)], -1))
                pos = nxt
            else:
                walk.append((index[(pos, sym)], sign))
        assert pos == start
        faces.append(tuple(walk))
    cx = Complex2(f"L_e{i}", tuple(range(n)), tuple(edges), tuple(faces),
                  {"m": m, "a": a, "b": b, "outside": list(zs), "relator": str(rhat),
                   "certifiable": m >= 3})
    assert cx.check_walks()
    return cx


# ---------------------------------------------------------------------------
# sides

@dataclass(frozen=True)
class Side:
    anchor: str                 # letter of the central double edge
    index: int                  # which of the m sides with this anchor
    vertices: tuple             # polygon vertices (base first)
    generators: tuple           # free basis of pi_1 based at vertices[0]
    rank: int

    def to_json(self) -> dict:
        return {"anchor": self.anchor, "index": self.index, "vertices": list(self.vertices),
                "generators": [str(g) for g in self.generators], "rank": self.rank}


def side_generators(anchor: str, other: str, outside) -> tuple:
    """Basis ``anchor^2, other^2, z, anchor other^2 anchor^-1, anchor z anchor^-1``."""
    A, B = Word.letter(anchor), Word.letter(other)
    gens = [A ** 2, B ** 2]
    zs = [Word.letter(z) for z in outside]
    gens += zs
    gens.append(A * B ** 2 * A.inverse())
    gens += [A * z * A.inverse() for z in zs]
    return tuple(gens)


def _side_graph_loops(cx: Complex2, verts, anchor: str) -> tuple:
    """Labels of a basis of closed paths at ``verts[0]`` in the side of L_e whose
    anchor double edge joins ``verts[0]`` and ``verts[1]``: that double edge plus
    every double edge or loop at either of its endpoints."""
    vs = set(verts)
    u, v = verts[0], verts[1]
    sub = [(s, t, lab) for s, t, lab, _ in cx.edges
           if (lab == anchor and {s, t} == {u, v}) or (lab != anchor and (s in (u, v) or t in (u, v)))]
    # spanning tree by BFS
    base = verts[0]
    path = {base: Word()}
    tree = set()
    frontier = [base]
    while frontier:
        nxt = []
        for v in frontier:
            for k, (s, t, lab) in enumerate(sub):
                for p, q, sign in ((s, t, 1), (t, s, -1)):
                    if p == v and q not in path:
                        path[q] = path[v] * Word.letter(lab, sign)
                        tree.add(k)
                        nxt.append(q)
        frontier = nxt
    loops = []
    for k, (s, t, lab) in enumerate(sub):
        if k not in tree:
            loops.append(path[s] * Word.letter(lab) * path[t].inverse())
    return tuple(loops), len(sub) - len(vs) + 1


def sides_of(cx: Complex2) -> list:
    """The m anchor-a sides and m anchor-b sides, with generators checked by folding."""
    m, a, b = cx.meta["m"], cx.meta["a"], cx.meta["b"]
    zs = tuple(cx.meta["outside"])
    n = 2 * m
    lcx = cx if cx.name.startswith("L_") else None
    if lcx is None:
        # the side subgraphs are read in L_e, where z double edges are loops
        lcx = Complex2("L", tuple(range(n)),
                       tuple(e for e in cx.edges if e[2] in (a, b))
                       + tuple((v, v, z, LOOP) for v in range(n) for z in zs))
    out = []
    for anchor, other, first in ((a, b, 0), (b, a, 1)):
        gens = side_generators(anchor, other, zs)
        for k in range(m):
            u = (first + 2 * k) % n
            v = _polygon_step(u, anchor, a, b, m)
            verts = (u, v, _polygon_step(u, other, a, b, m), _polygon_step(v, other, a, b, m))
            loops, rank = _side_graph_loops(lcx, verts, anchor)
            alphabet = (a, b) + zs
            if m == 1:
                # the bigon: the side is the whole 1-skeleton, keep the computed loop basis
                out.append(Side(anchor, k, verts, loops, rank))
                continue
            assert rank == len(gens), "side rank differs from the basis size"
            assert FoldedGraph(alphabet, gens).rank == len(gens), "side basis is not free"
            for g in gens:
                assert stallings_membership(alphabet, loops, g), f"{g} is not a loop of the side"
            for loop in loops:
                assert stallings_membership(alphabet, gens, loop), f"side loop {loop} outside the basis"
            out.append(Side(anchor, k, verts, gens, rank))
    return out


@dataclass(frozen=True)
class SideIntersection:
    vertex: str
    letters: tuple
    generators: tuple
    proper_in_first: bool
    proper_in_second: bool
    whole_side: bool

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "letters": list(self.letters),
                "generators": [str(g) for g in self.generators],
                "proper_in_first": self.proper_in_first, "proper_in_second": self.proper_in_second,
                "whole_side": self.whole_side}


def side_intersection(lot: Lot, i: int, j: int) -> SideIntersection:
    """The subgraph of a shared side carrying the letters common to both edge supports."""
    e1, e2 = lot.edges[i], lot.edges[j]
    shared = e1.endpoints() & e2.endpoints()
    if not shared or i == j:
        raise ValidationError(f"edges {i} and {j} are not adjacent")
    vertex = sorted(shared, key=lot.vertices.index)[0]
    s1, s2 = e1.support(), e2.support()
    common = s1 & s2
    letters = tuple(v for v in lot.vertices if v in common)
    other = e1.target if e1.source == vertex else e1.source
    zs = tuple(v for v in lot.vertices if v in s1 and v not in (e1.source, e1.target))
    full = side_generators(vertex, other, zs)
    gens = tuple(g for g in full if g.symbols() <= common)
    return SideIntersection(vertex, letters, gens, common < s1, common < s2, common == s1)


# ---------------------------------------------------------------------------
# Coxeter complex balls

@dataclass(frozen=True)
class CellBall:
    radius: int
    cells: tuple             # (tag word, (s, t)) per cell
    edges: tuple             # (tag word, label) per Sigma edge touching a cell
    incidence: tuple         # (cell index, edge index)
    acyclic: bool
    connected: bool
    label_condition: bool
    labels: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "cells": [{"tag": str(t), "edge": list(st)} for t, st in self.cells],
            "edges": [{"tag": str(t), "label": lab} for t, lab in self.edges],
            "incidence": [list(p) for p in self.incidence],
            "acyclic": self.acyclic,
            "connected": self.connected,
            "label_condition": self.label_condition,
        }

    def to_dot(self) -> str:
        lines = ["graph ball {", "  node [fontsize=10];"]
        for k, (tag, (s, t)) in enumerate(self.cells):
            m = self.labels.get((s, t), 3)
            lines.append(f'  c{k} [shape=polygon, sides={2 * m}, style=filled, fillcolor=lightgrey, '
                         f'label="{_tag(tag)}.{s}{t}"];')
        for k, (tag, lab) in enumerate(self.edges):
            lines.append(f'  e{k} [shape=point, xlabel="{lab}"];')
        for c, e in self.incidence:
            lines.append(f"  c{c} -- e{e};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _tag(w: Word) -> str:
    return "".join(s for s, _ in w.syllables) or "1"


def _dihedral_elements(solver: CoxeterWordProblem, s: int, t: int, m: int) -> list:
    words = set()
    for k in range(m + 1):
        for p, q in ((s, t), (t, s)):
            words.add(solver.normal_form(tuple(p if j % 2 == 0 else q for j in range(k))))
    assert len(words) == 2 * m
    return sorted(words)


def coxeter_ball(g: CoxeterGraph, radius: int, max_states: int = 200_000) -> CellBall:
    """Cells ``w.kappa_e`` for ``|w| <= radius`` with their cell-edge incidence graph."""
    if any(m < 2 for _, _, m in g.edges):
        raise ValidationError("coxeter_ball needs all labels >= 2 (collapse label-1 edges first)")
    solver = CoxeterWordProblem(g, max_states)
    elements = solver.elements(max_length=radius)
    key = lambda w: (len(w), w)
    cells = {}
    dihedral = {}
    for a, b, m in g.edges:
        s, t = solver.index[a], solver.index[b]
        dihedral[(a, b)] = (s, t, m, _dihedral_elements(solver, s, t, m))
    for w in elements:
        for (a, b), (s, t, m, D) in dihedral.items():
            coset = frozenset(solver.normal_form(w + d) for d in D)
            if coset not in cells:
                cells[coset] = (min(coset, key=key), (a, b), s, t)
    cell_list = sorted(cells.items(), key=lambda kv: (key(kv[1][0]), kv[1][1]))
    edge_ids = {}
    edge_list = []
    incidence = []
    label_ok = True
    for ci, (coset, (tag, (a, b), s, t)) in enumerate(cell_list):
        for v in sorted(coset, key=key):
            for gen, name in ((s, a), (t, b)):
                pair = frozenset((v, solver.normal_form(v + (gen,))))
                ek = (pair, name)
                if ek not in edge_ids:
                    edge_ids[ek] = len(edge_list)
                    edge_list.append((min(pair, key=key), name))
                inc = (ci, edge_ids[ek])
                if inc not in incidence:
                    incidence.append(inc)
    # label condition: cells sharing an edge meet in the common vertex of their Coxeter edges
    by_edge = {}
    for c, e in incidence:
        by_edge.setdefault(e, []).append(c)
    for e, cs in by_edge.items():
        label = edge_list[e][1]
        for c in cs:
            label_ok &= label in cell_list[c][1][1]
    nodes = len(cell_list) + len(edge_list)
    # connectivity and acyclicity of the bipartite incidence graph
    parent = list(range(nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    acyclic = True
    for c, e in incidence:
        rc, re_ = find(c), find(len(cell_list) + e)
        if rc == re_:
            acyclic = False
        else:
            parent[rc] = re_
    connected = len({find(x) for x in range(nodes)}) == 1
    return CellBall(
        radius,
        tuple((solver.decode(tag), ab) for _, (tag, ab, _, _) in cell_list),
        tuple((solver.decode(tag), name) for tag, name in edge_list),
        tuple(sorted(incidence)),
        acyclic, connected, label_ok,
        {(a, b): m for a, b, m in g.edges},
    )


def cell_boundaries_close(g: CoxeterGraph, ball: CellBall) -> bool:
    """Each cell boundary reads (st)^m from its tag and returns to it."""
    solver = CoxeterWordProblem(g)
    labels = {(a, b): m for a, b, m in g.edges}
    for tag, (a, b) in ball.cells:
        m = labels[(a, b)]
        w = solver.encode(tag)
        s, t = solver.index[a], solver.index[b]
        loop = tuple(s if j % 2 == 0 else t for j in range(2 * m))
        if solver.normal_form(w + loop) != solver.normal_form(w):
            return False
    return True


def boundary_spells_relator(cx: Complex2, relator: Word) -> bool:
    """Every face label is a rotation of ``relator``."""
    rots = set(rotations(relator))
    return all(cx.face_label(f) in rots for f in range(len(cx.faces)))
