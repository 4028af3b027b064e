"""Todd-Coxeter coset enumeration (HLT strategy) and freeness via Euler characteristic."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import BudgetExceeded, ValidationError
from ..presentation import Presentation
from ..words import Word

DEFAULT_MAX_COSETS = 100_000


class _Enumerator:
    """Mutable HLT state.  Columns are ``2*g`` for a generator and ``2*g+1`` for its inverse."""

    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.max_cosets = max_cosets
        self.table = [[-1] * self.ncols]
        self.parent = [0]
        self.defined = 1

    @staticmethod
    def inv(col):
        return col ^ 1

    def live(self, c):
        return self.parent[c] == c

    def rep(self, c):
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c, col):
        if self.defined >= self.max_cosets:
            raise BudgetExceeded(f"coset enumeration exceeded {self.max_cosets} cosets", self.max_cosets)
        n = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(n)
        self.defined += 1
        self.table[c][col] = n
        self.table[n][self.inv(col)] = c
        return n

    def _merge(self, k, l, queue):
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        queue.append(l)

    def coincidence(self, a, b):
        queue: list = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for col in range(self.ncols):
                f = self.table[e][col]
                if f == -1:
                    continue
                icol = self.inv(col)
                if self.table[f][icol] == e:
                    self.table[f][icol] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if self.table[e1][col] != -1:
                    self._merge(f1, self.table[e1][col], queue)
                elif self.table[f1][icol] != -1:
                    self._merge(e1, self.table[f1][icol], queue)
                else:
                    self.table[e1][col] = f1
                    self.table[f1][icol] = e1

    def scan_and_fill(self, c, word):
        t = self.table
        n = len(word)
        f, b = c, c
        i, j = 0, n - 1
        while True:
            while i <= j and t[f][word[i]] != -1:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][self.inv(word[j])] != -1:
                b = t[b][self.inv(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][self.inv(word[i])] = f
                return
            self.define(f, word[i])


@dataclass(frozen=True)
class CosetTable:
    """Closed coset table; cosets are numbered ``0..index-1`` with ``0`` the subgroup itself.

    ``actions[g][c]`` is the coset ``c . g`` (right action).
    """

    generators: tuple
    actions: dict
    subgroup_gens: tuple = ()
    cosets_defined: int = 0
    presentation: Presentation | None = field(default=None, compare=False)

    @property
    def index(self) -> int:
        return len(next(iter(self.actions.values()))) if self.actions else 1

    def inverse_action(self, g) -> list:
        perm = self.actions[g]
        inv = [0] * len(perm)
        for c, d in enumerate(perm):
            inv[d] = c
        return inv

    def act(self, coset: int, w: Word) -> int:
        invs = {}
        for sym, exp in w.syllables:
            if exp > 0:
                perm = self.actions[sym]
            else:
                if sym not in invs:
                    invs[sym] = self.inverse_action(sym)
                perm = invs[sym]
            for _ in range(abs(exp)):
                coset = perm[coset]
        return coset

    def representatives(self) -> list:
        """Shortlex-first word reaching each coset from coset 0 (BFS over g, g^-1)."""
        reps: list = [None] * self.index
        reps[0] = Word()
        frontier = [0]
        invs = {g: self.inverse_action(g) for g in self.generators}
        while frontier:
            nxt = []
            for c in frontier:
                for g in self.generators:
                    for sign, perm in ((1, self.actions[g]), (-1, invs[g])):
                        d = perm[c]
                        if reps[d] is None:
                            reps[d] = reps[c] * Word.letter(g, sign)
                            nxt.append(d)
            frontier = nxt
        return reps

    def verify(self) -> bool:
        """Every relator fixes every coset and every subgroup generator fixes coset 0."""
        for g in self.generators:
            if sorted(self.actions[g]) != list(range(self.index)):
                return False
        if self.presentation is not None:
            for r in self.presentation.relators:
                if any(self.act(c, r) != c for c in range(self.index)):
                    return False
        return all(self.act(0, h) == 0 for h in self.subgroup_gens)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["coset"] + list(self.generators))
        for c in range(self.index):
            writer.writerow([c] + [self.actions[g][c] for g in self.generators])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "generators": list(self.generators),
            "subgroup": [str(h) for h in self.subgroup_gens],
            "cosets_defined": self.cosets_defined,
            "actions": {g: list(self.actions[g]) for g in self.generators},
        }


def todd_coxeter(p: Presentation, subgroup_gens=(), max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of ``<subgroup_gens>`` in the group presented by ``p``.

    Raises BudgetExceeded when more than ``max_cosets`` cosets get defined.
    """
    gens = tuple(p.generators)
    col = {g: 2 * i for i, g in enumerate(gens)}

    def encode(w: Word):
        out = []
        for sym, exp in w.syllables:
            if sym not in col:
                raise ValidationError(f"symbol {sym!r} is not a generator")
            c = col[sym] if exp > 0 else col[sym] + 1
            out.extend([c] * abs(exp))
        return out

    subgroup_gens = tuple(subgroup_gens)
    rels = [encode(r) for r in p.relators if r]
    hs = [encode(h) for h in subgroup_gens if h]
    en = _Enumerator(len(gens), max_cosets)
    for h in hs:
        en.scan_and_fill(0, h)
    c = 0
    while c < len(en.table):
        for r in rels:
            if not en.live(c):
                break
            en.scan_and_fill(c, r)
        for x in range(en.ncols):
            if en.live(c) and en.table[c][x] == -1:
                en.define(c, x)
        c += 1

    # renumber live cosets in BFS order so tables are canonical
    order = {0: 0}
    queue = [0]
    k = 0
    while k < len(queue):
        cur = queue[k]
        k += 1
        for x in range(en.ncols):
            d = en.rep(en.table[cur][x])
            if d not in order:
                order[d] = len(queue)
                queue.append(d)
    actions = {}
    for i, g in enumerate(gens):
        perm = [0] * len(queue)
        for old, new in order.items():
            perm[new] = order[en.rep(en.table[old][2 * i])]
        actions[g] = perm
    table = CosetTable(gens, actions, subgroup_gens, en.defined, p)
    assert table.verify(), "coset table failed its closure check"
    return table


def group_order(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    return todd_coxeter(p, (), max_cosets).index


# ---------------------------------------------------------------------------
# freeness

@dataclass(frozen=True)
class FreenessReport:
    verdict: str                  # free_of_rank | torsion_witness | no_relation_up_to_L | relation_witness
    rank: int | None = None
    index: int | None = None
    euler_characteristic: Fraction | None = None
    witness: object = None
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "rank": self.rank, "index": self.index}
        if self.euler_characteristic is not None:
            out["euler_characteristic"] = str(self.euler_characteristic)
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        out["data"] = _jsonable(self.data)
        return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (Word, Fraction)):
        return str(obj)
    return obj


def free_product_euler_characteristic(orders) -> Fraction:
    """chi of a free product of cyclic groups (order 0 means infinite cyclic)."""
    orders = list(orders)
    return sum((Fraction(1, n) if n else Fraction(0) for n in orders), Fraction(0)) - (len(orders) - 1)


def _orbits(perms: list, n: int) -> list:
    seen = [False] * n
    out = []
    for c in range(n):
        if seen[c]:
            continue
        orbit = [c]
        seen[c] = True
        k = 0
        while k < len(orbit):
            d = orbit[k]
            k += 1
            for perm in perms:
                e = perm[d]
                if not seen[e]:
                    seen[e] = True
                    orbit.append(e)
        out.append(orbit)
    return out


def freeness_via_graph_of_groups(table: CosetTable, factors) -> FreenessReport:
    """Is the enumerated subgroup of a free product of cyclic groups free, and of what rank?

    ``factors`` is a list of ``(symbol, order)``; order 0 means infinite cyclic.
    The subgroup is torsion-free iff no proper power of a finite-order factor
    generator fixes a coset.  Rank is computed twice: ``1 - index*chi`` and from
    the Schreier graph as ``E - V + 1 - (number of finite-factor orbits)``.
    """
    factors = [(s, int(n)) for s, n in factors]
    if [s for s, _ in factors] != list(table.generators):
        raise ValidationError("factor symbols must match the coset table generators in order")
    index = table.index
    reps = None
    for sym, n in factors:
        if not n:
            continue
        for c in range(index):
            d = c
            for k in range(1, n):
                d = table.actions[sym][d]
                if d == c:
                    if reps is None:
                        reps = table.representatives()
                    conj = reps[c].inverse() * Word.letter(sym, k) * reps[c]
                    return FreenessReport(
                        "torsion_witness", index=index,
                        witness={"coset": c, "generator": sym, "power": k, "element": conj},
                    )
    chi = free_product_euler_characteristic(n for _, n in factors)
    rank = 1 - index * chi
    assert rank.denominator == 1
    finite_orbits = sum(len(_orbits([table.actions[s]], index)) for s, n in factors if n)
    edges = index * len(factors)
    graph_rank = edges - index + 1 - finite_orbits
    if graph_rank != rank:
        raise AssertionError(f"Euler rank {rank} disagrees with Schreier-graph rank {graph_rank}")
    return FreenessReport(
        "free_of_rank", rank=int(rank), index=index, euler_characteristic=chi,
        data={"schreier_vertices": index, "schreier_edges": edges,
              "finite_factor_orbits": finite_orbits, "graph_rank": graph_rank},
    )


def tree_of_groups_quotient(table: CosetTable, vertex_groups: dict, edge_groups: dict) -> FreenessReport:
    """Quotient of a Bass-Serre tree by the subgroup enumerated in ``table``.

    ``vertex_groups`` maps a name to ``(generator symbols, order)`` and
    ``edge_groups`` maps a name to ``(generator symbols, order, (v1, v2))``:
    the ambient group is the tree of finite groups these describe.  Vertices of
    the quotient graph are the orbits of each vertex group on the cosets, edges
    the orbits of each edge group.  The subgroup acts freely on the tree iff
    every orbit has the size of its group; it is then free of rank ``E - V + 1``.
    """
    index = table.index
    vertices = {}
    vertex_of = {}
    free_action = True
    for name, (gens, order) in vertex_groups.items():
        for k, orbit in enumerate(_orbits([table.actions[g] for g in gens], index)):
            vertices[(name, k)] = len(orbit)
            free_action &= len(orbit) == order
            for c in orbit:
                vertex_of[(name, c)] = (name, k)
    edges = []
    for name, (gens, order, (v1, v2)) in edge_groups.items():
        for orbit in _orbits([table.actions[g] for g in gens], index):
            free_action &= len(orbit) == order
            c = orbit[0]
            edges.append((name, vertex_of[(v1, c)], vertex_of[(v2, c)]))
    valency = {v: 0 for v in vertices}
    for _, a, b in edges:
        valency[a] += 1
        valency[b] += 1
    V, E = len(vertices), len(edges)
    chi = V - E
    data = {
        "vertices": V,
        "edges": E,
        "valencies": sorted(set(valency.values())),
        "free_action": free_action,
    }
    if not free_action:
        return FreenessReport("torsion_witness", index=index, euler_characteristic=Fraction(chi), data=data)
    return FreenessReport("free_of_rank", rank=E - V + 1, index=index, euler_characteristic=Fraction(chi), data=data)
