"""Smith normal form over the integers and abelianizations."""
from __future__ import annotations

from dataclasses import dataclass

from ..coxeter import CoxeterGraph, coxeter_presentation
from ..presentation import Presentation


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def zeros(cls, n, m):
        return cls(tuple((0,) * m for _ in range(n)))

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self):
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else [()] * m
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def tolist(self):
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class SmithForm:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    invariants: tuple     # diagonal of D, length min(rows, cols)


def snf(M: IntMatrix) -> SmithForm:
    """``U @ M @ V == D`` with U, V unimodular and ``d1 | d2 | ...`` on the diagonal."""
    n, m = M.shape
    A = [list(r) for r in M.rows]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):   # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(n, m):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, n):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, m):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, m) if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    D = IntMatrix(tuple(tuple(r) for r in A))
    Um = IntMatrix(tuple(tuple(r) for r in U))
    Vm = IntMatrix(tuple(tuple(r) for r in V))
    if n and m:
        assert Um @ M @ Vm == D, "Smith normal form transform check failed"
    inv = tuple(A[i][i] for i in range(min(n, m)))
    for a, b in zip(inv, inv[1:]):
        assert (b == 0) or (a != 0 and b % a == 0), "invariant factors do not divide successively"
    return SmithForm(D, Um, Vm, inv)


def relation_matrix(p: Presentation) -> IntMatrix:
    gens = list(p.generators)
    return IntMatrix(tuple(tuple(r.exponent_sum(g) for g in gens) for r in p.relators))


def abelianization(p: Presentation) -> tuple:
    """Invariant factors of ``G_ab``: torsion orders (> 1) then one 0 per free Z summand."""
    n = len(p.generators)
    if not p.relators:
        return (0,) * n
    inv = snf(relation_matrix(p)).invariants
    nonzero = [d for d in inv if d]
    torsion = tuple(d for d in nonzero if d > 1)
    return torsion + (0,) * (n - len(nonzero))


def format_abelian(invariants) -> str:
    if not invariants:
        return "0"
    parts = ["Z" if d == 0 else f"Z_{d}" for d in invariants]
    return " x ".join(parts)


def coxeter_abelianization(g: CoxeterGraph, cross_check: bool = True) -> tuple:
    """``W_ab = (Z_2)^k`` with ``k`` the number of components of the odd-labeled subgraph."""
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b, m in g.edges:
        if m % 2:
            parent[find(a)] = find(b)
    k = len({find(v) for v in g.vertices})
    result = (2,) * k
    if cross_check and all(m >= 2 for _, _, m in g.edges):
        via_snf = abelianization(coxeter_presentation(g))
        assert via_snf == result, f"union-find {result} disagrees with SNF {via_snf}"
    return result
