"""Bundled example corpus and the golden runner behind ``lot corpus run``.

Each acceptance check returns a ``CaseResult`` holding named sub-checks, so a
failure says exactly which assertion broke.
"""
from __future__ import annotations

import itertools
import json
import random
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .asphericity import (
    artin_m3_refutation, certify_asphericity, contains_pattern_s, dihedral_type_1rel, thm8_check,
)
from .cancellation import check_T4, check_metric, is_dehn_presentation
from .certificates import ASPHERICAL, LARGE, UNKNOWN
from .complexes import build_Kbar_e, build_Lbar_e, coxeter_ball
from .coxeter import (
    CoxeterGraph, PaddingWarning, artin_presentation, coxeter_tree_of, dihedral_reduction,
    forge_high_rank_lot, format_coxeter, lot_from_coxeter_tree, parse_coxeter,
    smallest_odd_at_least,
)
from .engines import (
    CoxeterWordProblem, bounded_freeness_check, free_product_normal_form, freeness_via_graph_of_groups,
    group_order, largeness_certificate, todd_coxeter, tree_of_groups_quotient,
)
from .lot import Edge, Lot, is_coxeter_type, is_prime, parse_lot, reorient, wirtinger_presentation
from .presentation import parse_presentation
from .words import Alphabet, Word, cyclic_canonical, parse_word

CORPUS_PACKAGE = "lotkit.data.corpus"


def corpus_files() -> list:
    return sorted(p.name for p in resources.files(CORPUS_PACKAGE).iterdir()
                  if p.name.endswith((".lot", ".cox", ".pres")))


def load_text(name: str) -> str:
    return resources.files(CORPUS_PACKAGE).joinpath(name).read_text()


def load_manifest() -> dict:
    return json.loads(load_text("manifest.json"))


def load(name: str):
    text = load_text(name)
    if name.endswith(".lot"):
        return parse_lot(text)
    if name.endswith(".cox"):
        return parse_coxeter(text)
    if name.endswith(".pres"):
        return parse_presentation(text)
    raise ValueError(f"unknown corpus file type: {name}")


# ---------------------------------------------------------------------------
# generators shared with the test-suite

def _tree_code(adj, root, parent=None) -> str:
    return "(" + "".join(sorted(_tree_code(adj, c, root) for c in adj[root] if c != parent)) + ")"


def tree_shapes(n: int) -> list:
    """One edge list per isomorphism class of trees on ``v0..v{n-1}``."""
    names = [f"v{i}" for i in range(n)]
    if n == 1:
        return [[]]
    seen, shapes = set(), []
    for seq in itertools.product(range(n), repeat=n - 2):
        deg = [1] * n
        for s in seq:
            deg[s] += 1
        edges = []
        for s in seq:
            leaf = min(i for i in range(n) if deg[i] == 1)
            edges.append((leaf, s))
            deg[leaf] -= 1
            deg[s] -= 1
        u, w = [i for i in range(n) if deg[i] == 1]
        edges.append((u, w))
        adj = {i: [] for i in range(n)}
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        code = min(_tree_code(adj, r) for r in range(n))
        if code not in seen:
            seen.add(code)
            shapes.append([(names[a], names[b]) for a, b in sorted(edges)])
    return shapes


def roundtrip_trees(max_vertices: int = 5, labels=(1, 3, 5, 7, 9)):
    """Every tree shape, every edge orientation, every labelling."""
    for n in range(1, max_vertices + 1):
        names = tuple(f"v{i}" for i in range(n))
        for shape in tree_shapes(n):
            for flips in itertools.product((False, True), repeat=len(shape)):
                oriented = [(b, a) if f else (a, b) for (a, b), f in zip(shape, flips)]
                for lab in itertools.product(labels, repeat=len(shape)):
                    yield CoxeterGraph(Alphabet(names), tuple((a, b, m) for (a, b), m in zip(oriented, lab)), "tree")


def random_coxeter_edge(rng: random.Random, max_length: int = 12, max_letters: int = 4) -> Lot:
    """Random edge ``x -> y`` of Coxeter type, as a one-edge labeled oriented graph."""
    letters = ["x", "y", "z", "u"][:max(2, rng.randint(2, max_letters))]
    while True:
        syl, total = [], 0
        for _ in range(rng.randint(0, 6)):
            s = rng.choice(letters)
            e = rng.choice((1, 1, 2, 3)) if s in ("x", "y") else rng.choice((2, 2, 4))
            e *= rng.choice((1, -1))
            if total + abs(e) > max_length:
                break
            syl.append((s, e))
            total += abs(e)
        w = Word(tuple(syl))
        if len(w) <= max_length:
            return Lot(Alphabet(tuple(letters)), (Edge("x", "y", w),), "graph")


# ---------------------------------------------------------------------------
# results

@dataclass
class CaseResult:
    criterion: int
    title: str
    checks: list = field(default_factory=list)     # (label, ok, detail)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def check(self, label: str, ok, detail=None):
        self.checks.append((label, bool(ok), detail))
        return bool(ok)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        failed = [label for label, ok, _ in self.checks if not ok]
        extra = f" (failed: {'; '.join(failed)})" if failed else ""
        return f"[{status}] criterion {self.criterion:>2}: {self.title}{extra}"

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "title": self.title,
            "passed": self.passed,
            "checks": [{"check": label, "passed": ok, "detail": detail} for label, ok, detail in self.checks],
        }


def _artin_cyclic(p) -> list:
    return sorted(str(cyclic_canonical(r)) for r in p.relators)


def criterion_1() -> CaseResult:
    res = CaseResult(1, "small LOT pipeline")
    lot = load("small_lot.lot")
    tree = coxeter_tree_of(lot)
    res.check("coxeter tree is x -3- y -3- z", format_coxeter(tree) == "x -3- y\ny -3- z\n", format_coxeter(tree))
    res.check("small LOT is prime", is_prime(lot))
    g0 = load("gamma0.lot")
    pr = is_prime(g0)
    res.check("squares dropped: not prime, with witness", not pr and pr.witness is not None,
              pr.witness.to_json() if pr.witness else None)
    wir = wirtinger_presentation(g0)
    art = artin_presentation(parse_coxeter("x -3- y ; y -3- z"))
    res.check("Wirtinger relators equal the Artin relators", list(wir.relators) == list(art.relators),
              {"wirtinger": [str(r) for r in wir.relators], "artin": [str(r) for r in art.relators]})
    return res


def criterion_2(samples: int = 1000, seed: int = 20240601) -> CaseResult:
    res = CaseResult(2, "dihedral types of Coxeter-type edges")
    rng = random.Random(seed)
    bad_odd, bad_inv = [], []
    for _ in range(samples):
        lot = random_coxeter_edge(rng)
        m = dihedral_reduction(lot, 0).m
        if m % 2 == 0:
            bad_odd.append(str(lot.edges[0]))
        flipped = reorient(lot, [(0, j) for j in range(len(lot.edges[0].word.syllables)) if rng.random() < 0.5])
        if dihedral_reduction(flipped, 0).m != m:
            bad_inv.append(str(lot.edges[0]))
    res.check(f"{samples} random edges have odd type", not bad_odd, bad_odd[:5])
    res.check("type invariant under reorientation", not bad_inv, bad_inv[:5])

    def edge(w):
        return Lot(Alphabet(("x", "y")), (Edge("x", "y", parse_word(w)),), "graph")

    for w in ("x y x y x", "y x y x y"):
        m = dihedral_reduction(edge(w), 0).m
        res.check(f"w = {w} gives m = 5", m == 5, m)
    for w in ("x y x y", "y x y x"):
        red = dihedral_reduction(edge(w), 0)
        res.check(f"w = {w} carries the discrepancy note", red.note is not None, red.note)
        res.check(f"w = {w} gives m = 3", red.m == 3, red.m)
    return res


def criterion_3(max_vertices: int = 5) -> CaseResult:
    res = CaseResult(3, "Coxeter tree roundtrip")
    count, bad = 0, []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PaddingWarning)
        for g in roundtrip_trees(max_vertices):
            for padded in (False, True):
                count += 1
                if coxeter_tree_of(lot_from_coxeter_tree(g, prime_padding=padded)) != g:
                    bad.append((format_coxeter(g), padded))
    res.check(f"roundtrip identity on {count} trees", not bad, bad[:5])
    return res


def criterion_4() -> CaseResult:
    res = CaseResult(4, "finite Coxeter quotients")
    cases = [(f"D_{m}", f"x -{m}- y", 2 * m) for m in range(2, 8)]
    cases.append(("Delta(3,3,2)", "x -3- y ; y -3- z ; x -2- z", 24))
    for name, text, order in cases:
        g = parse_coxeter(text)
        rels = "; ".join([f"{v}^2" for v in g.vertices] + [f"({a} {b})^{m}" for a, b, m in g.edges])
        p = parse_presentation(f"gens: {' '.join(g.vertices)}\nrels: {rels}")
        table = todd_coxeter(p)
        res.check(f"|{name}| = {order}", table.index == order, table.index)
        solver = CoxeterWordProblem(g)
        reps = table.representatives()
        nfs = [solver.normal_form(solver.encode(w)) for w in reps]
        res.check(f"{name}: coset representatives have distinct normal forms", len(set(nfs)) == len(nfs))
        by_nf = {nf: c for c, nf in enumerate(nfs)}
        agree = True
        for u in reps:
            for v in reps:
                coset = table.act(0, u * v)
                nf = solver.normal_form(solver.encode(u * v))
                if by_nf.get(nf) != coset:
                    agree = False
        res.check(f"{name}: word problem agrees with the coset table on all {len(reps) ** 2} pairs", agree)
    return res


def criterion_5() -> CaseResult:
    res = CaseResult(5, "index-4 free subgroup of <a, y | y^2>")
    p = load("free_a_y2.pres")
    gens = [parse_word(s) for s in ("a^2", "(y a^-1)^2", "a (y a^-1)^2 a^-1")]
    table = todd_coxeter(p, gens)
    res.check("index 4", table.index == 4, table.index)
    res.check("y fixes no coset", all(table.actions["y"][c] != c for c in range(table.index)))
    rep = freeness_via_graph_of_groups(table, [("a", 0), ("y", 2)])
    expected = 1 - 4 * Fraction(-1, 2)
    res.check("free of rank 1 - 4(-1/2) = 3", rep.verdict == "free_of_rank" and rep.rank == expected == 3,
              rep.to_json())
    res.check("Schreier graph rank agrees", rep.data.get("graph_rank") == 3, rep.data)
    return res


def criterion_6() -> CaseResult:
    res = CaseResult(6, "largeness via the Delta(3,3,2) kernel")
    table = todd_coxeter(load("delta332.pres"))
    rep = tree_of_groups_quotient(table, {"A": (("x", "y"), 6), "B": (("y", "z"), 6)},
                                  {"e": (("y",), 2, ("A", "B"))})
    res.check("every quotient vertex has valency 3", rep.data.get("valencies") == [3], rep.data)
    res.check("chi = v - e = -4", rep.euler_characteristic == -4 and
              rep.data["vertices"] - rep.data["edges"] == -4, str(rep.euler_characteristic))
    res.check("kernel is free of rank 5", rep.verdict == "free_of_rank" and rep.rank == 5, rep.rank)
    cert = largeness_certificate(load("small_lot.lot"))
    res.check("small LOT is LARGE", cert.verdict == LARGE, cert.to_json())
    return res


def criterion_7() -> CaseResult:
    res = CaseResult(7, "small cancellation classification")
    for name in ("sc_square.pres", "sc_long.pres"):
        p = load(name)
        res.check(f"{name} is C'(1/4)-T(4)", check_metric(p, "1/4") and check_T4(p))
    p = load("sc_mixed.pres")
    res.check("sc_mixed.pres is C'(1/6)", check_metric(p, "1/6"))
    p = load("artin3.pres")
    res.check("aba = bab is not C'(1/6)", not check_metric(p, "1/6"))
    res.check("aba = bab is not C'(1/4)-T(4)", not (check_metric(p, "1/4") and check_T4(p)))
    res.check("aba = bab is not certified Dehn", not is_dehn_presentation(p))
    return res


def criterion_8() -> CaseResult:
    res = CaseResult(8, "pattern s and the m = 3 refutation")
    res.check("abab contains s", contains_pattern_s(parse_word("a b a b"), "a", "b")[0])
    w = parse_word("a^2 b a^2 b a^-2 b^-1 a^-2 b^-1")
    res.check("a^2 b a^2 b a^-2 b^-1 a^-2 b^-1 has no s", not contains_pattern_s(w, "a", "b")[0])
    ref = artin_m3_refutation("a", "b", budget=1_000_000)
    res.check("witness is trivial in <a, b | aba = bab>", ref["trivial"], ref["trivializer"]["states"])
    res.check("witness lies in <b^2, a^2, b a^2 b^-1>", ref["b_side_member"], str(ref["expression"]))
    return res


def criterion_9() -> CaseResult:
    res = CaseResult(9, "Z_2 * Z_5 identities")
    F = [("x", 2), ("y", 5)]
    C, y = parse_word("x y x y"), parse_word("y")
    A, B = parse_word("x y^-2 x y^-2"), parse_word("y^3 x y^3 x")

    def nf(w):
        return free_product_normal_form(F, w)

    res.check("C (y^-1 C y) = B^-1", nf(C * y.inverse() * C * y) == nf(B.inverse()))
    res.check("C (y^-1 C y)(y^-2 C y^2) = A", nf(C * y.inverse() * C * y * y ** -2 * C * y ** 2) == nf(A))
    X, Y, Z = C, y.inverse() * C * y, y ** -2 * C * y ** 2
    rep = bounded_freeness_check(F, [X, Y, Z], 6)
    res.check("no relation among X, Y, Z up to length 6", rep.verdict == "no_relation_up_to_L", rep.to_json())
    return res


def criterion_10() -> CaseResult:
    res = CaseResult(10, "asphericity certificates")
    p = load("hat_m7.pres")
    m = dihedral_type_1rel(p, "a", "b")
    cert = thm8_check(p, "a", "b")
    res.check("a(babcaba) = (babcaba)b: shape 1, m = 7",
              cert.status == "side_injective" and cert.route == "thm8_shape1" and m == 7, cert.to_json())
    rep = certify_asphericity(load("long_edges.lot"))
    res.check("long-edge LOT as listed is ASPHERICAL via per-edge certificates",
              rep.verdict == ASPHERICAL and rep.route == "all_edges_side_injective",
              {"verdict": rep.verdict, "edges": [(e.m, e.status, e.route) for e in rep.edges]})
    rep = certify_asphericity(load("label_separated.lot"))
    res.check("label separated LOT is ASPHERICAL", rep.verdict == ASPHERICAL and rep.route == "label_separated")
    rep = certify_asphericity(load("small_lot.lot"))
    res.check("small LOT is UNKNOWN", rep.verdict == UNKNOWN, rep.verdict)
    return res


def criterion_11() -> CaseResult:
    res = CaseResult(11, "high-rank prime LOTs")
    for n in (1, 2, 3):
        t0 = time.perf_counter()
        lot, cert = forge_high_rank_lot(n)
        dt = time.perf_counter() - t0
        labels = [m for _, _, m in coxeter_tree_of(lot).edges]
        want = smallest_odd_at_least(6 * 2 ** n)
        res.check(f"n = {n}: prime", is_prime(lot))
        res.check(f"n = {n}: Coxeter type", is_coxeter_type(lot))
        res.check(f"n = {n}: labels all {want}", all(m == want for m in labels), labels)
        res.check(f"n = {n}: rank certificate", cert.verdict == "rank_equals_n" and cert.n == n and cert.theorems,
                  cert.to_json())
        if n == 3:
            res.check("n = 3 under 5 s", dt < 5, round(dt, 3))
    res.check("thresholds 25 and 49", [smallest_odd_at_least(6 * 2 ** n) for n in (2, 3)] == [25, 49])
    return res


def criterion_12() -> CaseResult:
    res = CaseResult(12, "complex combinatorics")
    lot = load("small_lot.lot")
    K = build_Kbar_e(lot, 0)
    res.check("m = 3, one outside letter: 12 vertices, 6 faces", (len(K.vertices), len(K.faces)) == (12, 6),
              (len(K.vertices), len(K.faces)))
    bad = []
    for name in corpus_files():
        if not name.endswith(".lot"):
            continue
        L = load(name)
        for i in range(len(L.edges)):
            k, l = build_Kbar_e(L, i), build_Lbar_e(L, i)
            if k.euler_characteristic != l.euler_characteristic:
                bad.append((name, i))
    res.check("chi(K) = chi(L) on every corpus edge", not bad, bad)
    ball = coxeter_ball(load("x3y3z.cox"), 4)
    res.check("ball of radius 4 has an acyclic, connected incidence graph", ball.acyclic and ball.connected,
              {"cells": len(ball.cells)})
    return res


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12)


def check_manifest() -> CaseResult:
    """File-level goldens from manifest.json."""
    from .cancellation import check_metric as metric
    from .asphericity import side_injectivity_dispatch
    from .engines.smith import coxeter_abelianization

    res = CaseResult(0, "manifest goldens")
    for name, info in sorted(load_manifest()["files"].items()):
        obj = load(name)
        for key, want in sorted(info.get("expect", {}).items()):
            if key == "coxeter_tree":
                got = format_coxeter(coxeter_tree_of(obj))
            elif key == "prime":
                got = is_prime(obj).holds
            elif key == "coxeter_type":
                got = is_coxeter_type(obj).holds
            elif key == "label_separated":
                from .lot import is_label_separated
                got = is_label_separated(obj).holds
            elif key in ("verdict", "route"):
                got = getattr(certify_asphericity(obj), key)
            elif key == "largeness":
                got = largeness_certificate(obj).verdict
            elif key == "abelianization":
                got = list(coxeter_abelianization(obj))
            elif key == "order":
                got = group_order(obj)
            elif key.startswith("C'("):
                got = metric(obj, key[3:-1]).holds
            elif key == "T(4)":
                got = check_T4(obj).holds
            elif key == "side_injectivity":
                got = side_injectivity_dispatch(obj, "a", "b").status
            elif key == "dihedral_type":
                got = dihedral_type_1rel(obj, "a", "b")
            else:
                raise KeyError(f"unknown golden key {key!r} for {name}")
            res.check(f"{name}: {key} = {want}", got == want, got)
    return res


def run_corpus(only=None) -> list:
    out = []
    for k, fn in enumerate(CRITERIA, start=1):
        if only and k not in only:
            continue
        t0 = time.perf_counter()
        r = fn()
        r.seconds = time.perf_counter() - t0
        out.append(r)
    if not only:
        t0 = time.perf_counter()
        r = check_manifest()
        r.seconds = time.perf_counter() - t0
        out.append(r)
    return out
