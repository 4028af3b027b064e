from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lotkit.coxeter import coxeter_presentation, parse_coxeter
from lotkit.engines import (
    CoxeterWordProblem, bounded_freeness_check, free_product_normal_form, freeness_via_graph_of_groups,
    group_order, largeness_certificate, todd_coxeter, tree_of_groups_quotient,
)
from lotkit.engines.smith import IntMatrix, abelianization, coxeter_abelianization, format_abelian, snf
from lotkit.engines.stallings import stallings_membership, subgroup_rank
from lotkit.engines.tits import collapse_unit_edges, tits_is_identity, tits_reduce
from lotkit.engines.trivializer import bounded_trivializer
from lotkit.errors import BudgetExceeded, ValidationError
from lotkit.lot import parse_lot
from lotkit.presentation import parse_presentation
from lotkit.words import Word, parse_word, substitute


def words_over(symbols, max_len=12):
    letter = st.tuples(st.sampled_from(symbols), st.sampled_from((1, -1)))
    return st.lists(letter, max_size=max_len).map(Word.from_letters)


# --- Tits word problem vs Todd-Coxeter -------------------------------------

# non-adjacent tree vertices generate infinite dihedral groups, so spell out the 2s
FINITE = [("x -5- y", 10), ("kind: graph\nx -3- y ; y -3- z ; x -2- z", 24),
          ("kind: graph\nx -4- y ; y -3- z ; x -2- z", 48), ("kind: graph\nx -3- y ; y -5- z ; x -2- z", 120)]


@pytest.mark.parametrize("text,order", FINITE)
def test_element_count_matches_coset_enumeration(text, order):
    g = parse_coxeter(text)
    assert group_order(coxeter_presentation(g)) == order
    assert len(CoxeterWordProblem(g).elements()) == order


@settings(max_examples=60)
@given(words_over(("x", "y", "z"), 16))
def test_tits_agrees_with_regular_representation(w):
    g = parse_coxeter("kind: graph\nx -4- y ; y -3- z ; x -2- z")
    table = todd_coxeter(coxeter_presentation(g))
    assert tits_is_identity(g, w) == (table.act(0, w) == 0)


@settings(max_examples=60)
@given(words_over(("x", "y", "z"), 14))
def test_tits_normal_form_is_stable(w):
    # affine triangle group, infinite
    g = parse_coxeter("kind: graph\nx -3- y ; y -3- z ; x -3- z")
    nf = tits_reduce(g, w)
    assert len(nf) <= len(w)
    assert tits_reduce(g, nf) == nf
    assert tits_is_identity(g, w * nf.inverse())


def test_tits_budget():
    g = parse_coxeter("x -7- y")
    with pytest.raises(BudgetExceeded):
        tits_reduce(g, parse_word("(x y)^20"), max_states=5)


def test_collapse_unit_edges():
    g = parse_coxeter("x -1- y ; y -3- z")
    h, mapping = collapse_unit_edges(g)
    assert tuple(h.vertices) == ("x", "z") and h.edges == (("x", "z", 3),)
    assert mapping == {"x": "x", "y": "x", "z": "z"}
    h, _ = collapse_unit_edges(parse_coxeter("kind: graph\nx -3- y ; y -5- z ; x -5- z ; x -1- u"))
    # after merging u into x nothing else changes
    assert len(h.vertices) == 3
    h, _ = collapse_unit_edges(parse_coxeter("kind: graph\nx -3- y ; y -5- z ; x -5- z ; y -1- u ; u -3- z"))
    # y = u gives parallel labels 5 and 3 on y-z, gcd 1, so everything collapses
    assert len(h.vertices) == 1


def test_unit_edge_rejected_by_solver():
    with pytest.raises(ValidationError):
        CoxeterWordProblem(parse_coxeter("x -1- y"))


# --- Todd-Coxeter -----------------------------------------------------------

def test_coset_table_verifies_and_exports():
    p = parse_presentation("gens: a b\nrels: a^2; b^3; (a b)^5")
    t = todd_coxeter(p)
    assert t.index == 60 and t.verify()
    reps = t.representatives()
    assert sorted(t.act(0, r) for r in reps) == list(range(60))
    assert t.to_csv().splitlines()[0] == "coset,a,b"


def test_coset_budget_on_infinite_group():
    with pytest.raises(BudgetExceeded):
        todd_coxeter(parse_presentation("gens: a b\nrels: a^2; b^3"), max_cosets=500)


def test_modular_group_commutator_subgroup_is_free_of_rank_2():
    p = parse_presentation("gens: a b\nrels: a^2; b^3")
    H = [parse_word(s) for s in ("a b a b^-1", "a b^-1 a b")]
    t = todd_coxeter(p, H)
    rep = freeness_via_graph_of_groups(t, [("a", 2), ("b", 3)])
    assert t.index == 6
    assert rep.verdict == "free_of_rank" and rep.rank == 2
    assert rep.euler_characteristic == Fraction(-1, 6)


def test_torsion_witness():
    p = parse_presentation("gens: a y\nrels: y^2")
    t = todd_coxeter(p, [parse_word("y"), parse_word("a^2"), parse_word("a y a^-1")])
    rep = freeness_via_graph_of_groups(t, [("a", 0), ("y", 2)])
    assert rep.verdict == "torsion_witness"
    w = rep.witness["element"]
    assert all(t.act(0, h) == 0 for h in (w,))


def test_tree_of_groups_quotient_torsion():
    # subgroup <x> meets the vertex group A
    p = parse_presentation("gens: x y z\nrels: x^2; y^2; z^2; (x y)^3; (y z)^3; (x z)^2")
    t = todd_coxeter(p, [parse_word("x")])
    rep = tree_of_groups_quotient(t, {"A": (("x", "y"), 6), "B": (("y", "z"), 6)}, {"e": (("y",), 2, ("A", "B"))})
    assert rep.verdict == "torsion_witness" and not rep.data["free_action"]


# --- Smith normal form --------------------------------------------------------

matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(st.lists(st.integers(-9, 9), min_size=m, max_size=m), min_size=n, max_size=n)))


def _det(rows):
    if len(rows) == 1:
        return rows[0][0]
    return sum((-1) ** j * rows[0][j] * _det([r[:j] + r[j + 1:] for r in rows[1:]]) for j in range(len(rows)))


@given(matrices)
def test_snf_property(rows):
    M = IntMatrix(rows)
    f = snf(M)
    assert f.U @ M @ f.V == f.D
    assert abs(_det(f.U.tolist())) == 1 and abs(_det(f.V.tolist())) == 1
    n, m = M.shape
    for i in range(n):
        for j in range(m):
            if i != j:
                assert f.D.rows[i][j] == 0
    d = list(f.invariants)
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else b % a == 0


@pytest.mark.parametrize("text,expected", [
    ("gens: a b", (0, 0)),
    ("gens: a b\nrels: (a b)^3", (3, 0)),
    ("gens: a b\nrels: a^2; b^3", (6,)),
    ("gens: a b\nrels: a b a^-1 b^-1", (0, 0)),
    ("gens: a b\nrels: a b a = b a b", (0,)),
    ("gens: x y z\nrels: x^2; y^2; z^2; (x y)^3; (y z)^3; (x z)^2", (2,)),
])
def test_abelianization(text, expected):
    assert abelianization(parse_presentation(text)) == expected


def test_format_abelian():
    assert format_abelian((2, 0)) == "Z_2 x Z"
    assert format_abelian(()) == "0"


@pytest.mark.parametrize("text,k", [("x -3- y ; y -3- z", 1), ("x -4- y", 2), ("x -3- y ; y -2- z", 2)])
def test_coxeter_abelianization(text, k):
    assert coxeter_abelianization(parse_coxeter(text)) == (2,) * k


# --- Stallings folding ----------------------------------------------------------

H = [parse_word(s) for s in ("b^2", "a^2", "b a^2 b^-1")]


@given(st.lists(st.tuples(st.integers(0, 2), st.sampled_from((1, -1))), max_size=8))
def test_products_of_generators_are_members(factors):
    w = Word.from_letters([])
    for i, s in factors:
        w = w * (H[i] if s > 0 else H[i].inverse())
    res = stallings_membership(("a", "b"), H, w)
    assert res.member
    assert substitute(res.expression, {f"g{i + 1}": h for i, h in enumerate(H)}) == w


@pytest.mark.parametrize("w,member", [("a", False), ("b a^2 b", True), ("a b^2 a", False), ("b a^-4 b^-1", True)])
def test_membership_examples(w, member):
    assert bool(stallings_membership(("a", "b"), H, parse_word(w))) is member


def test_subgroup_rank():
    assert subgroup_rank(("a", "b"), [parse_word(s) for s in ("a", "b", "a b")]) == 2
    assert subgroup_rank(("a", "b"), H) == 3


# --- free products of cyclic groups -----------------------------------------------

F = [("x", 2), ("y", 5)]


@pytest.mark.parametrize("w,nf", [("x^3 y^4", "x y^-1"), ("y^5", "1"), ("x y^2 y^3 x", "1"), ("y^3", "y^-2")])
def test_free_product_normal_form(w, nf):
    assert free_product_normal_form(F, parse_word(w)) == parse_word(nf)


def test_free_product_rejects_unknown_symbol():
    with pytest.raises(ValidationError):
        free_product_normal_form(F, parse_word("z"))


def test_bounded_freeness_relation_witness():
    rep = bounded_freeness_check(F, [parse_word("x"), parse_word("x y^5")], 4)
    assert rep.verdict == "relation_witness"
    assert rep.witness == parse_word("g1^2")
    assert parse_word("g1 g2^-1") in rep.data["witnesses"]


def test_bounded_freeness_no_relation():
    C = parse_word("x y x y")
    y = parse_word("y")
    rep = bounded_freeness_check(F, [C, y.inverse() * C * y], 5)
    assert rep.verdict == "no_relation_up_to_L"


# --- trivializer and largeness ------------------------------------------------------

def test_trivializer_finds_consequence():
    p = parse_presentation("gens: a b\nrels: a b a = b a b")
    res = bounded_trivializer(p, parse_word("b a b a^-1 b^-1 a^-1"), budget=1000)
    assert res.trivial and res.trace


def test_trivializer_budget_gives_unknown():
    p = parse_presentation("gens: a b\nrels: a b a = b a b")
    res = bounded_trivializer(p, parse_word("a b a^-1 b^-1"), budget=500)
    assert res.status == "unknown" and res.states > 500


def test_largeness():
    assert largeness_certificate(parse_lot("x -[y z^2 x]-> y ; y -[z x^2 y]-> z"))
    assert not largeness_certificate(parse_lot("x -[y x]-> y"))
    assert not largeness_certificate(parse_lot("x -[y]-> y ; y -[z y]-> z"))
