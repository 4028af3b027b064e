import random

import pytest
from hypothesis import given, strategies as st

from lotkit.asphericity import (
    ARTIN_M3_WITNESS, HAT_READING_NOTE, M1_NOTE, REFUTATION_NOTE, artin_m3_refutation,
    brute_force_pattern_s, certify_asphericity, contains_pattern_s, contains_pattern_s_cyclic,
    dihedral_type_1rel, edge_dispatch, has_pattern_s, side_injectivity_dispatch, thm8_check,
)
from lotkit.certificates import ASPHERICAL, NOT_COXETER_TYPE, UNKNOWN
from lotkit.complexes import side_generators
from lotkit.corpus import load
from lotkit.errors import ValidationError
from lotkit.lot import parse_lot, reorient
from lotkit.presentation import Presentation, parse_presentation
from lotkit.words import Word, parse_word

ab_words = st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from((1, -1))), max_size=20).map(Word.from_letters)


def hat(W, gens=("a", "b", "c", "d")):
    W = parse_word(W)
    return Presentation(gens, (Word.letter("a") * W * Word.letter("b", -1) * W.inverse(),))


# --- pattern s --------------------------------------------------------------------

@pytest.mark.parametrize("w,expected", [
    ("a b a b", True), ("b^-1 a^-1 b^-1 a", True), ("a^4 b a b", True), ("b^2 a b a^2", True),
    ("a b c a b", True), (ARTIN_M3_WITNESS, False), ("a b a", False), ("a^2 b^2 a^2", False),
    ("a b^2 c a^2 b", False),
])
def test_pattern_examples(w, expected):
    w = parse_word(w)
    found, pat = contains_pattern_s(w, "a", "b")
    assert found is expected
    assert has_pattern_s(w, "a", "b") is expected
    if found:
        assert has_pattern_s(pat.subword, "a", "b")


@given(ab_words)
def test_walk_agrees_with_brute_force(w):
    assert has_pattern_s(w, "a", "b") == brute_force_pattern_s(w, "a", "b")


@given(ab_words)
def test_witness_is_a_subword_with_the_pattern(w):
    found, pat = contains_pattern_s(w, "a", "b")
    if found:
        sub = pat.subword
        assert brute_force_pattern_s(sub, "a", "b")
        letters = w.letters()
        assert tuple(sub.letters()) == tuple(letters[pat.start:pat.stop])


@given(ab_words)
def test_cyclic_pattern_contains_linear(w):
    if has_pattern_s(w, "a", "b"):
        assert contains_pattern_s_cyclic(w, "a", "b")


@given(st.lists(st.tuples(st.integers(0, 4), st.sampled_from((1, -1))), max_size=10))
def test_side_subgroup_words_avoid_pattern(factors):
    gens = side_generators("a", "b", ("c",))
    w = Word()
    for i, s in factors:
        w = w * (gens[i] if s > 0 else gens[i].inverse())
    assert not has_pattern_s(w, "a", "b")


# --- one-relator dihedral type ----------------------------------------------------------

@pytest.mark.parametrize("rel,m", [("a b a = b a b", 3), ("(a b)^3", 3), ("a b a b = b a b a", 4),
                                   ("a b a^-1 b^-1", 2)])
def test_dihedral_type_1rel(rel, m):
    assert dihedral_type_1rel(parse_presentation(f"gens: a b\nrels: {rel}"), "a", "b") == m


# --- syntactic shapes -------------------------------------------------------------

def test_shape1_long_edge():
    p = load("hat_m7.pres")
    c = thm8_check(p, "a", "b")
    assert c.status == "side_injective" and c.route == "thm8_shape1" and c.m == 7
    assert c.evidence["pattern_left"] and c.evidence["pattern_right"]


def test_shape1_fails_without_pattern():
    c = thm8_check(hat("b c a", ("a", "b", "c")), "a", "b")
    assert c.status == "unknown" and c.reason


def test_shape2_positive_and_negative():
    c = thm8_check(hat("b a b c a b a d a b a"), "a", "b")
    assert c.route == "thm8_shape2" and c.m == 3
    c = thm8_check(hat("b a b c a b a d b a b"), "a", "b")
    assert c.status == "unknown" and "no subword s" in c.reason


def test_shape2_requires_equal_signs():
    c = thm8_check(hat("b a b c^-1 a b a d a b a"), "a", "b")
    assert c.status == "unknown" and "epsilon" in c.reason


@given(st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from((1, -1))), min_size=1, max_size=12))
def test_shape_certificate_implies_type_at_least_3(letters):
    W = Word.from_letters(letters)
    p = Presentation(("a", "b", "c"), (Word.letter("a") * W * Word.letter("b", -1) * W.inverse(),))
    if not p.relators[0]:
        return
    c = thm8_check(p, "a", "b", W)
    if c:
        assert c.m >= 3


# --- dispatcher ---------------------------------------------------------------------

@pytest.mark.parametrize("name,status,route,m", [
    ("torsion3.pres", "side_injective", "torsion_power", 3),
    ("artin4.pres", "side_injective", "artin_m_ge_4", 4),
    ("hat_m7.pres", "side_injective", "thm8_shape1", 7),
    ("sc_square.pres", "side_injective", "dehn_majority", 4),
    ("sc_long.pres", "side_injective", "dehn_majority", 4),
    ("sc_mixed.pres", "side_injective", "dehn_majority", 4),
])
def test_dispatch_routes(name, status, route, m):
    c = side_injectivity_dispatch(load(name), "a", "b")
    assert (c.status, c.route, c.m) == (status, route, m)
    assert c.theorem and c.evidence


def test_dispatch_artin_m3_refuted():
    c = side_injectivity_dispatch(load("artin3.pres"), "a", "b")
    assert c.status == "refuted" and c.route == "artin_m3" and not c
    assert REFUTATION_NOTE in c.notes


def test_artin_m3_refutation_evidence():
    ref = artin_m3_refutation()
    assert ref["trivial"] and ref["b_side_member"] and not ref["has_pattern_s"]
    assert str(ref["witness"]) == ARTIN_M3_WITNESS


def test_dispatch_unknown_and_small_type():
    c = side_injectivity_dispatch(parse_presentation("gens: a b c\nrels: a (b c a) = (b c a) b"), "a", "b")
    assert c.status == "unknown" and c.reason
    c = side_injectivity_dispatch(parse_presentation("gens: a b\nrels: a b a^-1 b^-1"), "a", "b")
    assert c.status == "unknown" and c.reason == M1_NOTE


def test_certificate_json_shape():
    c = side_injectivity_dispatch(load("hat_m7.pres"), "a", "b").to_json()
    assert c["status"] == "side_injective" and "evidence" in c and "reason" not in c
    c = side_injectivity_dispatch(parse_presentation("gens: a b c\nrels: a (b c a) = (b c a) b"), "a", "b")
    assert "reason" in c.to_json()


# --- whole LOT -----------------------------------------------------------------------

def test_certify_label_separated():
    r = certify_asphericity(load("label_separated.lot"))
    assert r.verdict == ASPHERICAL and r.route == "label_separated"


def test_certify_small_lot_unknown():
    r = certify_asphericity(load("small_lot.lot"))
    assert r.verdict == UNKNOWN and r.route is None
    assert any(n.startswith("not label separated") for n in r.notes)


def test_certify_corrected_long_edges():
    r = certify_asphericity(load("long_edges_m7.lot"))
    assert r.verdict == ASPHERICAL and r.route == "all_edges_side_injective"
    assert [e.m for e in r.edges] == [7, 7]
    assert all(HAT_READING_NOTE in e.notes for e in r.edges)


def test_certify_literal_long_edges_has_bigon_edge():
    r = certify_asphericity(load("long_edges.lot"))
    assert r.verdict == UNKNOWN
    assert [e.m for e in r.edges] == [7, 1]


def test_certify_not_coxeter():
    r = certify_asphericity(parse_lot("x -[y z x]-> y ; y -[z]-> z"))
    assert r.verdict == NOT_COXETER_TYPE and r.notes


def test_certify_needs_tree():
    with pytest.raises(ValidationError):
        certify_asphericity(parse_lot("kind: graph\nx -[y]-> y ; y -[x]-> x"))


def test_edge_dispatch_refutation_on_gamma0():
    c = edge_dispatch(load("gamma0.lot"), 0)
    assert c.status == "refuted" and c.edge == 0 and c.m == 3


@pytest.mark.parametrize("name", ["small_lot.lot", "gamma0.lot", "label_separated.lot", "long_edges.lot",
                                  "long_edges_m7.lot"])
def test_verdict_and_types_survive_reorientation(name):
    lot = load(name)
    base = certify_asphericity(lot)
    rng = random.Random(name)
    for _ in range(4):
        flips = [(i, j) for i, e in enumerate(lot.edges) for j in range(len(e.word.syllables)) if rng.random() < 0.5]
        other = certify_asphericity(reorient(lot, flips))
        assert other.verdict == base.verdict
        assert [e.m for e in other.edges] == [e.m for e in base.edges]
