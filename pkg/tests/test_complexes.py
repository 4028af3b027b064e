import pytest
from hypothesis import given, settings

from lotkit.complexes import (
    boundary_spells_relator, build_Kbar_e, build_Lbar_e, cell_boundaries_close, coxeter_ball,
    halve_outside, hat_presentation, side_generators, side_intersection, sides_of,
)
from lotkit.coxeter import dihedral_type, parse_coxeter
from lotkit.corpus import load
from lotkit.errors import ValidationError
from lotkit.lot import parse_lot
from lotkit.words import parse_word

from strategies import lots

SMALL = parse_lot("x -[y z^2 x]-> y ; y -[z x^2 y]-> z")


def test_hat_halves_outside_syllables():
    h = hat_presentation(SMALL, 0)
    assert h.edge_word == parse_word("y z x")
    assert h.relator == parse_word("x y z x y^-1 x^-1 z^-1 y^-1")
    assert h.outside == ("z",) and not h.proper_power


def test_hat_long_edge():
    h = hat_presentation(parse_lot("a -[b a b c^2 a b a]-> b ; b -[c]-> c"), 0)
    assert h.edge_word == parse_word("b a b c a b a")
    assert tuple(h.presentation.generators) == ("a", "b", "c")


def test_hat_without_outside_letters_is_unchanged():
    lot = parse_lot("x -[y x]-> y")
    h = hat_presentation(lot, 0)
    assert h.relator == lot.edges[0].relator() and h.outside == ()


def test_halving_needs_even_syllables():
    with pytest.raises(ValidationError):
        halve_outside(parse_word("y z x"), ("x", "y"))


def test_small_lot_complex_counts():
    K, L = build_Kbar_e(SMALL, 0), build_Lbar_e(SMALL, 0)
    assert (len(K.vertices), len(K.edges), len(K.faces)) == (12, 24, 6)
    assert (len(L.vertices), len(L.edges), len(L.faces)) == (6, 18, 6)
    assert K.euler_characteristic == L.euler_characteristic == -6
    assert K.check_walks() and L.check_walks()
    assert boundary_spells_relator(K, SMALL.edges[0].relator())
    assert boundary_spells_relator(L, hat_presentation(SMALL, 0).relator)


@settings(max_examples=40)
@given(lots(max_vertices=4, coxeter=True, max_syllables=7))
def test_complexes_on_random_coxeter_lots(lot):
    for i in range(len(lot.edges)):
        m = dihedral_type(lot, i)
        K, L = build_Kbar_e(lot, i), build_Lbar_e(lot, i)
        assert K.euler_characteristic == L.euler_characteristic
        assert len(K.faces) == len(L.faces) == 2 * m
        assert len(L.vertices) == 2 * m
        assert K.check_walks() and L.check_walks()
        if m > 1:
            # sides_of checks every basis by folding against the computed loops
            sides = sides_of(L)
            assert len(sides) == 2 * m


def test_bigon_edge():
    lot = parse_lot("x -[y]-> y")
    K = build_Kbar_e(lot, 0)
    assert K.meta["m"] == 1 and len(K.faces) == 2
    sides = sides_of(build_Lbar_e(lot, 0))
    assert len(sides) == 2 and all(s.rank == len(s.generators) for s in sides)


def test_side_generators_small_lot():
    sides = sides_of(build_Lbar_e(SMALL, 0))
    x_side = [s for s in sides if s.anchor == "x"][0]
    y_side = [s for s in sides if s.anchor == "y"][0]
    assert [str(g) for g in x_side.generators] == ["x^2", "y^2", "z", "x y^2 x^-1", "x z x^-1"]
    assert [str(g) for g in y_side.generators] == ["y^2", "x^2", "z", "y x^2 y^-1", "y z y^-1"]
    assert x_side.rank == 5


def test_side_generators_without_outside():
    assert [str(g) for g in side_generators("a", "b", ())] == ["a^2", "b^2", "a b^2 a^-1"]


def test_side_intersection():
    s = side_intersection(SMALL, 0, 1)
    assert s.vertex == "y" and s.whole_side
    lot = load("label_separated.lot")
    s = side_intersection(lot, 0, 1)
    assert s.letters == ("y",) and [str(g) for g in s.generators] == ["y^2"]
    assert s.proper_in_first and s.proper_in_second
    with pytest.raises(ValidationError):
        side_intersection(lot, 0, 2)


@pytest.mark.parametrize("radius", [1, 2, 4])
def test_coxeter_ball(radius):
    g = parse_coxeter("x -3- y ; y -3- z")
    ball = coxeter_ball(g, radius)
    assert ball.acyclic and ball.connected and ball.label_condition
    assert cell_boundaries_close(g, ball)


def test_ball_of_single_edge_is_one_cell():
    ball = coxeter_ball(parse_coxeter("x -3- y"), 3)
    assert len(ball.cells) == 1


def test_ball_radius_4_size():
    assert len(coxeter_ball(parse_coxeter("x -3- y ; y -3- z"), 4).cells) == 24
