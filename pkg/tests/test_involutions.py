import random
from fractions import Fraction

import pytest

from zzgrade.chevalley import algebra
from zzgrade.involutions import (Character, all_characters,
                                 chevalley_involution, diagram_lift,
                                 from_character, involution_class,
                                 reflection_lift, weyl_lift)

E6_FLIP = (4, 3, 2, 1, 0, 5)


def test_character_multiplicativity():
    chi = Character((1, -1, 1, -1, 1, 1))
    e6 = algebra("E6")
    rs = e6.rs
    for a in rs.roots[:20]:
        assert chi.value(tuple(-c for c in a)) == chi.value(a)
        for b in rs.roots[:20]:
            s = tuple(x + y for x, y in zip(a, b))
            if s in rs.root_index:
                assert chi.value(s) == chi.value(a) * chi.value(b)


def test_trivial_character_rejected():
    with pytest.raises(ValueError):
        from_character(algebra("G2"), Character((1, 1)))


def test_e7_character_fixed_dims():
    e7 = algebra("E7")
    dims = {from_character(e7, chi).fixed_dim() for chi in all_characters(7)}
    assert dims == {63, 69, 79}
    assert len(list(all_characters(7))) == 127


def test_e6_character_of_class_eiii_exists():
    e6 = algebra("E6")
    for chi in all_characters(6):
        aut = from_character(e6, chi)
        if aut.fixed_dim() == 46:
            assert involution_class(aut).token == "EIII"
            fixed = aut.fixed_subalgebra()
            assert fixed.dim == 46
            break
    else:
        raise AssertionError("no E III character found")


def test_characters_always_involutions_and_inner():
    f4 = algebra("F4")
    for chi in all_characters(4):
        aut = from_character(f4, chi)
        assert aut.is_involution()
        assert aut.is_inner()
        aut.check_bracket_preservation()


def test_chevalley_involution_a1():
    a1 = algebra("A1")
    om = chevalley_involution(a1)
    fixed = om.fixed_subalgebra()
    assert fixed.dim == 1
    # span(e - f)
    assert fixed.contains({1: Fraction(1), 2: Fraction(-1)})


def test_chevalley_involution_classes():
    e7 = algebra("E7")
    om7 = chevalley_involution(e7)
    assert om7.fixed_dim() == 63
    assert involution_class(om7).token == "EV"
    e6 = algebra("E6")
    om6 = chevalley_involution(e6)
    assert om6.fixed_dim() == 36
    assert not om6.is_inner()
    assert involution_class(om6).token == "EI"
    e8 = algebra("E8")
    om8 = chevalley_involution(e8)
    assert om8.fixed_dim() == 120
    assert involution_class(om8).token == "EVIII"


def test_chevalley_involution_preserves_brackets():
    om = chevalley_involution(algebra("F4"))
    om.check_bracket_preservation()
    assert om.is_involution()


def test_diagram_lift_e6_flip_is_eiv():
    e6 = algebra("E6")
    lift = diagram_lift(e6, E6_FLIP)
    assert lift.fixed_dim() == 52
    cls = involution_class(lift)
    assert cls.token == "EIV" and cls.outer


def test_diagram_lift_d4_transposition_is_spin7():
    d4 = algebra("D4")
    lift = diagram_lift(d4, (2, 1, 0, 3))
    assert lift.fixed_dim() == 21
    assert involution_class(lift).token == "Spin7"


def test_diagram_lift_rejects_non_symmetry():
    with pytest.raises(ValueError):
        diagram_lift(algebra("E6"), (1, 0, 2, 3, 4, 5))


def test_diagram_lift_order3_triality():
    d4 = algebra("D4")
    tri = diagram_lift(d4, (2, 1, 3, 0), expected_order=3)
    cube = tri.compose(tri).compose(tri)
    assert cube.is_identity()
    assert not tri.order_divides_two()


def test_flip_symmetric_twist_commutes_with_lift():
    e6 = algebra("E6")
    lift = diagram_lift(e6, E6_FLIP)
    chi = Character((-1, 1, 1, 1, -1, 1))  # flip-symmetric
    aut = from_character(e6, chi)
    assert lift.commutes_with(aut)
    assert aut.fixed_dim() == 46


def test_two_characters_commute():
    g2 = algebra("G2")
    a = from_character(g2, Character((1, -1)))
    b = from_character(g2, Character((-1, 1)))
    assert a.commutes_with(b)


def test_omega_commutes_with_every_character():
    e6 = algebra("E6")
    om = chevalley_involution(e6)
    for chi in list(all_characters(6))[:10]:
        assert om.commutes_with(from_character(e6, chi))


def test_reflection_lift_a1():
    a1 = algebra("A1")
    n = reflection_lift(a1, 0)
    assert n.image_of_basis(1) == {2: Fraction(-1)}   # e -> -f
    assert n.image_of_basis(2) == {1: Fraction(-1)}   # f -> -e
    assert n.image_of_basis(0) == {0: Fraction(-1)}   # h -> -h


def test_weyl_lift_empty_word_is_identity():
    g2 = algebra("G2")
    assert weyl_lift(g2, ()).is_identity()


def test_weyl_lift_lattice_action_and_brackets():
    f4 = algebra("F4")
    lift = weyl_lift(f4, (0, 2, 1, 3))
    lift.check_bracket_preservation()
    w = f4.rs.weyl_from_word((0, 2, 1, 3))
    for ridx, r in enumerate(f4.rs.roots):
        tgt, _ = lift.root_map[ridx]
        assert f4.rs.roots[tgt] == w.apply(r)


def test_class_constant_under_random_weyl_conjugation():
    e6 = algebra("E6")
    rng = random.Random(99)
    aut = from_character(e6, Character((1, 1, 1, 1, 1, -1)))
    base = involution_class(aut).token
    for _ in range(3):
        word = tuple(rng.randrange(6) for _ in range(8))
        g = weyl_lift(e6, word)
        conj = g.compose(aut).compose(g.inverse())
        assert involution_class(conj).token == base


def test_involution_class_rejects_non_involution():
    g2 = algebra("G2")
    with pytest.raises(ValueError):
        involution_class(weyl_lift(g2, (0,)))
