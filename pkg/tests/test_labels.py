import pytest

from zzgrade.labels import AlgebraLabel, format_label, parse_label


def test_dimension_formulas():
    assert parse_label("su8").dim == 63
    assert parse_label("so16").dim == 120
    assert parse_label("sp4").dim == 36
    assert parse_label("e6").dim == 78
    assert parse_label("e7").dim == 133
    assert parse_label("e8").dim == 248
    assert parse_label("f4").dim == 52
    assert parse_label("g2").dim == 14
    assert parse_label("so10+R").dim == 46


def test_low_rank_coincidences():
    assert parse_label("su2") == parse_label("sp1") == parse_label("so3")
    assert parse_label("so4") == parse_label("sp1+sp1")
    assert parse_label("so5") == parse_label("sp2")
    assert parse_label("so6") == parse_label("su4")
    assert parse_label("so2") == parse_label("R")
    assert parse_label("u2+u2") == parse_label("so4+R+R")
    assert parse_label("u6+R") == parse_label("su6+R+R")
    assert parse_label("so1").dim == 0


def test_additivity_and_sorting():
    a = parse_label("sp1+su6+R")
    b = parse_label("su6+sp1+R")
    assert a == b
    assert a.rank == 5 + 1 + 1
    assert a.center_dim == 1
    assert a.derived_dim == 38


def test_format_roundtrip():
    for text in ("su6+sp1", "so10+R", "f4", "e6+R+R", "so12+sp1+sp1"):
        lbl = parse_label(text)
        assert parse_label(format_label(lbl)) == lbl


def test_unknown_term_rejected():
    with pytest.raises(ValueError):
        parse_label("bogus7")


def test_trivial_label():
    z = AlgebraLabel((), 0)
    assert z.dim == 0
    assert format_label(z) == "0"
