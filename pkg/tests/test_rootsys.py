import random

import pytest

from zzgrade.labels import parse_label
from zzgrade.rootsys import RootSystem, ascii_diagram, extended_diagram

CATALOG_DIMS = {"A1": 3, "D4": 28, "E6": 78, "E7": 133, "E8": 248,
                "F4": 52, "G2": 14}


@pytest.fixture(scope="module")
def e6():
    return RootSystem("E6")


@pytest.fixture(scope="module")
def e7():
    return RootSystem("E7")


def test_a1_roots():
    rs = RootSystem("A1")
    assert set(rs.roots) == {(1,), (-1,)}


@pytest.mark.parametrize("label,dim", sorted(CATALOG_DIMS.items()))
def test_root_counts_match_dimension_catalog(label, dim):
    rs = RootSystem(label)
    assert len(rs.roots) == dim - rs.rank
    assert rs.num_positive == (dim - rs.rank) // 2


def test_e7_has_126_roots(e7):
    assert len(e7.roots) == 126


def test_g2_highest_root_height():
    rs = RootSystem("G2")
    assert len(rs.roots) == 12
    assert sum(rs.highest_root) == 5


def test_roots_closed_under_negation_and_reflection(e6):
    for r in e6.roots:
        assert tuple(-c for c in r) in e6.root_index
        for j in range(e6.rank):
            assert e6.reflect_simple(j, r) in e6.root_index


def test_unsupported_type_label():
    with pytest.raises(ValueError):
        RootSystem("H3")


def test_extended_diagram_a1():
    ext = extended_diagram(RootSystem("A1"))
    assert ext.marks == (1,)
    assert ext.edges  # the two nodes are joined


def test_extended_diagram_e6_attaches_at_branch(e6):
    ext = extended_diagram(e6)
    affine_edges = [e for e in ext.edges if e[0] == 0]
    # node 6 is position 6 in the extended numbering (0 = affine)
    assert affine_edges == [(0, 6, 1)]
    assert ext.marks == (1, 2, 3, 2, 1, 2)


def test_extended_diagram_e8_marks():
    ext = extended_diagram(RootSystem("E8"))
    assert sorted(ext.marks) == [2, 2, 3, 3, 4, 4, 5, 6]
    assert 1 + sum(ext.marks) == 30  # Coxeter number


def test_ascii_diagram_smoke():
    text = ascii_diagram(RootSystem("F4"), extended=True)
    assert "F4" in text and "marks" in text


# -- subsystem typing -----------------------------------------------------


def test_empty_subsystem_is_pure_torus(e6):
    assert e6.subsystem_type([]) == parse_label("R+R+R+R+R+R")


def test_e6_a5_a1_subsystem(e6):
    # line nodes 1..5 plus the lowest root: the su6+sp1 configuration
    gens = [e6.simple_root(i) for i in range(5)]
    gens.append(tuple(-c for c in e6.highest_root))
    sub = e6.span_closure(gens)
    assert len(sub) == 32
    assert e6.subsystem_type(sub) == parse_label("su6+sp1")


def test_e6_intersection_su5_plus_torus(e6):
    a5a1 = e6.span_closure([e6.simple_root(i) for i in range(5)]
                           + [tuple(-c for c in e6.highest_root)])
    d5 = e6.span_closure([e6.simple_root(i) for i in (0, 1, 2, 3, 5)])
    assert e6.subsystem_type(d5) == parse_label("so10+R")
    inter = a5a1 & d5
    assert e6.subsystem_type(inter) == parse_label("su5+R+R")


def test_non_closed_subset_rejected(e6):
    alpha = e6.simple_root(0)
    with pytest.raises(ValueError):
        e6.subsystem_type([alpha])  # missing -alpha
    beta = e6.simple_root(1)
    both = [alpha, tuple(-c for c in alpha), beta, tuple(-c for c in beta)]
    with pytest.raises(ValueError):
        e6.subsystem_type(both)  # alpha+beta is a root but missing


def test_subsystem_type_weyl_invariant(e7):
    rng = random.Random(20)
    base = e7.span_closure([e7.simple_root(i) for i in (0, 2, 3)])
    t0 = e7.subsystem_type(base)
    for _ in range(5):
        word = tuple(rng.randrange(7) for _ in range(12))
        w = e7.weyl_from_word(word)
        moved = {w.apply(r) for r in base}
        assert e7.subsystem_type(moved) == t0


# -- orthogonal subsystems and the two A5 classes ---------------------------


def test_orthogonal_of_everything_is_empty(e6):
    assert e6.orthogonal_subsystem(e6.roots).components == ()


def test_two_a5_classes_have_distinct_orthogonal_types(e7):
    affine = tuple(-c for c in e7.highest_root)
    prime = e7.span_closure([affine] + [e7.simple_root(i) for i in (0, 2, 3, 4)])
    second = e7.span_closure([affine] + [e7.simple_root(i) for i in (0, 2, 3, 1)])
    for sub in (prime, second):
        assert e7.subsystem_type(sub).components == (("A", 5),)
    op = e7.orthogonal_subsystem(prime)
    os = e7.orthogonal_subsystem(second)
    assert op.components != os.components
    assert {op.components, os.components} == {(("A", 1),), (("A", 2),)}


def test_orthogonal_type_invariant_under_weyl(e7):
    affine = tuple(-c for c in e7.highest_root)
    second = e7.span_closure([affine] + [e7.simple_root(i) for i in (0, 2, 3, 1)])
    t0 = e7.orthogonal_subsystem(second).components
    w = e7.weyl_from_word((0, 1, 2, 3, 4, 5, 6, 0, 2))
    moved = {w.apply(r) for r in second}
    assert e7.orthogonal_subsystem(moved).components == t0


# -- Weyl machinery ----------------------------------------------------------


def test_longest_element_a1():
    rs = RootSystem("A1")
    w0 = rs.longest_element()
    assert w0.word == (0,)
    assert w0.apply((1,)) == (-1,)


def test_longest_element_e7_is_minus_identity(e7):
    w0 = e7.longest_element()
    assert w0.length == 63
    for i in range(7):
        a = e7.simple_root(i)
        assert w0.apply(a) == tuple(-c for c in a)


def test_w0e7_w0e6_induces_e6_diagram_flip(e7):
    w = e7.longest_element().compose(e7.longest_element(subset=range(6)))
    # E6 parabolic on nodes {0,1,2,3,4,5}: diagram flip is 0<->5, 2<->4
    flip = {0: 5, 5: 0, 2: 4, 4: 2, 3: 3, 1: 1}
    for i in range(6):
        assert w.apply(e7.simple_root(i)) == e7.simple_root(flip[i])


def test_decompose_identity(e6):
    eye = tuple(tuple(1 if i == j else 0 for j in range(6)) for i in range(6))
    w, perm = e6.decompose_lattice_auto(eye)
    assert w.is_identity() and perm == (0, 1, 2, 3, 4, 5)


def test_decompose_minus_identity_on_e6(e6):
    neg = tuple(tuple(-1 if i == j else 0 for j in range(6)) for i in range(6))
    w, perm = e6.decompose_lattice_auto(neg)
    assert perm == (4, 3, 2, 1, 0, 5)  # the nontrivial diagram flip
    assert w.length == 36


def test_decompose_weyl_matrix_gives_identity_symmetry(e6):
    w = e6.weyl_from_word((0, 3, 2, 5, 1))
    got, perm = e6.decompose_lattice_auto(w.matrix)
    assert perm == (0, 1, 2, 3, 4, 5)
    assert got.matrix == w.matrix


def test_decompose_rejects_non_automorphism(e6):
    bad = tuple(tuple(2 if i == j else 0 for j in range(6)) for i in range(6))
    with pytest.raises(ValueError):
        e6.decompose_lattice_auto(bad)
