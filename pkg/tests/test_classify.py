import json

import pytest

from zzgrade.catalog import catalog
from zzgrade.classify import (WITNESS_ROWS, GradingRecord,
                              construct_witness, enumerate_diagonal_pairs,
                              nonexistence_report, replay_record,
                              so8_family_labels)
from zzgrade.labels import parse_label

KNOWN_NONEXISTENT = {
    ("f4", ("FI", "FII", "FII")),
    ("e6", ("EI", "EIII", "EIV")),
    ("e6", ("EII", "EIV", "EIV")),
    ("e7", ("EV", "EVI", "EVI")),
    ("e7", ("EVI", "EVI", "EVII")),
    ("e7", ("EV", "EVII", "EVII")),
}


def _by_algebra(bundle, g):
    return [r for r in bundle.records if r.algebra == g]


def test_diagonal_e6(bundle):
    rows = {(r.triple_id, str(r.k_label))
            for r in _by_algebra(bundle, "e6") if r.decided_by == "full-rank"}
    assert rows == {
        ("EII-II-II", "su3+su3+R+R"),
        ("EII-II-III", "su4+sp1+sp1+R"),
        ("EII-III-III", "su5+R+R"),
        ("EIII-III-III", "so8+R+R"),
    }


def test_diagonal_e7_includes_both_vi_vi_vi(bundle):
    rows = [r for r in _by_algebra(bundle, "e7") if r.decided_by == "full-rank"]
    assert len(rows) == 5
    vivivi = [r for r in rows if r.triple_id == "EVI-VI-VI"]
    assert len(vivivi) == 2
    assert {r.k_label for r in vivivi} == {parse_label("so8+so4+sp1"),
                                           parse_label("u6+R")}
    assert all(r.dims[0] == 37 for r in vivivi)


def test_diagonal_e8(bundle):
    rows = {(r.triple_id, str(r.k_label)) for r in _by_algebra(bundle, "e8")}
    assert rows == {
        ("EVIII-VIII-VIII", "so8+so8"),
        ("EVIII-VIII-IX", "su8+R"),
        ("EVIII-IX-IX", "so12+sp1+sp1"),
        ("EIX-IX-IX", "e6+R+R"),
    }


def test_diagonal_f4_and_g2(bundle):
    f4rows = {(r.triple_id, r.k_label) for r in _by_algebra(bundle, "f4")}
    assert f4rows == {("FI-I-I", parse_label("u3+R")),
                      ("FI-I-II", parse_label("sp2+sp1+sp1")),
                      ("FII-II-II", parse_label("so8"))}
    g2rows = [(r.triple_id, r.k_label) for r in _by_algebra(bundle, "g2")]
    assert g2rows == [("G", parse_label("R+R"))]


def test_record_count_matches_reference_table(bundle):
    exceptional = [r for r in bundle.records if r.algebra != "so8"]
    assert len(exceptional) == 24
    assert len(_by_algebra(bundle, "e6")) == 8
    assert len(_by_algebra(bundle, "e7")) == 8
    assert len({r.triple_id for r in _by_algebra(bundle, "e7")}) == 7


def test_witness_dims(bundle):
    expected = {
        "EI-I-II": ("so6+R", (36, 36, 38)),
        "EI-I-III": ("sp2+sp2", (36, 36, 46)),
        "EI-II-IV": ("sp3+sp1", (52, 36, 38)),
        "EIII-IV-IV": ("so9", (46, 52, 52)),
        "EV-V-V": ("so8", (63, 63, 63)),
        "EV-V-VII": ("sp4", (63, 79, 63)),
        "EVII-VII-VII": ("f4", (79, 79, 79)),
    }
    for rid in WITNESS_ROWS:
        g, trip = rid.split(":")
        rec = next(r for r in bundle.records
                   if r.algebra == g and r.triple_id == trip
                   and r.decided_by != "full-rank")
        k_exp, fixed = expected[trip]
        assert rec.k_label == parse_label(k_exp)
        g1, gs, gt, gst = rec.dims
        assert sorted((g1 + gs, g1 + gt, g1 + gst)) == sorted(fixed)


def test_witness_unknown_row():
    with pytest.raises(KeyError):
        construct_witness("bogus")


def test_witness_replay_reproduces_record(bundle):
    rec = next(r for r in bundle.records
               if r.algebra == "e6" and r.triple_id == "EI-II-IV")
    again = replay_record(rec)
    assert again.to_json() == rec.to_json()


def test_record_json_roundtrip(bundle):
    for rec in bundle.records[:6] + bundle.so8.records[:2]:
        data = json.loads(json.dumps(rec.to_json()))
        back = GradingRecord.from_json(data)
        assert back.key == rec.key
        replayed = replay_record(back)
        assert replayed.to_json() == rec.to_json()


def test_nonexistence_key_cases(bundle):
    excl = {(e.algebra, e.triple): e for e in bundle.exclusions}
    for g, triple in KNOWN_NONEXISTENT:
        assert (g, triple) in excl, f"{g}:{triple} not excluded"
        assert excl[(g, triple)].reason in ("empty-candidates",
                                            "containment-refuted")
        assert excl[(g, triple)].details


def test_fi_ii_ii_refutation_cites_facts(bundle):
    e = next(x for x in bundle.exclusions
             if (x.algebra, x.triple) == ("f4", ("FI", "FII", "FII")))
    assert e.reason == "containment-refuted"
    text = " ".join(e.details)
    assert "sp3" in text


def test_parity_exclusions_on_e6(bundle):
    excl = {(e.algebra, e.triple): e.reason for e in bundle.exclusions}
    assert excl[("e6", ("EI", "EI", "EI"))] == "parity"
    assert excl[("e6", ("EI", "EII", "EII"))] == "parity"


def test_completeness_every_triple_settled(bundle):
    import itertools
    cat = catalog()
    for g in ("e6", "e7", "e8", "f4", "g2", "so8"):
        classes = cat.classes_of(g)
        all_triples = {tuple(c.token for c in combo) for combo in
                       itertools.combinations_with_replacement(classes, 3)}
        if g == "so8":
            realized = {grp.triple for grp in bundle.so8.groups}
        else:
            realized = {r.triple for r in bundle.records if r.algebra == g}
        excluded = {e.triple for e in bundle.exclusions if e.algebra == g}
        assert realized | excluded == all_triples
        assert not (realized & excluded)


def test_nonexistence_raises_if_triple_unaccounted():
    with pytest.raises(Exception):
        nonexistence_report("g2", set())  # G-G-G is realizable, not excludable


def test_so8_labels_equal_families(bundle):
    fam = so8_family_labels()
    assert bundle.so8.labels() == set(fam)
    assert parse_label("u3+u1") in bundle.so8.labels()
    # spellings collapse: u2+u2 and so4+so2+so2 carry the same canonical label
    assert parse_label("u2+u2") == parse_label("so4+so2+so2")
    assert parse_label("u2+u2") in bundle.so8.labels()


def test_so8_triality_collapse(bundle):
    entry = next(d for d in bundle.so8.dedupe_map
                 if d["label"] == "sp1+sp1+R+R")
    assert entry["orbits_under_weyl"] > 1
    assert entry["orbits_with_triality"] == 1
    assert entry["merged_by"] == "triality-conjugation"


def test_so8_replay(bundle):
    rec = next(r for r in bundle.so8.records
               if r.k_label == parse_label("u3+u1"))
    again = replay_record(rec)
    assert again.k_label == rec.k_label
    assert again.dims == rec.dims


def test_a5_report(bundle):
    assert bundle.a5.distinct
    assert bundle.a5.u6r_matches_second


def test_flipped_convention_reproduces_e6_classification(bundle):
    recs = enumerate_diagonal_pairs("e6", convention="flipped")
    recs += [construct_witness(rid, convention="flipped")
             for rid in WITNESS_ROWS if rid.startswith("e6:")]
    flipped = {(r.triple_id, r.k_label, r.dims[0]) for r in recs}
    standard = {(r.triple_id, r.k_label, r.dims[0])
                for r in bundle.records if r.algebra == "e6"}
    assert flipped == standard


def test_determinism_of_enumeration(bundle):
    again = enumerate_diagonal_pairs("f4")
    ref = [r.to_json() for r in bundle.records if r.algebra == "f4"
           and r.decided_by == "full-rank"]
    assert [r.to_json() for r in again] == ref
