import io
import json
import shutil
from contextlib import redirect_stdout

from zzgrade.cli import main
from zzgrade.tables import expected_dir


def run_cli(args):
    buf = io.StringIO()
    with redirect_stdout(buf):
        rc = main(args)
    return rc, buf.getvalue()


def test_roots_a1():
    rc, out = run_cli(["roots", "a1"])
    assert rc == 0
    assert "2 roots" in out


def test_roots_e8():
    rc, out = run_cli(["roots", "e8"])
    assert rc == 0
    assert "240 roots" in out
    assert "248" in out


def test_roots_g2():
    rc, out = run_cli(["roots", "g2"])
    assert rc == 0 and "12 roots" in out and "height 5" in out


def test_tables_3_empty_diff_and_formats():
    rc, out = run_cli(["tables", "3"])
    assert rc == 0 and "diff vs expected: empty" in out
    assert "| E I-I | 6 |" in out
    rc, out = run_cli(["--format", "csv", "tables", "5"])
    assert rc == 0 and "Spin7,Spin7,-14" in out
    rc, out = run_cli(["--format", "json", "tables", "4"])
    assert rc == 0
    payload = json.loads(out[:out.rindex("}") + 1])
    assert payload["name"] == "table4"


def test_tables_negative_control(tmp_path):
    bad = tmp_path / "expected"
    shutil.copytree(expected_dir(), bad)
    text = (bad / "table3.md").read_text()
    (bad / "table3.md").write_text(text.replace("| E I-I | 6 |",
                                                "| E I-I | 7 |"))
    rc, out = run_cli(["--expected-dir", str(bad), "tables", "3"])
    assert rc == 1
    assert "DIFFS" in out and "row" in out


def test_witness_row():
    rc, out = run_cli(["witness", "e6:EI-II-IV"])
    assert rc == 0
    payload = json.loads(out[:out.rindex("}") + 1])
    assert payload["k"]["label"] == "sp3+sp1"
    assert payload["dims"]["g1"] == 24
    assert "verified" in out


def test_witness_bogus_lists_rows(capsys):
    rc = main(["witness", "bogus"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "e7:EVII-VII-VII" in err


def test_verify_all_g2_subset():
    rc, out = run_cli(["verify-all", "--algebra", "g2"])
    assert rc == 0
    assert "table1: 1 records match expected" in out
    assert "PASS" in out


def test_verify_all_negative_control(tmp_path):
    bad = tmp_path / "expected"
    shutil.copytree(expected_dir(), bad)
    text = (bad / "table1.md").read_text()
    assert "| g2 | G | R+R |" in text
    (bad / "table1.md").write_text(text.replace("| g2 | G | R+R |",
                                                "| g2 | G | so4 |"))
    rc, out = run_cli(["--expected-dir", str(bad),
                       "verify-all", "--algebra", "g2"])
    assert rc == 1
    assert "row 1" in out      # row-level diff printed
    assert "FAIL" in out


def test_tables_1_subset():
    rc, out = run_cli(["tables", "1", "--algebra", "g2"])
    assert rc == 0
    assert "[table1] diff vs expected: empty" in out


def test_cache_dir_used(tmp_path):
    cache = tmp_path / "cache"
    rc, _ = run_cli(["--cache-dir", str(cache), "roots", "g2"])
    assert rc == 0
    files = sorted(p.name for p in cache.iterdir())
    assert "g2-standard.chv" in files and "e8-standard.chv" in files
    # second invocation loads the caches without error
    rc, _ = run_cli(["--cache-dir", str(cache), "roots", "g2"])
    assert rc == 0
