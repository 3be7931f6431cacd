import json
import shutil
from pathlib import Path

import pytest

from hermlift.cli import main, read_table, write_table
from hermlift.elliptic import format_newform, synthetic_newform
from hermlift.maass import build_lift
from hermlift.quadfield import FieldParams, char_values, class_group, trivial_char
from hermlift.ring import HeckeRing

GAUSS = HeckeRing([1, 0, 1])
CM_PATH = Path(__file__).parent.parent / "src" / "hermlift" / "data" / "cm_d7_w3.nf"


@pytest.fixture
def synth_file(tmp_path):
    params = FieldParams(7, 8)
    f = synthetic_newform(params, GAUSS, "negate-x", p_max=1300, seed=17)
    path = tmp_path / "synth.nf"
    path.write_text(format_newform(f))
    return path, f


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def test_classgroup_examples(capsys):
    code, out = run(capsys, "classgroup", "7")
    assert code == 0 and "h = 1" in out

    code, out = run(capsys, "--json", "classgroup", "23")
    assert code == 0
    rec = json.loads(out)
    assert rec["h"] == 3 and len(rec["forms"]) == 3

    code, _ = run(capsys, "classgroup", "4")
    assert code == 2  # not a prime = 3 mod 4


def test_lift_cm_warns_self_conjugate(tmp_path, capsys):
    out_path = tmp_path / "cm.tbl"
    code, out = run(capsys, "lift", CM_PATH, out_path, "--bound-det", "50")
    assert code == 0
    assert "self-conjugate" in out
    table, chi, _ = read_table(str(out_path))
    assert not table.values  # all coefficients vanish


def test_lift_hecke_checkmaass_pipeline(tmp_path, capsys, synth_file):
    nf, f = synth_file
    tbl = tmp_path / "lift.tbl"
    code, out = run(capsys, "lift", nf, tbl, "--bound-det", str(7 * 9 * 16), "--bound-diag", "2")
    assert code == 0 and "alpha supported" in out

    code, _ = run(capsys, "check-maass", tbl)
    assert code == 0

    out_tbl = tmp_path / "t0.tbl"
    code, _ = run(capsys, "hecke", tbl, out_tbl, "--op", "T0@3")
    assert code == 0
    code, txt = run(capsys, "check-maass", out_tbl)
    assert code == 0

    # split operator then membership again
    out2 = tmp_path / "t1.tbl"
    code, _ = run(capsys, "hecke", tbl, out2, "--op", "T1@2")
    assert code == 0
    code, _ = run(capsys, "check-maass", out2)
    assert code == 0


def test_check_maass_detects_fault(tmp_path, capsys, synth_file):
    nf, f = synth_file
    tbl = tmp_path / "lift.tbl"
    run(capsys, "lift", nf, tbl, "--bound-det", "100", "--bound-diag", "2")
    text = tbl.read_text().splitlines()
    # corrupt the last point line's first numerator coordinate
    for i in range(len(text) - 1, -1, -1):
        if text[i].startswith("point"):
            parts = text[i].split()
            parts[5] = str(int(parts[5]) + 1)
            text[i] = " ".join(parts)
            break
    tbl.write_text("\n".join(text) + "\n")
    code, out = run(capsys, "check-maass", tbl)
    assert code == 1 and "FAIL" in out


def test_descend_roundtrip(tmp_path, capsys, synth_file):
    nf, f = synth_file
    tbl = tmp_path / "lift.tbl"
    run(capsys, "lift", nf, tbl, "--bound-det", "120", "--bound-diag", "2")
    code, out = run(capsys, "--json", "descend", tbl, "--n-max", "60")
    assert code == 0
    rec = json.loads(out.splitlines()[0])
    from hermlift.elliptic import antisymmetrize

    psi = antisymmetrize(f, 60)
    for n, v in rec["coeffs"].items():
        assert str(psi.a(int(n))) == v


def test_euler_verify(capsys):
    code, out = run(
        capsys, "euler", CM_PATH, "--p", "2", "--p", "3", "--p", "5", "--verify-product134"
    )
    assert code == 0
    assert out.count("product134: OK") == 3

    code, _ = run(capsys, "euler", CM_PATH, "--p", "7")
    assert code == 2  # ramified prime rejected


def test_congruence_report(tmp_path, capsys):
    params = FieldParams(7, 8, 13)
    f = synthetic_newform(params, GAUSS, "negate-x", p_max=20, seed=23)
    from dataclasses import replace

    ap2 = {p: a + GAUSS.from_int(13 * 13) * (1 if p % 7 in (1, 2, 4) else 0) for p, a in f.ap.items()}
    # keep the conjugation symmetry: only split primes (real values) perturbed
    g = replace(f, ap=ap2, label="g")
    g.validate()
    fa, fb = tmp_path / "f.nf", tmp_path / "g.nf"
    fa.write_text(format_newform(f))
    fb.write_text(format_newform(g))
    code, out = run(capsys, "--json", "congruence", fa, fb, "--ell", "13", "--p-max", "12")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert all(r["max_depth"] >= 2 for r in recs)


def test_table_roundtrip_byte_stable(tmp_path, synth_file):
    nf, f = synth_file
    t = build_lift(f, trivial_char(), 100)
    p1, p2 = tmp_path / "a.tbl", tmp_path / "b.tbl"
    write_table(str(p1), t, 100, 2)
    table, chi, ze = read_table(str(p1))
    t2 = build_lift(f, trivial_char(), 100)
    write_table(str(p2), t2, 100, 2)
    assert p1.read_bytes() == p2.read_bytes()
    # read back equals what was written
    assert {h: v for h, v in table.values.items()} == {
        h: v for h, v in t.identity_table(100, 2).values.items()
    }


def test_bad_file_nonzero_exit(tmp_path, capsys):
    bad = tmp_path / "bad.nf"
    bad.write_text("field 7\nweight 3\nring 0 1\naDK -7\nap 3 5\n")
    out_tbl = tmp_path / "x.tbl"
    code, _ = run(capsys, "lift", bad, out_tbl)
    assert code == 2
    assert not out_tbl.exists()  # no partial output
