from __future__ import annotations

import json
import subprocess
import sys

import pytest

from multhull.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def sg(data_dir):
    return lambda name: data_dir / "semigroups" / f"{name}.sgp"


def test_hull_left_zero(capsys, sg):
    code, out, _ = run(capsys, "hull", sg("left-zero-2"))
    assert code == 0 and out.splitlines()[0] == "hull: 4 elements (2 inner, 2 outer)"


def test_hull_monoid(capsys, sg):
    code, out, _ = run(capsys, "hull", sg("z2"))
    assert code == 0 and "hull ≅ input monoid (canonical map verified)" in out


def test_hull_json_is_hull_serialization(capsys, sg):
    code, out, _ = run(capsys, "hull", sg("v-semilattice"), "--json")
    rep = json.loads(out)
    assert code == 0 and rep["command"] == "hull"
    assert rep["results"]["counts"] == {"total": 4, "inner": 3, "outer": 1}
    assert len(rep["inputs"]) == 1 and all(len(h) == 64 for h in rep["inputs"].values())


def test_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.sgp"
    bad.write_text("2\n0 1\n1 x\n")
    code, _, err = run(capsys, "hull", bad)
    assert code == 1 and "line 3, column 3" in err
    code, _, err = run(capsys, "hull", tmp_path / "missing.sgp")
    assert code == 1


def test_props(capsys, sg):
    code, out, _ = run(capsys, "props", sg("left-zero-2"))
    assert code == 0
    assert "right non-degenerate: no (witness: (0, 1))" in out
    assert "left non-degenerate: yes" in out
    code, out, _ = run(capsys, "props", sg("null-2"))
    assert "globally idempotent: no (witness: (1,))" in out


def test_extend_identity(capsys, sg, data_dir):
    hom = data_dir / "homs" / "z2-canonical.json"
    code, out, _ = run(capsys, "extend", sg("z2"), sg("z2"), hom)
    assert code == 0 and "extension is the identity" in out


def test_extend_v_semilattice_logs_uniqueness(capsys, sg, data_dir):
    hom = data_dir / "homs" / "v-semilattice-canonical.json"
    code, out, _ = run(capsys, "extend", sg("v-semilattice"), sg("v-semilattice"), hom, "--json")
    rep = json.loads(out)
    assert code == 0 and rep["results"]["solutions_found"] == 1 and rep["results"]["map"] == [0, 1, 2, 3]


def test_extend_inadmissible_exit_2(capsys, sg, data_dir):
    hom = data_dir / "homs" / "left-zero-2-canonical.json"
    code, _, err = run(capsys, "extend", sg("left-zero-2"), sg("left-zero-2"), hom)
    assert code == 2 and "witness: (0, 1)" in err


def test_extend_flat(capsys, sg, data_dir):
    hom = data_dir / "homs" / "chain-3-identity.json"
    code, out, _ = run(capsys, "extend", sg("chain-3"), sg("chain-3"), hom, "--mode", "flat")
    assert code == 0 and "f_flat" in out
    code, _, _ = run(capsys, "extend", sg("chain-3"), sg("left-zero-2"), hom, "--mode", "flat")
    assert code == 2


@pytest.mark.parametrize("name,sub,line", [
    ("gf2-zero-1", "mult", "4 multiplier pairs (1 inner)"),
    ("gf3-zero-1", "concretize", "injective, not surjective: NOT concrete (9 -> 81)"),
    ("gf2-field", "mult", "2 pairs, all inner"),
    ("gf2-zero-1", "concretize", "injective, surjective: concrete (4 -> 4)"),
    ("gf2-zero-2-dual.coalg", "comult", "256 comultiplier pairs (1 inner)"),
])
def test_alg(capsys, data_dir, name, sub, line):
    code, out, _ = run(capsys, "alg", data_dir / "fleet" / f"{name}.alg", sub)
    assert code == 0 and out.splitlines()[0] == line


def test_alg_comult_needs_coalgebra(capsys, data_dir):
    code, _, err = run(capsys, "alg", data_dir / "fleet" / "gf2-field.alg", "comult")
    assert code == 1 and "comul" in err


def test_census_csv(capsys, tmp_path):
    out = tmp_path / "c.csv"
    code, text, _ = run(capsys, "census", "--max-order", "3", "--out", out)
    assert code == 0 and "122 records" in text
    assert len(out.read_text().splitlines()) == 123
    assert run(capsys, "census", "--max-order", "5")[0] == 2


def test_check_paper_empty_fleet(capsys, tmp_path):
    code, _, err = run(capsys, "check-paper", "--scope", "all", "--fleet", tmp_path)
    assert code == 1 and "no inputs" in err


def test_check_paper_linear_and_report_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "check-paper", "--scope", "linear", "--json")
    assert code == 0
    rep = json.loads(out)
    assert all(c["status"] == "pass" for c in rep["checks"])
    path = tmp_path / "rep.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify-report", path, "--rerun")
    assert code == 0 and "all flags reproduced" in out
    # flip one flag: the re-verification disagrees
    rep["checks"][0]["status"] = "fail"
    path.write_text(json.dumps(rep))
    code, out, _ = run(capsys, "verify-report", path, "--rerun")
    assert code == 3


def test_console_script_entry_point(sg):
    r = subprocess.run([sys.executable, "-m", "multhull.cli", "hull", str(sg("z2"))],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("hull: 2 elements")
