"""Command-line interface: exit codes, formats, artifacts."""

import json
import subprocess
import sys

import pytest

from mindist.cli import main

EXTREMAL = "2H 3C 4S 5D 6H 7C 8S 9D 10H JC QS KS KD"
DECLARABLE = "2H 3H 4H 5C 6C 7C 9D 10D JD KH KC KS KD"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_mindist_human(capsys):
    code, out = run(capsys, "mindist", "--hand", EXTREMAL, "--wcj", "AH")
    assert code == 0
    assert "minimum replacements: 7" in out
    assert "kept (6):" in out


def test_mindist_structured(capsys):
    code, out = run(
        capsys, "mindist", "--hand", EXTREMAL, "--wcj", "AH", "--format", "structured"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == 7
    assert len(doc["replacements"]) == 7
    assert len(doc["witness"]) == 3


def test_declarable_exit_codes(capsys):
    code, out = run(capsys, "declarable", "--hand", DECLARABLE, "--wcj", "8D")
    assert code == 0
    assert "declarable" in out
    code, out = run(capsys, "declarable", "--hand", EXTREMAL, "--wcj", "AH")
    assert code == 1


def test_certify_each_bound(capsys):
    for prop, limit in ((1, 9), (2, 8), (3, 7)):
        code, out = run(
            capsys, "certify", "--prop", str(prop), "--hand", EXTREMAL, "--wcj", "AH"
        )
        assert code == 0
        assert f"(limit {limit})" in out
        assert "verification: ok" in out


def test_certify_structured(capsys):
    code, out = run(
        capsys,
        "certify", "--prop", "3",
        "--hand", EXTREMAL, "--wcj", "AH",
        "--format", "structured",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["bound_source"] == "prop3"
    assert doc["claimed_distance"] == 7
    assert doc["verified"] is True
    assert doc["reasons"] == []


def test_verify_lemma1(capsys):
    code, out = run(capsys, "verify", "lemma1")
    assert code == 0
    assert "cases: 715" in out
    assert "result: PASS" in out


def test_verify_3332_linear_model_reports_honestly(capsys):
    code, out = run(capsys, "verify", "3332", "--model", "paper")
    assert code == 1
    assert "cases: 1,108,800" in out
    assert "failures: 144" in out
    assert "result: FAIL" in out
    assert "... and 139 more" in out


def test_verify_extremal(capsys):
    code, out = run(capsys, "verify", "extremal")
    assert code == 0
    assert "result: PASS" in out


def test_sample_with_artifacts(tmp_path, capsys):
    out_dir = tmp_path / "report"
    code, out = run(
        capsys,
        "sample", "--n", "30", "--seed", "5", "--out", str(out_dir),
        "--format", "structured",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["sample_size"] == 30
    assert sum(doc["histogram"].values()) == 30
    assert (out_dir / "histogram.csv").exists()
    assert (out_dir / "histogram.png").exists()


def test_usage_errors_name_the_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["mindist", "--hand", "2H 3H", "--wcj", "AH"])
    assert exc.value.code == 2
    assert "--hand" in capsys.readouterr().err

    with pytest.raises(SystemExit) as exc:
        main(["mindist", "--hand", EXTREMAL, "--wcj", "JK"])
    assert exc.value.code == 2
    assert "--wcj" in capsys.readouterr().err

    with pytest.raises(SystemExit) as exc:
        main(["sample", "--n", "0"])
    assert exc.value.code == 2
    assert "--n" in capsys.readouterr().err

    with pytest.raises(SystemExit) as exc:
        main(["certify", "--prop", "4", "--hand", EXTREMAL, "--wcj", "AH"])
    assert exc.value.code == 2


def test_installed_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mindist.cli", "verify", "lemma1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "result: PASS" in proc.stdout
