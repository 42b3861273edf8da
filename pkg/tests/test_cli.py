from __future__ import annotations

import json

import pytest

from partialbyz.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_solvable(capsys):
    code, out, _ = run(["check", "--n", "7", "--m", "1", "--d", "1", "--b", "1"], capsys)
    assert code == 0
    assert "oral:   solvable, rounds b+3 = 4" in out
    assert "signed: solvable, rounds b+2 = 3" in out


def test_check_unsolvable(capsys):
    code, out, _ = run(["check", "--n", "5", "--m", "1", "--d", "1", "--b", "1"], capsys)
    assert code == 0
    assert "oral:   unsolvable" in out


def test_fuzz_clean_and_deterministic_reports(tmp_path, capsys):
    base = ["fuzz", "--n", "7", "--m", "1", "--d", "1", "--b", "1", "--k", "4",
            "--trials", "5", "--seed", "3"]
    code, out, _ = run(base + ["--out", str(tmp_path / "a.json")], capsys)
    assert code == 0 and "0 violations" in out
    code, _, _ = run(base + ["--out", str(tmp_path / "b.json")], capsys)
    assert code == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    report = json.loads((tmp_path / "a.json").read_text())
    assert report["trials_run"] == 5 and report["violations"] == []


def test_fuzz_round_mismatch_is_usage_error(capsys):
    code, _, err = run(
        ["fuzz", "--n", "7", "--m", "1", "--d", "1", "--b", "1", "--k", "3",
         "--trials", "2"],
        capsys,
    )
    assert code == 2 and "k = b + 3" in err


def test_fuzz_violations_persist_and_replay(tmp_path, capsys):
    # the recursive-majority rule alone is unsound at n = 3b: violations
    # must surface, persist, and replay to the same clause
    args = ["fuzz", "--n", "3", "--b", "1", "--k", "2", "--algorithm", "om",
            "--trials", "40", "--seed", "1", "--out", str(tmp_path / "r.json")]
    code, out, _ = run(args, capsys)
    assert code == 1
    report = json.loads((tmp_path / "r.json").read_text())
    assert report["violations"]
    fixture = tmp_path / report["violations"][0]["fixture"]
    assert fixture.exists()
    code, out, _ = run(["replay", "--fixture", str(fixture)], capsys)
    assert code == 1 and "violation reproduced" in out and "matches" in out


def test_witness_pass_and_fixture(tmp_path, capsys):
    code, out, _ = run(
        ["witness", "m-bound", "--n", "5", "--m", "1", "--d", "1", "--b", "1",
         "--out", str(tmp_path / "w.json")],
        capsys,
    )
    assert code == 0
    assert "PASS" in out and "FAIL" not in out
    data = json.loads((tmp_path / "w.json").read_text())
    assert data["kind"] == "m-bound"


def test_witness_alias_and_partition_flag(capsys):
    code, out, _ = run(
        ["witness", "lemma3", "--n", "5", "--m", "1", "--d", "1", "--b", "1",
         "--partition", "G:0;H:1;I:2;J:3;K:4"],
        capsys,
    )
    assert code == 0 and "FAIL" not in out


def test_witness_refusal_inside_solvable_region(capsys):
    code, _, err = run(
        ["witness", "lemma3", "--n", "7", "--m", "1", "--d", "1", "--b", "1"], capsys
    )
    assert code == 2
    assert "no witness exists" in err


def test_witness_signed_and_time_lb(capsys):
    code, out, _ = run(
        ["witness", "signed", "--n", "3", "--m", "1", "--d", "1", "--b", "1"], capsys
    )
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(
        ["witness", "time-lb", "--n", "6", "--m", "1", "--d", "1", "--b", "1",
         "--x", "17"],
        capsys,
    )
    assert code == 0 and "FAIL" not in out


def test_esync_roundtrip(tmp_path, capsys):
    args = ["esync", "--n", "7", "--m", "1", "--d", "1", "--b", "1",
            "--primitive", "rb3", "--tx-value", "1", "--horizon", "10"]
    code, out, _ = run(args + ["--out", str(tmp_path / "rb.json")], capsys)
    assert code == 0
    assert out.count("process") == 7
    report = json.loads((tmp_path / "rb.json").read_text())
    assert all(o["decided"] == "1" for o in report["outcomes"])
    code, _, _ = run(args + ["--out", str(tmp_path / "rb2.json")], capsys)
    assert code == 0
    assert (tmp_path / "rb.json").read_bytes() == (tmp_path / "rb2.json").read_bytes()


def test_sweep_table(tmp_path, capsys):
    code, out, _ = run(
        ["sweep", "--n-max", "5", "--m-max", "1", "--d-max", "1", "--b-max", "1",
         "--out", str(tmp_path / "sweep.json")],
        capsys,
    )
    assert code == 0
    assert "solvable" in out and "unsolvable" in out
    cells = json.loads((tmp_path / "sweep.json").read_text())["cells"]
    frontier = {(c["n"], c["m"], c["d"], c["b"]): c["oral"] for c in cells}
    assert frontier[(4, 0, 0, 1)] is True and frontier[(3, 0, 0, 1)] is False


def test_bench_smoke(capsys):
    code, out, _ = run(
        ["bench", "--n", "6", "--m", "1", "--d", "1", "--b", "1", "--k", "4",
         "--trials", "20"],
        capsys,
    )
    assert code == 0
    assert "ms/trial" in out


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fuzz", "--n", "7"])  # missing required --k
    assert exc.value.code == 2
