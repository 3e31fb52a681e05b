import json
import subprocess
import sys
from pathlib import Path

import pytest

from fieldinv.cli import main, parse_range

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["compute", "17:8,10,11", "--json"], "compute_17_8_10_11.json"),
        (["compute", "4x4:(1,0),(0,1)", "--json"], "compute_4x4.json"),
        (["hilbert", "13", "1", "3", "--check", "--json"], "hilbert_13_1_3.json"),
        (["classes", "7", "3", "--json"], "classes_7_3.json"),
        (["bounds", "13:1,3", "--json"], "bounds_13_1_3.json"),
        (["survey", "7", "3", "--json", "--workers", "1"], "survey_7_3.json"),
    ],
)
def test_golden(capsys, argv, golden):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_compute_text(capsys):
    code, out, _ = run(capsys, "compute", "17:8,10,11")
    assert code == 0
    assert out.splitlines()[0] == "gamma=5 beta=6"
    assert "witnesses_beta: (3,1,0) (0,4,1) (1,1,3) (5,0,1)" in out


def test_compute_json_values(capsys):
    _, out, _ = run(capsys, "compute", "17:8,10,11", "--json")
    data = json.loads(out)
    assert (data["gamma"], data["beta"], data["index"]) == (5, 6, 17)
    for w in data["witnesses_beta"]:
        assert (8 * w[0] + 10 * w[1] + 11 * w[2]) % 17 == 0
    assert [t["degree"] for t in data["trace"]] == list(range(1, 7))


def test_compute_trace(capsys):
    _, out, _ = run(capsys, "compute", "13:1,3", "--trace")
    assert "d=5 new_points=1 rank=1 index_in_L=-" in out
    assert "d=7 new_points=1 rank=2 index_in_L=1" in out


def test_compute_max_degree(capsys):
    code, out, _ = run(capsys, "compute", "17:8,10,11", "--max-degree", "5", "--json")
    data = json.loads(out)
    assert code == 0 and data["status"] == "bound not reached"
    assert data["gamma"] == 5 and data["beta"] is None
    _, out, _ = run(capsys, "compute", "17:8,10,11", "--max-degree", "5")
    assert "gamma=5 beta=?" in out and "bound not reached" in out


def test_hilbert_text(capsys):
    code, out, _ = run(capsys, "hilbert", "13", "1", "3")
    assert code == 0
    assert out.strip() == "(1 + t^5 + t^7 + t^9 + t^10 + t^11 + t^12 + t^14 + t^15 + t^16 + t^17 + t^19 + t^21)/(1-t^13)^2"


def test_table_text(capsys):
    code, out, _ = run(capsys, "table", "--primes", "3..7", "--m", "1..6", "--workers", "1")
    assert code == 0
    rows = [line.split() for line in out.splitlines()]
    assert rows[-1] == ["p=7", "7", "7", "4", "4", "3", "3"]


def test_table_scan(capsys):
    _, out, _ = run(capsys, "table", "--primes", "5,7", "--m", "1..4", "--scan", "--json", "--workers", "1")
    data = json.loads(out)
    assert {e["status"] for e in data["scan"]} == {"HOLDS"}
    assert len(data["scan"]) == 8


def test_survey_files(capsys, tmp_path):
    out, csvf = tmp_path / "r.jsonl", tmp_path / "r.csv"
    code, text, _ = run(capsys, "survey", "11", "3", "--out", str(out), "--csv", str(csvf), "--workers", "1")
    assert code == 0 and "max_beta=6" in text
    lines = out.read_text().splitlines()
    assert len(lines) == len(csvf.read_text().splitlines()) - 1
    assert json.loads(lines[0])["class"] == [1, 2, 3]
    before = out.read_bytes()
    code, _, _ = run(capsys, "survey", "11", "3", "--resume", str(out), "--workers", "1")
    assert code == 0 and out.read_bytes() == before


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--n-max", "7", "--m-max", "3", "--workers", "1")
    assert code == 0 and out.strip() == "no violations"


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "7:0"],
        ["compute", "nonsense"],
        ["hilbert", "9", "1", "2"],
        ["classes", "5", "7"],
        ["survey", "5", "0"],
        ["bogus"],
        [],
        ["compute", "17:1", "--max-degree", "x"],
        ["survey", "7", "2", "--workers", "0"],
        ["table", "--primes", "4,6"],
    ],
)
def test_bad_input_exits_1(capsys, argv):
    code = None
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    _, err = capsys.readouterr()
    assert code == 1 and err


def test_internal_violation_exits_2(capsys, monkeypatch):
    from fieldinv import degree

    class Empty:
        def points(self, d):
            return []

    monkeypatch.setattr(degree, "_walker", lambda L: Empty())
    code, _, err = run(capsys, "compute", "5:1,2")
    assert code == 2 and "internal error" in err


def test_bit_identical_runs(capsys):
    outs = [run(capsys, "survey", "13", "4", "--json", "--workers", w)[1] for w in ("1", "2", "1")]
    assert outs[0] == outs[1] == outs[2]


def test_verbose_goes_to_stderr(capsys):
    quiet = run(capsys, "compute", "13:1,3")[1]
    code, out, _ = run(capsys, "compute", "13:1,3", "--verbose")
    assert code == 0 and out == quiet


def test_parse_range():
    assert parse_range("3..7,11") == [3, 4, 5, 6, 7, 11]
    assert parse_range("5") == [5]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fieldinv", "compute", "13:1,3"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("gamma=7 beta=7")
