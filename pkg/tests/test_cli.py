import csv
import io
import json

import pytest

from holey.cli import main
from holey.matchgen import enumerate_near_perfect
from holey.grid import Cell, GridSpec


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_all_holes_csv(capsys):
    code, out, _ = run(capsys, "count", "--rows", "3", "--cols", "3", "--all-holes", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["row", "col", "count", "v2", "odd_part"]
    assert len(rows) == 7
    assert rows[-1] == ["total", "", "18", "1", "9"]


def test_count_single(capsys):
    assert run(capsys, "count", "--rows", "3", "--cols", "3", "--hole", "2,2")[:2] == (0, "2\n")
    assert run(capsys, "count", "--rows", "2", "--cols", "2")[:2] == (0, "2\n")


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--rows", "5", "--cols", "5", "--all-holes", "--format", "json")
    obj = json.loads(out)
    assert obj["total"]["count"] == 2180 and obj["total"]["v2"] == "2"
    assert len(obj["counts"]) == 13


@pytest.mark.parametrize(
    "argv",
    [
        ("count", "--rows", "0", "--cols", "3"),
        ("count", "--rows", "3", "--cols", "3", "--hole", "9,9"),
        ("count", "--rows", "3", "--cols", "3", "--hole", "1,1", "--all-holes"),
        ("count", "--rows", "3", "--cols", "3"),
        ("certificate", "--rows", "5", "--cols", "5", "--mode", "a"),
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count"])
    assert exc.value.code == 2


def test_profile_guard_message(capsys, monkeypatch):
    monkeypatch.setenv("HOLEY_MAX_PROFILE", "3")
    code, _, err = run(capsys, "count", "--rows", "5", "--cols", "5", "--hole", "1,1")
    assert code == 2 and "profile_dp" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "holey-twos", "--k-max", "3")
    assert code == 0 and "pass" in out
    code, out, _ = run(capsys, "verify", "--claim", "rectangle-parity", "--r-max", "7", "--c-max", "7")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--claim", "kong-mod8", "--k-max", "4", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "report-only"


def test_verify_failure_exit_code(capsys, monkeypatch):
    import holey.theorems as th

    monkeypatch.setattr(th, "count_with_hole", lambda spec, h: 3)
    code, out, _ = run(capsys, "verify", "--claim", "tenner", "--k-max", "2")
    assert code == 1 and "counter-instance" in out


def test_certificate(capsys):
    code, out, _ = run(capsys, "certificate", "--rows", "3", "--cols", "3", "--mode", "a")
    assert code == 0
    assert out.splitlines() == ["1,2", "2,1", "2,3", "3,2", "verified"]
    code, out, _ = run(capsys, "certificate", "--rows", "5", "--cols", "17", "--mode", "b", "--f", "3")
    assert code == 0 and len(out.splitlines()) == 25
    code, out, _ = run(capsys, "certificate", "--rows", "1", "--cols", "5", "--mode", "search", "--hole", "1,1")
    assert code == 1 and out == "none\n"
    code, out, _ = run(capsys, "certificate", "--rows", "3", "--cols", "3", "--mode", "search", "--hole", "1,1")
    assert code == 0 and out.splitlines()[-1] == "verified"


def test_web_single(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("hole: 1,1\n1,2-1,3\n1,4-1,5\n", encoding="utf-8")
    code, out, _ = run(capsys, "web", "--rows", "1", "--cols", "5", "--input", str(path))
    assert code == 0 and out == "1,3->1,1\n1,5->1,3\n"


def test_web_cycle_annotation(capsys, tmp_path):
    spec = GridSpec(3, 3)
    m = next(enumerate_near_perfect(spec, Cell(2, 2)))
    path = tmp_path / "m.json"
    path.write_text(json.dumps(m.to_json()), encoding="utf-8")
    code, out, _ = run(capsys, "web", "--rows", "3", "--cols", "3", "--input", str(path))
    assert code == 0
    assert out.splitlines()[-1] == "cycle: 1,1 1,3 3,3 3,1 encloses_hole=yes" or \
        out.splitlines()[-1] == "cycle: 1,1 3,1 3,3 1,3 encloses_hole=yes"


def test_web_rejects_invalid_matching(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("hole: 1,1\n1,2-1,3\n", encoding="utf-8")
    assert run(capsys, "web", "--rows", "1", "--cols", "5", "--input", str(path))[0] == 2


def test_web_enumerate(capsys):
    code, out, _ = run(capsys, "web", "--rows", "3", "--cols", "3", "--hole", "2,2", "--enumerate")
    assert code == 0
    assert "matchings: 2" in out and "pairs: 1" in out and "trees: 0" in out
    code, out, _ = run(capsys, "web", "--rows", "3", "--cols", "3", "--hole", "1,1", "--enumerate",
                       "--format", "json")
    obj = json.loads(out)
    assert obj["matchings"] == 4 and obj["pairs"] == 0 and obj["trees"] == 4 and obj["round_trip"]


def test_scan_mod4(capsys):
    code, out, err = run(capsys, "scan-mod4", "--rows", "3", "--cols", "3")
    assert code == 0
    assert out.splitlines()[0] == "row,col,count,mod4,class"
    assert "exemption" in err
    code, out, _ = run(capsys, "scan-mod4", "--r-max", "5", "--c-max", "5")
    assert out.splitlines()[0] == "rows,cols,row,col,count,mod4,class"


def test_scan_parity(capsys):
    code, out, _ = run(capsys, "scan-parity", "--r-max", "5", "--c-max", "5")
    assert code == 0
    assert "3,5,15,True,True" in out.splitlines()


def test_sequence(capsys):
    code, out, _ = run(capsys, "sequence", "--k-max", "2")
    assert code == 0
    assert out.splitlines() == ["k,n,a,v2,c_k,c_k_mod8", "0,1,1,0,1,1", "1,3,18,1,9,1", "2,5,2180,2,545,1"]
