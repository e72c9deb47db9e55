import io
import json
import subprocess
import sys

import pytest

from qsymp.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_REFUSED, EXIT_USAGE, dominant_tuples, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_sp2_smallest():
    code, out, _ = call("sp2", "--m", "1", "--sigma", "+1")
    assert code == EXIT_OK
    assert "dim 1" in out and "(1,1) q\n" in out


def test_sp2_json(tmp_path):
    path = tmp_path / "m.json"
    code, out, _ = call("sp2", "--m", "3", "--sigma", "-1", "--json", "--out", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["dim"] == 3
    assert json.loads(path.read_text())["dim"] == 3


def test_dims_table():
    code, out, _ = call("dims", "--n", "2", "--max-m", "2")
    assert code == EXIT_OK
    for line in ("(1, 1) -> 1", "(1, 2) -> 4", "(2, 2) -> 5"):
        assert line in out
    code, out, _ = call("dims", "--n", "2", "--max-m", "2", "--json")
    rows = {tuple(r["m"]): r["dim"] for r in json.loads(out)["rows"]}
    assert rows == {(1, 1): 1, (1, 2): 4, (2, 2): 5}


def test_dominant_tuples():
    assert dominant_tuples(2, 2) == [(1, 1), (1, 2), (2, 2)]


def test_build_and_verify(tmp_path):
    path = tmp_path / "L.json"
    code, out, _ = call("build-l", "--m", "1,2", "--signs", "+,+", "--out", str(path))
    assert code == EXIT_OK and "dim 4" in out
    code, out, _ = call("verify", "--module", str(path))
    assert code == EXIT_OK and "PASS" in out and "seed=1" in out


def test_verify_corrupted(tmp_path):
    path = tmp_path / "L.json"
    call("sp2", "--m", "2", "--out", str(path))
    data = json.loads(path.read_text())
    data["matrices"]["s[1,2]"]["entries"][0][2] = {"num": [[0, "5"]], "den": [[0, "1"]]}
    path.write_text(json.dumps(data))
    code, out, _ = call("verify", "--module", str(path))
    assert code == EXIT_CHECK_FAILED
    assert "FAIL" in out and "qdetrel" in out


def test_refusal_exit_code():
    code, _, err = call("build-l", "--m", "2,1")
    assert code == EXIT_REFUSED
    assert "m_1 <= m_2" in err


@pytest.mark.parametrize("argv", [
    ["nonsense"],
    ["sp2", "--m", "2", "--bogus"],
    ["sp2", "--m", "0"],
    ["build-l", "--m", "1,x"],
    ["build-l", "--m", "1,2", "--signs", "+"],
    ["normalize", "--algebra", "sp", "--n", "1", "--expr", "s[1,"],
    ["verify", "--module", "/nonexistent/file.json"],
])
def test_usage_errors(argv):
    code, _, _ = call(*argv)
    assert code == EXIT_USAGE


def test_normalize():
    code, out, _ = call("normalize", "--algebra", "sp", "--n", "1",
                        "--expr", "s[2,2]*s[1,1] - q^2*s[2,1]*s[1,2]")
    assert code == EXIT_OK and out.strip().endswith("1\tq^3")
    code, out, _ = call("normalize", "--algebra", "gl", "--n", "2", "--expr", "t[1,1]*tb[1,1]",
                        "--json")
    assert json.loads(out)["terms"] == [["1", {"den": [[0, "1/1"]], "num": [[0, "1/1"]]}]]


def test_rmatrix_and_gt(tmp_path):
    code, out, _ = call("rmatrix", "--n", "2", "--prime")
    assert code == EXIT_OK and "(4,1) q - q^-1" in out
    code, out, _ = call("gt", "--nu", "1,0", "--gen", "t[2,1]")
    assert code == EXIT_OK and "dim 2" in out


def test_verma():
    code, out, _ = call("verma", "--m", "2,3", "--degree", "1", "--json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert sum(c for _, c in data["multiplicities"]) == 5


def test_output_is_deterministic():
    a = call("dims", "--n", "2", "--max-m", "2")
    b = call("dims", "--n", "2", "--max-m", "2")
    assert a == b


def test_selftest():
    code, out, _ = call("selftest", "--words", "30")
    assert code == EXIT_OK
    assert "FAIL" not in out and "seed=1" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qsymp.cli", "sp2", "--m", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "dim 2" in proc.stdout
