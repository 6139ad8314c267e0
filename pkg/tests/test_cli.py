import json
import subprocess
import sys

import pytest

from hermgenus.cli import load_generator_file, main
from hermgenus.errors import InputFormatError, NotUnitaryError


def run(*args, check=False):
    p = subprocess.run([sys.executable, "-m", "hermgenus", *args], capture_output=True, text=True)
    if check:
        assert p.returncode == 0, p.stderr
    return p


def _write(tmp_path, obj, name="g.json"):
    f = tmp_path / name
    f.write_text(json.dumps(obj))
    return str(f)


IOTA = [[4, 0], 0, 0, 0, [4, 0], 0, 0, 0, 1]


def test_genus_iota(tmp_path):
    f = _write(tmp_path, {"p": 5, "n": 1, "model": "M1", "generators": [IOTA]})
    out = json.loads(run("genus", f, check=True).stdout)
    assert (out["groupSize"], out["delta"], out["genus"]) == (2, 6, 4)
    assert out["census"] == {"A": 1}


def test_genus_nested_rows(tmp_path):
    nested = [IOTA[0:3], IOTA[3:6], IOTA[6:9]]
    f = _write(tmp_path, {"p": 5, "generators": [nested]})
    assert json.loads(run("genus", f, check=True).stdout)["genus"] == 4


def test_genus_empty(tmp_path):
    f = _write(tmp_path, {"p": 5, "n": 1, "generators": []})
    out = json.loads(run("genus", f, check=True).stdout)
    assert (out["groupSize"], out["genus"]) == (1, 10)


def test_mq_round_trip(tmp_path):
    out = tmp_path / "mq.json"
    run("enumerate", "--target", "mq", "--out", str(out), check=True)
    data = json.loads(out.read_text())
    assert data["order"] == 720
    res = json.loads(run("genus", str(out), check=True).stdout)
    assert (res["groupSize"], res["genus"]) == (720, 0)


def test_named_round_trip(tmp_path):
    out = tmp_path / "n.json"
    run("enumerate", "--target", "named", "--family", "cyclic_double", "--param", "d=4",
        "--model", "m2", "--out", str(out), check=True)
    data = json.loads(out.read_text())
    res = json.loads(run("genus", str(out), check=True).stdout)
    assert data["order"] == res["groupSize"] == 8 and res["genus"] == 1


def test_not_unitary(tmp_path):
    f = _write(tmp_path, {"p": 5, "generators": [IOTA, [[0, 1], 0, 0, 0, 1, 0, 0, 0, 1]]})
    p = run("genus", f)
    assert p.returncode == 2
    err = json.loads(p.stderr)
    assert err["index"] == 1


@pytest.mark.parametrize("obj,fragment", [
    ({"generators": []}, "'p'"),
    ({"p": 5, "generators": {}}, "list"),
    ({"p": 5, "generators": [[1, 2, 3]]}, "9 entries"),
    ([1, 2], "object"),
])
def test_bad_generator_files(tmp_path, obj, fragment):
    with pytest.raises(InputFormatError, match=fragment):
        load_generator_file(_write(tmp_path, obj))


def test_bad_json(tmp_path):
    f = tmp_path / "x.json"
    f.write_text("{nope")
    with pytest.raises(InputFormatError):
        load_generator_file(str(f))
    with pytest.raises(InputFormatError):
        load_generator_file(str(tmp_path / "missing.json"))


def test_non_unitary_direct(tmp_path):
    f = _write(tmp_path, {"p": 5, "generators": [[[0, 1], 0, 0, 0, 1, 0, 0, 0, 1]]})
    with pytest.raises(NotUnitaryError):
        load_generator_file(f)


def test_classify_command(tmp_path):
    f = _write(tmp_path, {"p": 5, "generators": [IOTA]})
    out = json.loads(run("classify", f, check=True).stdout)
    el = out["elements"][0]
    assert (el["type"], el["order"], el["iSigma"]) == ("A", 2, 6)
    assert out["field"]["q"] == 5


def test_spectrum_csv():
    out = run("spectrum", "--p", "5", "--n", "1", "--format", "csv", check=True).stdout
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert max(int(r[1]) for r in rows) == 10


def test_spectrum_singer():
    out = json.loads(run("spectrum", "--families", "singer", check=True).stdout)
    assert sorted({r["genus"] for r in out}) == [0, 1, 3, 4, 10]


def test_spectrum_text_and_out(tmp_path, capsys):
    target = tmp_path / "s.txt"
    assert main(["spectrum", "--format", "text", "--out", str(target)]) == 0
    assert target.read_text().startswith("q = 5")


@pytest.mark.parametrize("args", [
    ("spectrum", "--p", "3", "--n", "1"),
    ("verify", "--p", "7", "--n", "1"),
    ("verify", "--p", "13"),
    ("verify", "--p", "3", "--n", "2"),
    ("spectrum", "--families", "bogus"),
    ("enumerate", "--target", "named"),
])
def test_refusals(args):
    p = run(*args)
    assert p.returncode == 2
    assert "error" in json.loads(p.stderr)


def test_no_strict_allows_q7():
    out = json.loads(run("spectrum", "--p", "7", "--no-strict", check=True).stdout)
    assert out and all(r["q"] == 7 for r in out)


def test_enumerate_pgu_cap():
    p = run("enumerate", "--target", "pgu", "--cap-group", "1000")
    assert p.returncode == 2


def test_enumerate_curve_points():
    out = json.loads(run("enumerate", "--target", "curve-points", check=True).stdout)
    assert out["count"] == 126


def test_enumerate_lattice_csv():
    out = run("enumerate", "--target", "lattice", "--format", "csv", check=True).stdout.splitlines()
    assert out[0] == "order,classSize,delta,genus"
    assert len(out) == 57


def test_verify_single_check():
    p = run("verify", "--check", "structure", "--check", "determinism", "--format", "text")
    assert p.returncode == 0
    assert "structure" in p.stdout and "True" in p.stdout


def test_verify_unknown_check():
    assert run("verify", "--check", "nope").returncode == 2


def test_threads_do_not_change_output():
    a = run("spectrum", "--p", "5", "--n", "1", "--format", "json", "--threads", "1", check=True).stdout
    b = run("spectrum", "--p", "5", "--n", "1", "--format", "json", "--threads", "8", check=True).stdout
    assert a == b
