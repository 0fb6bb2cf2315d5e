import json

import pytest

from picod.cli import main
from picod.core import IndexCode
from picod.sweep import HEADER


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_constrained(capsys):
    code, out, _ = run(capsys, "construct", "--p", "9", "--k", "4", "--case", "constrained", "--c", "4", "--i", "0")
    assert code == 0
    assert json.loads(out)["symbols"] == [[0, 4], [3, 8]]


@pytest.mark.parametrize(
    "argv, status",
    [
        (["construct", "--p", "5", "--k", "1", "--case", "exactly-one"], 2),
        (["construct", "--p", "8", "--k", "4", "--case", "exactly-one"], 3),
        (["construct", "--p", "8", "--k", "4", "--case", "case2"], 1),
        (["construct", "--p", "8", "--k", "9"], 1),
        (["construct", "--p", "8", "--k", "3", "--case", "case1", "--j", "5"], 1),
        (["construct", "--p", "8"], 1),
        (["bogus"], 1),
        (["oracle", "min-length", "--p", "15", "--k", "3"], 5),
    ],
)
def test_exit_statuses(capsys, argv, status):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == status


def test_verify_exactly_one_on_case1(capsys, tmp_path):
    _, out, _ = run(capsys, "construct", "--p", "7", "--k", "3", "--case", "case1")
    f = tmp_path / "code.json"
    f.write_text(out)
    code, out, _ = run(capsys, "verify", str(f), "--claim", "exactly_one")
    assert code == 0
    assert json.loads(out)["holds"] is True


def test_verify_c_constraint_failure(capsys, tmp_path):
    f = tmp_path / "code.json"
    f.write_text(json.dumps({"p": 9, "k": 4, "symbols": [[0, 4], [3, 8]]}))
    code, out, _ = run(capsys, "verify", str(f), "--claim", "c_constraint", "--c", "3")
    assert code == 4
    assert json.loads(out)["holds"] is False


def test_verify_parse_error(capsys, tmp_path):
    f = tmp_path / "code.json"
    f.write_text(json.dumps({"p": 9, "k": 4, "symbols": []}))
    assert run(capsys, "verify", str(f), "--claim", "coverage")[0] == 1
    f.write_text("{not json")
    assert run(capsys, "verify", str(f))[0] == 1
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 1


def test_verify_reads_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO('{"p": 6, "k": 3, "symbols": [[0, 3]]}'))
    assert run(capsys, "verify", "-", "--claim", "coverage", "--semantics", "per-symbol")[0] == 0


@pytest.mark.parametrize(
    "argv, result",
    [
        (["oracle", "min-length", "--p", "7", "--k", "4"], 2),
        (["oracle", "exactly-one", "--p", "5", "--k", "3"], "infeasible"),
        (["oracle", "max-total", "--p", "10", "--k", "6", "--L", "2"], 20),
    ],
)
def test_oracle_commands(capsys, argv, result):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    got = json.loads(out)["result"]
    assert got == result if result == "infeasible" else got["value"] == result


def test_sweep_empty_case_list(capsys):
    code, out, _ = run(capsys, "sweep", "--p", "6..8", "--case", "")
    assert code == 0
    assert out == ",".join(HEADER) + "\n"


def test_sweep_exactly_one_rows(capsys):
    code, out, _ = run(capsys, "sweep", "--p", "6..12", "--case", "exactly-one,case1")
    lines = out.splitlines()
    assert lines[0] == ",".join(HEADER)
    rows = [dict(zip(HEADER, r.split(","))) for r in lines[1:]]
    assert rows and all(r["exactly_one"] == "true" for r in rows)
    keys = [(int(r["p"]), int(r["k"])) for r in rows]
    assert keys == sorted(keys)
    for r in rows:
        if r["case"] == "case1":
            p, k = int(r["p"]), int(r["k"])
            assert int(r["len"]) == -(-(p - k - 1) // (k - 1))
            assert r["discrepancies"] == "0"


def test_sweep_writes_files(capsys, tmp_path):
    out = tmp_path / "s.csv"
    fnd = tmp_path / "f.json"
    argv = ["sweep", "--p", "6..9", "--case", "constrained,max", "--c", "all",
            "--semantics", "fixed_point,linear_closure", "--out", str(out), "--findings", str(fnd)]
    assert run(capsys, *argv)[0] == 0
    first = out.read_bytes()
    assert run(capsys, *argv)[0] == 0
    assert out.read_bytes() == first
    assert isinstance(json.loads(fnd.read_text()), list)


def test_sweep_unknown_case(capsys):
    assert run(capsys, "sweep", "--p", "6", "--case", "case9")[0] == 1


@pytest.mark.parametrize(
    "case, extra",
    [("case1", []), ("case2", []), ("case3", []), ("max", []), ("constrained", ["--c", "3"]),
     ("single-q0", [])],
)
def test_round_trip_reproduces_outcome(capsys, tmp_path, case, extra):
    pk = {"case1": ("11", "4"), "case2": ("9", "5"), "case3": ("8", "5"), "max": ("11", "6"),
          "constrained": ("12", "3"), "single-q0": ("9", "6")}[case]
    code, out, _ = run(capsys, "construct", "--p", pk[0], "--k", pk[1], "--case", case, "--i", "2", *extra)
    assert code == 0
    f = tmp_path / "c.json"
    f.write_text(out)
    claim = "c_constraint" if case == "constrained" else "coverage"
    first = run(capsys, "verify", str(f), "--claim", claim)
    f.write_text(IndexCode.from_json(out).to_json())
    second = run(capsys, "verify", str(f), "--claim", claim)
    assert first == second
    assert first[0] == 0
