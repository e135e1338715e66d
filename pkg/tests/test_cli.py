import csv
import io
import json

import pytest

from typecount.cli import EXIT_BUDGET, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_census_companion(capsys):
    code, out, _ = run(capsys, "census", "--model", "unram", "--q", "2", "--n", "2", "--k", "2",
                       "--matrix", "0,1,1,1")
    assert code == 0
    assert out.splitlines()[1].split(",")[4] == "2"


def test_census_grid_and_routes(capsys):
    _, brute, _ = run(capsys, "census", "--q", "3", "--k", "1-2", "--matrix", "1,0:1,1:1,1:1")
    _, formula, _ = run(capsys, "census", "--q", "3", "--k", "1-2", "--matrix", "1,0:1,1:1,1:1",
                        "--route", "formula")
    counts = lambda text: [line.split(",")[4] for line in text.splitlines()[1:]]
    assert counts(brute) == counts(formula) and len(counts(brute)) == 2


def test_green_table_shape(capsys):
    code, out, _ = run(capsys, "green", "--q", "3", "--n", "2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 1 + 8
    assert len(lines[0].split("\t")) == 4 + 2 * 3


def test_pairing_and_bound(capsys):
    _, out, _ = run(capsys, "pairing", "--q", "2", "--n", "2,3", "--m", "2")
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert [r[5] for r in rows] == ["2", "6"] and all(r[6] == r[7] == "True" for r in rows)
    _, out, _ = run(capsys, "bound", "--q", "2", "--n", "2", "--m", "2", "--matrix", "0,1,1,1")
    row = next(csv.DictReader(io.StringIO(out)))
    assert row["matrix"] == "0,1,1,1" and row["bound"] == "2"


def test_weyl_outputs(capsys):
    _, out, _ = run(capsys, "weyl", "--weight", "1,1,-1", "--angles", "0,0,1/2")
    assert out.splitlines()[1] == "1 1 -1,6,-2,2"
    _, out, _ = run(capsys, "weyl", "--n", "2", "--poly")
    assert out.splitlines()[1:] == ["1 0,1", "0 1,-1", "0 0,1"]


def test_global(capsys, tmp_path):
    cfg = {"n": 2, "mu_E": 2, "masses": [2], "C_2": 3,
           "P_v": [{"place": 0, "coeffs": [[[0, 0], 1]]}], "places": [{"q": 3}]}
    path = tmp_path / "g.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "global", "--config", str(path), "--box", "8")
    lines = out.splitlines()
    assert code == 0 and lines[1] == "c1,,,,1" and lines[-1] == "certified,,,,True"
    assert sum(line.startswith("exceptional") for line in lines) == 6


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "census", "--q", "3", "--n", "3", "--k", "4", "--matrix",
                       "0,1,0,0,0,1,1,0,0", "--budget", "1e3")
    assert code == EXIT_BUDGET and "budget" in err


def test_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("TYPECOUNT_BUDGET", "10")
    code, _, _ = run(capsys, "census", "--q", "3", "--k", "2", "--matrix", "0,1,1,1")
    assert code == EXIT_BUDGET


def test_invalid_flags():
    with pytest.raises(SystemExit) as e:
        main(["census", "--bogus"])
    assert e.value.code == 2
    with pytest.raises(SystemExit):
        main(["nosuch"])


def test_bad_matrix_usage_error(capsys):
    code, _, err = run(capsys, "census", "--matrix", "1,2,3")
    assert code == 2 and "error" in err


def test_output_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["census", "--q", "3", "--k", "2", "--matrix", "1,0:1,1:1,1:1"]
    main(args + ["--out", str(a)])
    main(args + ["--out", str(b), "--workers", "2"])
    assert a.read_bytes() == b.read_bytes()
    main(["green", "--q", "4", "--n", "2", "--out", str(a)])
    main(["green", "--q", "4", "--n", "2", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "weyl-schur")
    assert code == 0 and out.startswith("[PASS]  7 weyl-schur")
