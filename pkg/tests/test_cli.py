import json
import subprocess
import sys

import pytest

from cigram.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main

QUINTIC = ["--q", "1,1,1,1,1", "--d", "5"]
K3 = ["--q", "1,1,1,1", "--d", "4"]

CATALOG_TOML = """
[[case]]
name = "quintic"
q = [1, 1, 1, 1, 1]
d = [5]

[[case]]
name = "two-quadrics"
q = [1, 1, 1, 1]
d = [2, 2]
truncation = 4

[[case]]
name = "k3"
q = [1, 1, 1, 1]
d = [4]
"""


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_analyze_quintic_json(capsys):
    code, rep = run_json(capsys, "analyze", *QUINTIC)
    assert code == EXIT_OK
    assert rep["Q_red"] == 4 and rep["invariant_dimension"] == 1
    assert rep["lambda"] == "1/3125"
    assert rep["all_pass"] is True
    assert all(v["result"] == "pass" for v in rep["verdicts"])
    assert [row[0] for row in rep["matrices"]["Xbar"]] == ["0", "5", "-10", "10", "-5"]
    assert rep["exponents"] == [{"rho": "0", "mu": 5, "nu": 1}]


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", *QUINTIC)
    assert code == EXIT_OK
    assert "Q_red=4" in out and out.rstrip().endswith("ALL PASS")


def test_no_floats_in_json(capsys):
    _, out, _ = run(capsys, "analyze", "--q", "1,2", "--d", "3", "--format", "json")

    def walk(x):
        assert not isinstance(x, float)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    walk(json.loads(out))
    assert '"1/2"' in out


def test_invalid_data_exit_code(capsys):
    code, out, err = run(capsys, "analyze", "--q", "1,1,1", "--d", "2")
    assert code == EXIT_INPUT and out == ""
    assert "3" in err and "2" in err


def test_rank_one_empty_variety_is_reported_as_failure(capsys):
    code, rep = run_json(capsys, "analyze", "--q", "1", "--d", "1")
    assert code == EXIT_FAIL
    failed = {v["check"] for v in rep["verdicts"] if v["result"] == "fail"}
    assert "invariant_spanned_by_gram" in failed


@pytest.mark.parametrize("argv", [
    ["analyze"],
    ["analyze", "--q", "1,x", "--d", "2"],
    ["analyze", "--q", "1,1"],
    ["analyze", "--q", "1,1", "--d", "2", "--format", "xml"],
    ["analyze", "--q", "1,1", "--d", "2", "--truncation", "0"],
    ["frobnicate", "--q", "1,1", "--d", "2"],
    [],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_INPUT
    assert "usage" in capsys.readouterr().err


def test_stokes_quintic(capsys):
    code, rep = run_json(capsys, "stokes", *QUINTIC)
    assert code == EXIT_OK
    S = [[int(x) for x in r] for r in rep["S"]]
    assert S[0] == [1, -5, 10, -10, 5]
    assert all(S[i][i] == 1 for i in range(5))
    assert all(S[i][j] == 0 for i in range(5) for j in range(i))


def test_stokes_rank_one(capsys):
    code, rep = run_json(capsys, "stokes", "--q", "1", "--d", "1")
    assert code == EXIT_OK and rep["S"] == [["1"]]


def test_stokes_text(capsys):
    code, out, _ = run(capsys, "stokes", *QUINTIC)
    assert code == EXIT_OK and "S:" in out


def test_invariants_quintic(capsys):
    code, rep = run_json(capsys, "invariants", *QUINTIC)
    assert code == EXIT_OK
    assert rep["dimension"] == 1
    assert rep["gram_over_generator"] == "-5"
    assert len(rep["generator"]) == 5


def test_invariants_k3_symmetric(capsys):
    code, rep = run_json(capsys, "invariants", *K3)
    assert code == EXIT_OK and rep["dimension"] == 1
    g = rep["generator"]
    assert all(g[i][j] == g[j][i] for i in range(4) for j in range(4))


def test_gram(capsys):
    code, rep = run_json(capsys, "gram", *K3)
    assert code == EXIT_OK
    assert rep["Xbar"][0][0] == "2" and rep["rank_Xbar"] == rep["Q_red"] == 3


def test_verify_ode(capsys):
    code, rep = run_json(capsys, "verify-ode", "--q", "1,2", "--d", "3", "--truncation", "5")
    assert code == EXIT_OK
    assert [(f["rho"], f["mu"], f["passed"]) for f in rep["families"]] == [("1/2", 1, True), ("0", 2, True)]
    assert all(f["truncation"] == 5 for f in rep["families"])
    code, out, _ = run(capsys, "verify-ode", *QUINTIC)
    assert "M=12: pass" in out


def test_json_round_trip_and_determinism(capsys):
    _, first, _ = run(capsys, "analyze", *QUINTIC, "--format", "json")
    _, second, _ = run(capsys, "analyze", *QUINTIC, "--format", "json")
    assert first == second
    assert json.dumps(json.loads(first), indent=2) + "\n" == first


def test_case_file(tmp_path, capsys):
    path = tmp_path / "catalog.toml"
    path.write_text(CATALOG_TOML)
    code, reps = run_json(capsys, "analyze", "--case-file", str(path))
    assert code == EXIT_OK
    assert [r["case"]["name"] for r in reps] == ["quintic", "two-quadrics", "k3"]
    assert reps[1]["case"]["truncation"] == 4 and reps[0]["case"]["truncation"] == 12


def test_case_file_parallel_keeps_input_order(tmp_path, capsys):
    path = tmp_path / "catalog.toml"
    path.write_text(CATALOG_TOML)
    _, serial, _ = run(capsys, "analyze", "--case-file", str(path), "--format", "json")
    _, parallel, _ = run(capsys, "analyze", "--case-file", str(path), "--format", "json", "--jobs", "3")
    assert serial == parallel


@pytest.mark.parametrize("content", [
    "",
    "[[case]]\nname = 'x'\nq = [1, 1]\n",
    "[[case]]\nq = [1, 1, 1]\nd = [2]\n",
    "[[case\n",
])
def test_bad_case_files(tmp_path, capsys, content):
    path = tmp_path / "bad.toml"
    path.write_text(content)
    code, out, err = run(capsys, "analyze", "--case-file", str(path))
    assert code == EXIT_INPUT and "input error" in err


def test_missing_case_file(tmp_path, capsys):
    code, _, err = run(capsys, "gram", "--case-file", str(tmp_path / "nope.toml"))
    assert code == EXIT_INPUT


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "gram", *K3, "--format", "json", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert json.loads(target.read_text())["Xbar"][0][0] == "2"


def test_figures(tmp_path, capsys):
    code, _, _ = run(capsys, "analyze", *K3, "--name", "k3 quartic", "--figures", str(tmp_path / "figs"))
    assert code == EXIT_OK
    names = sorted(p.name for p in (tmp_path / "figs").iterdir())
    assert names == ["k3_quartic_matrices.png", "k3_quartic_spectrum.png"]
    assert all((tmp_path / "figs" / n).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n" for n in names)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cigram", "stokes", "--q", "1,1", "--d", "2", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["S"] == [["1", "-2"], ["0", "1"]]
