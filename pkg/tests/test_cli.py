"""End-to-end CLI behavior through main()."""

import json

import pytest

from endoscopylab import cli
from endoscopylab.selftest import CheckResult

SHAPE_21 = '{"summands": [{"label": "c1", "n": 1, "m": 2}, {"label": "c2", "n": 1, "m": 1}]}'
SHAPE_11 = '{"summands": [{"label": "c1", "n": 1, "m": 1}, {"label": "c2", "n": 1, "m": 1}]}'


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_no_arguments_is_usage_error(capsys):
    code, _, err = run(capsys)
    assert code == 2
    assert "usage" in err


def test_unknown_command_is_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_packet_example(capsys):
    code, out, _ = run(capsys, "packet", "--a", "1", "--b", "1", "--P", "2")
    assert code == 0
    assert "1 members" in out
    assert "(1,1)" in out
    assert "1 + t^2" in out


def test_packet_json_agrees_with_table(capsys):
    code, out, _ = run(
        capsys, "packet", "--a", "1", "--b", "1", "--P", "2", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["size"] == 1
    member = data["members"][0]
    assert member["pairs"] == [[1, 1]]
    assert member["R"] == 0
    assert member["poincare"] == [1, 0, 1]


def test_derive_json(capsys):
    code, out, _ = run(capsys, "derive", "--N", "5", "--a", "1", "--k", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["final"] == 5
    assert data["chain_exponents"][0]["terminal"] == "U(4)xU(1)"


def test_derive_table_names_final(capsys):
    code, out, _ = run(capsys, "derive", "--N", "7", "--a", "3", "--k", "2")
    assert code == 0
    assert "final exponent: 21" in out
    assert "U(4)xU(2)xU(1)" in out


def test_derive_bad_range(capsys):
    code, _, err = run(capsys, "derive", "--N", "5", "--a", "1", "--k", "9")
    assert code == 2
    assert "error" in err


def test_sx_csv(capsys):
    code, out, _ = run(capsys, "sx", "--N", "5", "--k", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N,k,theorem_exponent,sx_exponent,holds"
    assert lines[1] == "5,2,5,6,True"


def test_endoscopy_table(capsys):
    code, out, _ = run(capsys, "endoscopy", "--N", "5")
    assert code == 0
    assert "U(4)xU(1)" in out
    assert "iota=1/2" in out


def test_endoscopy_with_shape_marks_s_psi(capsys):
    code, out, _ = run(capsys, "endoscopy", "--N", "3", "--shape", SHAPE_21)
    assert code == 0
    assert "s_psi = +-" in out
    assert "<-- s_psi" in out


def test_endoscopy_shape_rank_mismatch(capsys):
    code, _, err = run(capsys, "endoscopy", "--N", "4", "--shape", SHAPE_21)
    assert code == 2
    assert "N=3" in err


def test_chains_json(capsys):
    code, out, _ = run(capsys, "chains", "--shape", SHAPE_11, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["chains"]) == 2
    coeffs = {term["group"]: term["coefficient"] for term in data["expansion"]}
    assert coeffs == {"U(2)": 1, "U(1)^2": "-1/4"}


def test_chains_dominant(capsys):
    code, out, _ = run(capsys, "chains", "--shape", SHAPE_21, "--dominant")
    assert code == 0
    assert "dominant group U(2)xU(1)" in out
    assert "1/2" in out


def test_chains_guard_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("ENDOSCOPYLAB_GUARD", "3")
    shape = json.dumps(
        {"summands": [{"label": f"c{i}", "n": 1, "m": 1} for i in range(1, 4)]}
    )
    code, _, err = run(capsys, "chains", "--shape", shape)
    assert code == 1
    assert "cap" in err


def test_shape_file_argument(tmp_path, capsys):
    path = tmp_path / "shape.json"
    path.write_text(SHAPE_21)
    code, out, _ = run(capsys, "chains", "--shape", str(path), "--dominant")
    assert code == 0
    assert "U(2)xU(1)" in out


def test_missing_shape_file(capsys):
    code, _, err = run(capsys, "chains", "--shape", "nowhere.json")
    assert code == 2
    assert "cannot read" in err


def test_poincare_json(capsys):
    code, out, _ = run(
        capsys, "poincare", "--bipartition", "[[1,1],[1,0]]", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["R"] == 1
    assert data["poincare"] == [0, 1, 0, 1]
    assert data["palindromic"] is True


def test_decay_table(capsys):
    code, out, _ = run(capsys, "decay", "--bipartition", "[[2,2],[1,0]]")
    assert code == 0
    assert "N_k = 4" in out
    assert "3/4" in out
    assert "p bound: 8" in out


def test_decay_unbounded(capsys):
    code, out, _ = run(capsys, "decay", "--bipartition", "[[2,3]]")
    assert code == 0
    assert "unbounded" in out


def test_decay_rejects_two_mixed_pairs(capsys):
    code, _, err = run(capsys, "decay", "--bipartition", "[[1,1],[1,1]]")
    assert code == 2
    assert "mixed pair" in err


def test_dominance_runs_clean(capsys):
    code, out, _ = run(
        capsys,
        "dominance",
        "--shape",
        SHAPE_21,
        "--trials",
        "25",
        "--seed",
        "7",
    )
    assert code == 0
    assert "violations: 0" in out
    assert "holds: yes" in out


def test_dominance_rejects_nonpositive_trials(capsys):
    code, _, err = run(capsys, "dominance", "--shape", SHAPE_21, "--trials", "0")
    assert code == 2
    assert "--trials" in err


def test_selftest_reports_lines(capsys, monkeypatch):
    fake = [
        CheckResult("alpha", True, "ok"),
        CheckResult("beta", False, "broke"),
    ]
    monkeypatch.setattr(cli, "run_all", lambda seed: fake)
    code, out, _ = run(capsys, "selftest")
    assert code == 1
    assert "PASS: alpha (ok)" in out
    assert "FAIL: beta (broke)" in out
    assert "1 passed, 1 failed" in out


def test_selftest_all_green_exit_zero(capsys, monkeypatch):
    monkeypatch.setattr(
        cli, "run_all", lambda seed: [CheckResult("alpha", True, "ok")]
    )
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert out.strip().endswith("1 passed, 0 failed")


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "selftest" in out


def test_config_defaults_and_validation():
    cfg = cli.Config()
    assert cfg.format == "table"
    assert cfg.brute_guard > 0 and cfg.chain_guard > 0
    with pytest.raises(ValueError):
        cli.Config(format="yaml")
    with pytest.raises(ValueError):
        cli.Config(chain_guard=0)


def test_config_reads_guard_env(monkeypatch):
    monkeypatch.setenv("ENDOSCOPYLAB_GUARD", "42")
    cfg = cli.Config.from_namespace(cli.build_parser().parse_args(["selftest"]))
    assert cfg.chain_guard == 42
    assert cfg.brute_guard == 42
