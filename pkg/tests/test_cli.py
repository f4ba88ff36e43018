"""Command-line surface: schemas, config resolution, exit codes."""

import csv
import io
import json

import pytest

from prorata.cli import main

POWER = ["--family", "power", "--beta", "0.5", "--gamma", "0.05"]
CFMM = ["--family", "cfmm", "--gamma", "0.99", "--r1", "200", "--r2", "250",
        "--price", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


# ------------------------------------------------------------- commands


def test_equilibrium_csv(capsys):
    code, out, err = run(
        capsys, "equilibrium", *POWER, "--n", "2", "--format", "csv"
    )
    assert code == 0 and err == ""
    (row,) = rows_of(out)
    assert set(row) == {"n", "q", "per_player", "eq_payoff", "foc_residual",
                        "method"}
    assert float(row["q"]) == pytest.approx(225.0, rel=1e-12)
    assert row["method"] == "closed-form-power"


def test_equilibrium_table_is_default(capsys):
    code, out, _ = run(capsys, "equilibrium", *CFMM, "--n", "1")
    assert code == 0
    header, values = out.splitlines()
    assert header.split()[:2] == ["n", "q"]
    assert values.split()[0] == "1"


def test_bestresponse(capsys):
    code, out, _ = run(
        capsys, "bestresponse", *CFMM, "--y", "10", "--format", "csv"
    )
    assert code == 0
    (row,) = rows_of(out)
    assert float(row["x"]) == pytest.approx(18.208055378950654, rel=1e-12)
    assert row["boundary"] == "interior"


def test_simulate_trace_layout(capsys):
    code, out, _ = run(
        capsys, "simulate", *CFMM, "--n", "2", "--trials", "2", "--seed", "3",
        "--format", "csv",
    )
    assert code == 0
    rows = rows_of(out)
    assert set(rows[0]) == {"trial", "iteration", "player", "strategy", "payoff"}
    assert {r["trial"] for r in rows} == {"0", "1"}
    assert {r["player"] for r in rows} == {"0", "1"}
    # iteration 0 is the drawn start, present for every trial
    assert [r["iteration"] for r in rows[:2]] == ["0", "0"]


def test_study_table_prints_summary(capsys):
    code, out, _ = run(
        capsys, "study", *CFMM, "--n-values", "2:3", "--trials", "2",
        "--seed", "0",
    )
    assert code == 0
    assert "mean iterations to converge:" in out
    assert "n=2:" in out and "n=3:" in out


def test_study_scenario_flags(capsys):
    code, out, _ = run(
        capsys, "study", *POWER, "--n-values", "3", "--trials", "2",
        "--scenario", "bounded", "--delta", "5", "--format", "csv",
    )
    assert code == 0
    assert all(r["converged"] == "true" for r in rows_of(out))


def test_whale_csv(capsys):
    code, out, _ = run(
        capsys, "whale", *CFMM, "--n-fish-values", "1:2", "--trials", "3",
        "--format", "csv",
    )
    assert code == 0
    rows = rows_of(out)
    assert [r["n_fish"] for r in rows] == ["1", "2"]
    assert all(float(r["pct_profit_increase"]) > 0.0 for r in rows)


def test_poa_csv(capsys):
    code, out, _ = run(
        capsys, "poa", *POWER, "--n-values", "1,2,10", "--format", "csv"
    )
    assert code == 0
    rows = rows_of(out)
    assert [r["n"] for r in rows] == ["1", "2", "10"]
    assert float(rows[1]["poa"]) == pytest.approx(4.0 / 3.0, rel=1e-9)


def test_batch_inline_deltas(capsys):
    code, out, _ = run(
        capsys, "batch", "--deltas", "5,-2,3,-1", "--gamma", "0.99",
        "--r1", "200", "--r2", "250", "--format", "csv",
    )
    assert code == 0
    rows = rows_of(out)
    assert [r["trader_id"] for r in rows] == ["0", "1", "2", "3"]
    assert float(rows[0]["residual"]) == 3.125
    assert float(rows[1]["received_b"]) == 0.0


def test_batch_reads_csv_input(capsys, tmp_path):
    src = tmp_path / "orders.csv"
    src.write_text("trader_id,delta\nalice,5\nbob,-2\n")
    code, out, _ = run(
        capsys, "batch", "--input", str(src), "--gamma", "0.99",
        "--r1", "200", "--r2", "250", "--format", "csv",
    )
    assert code == 0
    rows = rows_of(out)
    assert [r["trader_id"] for r in rows] == ["alice", "bob"]
    assert float(rows[0]["residual"]) == 3.0


def test_verify_conditions_subset(capsys):
    code, out, _ = run(
        capsys, "verify", *POWER, "--conditions", "chord,linear",
        "--format", "csv",
    )
    assert code == 0
    rows = rows_of(out)
    assert [r["condition"] for r in rows] == ["chord-strict",
                                              "linear-segment-at-zero"]
    assert [r["holds"] for r in rows] == ["true", "false"]
    # singular alias
    code, out, _ = run(
        capsys, "verify", *POWER, "--condition", "rosen", "--rosen-n", "4",
        "--format", "csv",
    )
    assert code == 0
    (row,) = rows_of(out)
    assert row["condition"] == "rosen-monotone-probe"


def test_reproduce_accepts_fig_prefix(capsys):
    code, out, _ = run(
        capsys, "reproduce", "fig-poa-curve", "--n-values", "1:5"
    )
    assert code == 0
    assert out.splitlines()[0] == "n,eq_payoff,fair_payoff,poa"


def test_reproduce_whale_max_fish(capsys):
    code, out, _ = run(
        capsys, "reproduce", "whale", "--max-fish", "2", "--trials", "2"
    )
    assert code == 0
    rows = rows_of(out)
    assert [r["n_fish"] for r in rows] == ["1", "2"]


# ------------------------------------------------------- config handling


def test_config_file_supplies_defaults(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({
        "family": {"kind": "power", "beta": 0.5, "gamma": 0.05},
        "n": 2,
        "format": "csv",
    }))
    code, out, _ = run(capsys, "equilibrium", "--config", str(cfg))
    assert code == 0
    (row,) = rows_of(out)
    assert float(row["q"]) == pytest.approx(225.0, rel=1e-12)


def test_flags_override_config(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({
        "family": {"kind": "power", "beta": 0.5, "gamma": 0.05},
        "n": 2,
        "format": "csv",
    }))
    code, out, _ = run(capsys, "equilibrium", "--config", str(cfg), "--n", "1")
    assert code == 0
    (row,) = rows_of(out)
    assert float(row["q"]) == pytest.approx(100.0, rel=1e-12)


def test_unknown_config_key_is_an_error(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"n": 2, "surprise": 1}))
    code, _, err = run(capsys, "equilibrium", *POWER, "--config", str(cfg))
    assert code == 2
    assert err.startswith("error: config-error:")


def test_output_writes_file_and_defaults_to_csv(capsys, tmp_path):
    dest = tmp_path / "eq.csv"
    code, out, _ = run(
        capsys, "equilibrium", *POWER, "--n", "3", "--output", str(dest)
    )
    assert code == 0 and out == ""
    assert dest.read_text().startswith("n,q,per_player")


# ----------------------------------------------------------- exit codes


def test_missing_family_parameter_exits_2(capsys):
    code, _, err = run(capsys, "equilibrium", "--family", "power", "--beta",
                       "0.5", "--n", "2")
    assert code == 2
    assert err.startswith("error: config-error:")


def test_invalid_family_parameter_exits_2(capsys):
    code, _, err = run(
        capsys, "equilibrium", "--family", "cfmm", "--gamma", "2", "--r1",
        "200", "--r2", "250", "--price", "1", "--n", "2",
    )
    assert code == 2


def test_no_equilibrium_exits_3(capsys):
    # external price above the pool's best marginal quote: f <= 0 everywhere
    code, _, err = run(
        capsys, "equilibrium", "--family", "cfmm", "--gamma", "0.99", "--r1",
        "200", "--r2", "250", "--price", "2", "--n", "2",
    )
    assert code == 3
    assert err.startswith("error: ") and err.count("\n") == 1


def test_nonpositive_batch_exits_4(capsys):
    code, _, err = run(
        capsys, "batch", "--deltas=-1,-2", "--gamma", "0.99", "--r1",
        "200", "--r2", "250",
    )
    assert code == 4
    assert err.startswith("error: ")


def test_unknown_subcommand_exits_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_determinism_across_reruns(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["reproduce", "scenario1", "--n-values", "2:4", "--trials", "5"]
    assert main(argv + ["--output", str(a)]) == 0
    assert main(argv + ["--output", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
