import json

import numpy as np
import pytest

from tomolyap.cli import main

LAMBDA_GOLDEN = 0.9624236501192069


def run(argv):
    return main(argv)


# ---------------------------------------------------------------------------
# subcommand happy paths
# ---------------------------------------------------------------------------


def test_harmonic_run(tmp_path):
    assert run(["harmonic", "--z", "5", "--n", "200", "--out", str(tmp_path)]) == 0
    record = json.loads((tmp_path / "harmonic_result.json").read_text())
    assert record["kind"] == "harmonic"
    assert record["version"]
    assert abs(record["closed_form_lyapunov"] - LAMBDA_GOLDEN) < 1e-9
    assert abs(record["estimate"]["slope"] - LAMBDA_GOLDEN) < 1e-3
    series = (tmp_path / "harmonic_series.csv").read_text().splitlines()
    assert series[0] == "t,re_g2,im_g2,re_g3,im_g3,abs_probe,log_norm"
    assert len(series) == 202


def test_cat_run(tmp_path):
    assert run(["cat", "--variant", "kick_only", "--out", str(tmp_path)]) == 0
    record = json.loads((tmp_path / "cat_result.json").read_text())
    assert abs(record["lyapunov"] - LAMBDA_GOLDEN) < 1e-9
    assert record["deformation_vanishes"] is True
    matrix = np.array(record["floquet_matrix"])
    assert matrix.shape == (4, 4)


def test_standard_map_run(tmp_path):
    assert run(["standard-map", "--gamma", "1", "--hbar", "0", "--n", "24",
                "--out", str(tmp_path)]) == 0
    record = json.loads((tmp_path / "standard_map_result.json").read_text())
    assert abs(record["closed_form_lyapunov"] - LAMBDA_GOLDEN) < 1e-9
    assert record["estimate"]["classification"] == "positive"
    rows = (tmp_path / "standard_map_series.csv").read_text().splitlines()
    assert len(rows) == 26


def test_standard_map_resonance_warning(tmp_path, capsys):
    assert run(["standard-map", "--gamma", "1", "--hbar", str(np.pi), "--n", "16",
                "--out", str(tmp_path)]) == 0
    err = capsys.readouterr().err
    assert "1/4" in err


def test_oracle_run(tmp_path):
    assert run(["oracle", "--map", "standard", "--gamma", "1", "--steps", "4000",
                "--out", str(tmp_path)]) == 0
    record = json.loads((tmp_path / "oracle_result.json").read_text())
    assert abs(record["lambda"] - LAMBDA_GOLDEN) < 1e-5
    csv_text = (tmp_path / "oracle_result.csv").read_text()
    assert "standard_map" in csv_text


def test_tomography_run(tmp_path):
    assert run(["tomography", "--mean-q", "2", "--mu", "1", "--nu", "0",
                "--directions", "40", "--homogeneity-samples", "3",
                "--seed", "11", "--out", str(tmp_path)]) == 0
    record = json.loads((tmp_path / "tomography_result.json").read_text())
    assert abs(record["mean_position"] - 2.0) < 1e-6
    assert abs(record["mass"] - 1.0) < 1e-4
    assert record["homogeneity_max_defect"] < 1e-8
    assert abs(record["reconstruction"]["mean_q"] - 2.0) < 1e-2


def test_compare_run(tmp_path):
    assert run(["compare", "--n", "20", "--oracle-steps", "2000",
                "--out", str(tmp_path)]) == 0
    record = json.loads((tmp_path / "compare_result.json").read_text())
    rows = record["rows"]
    assert len(rows) == 3
    classical = [r["classical_lambda"] for r in rows]
    for value in classical:
        assert abs(value - LAMBDA_GOLDEN) < 1e-3
    table = (tmp_path / "compare.csv").read_text().splitlines()
    assert table[0].startswith("system,classical_lambda")
    assert len(table) == 4


# ---------------------------------------------------------------------------
# determinism
# ---------------------------------------------------------------------------


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run(["harmonic", "--z", "5", "--n", "64", "--seed", "3",
                    "--out", str(out)]) == 0
    assert (a / "harmonic_result.json").read_bytes() == (b / "harmonic_result.json").read_bytes()
    assert (a / "harmonic_series.csv").read_bytes() == (b / "harmonic_series.csv").read_bytes()


def test_record_echo_round_trips_as_config(tmp_path):
    first = tmp_path / "first"
    assert run(["harmonic", "--z", "8", "--n", "48", "--seed", "3",
                "--out", str(first)]) == 0
    record = json.loads((first / "harmonic_result.json").read_text())
    cfg = tmp_path / "echo.cfg"
    cfg.write_text("".join(f"{k} = {v}\n" for k, v in record["params"].items()))
    second = tmp_path / "second"
    assert run(["harmonic", "--config", str(cfg), "--seed", "3",
                "--out", str(second)]) == 0
    assert ((first / "harmonic_result.json").read_bytes()
            == (second / "harmonic_result.json").read_bytes())


# ---------------------------------------------------------------------------
# config files
# ---------------------------------------------------------------------------


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("z = 8.0\nn = 64\n# comment line\n")
    assert run(["harmonic", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    record = json.loads((tmp_path / "harmonic_result.json").read_text())
    assert record["params"]["z"] == 8.0
    assert record["params"]["n"] == 64


def test_flags_override_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("z = 8.0\n")
    assert run(["harmonic", "--config", str(cfg), "--z", "5", "--n", "32",
                "--out", str(tmp_path)]) == 0
    record = json.loads((tmp_path / "harmonic_result.json").read_text())
    assert record["params"]["z"] == 5.0


def test_unknown_config_key_fails_with_line_number(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("z = 5.0\ngamm = 1.0\n")
    assert run(["harmonic", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert ":2:" in err and "gamm" in err


def test_malformed_config_line_fails(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("just words\n")
    assert run(["harmonic", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    assert ":1:" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# error exit codes
# ---------------------------------------------------------------------------


def test_module_error_maps_to_exit_3(tmp_path, capsys):
    assert run(["standard-map", "--gamma", "nan", "--n", "16", "--out", str(tmp_path)]) == 3
    payload = json.loads(capsys.readouterr().err)
    assert payload["error"] == "ValidationError"


def test_bad_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 2
