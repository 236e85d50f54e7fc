import json

import pytest

from qubitboson.cli import EXIT_CONFIG, EXIT_OK, EXIT_VALIDATION, build_parser, main


@pytest.fixture()
def config_path(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(
        json.dumps({"g_over_delta_eps": [0.05], "grid_points": 401, "n_max": 5})
    )
    return path


def test_parser_has_subcommands():
    parser = build_parser()
    for cmd in ("evolve", "sweep", "validate", "spectrum"):
        args = parser.parse_args([cmd])
        assert args.command == cmd
        assert args.fmt == "csv"


def test_evolve_writes_outputs(tmp_path, config_path, capsys):
    out = tmp_path / "out"
    code = main(["evolve", "--config", str(config_path), "--out", str(out)])
    assert code == EXIT_OK
    assert (out / "evolution_g0.05.csv").exists()
    assert (out / "states_g0.05.csv").exists()
    assert (out / "summary_g0.05.json").exists()
    summary = json.loads((out / "summary_g0.05.json").read_text())
    assert summary["g_over_delta_eps"] == 0.05
    assert "evolve g0.05" in capsys.readouterr().out


def test_evolve_json_format(tmp_path, config_path):
    out = tmp_path / "out"
    code = main(
        ["evolve", "--config", str(config_path), "--out", str(out), "--format", "json"]
    )
    assert code == EXIT_OK
    payload = json.loads((out / "evolution_g0.05.json").read_text())
    assert set(payload) >= {"summary", "t", "exact", "rwa", "perturbative"}
    assert len(payload["t"]) == 401


def test_evolve_byte_deterministic(tmp_path, config_path):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["evolve", "--config", str(config_path), "--out", str(out_a)]) == EXIT_OK
    assert main(["evolve", "--config", str(config_path), "--out", str(out_b)]) == EXIT_OK
    for name in ("evolution_g0.05.csv", "states_g0.05.csv", "summary_g0.05.json"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_evolve_plot(tmp_path, config_path):
    out = tmp_path / "out"
    code = main(
        ["evolve", "--config", str(config_path), "--out", str(out), "--plot"]
    )
    assert code == EXIT_OK
    svg = (out / "evolution_g0.05.svg").read_bytes()
    assert svg.lstrip().startswith(b"<?xml")


def test_sweep_writes_outputs(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"g_over_delta_eps": [0.05, 0.15], "grid_points": 401}))
    out = tmp_path / "out"
    code = main(["sweep", "--config", str(cfg), "--out", str(out)])
    assert code == EXIT_OK
    lines = (out / "sweep.csv").read_text().splitlines()
    assert lines[0] == "g_over_de,t_min,f_jj,f_res,method"
    assert len(lines) == 5  # header + 2 g values x 2 methods


def test_sweep_json_and_plot(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"g_over_delta_eps": [0.05, 0.1], "grid_points": 201}))
    out = tmp_path / "out"
    code = main(
        ["sweep", "--config", str(cfg), "--out", str(out), "--format", "json", "--plot"]
    )
    assert code == EXIT_OK
    payload = json.loads((out / "sweep.json").read_text())
    assert len(payload["points"]) == 4
    assert (out / "sweep.svg").exists()


def test_validate_passes(config_path, capsys):
    code = main(["validate", "--config", str(config_path)])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "[PASS] hermiticity" in out
    assert "[FAIL]" not in out


def test_validate_reports_failure_exit_code(tmp_path, capsys):
    # A degenerate-denominator config skips the perturbative suite but still
    # exits 0; validation exit 1 is covered via the library-level injection
    # hook, so here just confirm the skip path prints and exits cleanly.
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {"coupling": {"x00": 0.6, "x01": 1.0, "x11": 0.6}, "g_over_delta_eps": [1.0]}
        )
    )
    code = main(["validate", "--config", str(cfg)])
    assert code == EXIT_OK
    assert "SKIP" in capsys.readouterr().out


def test_spectrum_outputs(tmp_path, config_path, capsys):
    out = tmp_path / "out"
    code = main(["spectrum", "--config", str(config_path), "--out", str(out)])
    assert code == EXIT_OK
    lines = (out / "spectrum.csv").read_text().splitlines()
    assert lines[0] == "label,w_dressed,e_perturbative,e_exact"
    assert len(lines) == 8
    assert "W=" in capsys.readouterr().out


def test_bad_config_exit_code(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"g_over_delta_eps": [2.0]}))
    code = main(["evolve", "--config", str(cfg)])
    assert code == EXIT_CONFIG
    assert "config error" in capsys.readouterr().err


def test_missing_config_exit_code(tmp_path):
    assert main(["evolve", "--config", str(tmp_path / "nope.json")]) == EXIT_CONFIG


def test_seed_flag_accepted(tmp_path, config_path):
    out = tmp_path / "out"
    code = main(
        ["evolve", "--config", str(config_path), "--out", str(out), "--seed", "7"]
    )
    assert code == EXIT_OK


def test_validation_exit_code_constant():
    # The validate subcommand returns the report's exit code; the failing
    # branch maps to EXIT_VALIDATION.
    from qubitboson.experiments import RunConfig, validate

    report = validate(RunConfig.default(), inject_non_hermitian=True)
    assert report.exit_code == EXIT_VALIDATION
