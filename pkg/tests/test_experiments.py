import json

import numpy as np
import pytest

from qubitboson.dynamics import (
    AmplitudeSeries,
    exact_amplitudes,
    rwa_amplitudes,
    vacuum_rabi_period,
)
from qubitboson.errors import ConfigError
from qubitboson.experiments import (
    DEFAULT_DIAGONAL_ELEMENT,
    DEFAULT_SWEEP_GRID,
    RunConfig,
    fidelity_sweep,
    find_t_min,
    run_evolution,
    spectrum_table,
    validate,
    write_evolution_csv,
    write_sweep_csv,
)


@pytest.fixture(scope="module")
def default_config():
    return RunConfig.default()


class TestRunConfig:
    def test_defaults(self, default_config):
        c = default_config
        assert c.coupling.x00 == DEFAULT_DIAGONAL_ELEMENT
        assert c.coupling.x11 == DEFAULT_DIAGONAL_ELEMENT
        assert c.coupling.x01 == pytest.approx(0.0719, rel=2e-3)
        assert c.n_max == 5
        assert c.g_over_delta_eps == (0.03,)
        assert c.methods == ("exact", "rwa", "perturbative")

    def test_sweep_grid_default(self, default_config):
        grid = default_config.sweep_grid
        assert grid == DEFAULT_SWEEP_GRID
        assert len(grid) == 50
        assert grid[0] == 0.01 and grid[-1] == 0.50

    def test_sweep_grid_explicit(self):
        c = RunConfig.from_dict({"g_over_delta_eps": [0.1, 0.2]})
        assert c.sweep_grid == (0.1, 0.2)

    def test_time_unit(self, default_config):
        assert default_config.time_unit_seconds == pytest.approx(
            1.0 / (2.0 * np.pi * 1e10)
        )

    def test_junction_overrides(self):
        c = RunConfig.from_dict({"junction": {"x00": 0.1, "x11": 0.2}})
        assert c.coupling.x00 == 0.1
        assert c.coupling.x11 == 0.2
        assert c.coupling.x01 == pytest.approx(0.0719, rel=2e-3)

    def test_explicit_coupling_block(self):
        c = RunConfig.from_dict(
            {"coupling": {"x00": 0.0, "x01": 0.05, "x11": 0.0}}
        )
        assert c.junction is None
        assert c.coupling.x01 == 0.05

    def test_rejects_unknown_keys(self):
        with pytest.raises(ConfigError, match="unknown config keys"):
            RunConfig.from_dict({"gg": 1})
        with pytest.raises(ConfigError, match="unknown junction keys"):
            RunConfig.from_dict({"junction": {"x02": 1.0}})
        with pytest.raises(ConfigError, match="unknown coupling keys"):
            RunConfig.from_dict(
                {"coupling": {"x00": 0.0, "x01": 0.05, "x11": 0.0, "zz": 1}}
            )

    def test_rejects_both_blocks(self):
        with pytest.raises(ConfigError, match="not both"):
            RunConfig.from_dict(
                {"junction": {}, "coupling": {"x00": 0, "x01": 0.1, "x11": 0}}
            )

    def test_rejects_bad_values(self):
        with pytest.raises(ConfigError, match="outside"):
            RunConfig.from_dict({"g_over_delta_eps": [1.5]})
        with pytest.raises(ConfigError, match="outside"):
            RunConfig.from_dict({"g_over_delta_eps": [0.0]})
        with pytest.raises(ConfigError, match="n_max"):
            RunConfig.from_dict({"n_max": 1})
        with pytest.raises(ConfigError, match="unknown method"):
            RunConfig.from_dict({"methods": ["euler"]})
        with pytest.raises(ConfigError, match="omega0_hz"):
            RunConfig.from_dict({"omega0_hz": -1.0})

    def test_from_json(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"g_over_delta_eps": [0.07], "n_max": 4}))
        c = RunConfig.from_json(path)
        assert c.g_over_delta_eps == (0.07,)
        assert c.n_max == 4
        with pytest.raises(ConfigError, match="cannot read"):
            RunConfig.from_json(tmp_path / "missing.json")
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(ConfigError, match="not valid JSON"):
            RunConfig.from_json(bad)


class TestFindTMin:
    def test_rwa_half_period(self, make_params):
        p = make_params(0.1)
        horizon = vacuum_rabi_period(p)
        times = np.linspace(0.0, horizon, 2001)
        t_min = find_t_min(rwa_amplitudes(p, times), horizon=horizon)
        expected = np.pi / p.vacuum_rabi
        assert t_min == pytest.approx(expected, rel=1e-6)

    def test_exact_close_to_rwa_at_tiny_g(self, make_params):
        p = make_params(0.005)
        horizon = vacuum_rabi_period(p)
        times = np.linspace(0.0, horizon, 4001)
        t_exact = find_t_min(exact_amplitudes(p, times), horizon=horizon)
        assert t_exact == pytest.approx(np.pi / p.vacuum_rabi, rel=1e-3)

    def test_monotonic_series_returns_endpoint(self):
        times = np.linspace(0.0, 1.0, 11)
        series = AmplitudeSeries(
            method="rwa", times=times, c10=np.sqrt(1.0 - 0.5 * times), c01=np.sqrt(0.5 * times)
        )
        assert find_t_min(series) == 1.0

    def test_horizon_clips(self):
        times = np.linspace(0.0, 2.0, 21)
        p10 = (times - 1.5) ** 2
        series = AmplitudeSeries(
            method="rwa", times=times, c10=np.sqrt(p10 / 4.0), c01=np.zeros_like(times)
        )
        assert find_t_min(series, horizon=1.0) == pytest.approx(1.0)
        assert find_t_min(series) == pytest.approx(1.5, abs=1e-9)

    def test_empty_horizon_raises(self):
        times = np.linspace(1.0, 2.0, 5)
        series = AmplitudeSeries(
            method="rwa", times=times, c10=np.ones(5), c01=np.zeros(5)
        )
        with pytest.raises(ValueError, match="horizon"):
            find_t_min(series, horizon=0.5)


class TestRunEvolution:
    def test_weak_coupling_report(self, default_config):
        report = run_evolution(default_config, 0.03)
        assert set(report.series) == {"exact", "rwa", "perturbative"}
        assert report.method_errors == {}
        assert report.summary["regime"].startswith("approximate methods track")
        pair = report.summary["pairwise"]["exact_vs_perturbative"]
        assert pair["sup_abs_diff_p01"] < 0.01

    def test_strong_coupling_flagged(self, default_config):
        report = run_evolution(default_config, 0.30)
        assert report.summary["regime"].startswith("strong coupling")
        pair = report.summary["pairwise"]["exact_vs_rwa"]
        assert pair["sup_abs_diff_p01"] > 0.05

    def test_transfer_time_scales_inverse_g(self, default_config):
        weak = run_evolution(default_config, 0.03)
        strong = run_evolution(default_config, 0.30)
        ratio = (
            weak.summary["vacuum_rabi_period"]
            / strong.summary["vacuum_rabi_period"]
        )
        assert ratio == pytest.approx(10.0, rel=1e-12)


@pytest.fixture(scope="module")
def sweep():
    config = RunConfig.from_dict(
        {"g_over_delta_eps": [0.01, 0.03, 0.10, 0.15, 0.30], "grid_points": 2001}
    )
    return fidelity_sweep(config)


class TestFidelitySweep:
    def _exact_points(self, sweep):
        return {p.g_over_delta_eps: p for p in sweep.points if p.method == "exact"}

    def test_methods_present(self, sweep):
        methods = {p.method for p in sweep.points}
        assert methods == {"exact", "perturbative"}
        assert not sweep.point_errors

    def test_weak_coupling_near_perfect(self, sweep):
        pts = self._exact_points(sweep)
        assert pts[0.01].f_res > 0.999
        assert pts[0.03].f_res > 0.999

    def test_benchmark_point(self, sweep):
        pts = self._exact_points(sweep)
        assert pts[0.15].f_res >= 0.90
        assert pts[0.15].f_jj >= 0.95

    def test_f_res_bounded_by_f_jj(self, sweep):
        for p in sweep.points:
            assert p.f_res <= p.f_jj + 1e-9

    def test_t_min_tracks_inverse_g(self, sweep):
        pts = self._exact_points(sweep)
        for g, p in pts.items():
            if g <= 0.15:
                expected = np.pi / (2.0 * g * 0.07186671706880136)
                assert p.t_min == pytest.approx(expected, rel=0.2)

    def test_sorted_by_g(self, sweep):
        gs = [p.g_over_delta_eps for p in sweep.points]
        assert gs == sorted(gs)


def test_spectrum_table(default_config):
    rows = spectrum_table(default_config, 0.05)
    assert [r.label for r in rows] == ["00", "0+", "0-", "1+", "1-", "2+", "2-"]
    for r in rows:
        # Second order should beat zeroth order against the exact level.
        assert abs(r.e_perturbative - r.e_exact) <= abs(r.w_dressed - r.e_exact) + 1e-12
        assert abs(r.e_perturbative - r.e_exact) < 1e-3


class TestValidate:
    def test_default_passes(self, default_config):
        report = validate(default_config)
        assert report.passed
        assert report.exit_code == 0
        names = [c.name for c in report.checks]
        assert "hermiticity" in names
        assert "v_element_change_of_basis" in names
        lines = report.format_lines()
        assert len(lines) == len(report.checks)
        assert all(line.startswith("[PASS]") for line in lines)

    def test_injected_failure(self, default_config):
        report = validate(default_config, inject_non_hermitian=True)
        assert not report.passed
        assert report.exit_code == 1
        herm = next(c for c in report.checks if c.name == "hermiticity")
        assert herm.status == "fail"

    def test_degenerate_denominator_skips_perturbative(self):
        # g * x01 = 1 closes the W_0^- gap exactly, tripping the guard.
        config = RunConfig.from_dict(
            {"coupling": {"x00": 0.6, "x01": 1.0, "x11": 0.6}, "g_over_delta_eps": [1.0]}
        )
        report = validate(config)
        statuses = {c.name: c.status for c in report.checks}
        assert statuses.get("perturbative_suite") == "skipped: outside validity"
        assert report.exit_code == 0


class TestWriters:
    def test_evolution_csv_roundtrip(self, default_config, tmp_path):
        report = run_evolution(default_config, 0.03)
        path = tmp_path / "evolution.csv"
        write_evolution_csv(report, path)
        lines = path.read_text().splitlines()
        header = lines[0].split(",")
        assert header[0] == "t"
        assert "p10_exact" in header and "p_leak_exact" in header
        assert len(lines) == 1 + len(report.times)
        # 17 significant digits round-trip through text exactly.
        k = header.index("re_c10_exact")
        for row_idx in (1, 500, 2001):
            val = float(lines[row_idx].split(",")[k])
            assert val == report.series["exact"].c10[row_idx - 1].real

    def test_evolution_csv_deterministic(self, default_config, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        write_evolution_csv(run_evolution(default_config, 0.03), a)
        write_evolution_csv(run_evolution(default_config, 0.03), b)
        assert a.read_bytes() == b.read_bytes()

    def test_sweep_csv(self, tmp_path):
        config = RunConfig.from_dict(
            {"g_over_delta_eps": [0.05, 0.1], "grid_points": 501}
        )
        report = fidelity_sweep(config)
        path = tmp_path / "sweep.csv"
        write_sweep_csv(report, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "g_over_de,t_min,f_jj,f_res,method"
        assert len(lines) == 1 + len(report.points)
