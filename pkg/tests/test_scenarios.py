import dataclasses

import numpy as np
import pytest

from qubattery.errors import ConfigError
from qubattery.metrics import average_purity
from qubattery.model import BatteryParams, BatteryState
from qubattery.scenarios import (
    SweepGrid,
    TraceFamily,
    default_config,
    emit_csv,
    render_csv,
    run_scenario,
)


def small_config(scenario, **kw):
    kw.setdefault("steps", 201)
    return default_config(scenario, **kw)


def test_default_config_fills_scenario_defaults():
    cfg = default_config("sweep2d")
    assert cfg.delta_list == (-1.0, -0.5, 0.0, 0.5, 1.0)
    assert len(cfg.j_over_omega_list) == 21
    assert cfg.j_over_omega_list[0] == pytest.approx(0.1)
    assert cfg.j_over_omega_list[-1] == pytest.approx(10.0)
    assert cfg.output_path == "sweep2d.csv"
    assert default_config("collective3").params.n_cells == 3
    assert default_config("parallel").params.coupling_j == 0.0


def test_config_validation_errors_name_the_field():
    with pytest.raises(ConfigError, match="scenario"):
        default_config("warp")
    with pytest.raises(ConfigError, match="steps"):
        run_scenario(default_config("parallel", steps=200))
    with pytest.raises(ConfigError, match="steps"):
        run_scenario(default_config("parallel", steps=11))
    with pytest.raises(ConfigError, match="gamma"):
        run_scenario(default_config("dephasing", steps=201, gamma=(-0.1,)))
    with pytest.raises(ConfigError, match="delta"):
        run_scenario(default_config("collective2", steps=201, delta=()))
    with pytest.raises(ConfigError, match="j_over_omega"):
        run_scenario(default_config("collective2", steps=201, j_over_omega=(1.0, 2.0)))


def test_parallel_trace_reaches_full_charge():
    trace = run_scenario(small_config("parallel"))
    assert trace.ergotropy[0] == pytest.approx(0.0, abs=1e-12)
    assert trace.ergotropy[-1] == pytest.approx(1.0, abs=1e-12)
    assert np.max(trace.ergotropy) <= 1.0 + 1e-9
    assert np.min(trace.ergotropy) >= -1e-9
    assert np.min(trace.coherence) >= 0.0 and np.max(trace.coherence) <= 1.0 + 1e-9
    s = trace.summary()
    assert s.p_avg == pytest.approx(2.0 / np.pi, abs=1e-7)
    assert s.e_fin == pytest.approx(1.0)


def test_unitary_traces_stay_in_normalized_bounds():
    for scenario, kw in (("collective2", {"delta": (-1.0, 0.0, 0.5)}),
                         ("collective3", {"delta": (-1.0, 0.0)})):
        family = run_scenario(small_config(scenario, **kw))
        for trace in family.traces:
            assert np.min(trace.ergotropy) >= -1e-9
            assert np.max(trace.ergotropy) <= 1.0 + 1e-9
            assert np.min(trace.coherence) >= 0.0
            assert np.max(trace.coherence) <= 1.0 + 1e-9


def test_collective_at_isotropic_point_equals_parallel():
    parallel = run_scenario(small_config("parallel"))
    family = run_scenario(small_config("collective2", delta=(1.0,)))
    assert isinstance(family, TraceFamily)
    trace = family.traces[0]
    for column in ("times", "ergotropy", "power", "coherence"):
        assert np.max(np.abs(getattr(trace, column) - getattr(parallel, column))) <= 1e-9
    assert np.max(trace.correlation) <= 1e-9


def test_collective3_trace_columns():
    family = run_scenario(small_config("collective3", delta=(1.0, 0.0)))
    assert family.label_values == (1.0, 0.0)
    iso = family.traces[0]
    assert iso.power_full is not None
    # interaction-only power operator vanishes for the XXZ chain
    assert np.max(np.abs(iso.power)) <= 1e-12
    assert iso.ergotropy[-1] == pytest.approx(1.0, abs=1e-9)
    assert np.max(np.abs(iso.correlation - 1.0)) <= 1e-8
    # scenario purity column agrees with the partial-trace metric
    mixed = family.traces[1]
    p = BatteryParams(n_cells=3, coupling_j=1.0, delta=0.0, t_steps=201)
    from qubattery.dynamics import spectral_trajectory
    from qubattery.model import build_h_driving, empty_state
    amps = spectral_trajectory(build_h_driving(p), empty_state(3),
                               np.linspace(0.0, p.t_min, p.t_steps))
    for k in (0, 57, 200):
        state = BatteryState.pure(amps[k] / np.linalg.norm(amps[k]))
        assert mixed.correlation[k] == pytest.approx(average_purity(state), abs=1e-10)


def test_dephasing_traces_are_ordered_in_gamma():
    family = run_scenario(small_config("dephasing", gamma=(0.0, 0.1, 0.5)))
    finals = [t.ergotropy[-1] for t in family.traces]
    assert finals[0] == pytest.approx(1.0, abs=1e-6)
    assert finals[0] > finals[1] > finals[2]
    assert family.correlation_name == "avg_purity"


def test_delta_scan_reproduces_expected_ordering():
    grid = run_scenario(small_config("delta-scan", delta=(-1.0, -0.5, 0.0, 0.5, 1.0)))
    assert isinstance(grid, SweepGrid)
    e = grid.e_fin[:, 0]
    assert e[4] > e[3] > e[2] >= e[1] >= e[0]
    assert int(np.argmax(e)) == 4
    # window averages in p_max units satisfy p_avg = (2/pi) e_fin for unitary runs
    assert np.max(np.abs(grid.p_avg[:, 0] - 2.0 / np.pi * e)) <= 1e-6


def test_sweep2d_limits():
    grid = run_scenario(small_config("sweep2d", j_over_omega=(0.1, 1.0, 10.0)))
    assert grid.e_fin.shape == (5, 3)
    weak = grid.e_fin[:, 0]
    iso_weak = grid.e_fin[-1, 0]
    assert np.all(np.abs(weak - iso_weak) <= 0.05 * iso_weak)
    assert int(np.argmax(grid.e_fin[:, 1])) == 4  # delta = 1 wins at J = Omega


def test_sweep_grid_shape_validation():
    with pytest.raises(ConfigError, match="e_fin"):
        SweepGrid(
            delta_axis=np.array([0.0, 1.0]), j_axis=np.array([1.0]),
            e_fin=np.zeros((3, 1)), p_avg=np.zeros((2, 1)),
            q_avg=np.zeros((2, 1)), c_avg=np.zeros((2, 1)))


def test_csv_single_trace_format(tmp_path):
    from qubattery.metrics import ChargeTrace

    trace = ChargeTrace(
        times=np.array([0.0, 0.5, 1.0]),
        ergotropy=np.array([0.0, 0.5, 1.0]),
        power=np.array([1.0, 0.0, -1.0]),
        correlation=np.zeros(3),
        coherence=np.array([0.0, 1.0, 0.0]))
    path = tmp_path / "trace.csv"
    emit_csv(trace, str(path))
    content = path.read_bytes().decode("utf-8")
    lines = content.split("\n")
    assert lines[0] == "t,ergotropy,power,entanglement,coherence"
    assert len(lines) == 5 and lines[-1] == ""  # header + 3 rows + trailing LF
    assert "\r" not in content


def test_csv_formatting_is_12_significant_digits():
    from qubattery.metrics import ChargeTrace

    trace = ChargeTrace(
        times=np.array([1.0 / 3.0]),
        ergotropy=np.array([2.0 / 3.0]),
        power=np.array([-0.0]),
        correlation=np.array([1e-13]),
        coherence=np.array([1.0]))
    row = render_csv(trace)[1]
    assert row == "0.333333333333,0.666666666667,0,1e-13,1"


def test_csv_rerun_is_byte_identical(tmp_path):
    cfg = small_config("collective2", delta=(-1.0, 1.0), out=str(tmp_path / "a.csv"))
    emit_csv(run_scenario(cfg), cfg.output_path)
    first = (tmp_path / "a.csv").read_bytes()
    cfg2 = small_config("collective2", delta=(-1.0, 1.0), out=str(tmp_path / "b.csv"))
    emit_csv(run_scenario(cfg2), cfg2.output_path)
    assert first == (tmp_path / "b.csv").read_bytes()


def test_csv_family_and_grid_headers(tmp_path):
    family = run_scenario(small_config("collective3", delta=(1.0,)))
    lines = render_csv(family)
    assert lines[0] == "delta,t,ergotropy,power,power_full,correlation,coherence"
    assert len(lines) == 1 + 201

    deph = run_scenario(small_config("dephasing", gamma=(0.0, 0.5)))
    assert render_csv(deph)[0] == "gamma,t,ergotropy,power,avg_purity,coherence"

    grid = run_scenario(small_config("delta-scan", delta=(0.0, 1.0)))
    lines = render_csv(grid)
    assert lines[0] == "delta,j_over_omega,e_fin,p_avg,q_avg,c_avg"
    assert len(lines) == 1 + 2


def test_scan_is_independent_of_frequency_scale():
    # normalized outputs must not depend on the absolute Omega
    base = run_scenario(small_config("delta-scan", delta=(0.0, 1.0)))
    cfg = small_config("delta-scan", delta=(0.0, 1.0))
    scaled = dataclasses.replace(
        cfg, params=dataclasses.replace(cfg.params, omega0=3.7, omega_rabi=3.7))
    other = run_scenario(scaled)
    assert np.max(np.abs(base.e_fin - other.e_fin)) <= 1e-9
    assert np.max(np.abs(base.p_avg - other.p_avg)) <= 1e-9
