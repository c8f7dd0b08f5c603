"""Experiment families and bit-stable CSV emission.

Each scenario produces normalized columns (time in 1/Omega, ergotropy in
e_max, power in e_max*Omega) so the output is independent of the absolute
frequency scale. Grid points are independent pure computations executed in
deterministic axis order; rerunning an identical configuration yields a
byte-identical file.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .dynamics import (
    StateCoefficients,
    closed_form_amplitudes,
    ergotropy_closed_form_empty,
    lindblad_integrate,
    power_closed_form_empty,
    spectral_trajectory,
    two_cell_spectrum,
)
from .errors import ConfigError
from .metrics import (
    ChargeTrace,
    average_purity,
    ergotropy_general,
    l1_coherence_normalized,
    numerical_power_from_ergotropy,
    power_operator,
)
from .model import (
    BatteryParams,
    build_h0,
    build_h_charging,
    build_h_interaction,
    empty_state,
)

SCENARIOS = ("parallel", "collective2", "delta-scan", "sweep2d", "collective3", "dephasing")

MIN_STEPS = 201


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    params: BatteryParams
    delta_list: tuple[float, ...]
    j_over_omega_list: tuple[float, ...]
    gamma_list: tuple[float, ...]
    output_path: str

    def validate(self) -> None:
        if self.scenario not in SCENARIOS:
            raise ConfigError(
                f"scenario: unknown scenario {self.scenario!r}; choose from {', '.join(SCENARIOS)}")
        steps = self.params.t_steps
        if steps < MIN_STEPS or steps % 2 == 0:
            raise ConfigError(f"steps: need an odd count >= {MIN_STEPS}, got {steps}")
        for name, values in (("delta", self.delta_list),
                             ("j_over_omega", self.j_over_omega_list),
                             ("gamma", self.gamma_list)):
            if len(values) == 0:
                raise ConfigError(f"{name}: list must be non-empty")
            if not all(np.isfinite(v) for v in values):
                raise ConfigError(f"{name}: values must be finite")
        if any(v < 0 for v in self.j_over_omega_list):
            raise ConfigError("j_over_omega: values must be non-negative")
        if any(v < 0 for v in self.gamma_list):
            raise ConfigError("gamma: rates must be non-negative")
        if self.scenario != "sweep2d" and len(self.j_over_omega_list) != 1:
            raise ConfigError(
                f"j_over_omega: scenario {self.scenario!r} takes a single value")
        if not self.output_path:
            raise ConfigError("out: output path must be non-empty")


def default_config(scenario: str, delta=None, j_over_omega=None, gamma=None,
                   steps=None, out=None) -> ScenarioConfig:
    """Fill in per-scenario defaults; explicit arguments win."""
    if scenario not in SCENARIOS:
        raise ConfigError(
            f"scenario: unknown scenario {scenario!r}; choose from {', '.join(SCENARIOS)}")
    try:
        steps = 1001 if steps is None else int(steps)
        if delta is None:
            delta = {
                "parallel": (1.0,),
                "collective2": (-1.0, 0.0, 1.0),
                "collective3": (-1.0, 0.0, 1.0),
                "delta-scan": tuple(np.linspace(-1.0, 1.0, 81)),
                "sweep2d": (-1.0, -0.5, 0.0, 0.5, 1.0),
                "dephasing": (1.0,),
            }[scenario]
        else:
            delta = tuple(float(v) for v in delta)
        if j_over_omega is None:
            j_over_omega = tuple(np.logspace(-1.0, 1.0, 21)) if scenario == "sweep2d" else (1.0,)
        else:
            j_over_omega = tuple(float(v) for v in j_over_omega)
        gamma = (0.0, 0.1, 0.5) if gamma is None else tuple(float(v) for v in gamma)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"could not parse numeric option: {exc}") from None
    for name, values in (("delta", delta), ("j_over_omega", j_over_omega), ("gamma", gamma)):
        if len(values) == 0:
            raise ConfigError(f"{name}: list must be non-empty")
    if scenario == "parallel":
        j_over_omega = (0.0,)
    coupling = j_over_omega[0] if scenario != "sweep2d" else 1.0
    params = BatteryParams(
        n_cells=3 if scenario == "collective3" else 2,
        coupling_j=coupling,
        delta=delta[0],
        t_steps=steps,
    )
    return ScenarioConfig(
        scenario=scenario,
        params=params,
        delta_list=delta,
        j_over_omega_list=j_over_omega,
        gamma_list=gamma,
        output_path=out if out is not None else f"{scenario}.csv",
    )


@dataclass(frozen=True)
class TraceFamily:
    """One ChargeTrace per value of a scanned label (delta or gamma)."""

    label_name: str
    label_values: tuple[float, ...]
    traces: tuple[ChargeTrace, ...]
    correlation_name: str


@dataclass(frozen=True)
class SweepGrid:
    """Window-averaged figures of merit on a (delta, J/Omega) grid."""

    delta_axis: np.ndarray
    j_axis: np.ndarray
    e_fin: np.ndarray
    p_avg: np.ndarray
    q_avg: np.ndarray
    c_avg: np.ndarray

    def __post_init__(self):
        shape = (len(self.delta_axis), len(self.j_axis))
        for name in ("e_fin", "p_avg", "q_avg", "c_avg"):
            if getattr(self, name).shape != shape:
                raise ConfigError(f"{name}: grid shape does not match axes")


def _pure_coherence(amps: np.ndarray, n_cells: int) -> np.ndarray:
    """l1 coherence of pure states from amplitude rows: ((sum|a|)^2 - sum|a|^2) / c_max."""
    mags = np.abs(amps)
    c_max = 2**n_cells - 1
    return (mags.sum(axis=1) ** 2 - (mags**2).sum(axis=1)) / c_max


def _two_cell_trace(params: BatteryParams) -> ChargeTrace:
    spec = two_cell_spectrum(params)
    tgrid = np.linspace(0.0, params.t_min, params.t_steps)
    init = StateCoefficients(mu=0j, nu=0j, eta=0j, delta=1.0 + 0j)
    amps = closed_form_amplitudes(init, tgrid, spec)
    erg = ergotropy_closed_form_empty(tgrid, params) / params.e_max
    pwr = power_closed_form_empty(tgrid, params) / params.p_max_parallel
    conc = 2.0 * np.abs(amps[:, 3] * amps[:, 0] - amps[:, 1] * amps[:, 2])
    coh = _pure_coherence(amps, params.n_cells)
    return ChargeTrace(
        times=params.omega_rabi * tgrid,
        ergotropy=erg,
        power=pwr,
        correlation=conc,
        coherence=coh,
    )


def _marginal_purities(amps: np.ndarray) -> np.ndarray:
    """Average single-cell purity of three-qubit pure states, per time row."""
    a = amps.reshape(-1, 2, 2, 2)
    ac = a.conj()
    out = np.zeros(a.shape[0])
    for sub_reduce, sub_purity in (("tabc,tdbc->tad", "tad,tda->t"),
                                   ("tabc,tadc->tbd", "tbd,tdb->t"),
                                   ("tabc,tabd->tcd", "tcd,tdc->t")):
        red = np.einsum(sub_reduce, a, ac)
        out += np.einsum(sub_purity, red, red).real
    return out / 3.0


def _three_cell_trace(params: BatteryParams) -> ChargeTrace:
    h0 = build_h0(params)
    h_int = build_h_interaction(params)
    h = build_h_charging(params) + h_int
    tgrid = np.linspace(0.0, params.t_min, params.t_steps)
    amps = spectral_trajectory(h, empty_state(params.n_cells), tgrid)
    h0_diag = np.diag(h0).real
    energy = (np.abs(amps) ** 2) @ h0_diag
    erg = (energy - h0_diag.min()) / params.e_max
    p_literal = power_operator(h0, h_int)
    p_full = power_operator(h0, h)
    pwr = np.einsum("ti,ij,tj->t", amps.conj(), p_literal, amps).real / params.p_max_parallel
    pwr_full = np.einsum("ti,ij,tj->t", amps.conj(), p_full, amps).real / params.p_max_parallel
    return ChargeTrace(
        times=params.omega_rabi * tgrid,
        ergotropy=erg,
        power=pwr,
        correlation=_marginal_purities(amps),
        coherence=_pure_coherence(amps, params.n_cells),
        power_full=pwr_full,
    )


def _dephasing_trace(params: BatteryParams) -> ChargeTrace:
    h0 = build_h0(params)
    h = build_h_charging(params) + build_h_interaction(params)
    base = params.t_steps - 1
    spec = two_cell_spectrum(params)
    h_norm = float(np.max(np.abs(spec.energies())))
    stiffness = (h_norm + 2.0 * params.n_cells * params.gamma_deph) * params.t_min
    substeps = max(1, int(np.ceil(stiffness / 0.05 / base)))
    traj = lindblad_integrate(h, empty_state(params.n_cells), params,
                              params.t_min, substeps * base)
    states = traj.states[::substeps]
    erg = np.array([ergotropy_general(s, h0) for s in states]) / params.e_max
    coh = np.array([l1_coherence_normalized(s) for s in states])
    corr = np.array([average_purity(s) for s in states])
    times = params.omega_rabi * traj.times[::substeps]
    return ChargeTrace(
        times=times,
        ergotropy=erg,
        power=numerical_power_from_ergotropy(times, erg),
        correlation=corr,
        coherence=coh,
    )


def _scan_summaries(params: BatteryParams, deltas, js) -> SweepGrid:
    shape = (len(deltas), len(js))
    e_fin = np.zeros(shape)
    p_avg = np.zeros(shape)
    q_avg = np.zeros(shape)
    c_avg = np.zeros(shape)
    for i, d in enumerate(deltas):
        for k, j in enumerate(js):
            trace = _two_cell_trace(dataclasses.replace(
                params, delta=float(d), coupling_j=float(j) * params.omega_rabi))
            s = trace.summary()
            e_fin[i, k] = s.e_fin
            p_avg[i, k] = s.p_avg
            q_avg[i, k] = s.q_avg
            c_avg[i, k] = s.c_avg
    return SweepGrid(
        delta_axis=np.asarray(deltas, dtype=np.float64),
        j_axis=np.asarray(js, dtype=np.float64),
        e_fin=e_fin, p_avg=p_avg, q_avg=q_avg, c_avg=c_avg,
    )


def run_scenario(config: ScenarioConfig):
    """Execute one experiment family; returns ChargeTrace, TraceFamily or SweepGrid."""
    config.validate()
    params = config.params
    if config.scenario == "parallel":
        return _two_cell_trace(dataclasses.replace(params, coupling_j=0.0))
    if config.scenario == "collective2":
        traces = tuple(_two_cell_trace(dataclasses.replace(params, delta=float(d)))
                       for d in config.delta_list)
        return TraceFamily("delta", config.delta_list, traces, "entanglement")
    if config.scenario == "collective3":
        traces = tuple(_three_cell_trace(dataclasses.replace(params, delta=float(d)))
                       for d in config.delta_list)
        return TraceFamily("delta", config.delta_list, traces, "correlation")
    if config.scenario == "dephasing":
        traces = tuple(
            _dephasing_trace(dataclasses.replace(
                params, gamma_deph=float(g) * params.omega_rabi))
            for g in config.gamma_list)
        return TraceFamily("gamma", config.gamma_list, traces, "avg_purity")
    if config.scenario == "delta-scan":
        return _scan_summaries(params, config.delta_list,
                               (config.j_over_omega_list[0],))
    return _scan_summaries(params, config.delta_list, config.j_over_omega_list)


def _fmt(x: float) -> str:
    return format(float(x) + 0.0, ".12g")


def render_csv(result) -> list[str]:
    """CSV lines for any scenario result; header first, LF-joined by emit_csv."""
    if isinstance(result, ChargeTrace):
        lines = ["t,ergotropy,power,entanglement,coherence"]
        for k in range(len(result.times)):
            lines.append(",".join(_fmt(col[k]) for col in (
                result.times, result.ergotropy, result.power,
                result.correlation, result.coherence)))
        return lines
    if isinstance(result, TraceFamily):
        with_full = any(t.power_full is not None for t in result.traces)
        header = [result.label_name, "t", "ergotropy", "power"]
        if with_full:
            header.append("power_full")
        header += [result.correlation_name, "coherence"]
        lines = [",".join(header)]
        for label, trace in zip(result.label_values, result.traces):
            for k in range(len(trace.times)):
                row = [_fmt(label), _fmt(trace.times[k]), _fmt(trace.ergotropy[k]),
                       _fmt(trace.power[k])]
                if with_full:
                    row.append(_fmt(trace.power_full[k]))
                row += [_fmt(trace.correlation[k]), _fmt(trace.coherence[k])]
                lines.append(",".join(row))
        return lines
    if isinstance(result, SweepGrid):
        lines = ["delta,j_over_omega,e_fin,p_avg,q_avg,c_avg"]
        for i, d in enumerate(result.delta_axis):
            for k, j in enumerate(result.j_axis):
                lines.append(",".join(_fmt(v) for v in (
                    d, j, result.e_fin[i, k], result.p_avg[i, k],
                    result.q_avg[i, k], result.c_avg[i, k])))
        return lines
    raise TypeError(f"cannot render {type(result).__name__} as CSV")


def emit_csv(result, path: str) -> None:
    """Write the result as UTF-8 CSV with LF endings and 12-digit formatting."""
    text = "\n".join(render_csv(result)) + "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
