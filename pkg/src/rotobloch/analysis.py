"""Experiment drivers: configuration, sweeps, period extraction, tables."""

import json
import sys
from dataclasses import dataclass, fields, replace

import numpy as np

from . import __version__
from .lattice import semiclassical_period
from .observables import AlignmentSeries, alignment_series
from .propagator import (
    LeakageError,
    PulseTrainSpec,
    population_history,
    propagate_train,
)
from .rotor import BasisWindow, MoleculeSpec, RotationalState, thermal_ensemble


class ConfigError(ValueError):
    """Invalid experiment configuration."""


class NoExtremumError(RuntimeError):
    """The fitted polynomial has no interior maximum to read a period from."""


KINDS = ("populations", "alignment_series", "period_sweep", "semiclassical_sweep")


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    revival_time_ps: float = 8.38
    temperature_K: float = 298.0
    even_j_weight: float = 2.0
    odd_j_weight: float = 1.0
    kick_strength: tuple = (5.0,)
    detuning: tuple = (-0.002,)
    pulses: int = 8
    j_max: int = 60
    buffer: int = 6
    samples: int = 100
    weight_cutoff: float = 1e-6
    leakage_tolerance: float = 1e-8
    j_max_ceiling: int = 960
    fit_degree: int = 4
    out: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}")
        if self.revival_time_ps <= 0:
            raise ConfigError("revival_time_ps must be positive")
        if self.temperature_K < 0:
            raise ConfigError("temperature_K must be non-negative")
        if self.even_j_weight < 0 or self.odd_j_weight < 0:
            raise ConfigError("spin weights must be non-negative")
        if self.even_j_weight + self.odd_j_weight <= 0:
            raise ConfigError("at least one spin weight must be positive")
        if not self.kick_strength or any(p < 0 for p in self.kick_strength):
            raise ConfigError("kick_strength values must be non-negative")
        if not self.detuning or any(d <= -1 for d in self.detuning):
            raise ConfigError("detuning values must exceed -1")
        if self.pulses < 1:
            raise ConfigError("pulses must be at least 1")
        if self.buffer < 2:
            raise ConfigError("buffer must be at least 2")
        if self.j_max < 1 or self.j_max_ceiling < self.j_max:
            raise ConfigError("need 1 <= j_max <= j_max_ceiling")
        if self.samples < 1:
            raise ConfigError("samples must be at least 1")
        if not 0 < self.weight_cutoff < 1:
            raise ConfigError("weight_cutoff must lie in (0, 1)")
        if not 0 < self.leakage_tolerance < 1:
            raise ConfigError("leakage_tolerance must lie in (0, 1)")
        if self.fit_degree < 2:
            raise ConfigError("fit_degree must be at least 2")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.kind in ("populations", "period_sweep", "semiclassical_sweep"):
            if len(self.kick_strength) != 1:
                raise ConfigError(f"{self.kind} takes a single kick_strength")
        if self.kind == "populations" and len(self.detuning) != 1:
            raise ConfigError("populations takes a single detuning")

    def molecule(self) -> MoleculeSpec:
        return MoleculeSpec(
            revival_time_ps=self.revival_time_ps,
            even_j_weight=self.even_j_weight,
            odd_j_weight=self.odd_j_weight,
            temperature_K=self.temperature_K,
        )


_TUPLE_FIELDS = ("kick_strength", "detuning")


def _coerce(name: str, ftype, value):
    if name in _TUPLE_FIELDS:
        if isinstance(value, (int, float)):
            return (float(value),)
        if isinstance(value, str):
            parts = [p for p in value.split(",") if p.strip()]
            if not parts:
                raise ConfigError(f"{name} must list at least one value")
            return tuple(float(p) for p in parts)
        return tuple(float(v) for v in value)
    if name == "out":
        return None if value in (None, "") else str(value)
    if ftype == "int":
        return int(value)
    if ftype == "float":
        return float(value)
    return str(value)


_FIELD_TYPES = {
    "kind": "str",
    "revival_time_ps": "float",
    "temperature_K": "float",
    "even_j_weight": "float",
    "odd_j_weight": "float",
    "kick_strength": "tuple",
    "detuning": "tuple",
    "pulses": "int",
    "j_max": "int",
    "buffer": "int",
    "samples": "int",
    "weight_cutoff": "float",
    "leakage_tolerance": "float",
    "j_max_ceiling": "int",
    "fit_degree": "int",
    "out": "str",
    "format": "str",
}


def parse_config_file(path: str) -> dict:
    """Read a flat key=value config file; '#' starts a comment line."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _FIELD_TYPES:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def build_config(kind: str, file_values: dict | None = None, **overrides):
    """Merge config-file values with keyword overrides; overrides win."""
    merged = dict(file_values or {})
    merged.update({k: v for k, v in overrides.items() if v is not None})
    merged.pop("kind", None)
    kwargs = {}
    for key, value in merged.items():
        if key not in _FIELD_TYPES:
            raise ConfigError(f"unknown config key {key!r}")
        try:
            kwargs[key] = _coerce(key, _FIELD_TYPES[key], value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {key}: {value!r}") from exc
    return ExperimentConfig(kind=kind, **kwargs)


def serialize_config(config: ExperimentConfig) -> str:
    lines = []
    for f in fields(config):
        value = getattr(config, f.name)
        if value is None:
            continue
        if f.name in _TUPLE_FIELDS:
            value = ",".join(repr(v) for v in value)
        lines.append(f"{f.name}={value}")
    return "\n".join(lines) + "\n"


def config_meta(config: ExperimentConfig) -> dict:
    meta = {"version": __version__}
    for f in fields(config):
        if f.name == "out":
            # destination must not leak into content, or otherwise identical
            # runs written to different paths stop being bit-identical
            continue
        value = getattr(config, f.name)
        if f.name in _TUPLE_FIELDS:
            value = ",".join(repr(v) for v in value)
        meta[f.name] = "" if value is None else str(value)
    return meta


@dataclass(frozen=True)
class PeriodEstimate:
    period: float
    fit_degree: int
    fit_residual: float
    method: str
    extrema_rule: str | None = None

    def __post_init__(self):
        if self.period <= 0:
            raise ValueError("period must be positive")
        if self.fit_residual < 0:
            raise ValueError("fit_residual must be non-negative")
        if self.method not in ("polynomial_extrema", "zone_traversal"):
            raise ValueError(f"unknown method {self.method!r}")


def extract_period(series, degree: int = 4) -> PeriodEstimate:
    """Oscillation period from a polynomial least-squares fit of the series.

    Accepts an AlignmentSeries or a plain array of values sampled at
    n = 0, 1, 2, ...  With a single interior maximum at n_peak the series
    is one rise-and-fall and the period is 2*n_peak; with two resolvable
    maxima it is their spacing.  Raises NoExtremumError when the fit has
    no interior maximum.
    """
    if degree < 2:
        raise ValueError("degree must be at least 2")
    if isinstance(series, AlignmentSeries):
        nn = np.asarray(series.pulse_numbers, dtype=float)
        yy = series.population_alignment
    else:
        yy = np.asarray(series, dtype=float)
        nn = np.arange(len(yy), dtype=float)
    if len(yy) < degree + 2:
        raise ValueError("series too short for the requested degree")
    coef = np.polynomial.polynomial.polyfit(nn, yy, degree)
    fit = np.polynomial.polynomial.polyval(nn, coef)
    residual = float(np.sqrt(np.mean((yy - fit) ** 2)))

    dcoef = np.polynomial.polynomial.polyder(coef)
    d2coef = np.polynomial.polynomial.polyder(dcoef)
    roots = np.polynomial.polynomial.polyroots(dcoef)
    maxima = sorted(
        float(r.real)
        for r in roots
        if abs(r.imag) < 1e-9
        and nn[0] < r.real < nn[-1]
        and np.polynomial.polynomial.polyval(r.real, d2coef) < 0
    )
    if not maxima:
        raise NoExtremumError("fitted polynomial has no interior maximum")
    if len(maxima) >= 2:
        return PeriodEstimate(
            maxima[1] - maxima[0], degree, residual, "polynomial_extrema",
            "peak_to_peak",
        )
    return PeriodEstimate(
        2.0 * maxima[0], degree, residual, "polynomial_extrema", "half_period"
    )


def semiclassical_period_estimate(
    P: float, delta: float, n_max: float = 100.0, dn: float = 0.001
) -> PeriodEstimate | None:
    period = semiclassical_period(P, delta, n_max=n_max, dn=dn)
    if period is None:
        return None
    return PeriodEstimate(period, 0, 0.0, "zone_traversal")


@dataclass
class Table:
    columns: list
    rows: list
    meta: dict


def propagate_thermal_ensemble(config: ExperimentConfig, P: float, delta: float):
    """Propagate every distinct thermal member; returns (records, weights).

    Members with the same (J0, |M0|) evolve identically, so they are merged
    with summed weights.  The member order is fixed by (J0, |M0|), which
    pins the reduction order and keeps outputs bit-reproducible.
    """
    molecule = config.molecule()
    merged: dict = {}
    for j0, m0, w in thermal_ensemble(molecule, config.weight_cutoff):
        key = (j0, abs(m0))
        merged[key] = merged.get(key, 0.0) + w
    train = PulseTrainSpec(P, delta, config.pulses)
    records, weights = [], []
    for (j0, m), w in sorted(merged.items()):
        window = BasisWindow(m=m, parity=j0 % 2, j_max=config.j_max,
                             buffer=config.buffer)
        initial = RotationalState.from_level(window, j0)
        records.append(
            propagate_train(
                initial, train, molecule,
                leakage_tolerance=config.leakage_tolerance,
                j_max_ceiling=config.j_max_ceiling,
            )
        )
        weights.append(w)
    return records, weights


def run_populations(config: ExperimentConfig) -> Table:
    records, weights = propagate_thermal_ensemble(
        config, config.kick_strength[0], config.detuning[0]
    )
    hist = population_history(records, weights)
    columns = ["n"] + [f"J{j}" for j in range(hist.shape[1])]
    rows = [[n] + [float(v) for v in hist[n]] for n in range(hist.shape[0])]
    return Table(columns, rows, config_meta(config))


def _series_label(P: float, delta: float) -> str:
    return f"alignment[P={P:g},delta={delta:g}]"


def run_alignment_series(config: ExperimentConfig) -> Table:
    molecule = config.molecule()
    columns = ["n"]
    series_list = []
    for P in config.kick_strength:
        for delta in config.detuning:
            records, weights = propagate_thermal_ensemble(config, P, delta)
            series_list.append(
                alignment_series(records, weights, molecule, config.samples)
            )
            columns.append(_series_label(P, delta))
    rows = []
    for i in range(config.pulses + 1):
        rows.append([i] + [float(s.population_alignment[i]) for s in series_list])
    return Table(columns, rows, config_meta(config))


def run_period_sweep(config: ExperimentConfig) -> Table:
    """Quantum and semiclassical periods per detuning; unresolvable cells stay empty."""
    molecule = config.molecule()
    P = config.kick_strength[0]
    columns = ["delta", "period_quantum", "period_semiclassical", "fit_residual"]
    rows = []
    for delta in config.detuning:
        if delta == 0:
            print(
                "warning: period diverges at zero detuning; cell left empty",
                file=sys.stderr,
            )
            rows.append([delta, None, None, None])
            continue
        sc = semiclassical_period(P, delta)
        quantum = residual = None
        records, weights = propagate_thermal_ensemble(config, P, delta)
        series = alignment_series(records, weights, molecule, config.samples)
        try:
            estimate = extract_period(series, config.fit_degree)
            quantum, residual = estimate.period, estimate.fit_residual
        except NoExtremumError:
            print(
                f"warning: no oscillation resolved within {config.pulses} pulses "
                f"at delta={delta:g}; cell left empty",
                file=sys.stderr,
            )
        rows.append([delta, quantum, sc, residual])
    return Table(columns, rows, config_meta(config))


def run_semiclassical_sweep(config: ExperimentConfig) -> Table:
    P = config.kick_strength[0]
    columns = ["delta", "period_semiclassical"]
    rows = []
    for delta in config.detuning:
        period = semiclassical_period(P, delta)
        if period is None:
            print(
                f"warning: no zone traversal within the horizon at "
                f"delta={delta:g}; cell left empty",
                file=sys.stderr,
            )
        rows.append([delta, period])
    return Table(columns, rows, config_meta(config))


RUNNERS = {
    "populations": run_populations,
    "alignment_series": run_alignment_series,
    "period_sweep": run_period_sweep,
    "semiclassical_sweep": run_semiclassical_sweep,
}


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def render_csv(table: Table) -> str:
    lines = [f"# {k}={v}" for k, v in table.meta.items()]
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(_format_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def render_json(table: Table) -> str:
    payload = {
        "meta": table.meta,
        "columns": table.columns,
        "rows": [
            [None if v is None else (int(v) if isinstance(v, (int, np.integer))
                                     else float(v)) for v in row]
            for row in table.rows
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def write_table(table: Table, path: str | None, fmt: str) -> None:
    text = render_csv(table) if fmt == "csv" else render_json(table)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
