"""Alignment observables: instantaneous <cos^2 theta> and its revival average.

The per-pulse "population alignment" is the average of the alignment signal
over exactly one revival time after a kick.  Over that window every J/J+2
coherence completes an integer number of beats, so the average reduces to
the diagonal (population-only) value; the sampled estimate mirrors how the
quantity is measured.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .rotor import (
    MoleculeSpec,
    RotationalState,
    cos2_diagonal,
    cos2_offdiagonal,
    free_phases,
)


@dataclass
class AlignmentSeries:
    """Per-pulse revival-averaged alignment, indexed by pulse_numbers."""

    pulse_numbers: np.ndarray
    population_alignment: np.ndarray
    sample_count_per_revival: int
    traces: list | None = None

    def __post_init__(self):
        self.pulse_numbers = np.asarray(self.pulse_numbers)
        self.population_alignment = np.asarray(self.population_alignment, dtype=float)
        if len(self.pulse_numbers) != len(self.population_alignment):
            raise ValueError("pulse_numbers and values differ in length")
        if np.any(self.population_alignment <= 0) or np.any(
            self.population_alignment >= 1
        ):
            raise ValueError("population alignment must lie strictly in (0, 1)")

    def __len__(self) -> int:
        return len(self.pulse_numbers)


def alignment_expectation(state: RotationalState) -> float:
    """Instantaneous <cos^2 theta> of a windowed state."""
    levels = state.window.levels
    c = state.amplitudes
    d = cos2_diagonal(levels, state.window.m)
    val = float(np.sum(d * (c.real**2 + c.imag**2)))
    if len(c) > 1:
        o = cos2_offdiagonal(levels[:-1], state.window.m)
        val += 2.0 * float(np.sum((o * np.conj(c[1:]) * c[:-1]).real))
    return val


def population_alignment(
    state_after_kick: RotationalState, molecule: MoleculeSpec, samples: int = 100
) -> float:
    """Average <cos^2 theta> over one revival time following a kick.

    Sampled at ``samples`` uniform delays t = s/samples * t_rev,
    s = 0..samples-1 (the endpoint would repeat t = 0 exactly).
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    window = state_after_kick.window
    levels = window.levels
    return float(
        kernels.revival_alignment(
            np.ascontiguousarray(state_after_kick.amplitudes),
            np.asarray(levels, dtype=float),
            cos2_diagonal(levels, window.m),
            cos2_offdiagonal(levels[:-1], window.m),
            samples,
        )
    )


def diagonal_alignment(state: RotationalState) -> float:
    """Coherence-free revival average: sum_J |C_J|^2 <J|cos^2|J>."""
    c = state.amplitudes
    d = cos2_diagonal(state.window.levels, state.window.m)
    return float(np.sum(d * (c.real**2 + c.imag**2)))


def alignment_series(
    records, weights, molecule: MoleculeSpec, samples: int = 100
) -> AlignmentSeries:
    """Ensemble-averaged population alignment after each pulse.

    Entry 0 is the unkicked ensemble baseline; entries 1..N follow the
    kicks.  The reduction runs in the given member order, which the
    drivers keep fixed, so results are reproducible bit for bit.
    """
    counts = {r.pulse_count for r in records}
    if len(counts) != 1:
        raise ValueError("records disagree on pulse count")
    n_pulses = counts.pop()
    values = np.zeros(n_pulses + 1)
    for rec, w in zip(records, weights):
        values[0] += w * alignment_expectation(rec.state_after(0))
        for n in range(1, n_pulses + 1):
            values[n] += w * population_alignment(
                rec.state_after(n), molecule, samples
            )
    return AlignmentSeries(np.arange(n_pulses + 1), values, samples)


def dense_trace(
    state: RotationalState, molecule: MoleculeSpec, samples: int = 200
) -> tuple[np.ndarray, np.ndarray]:
    """<cos^2 theta>(t) on a uniform grid over one revival; returns (t_ps, values)."""
    levels = state.window.levels
    d = cos2_diagonal(levels, state.window.m)
    o = cos2_offdiagonal(levels[:-1], state.window.m)
    fractions = np.arange(samples) / samples
    out = np.empty(samples)
    for i, r in enumerate(fractions):
        c = state.amplitudes * free_phases(levels, r)
        out[i] = float(np.sum(d * (c.real**2 + c.imag**2))) + 2.0 * float(
            np.sum((o * np.conj(c[1:]) * c[:-1]).real)
        )
    return fractions * molecule.revival_time_ps, out
