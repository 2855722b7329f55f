"""Laser kicks and pulse-train propagation on the rotational ladder."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .rotor import (
    BasisWindow,
    MoleculeSpec,
    RotationalState,
    cos2_diagonal,
    cos2_offdiagonal,
    free_phases,
)


class LeakageError(RuntimeError):
    """Population reached the truncation buffer beyond the allowed tolerance."""


@dataclass(frozen=True)
class PulseTrainSpec:
    """Periodic train of delta kicks: strength P, fractional detuning, count."""

    kick_strength: float
    detuning: float
    pulse_count: int

    def __post_init__(self):
        if self.kick_strength < 0:
            raise ValueError("kick_strength must be non-negative")
        if self.detuning <= -1:
            raise ValueError("detuning must exceed -1 (pulse period > 0)")
        if self.pulse_count < 1:
            raise ValueError("pulse_count must be at least 1")

    def pulse_period_ps(self, molecule: MoleculeSpec) -> float:
        return (1.0 + self.detuning) * molecule.revival_time_ps


@dataclass
class StroboscopicRecord:
    """Amplitudes right after each kick (rows n = 1..N) plus the initial state."""

    window: BasisWindow
    initial_amplitudes: np.ndarray
    amplitudes: np.ndarray

    @property
    def pulse_count(self) -> int:
        return self.amplitudes.shape[0]

    def state_after(self, n: int) -> RotationalState:
        if n == 0:
            return RotationalState(self.window, self.initial_amplitudes.copy())
        return RotationalState(self.window, self.amplitudes[n - 1].copy())


@lru_cache(maxsize=128)
def kick_operator(window: BasisWindow, P: float) -> np.ndarray:
    """Unitary exp(i P cos^2 theta) on the window; treat the result as read-only.

    Built from the spectral decomposition of the real symmetric tridiagonal
    cos^2 matrix, so unitarity holds to machine precision for any P (negative
    P undoes a positive kick).
    """
    levels = window.levels
    d = cos2_diagonal(levels, window.m)
    o = cos2_offdiagonal(levels[:-1], window.m)
    lam, vec = eigh_tridiagonal(d, o)
    return (vec * np.exp(1j * P * lam)) @ vec.T


def _run_train(amps, window, train, leakage_tolerance):
    u = kick_operator(window, train.kick_strength)
    # Free flight over tau = (1+delta)*t_rev: the full-revival part of the
    # phase is an integer number of turns, so only the detuning survives.
    free = free_phases(window.levels, train.detuning)
    in_buffer = window.levels > window.j_max
    c = amps.copy()
    snapshots = np.empty((train.pulse_count, window.size), dtype=complex)
    for n in range(train.pulse_count):
        c = u @ c
        leak = float(np.sum(np.abs(c[in_buffer]) ** 2))
        if leak > leakage_tolerance:
            raise LeakageError(
                f"population {leak:.2e} beyond J={window.j_max} after pulse {n + 1}"
            )
        snapshots[n] = c
        c = c * free
    return snapshots


def propagate_train(
    initial: RotationalState,
    train: PulseTrainSpec,
    molecule: MoleculeSpec,
    leakage_tolerance: float = 1e-8,
    j_max_ceiling: int = 960,
) -> StroboscopicRecord:
    """Apply kick, free flight, kick, ... recording the state after each kick.

    If population leaks into the truncation buffer the run is retried on a
    window with doubled j_max, up to ``j_max_ceiling``; beyond that the
    leakage error propagates to the caller.
    """
    if abs(initial.norm() - 1.0) > 1e-10:
        raise ValueError("initial state must be normalized")
    window = initial.window
    state = initial
    while True:
        try:
            snaps = _run_train(state.amplitudes, window, train, leakage_tolerance)
            return StroboscopicRecord(window, state.amplitudes.copy(), snaps)
        except LeakageError:
            if 2 * window.j_max > j_max_ceiling:
                raise
            window = window.grown()
            state = state.embedded(window)


def population_history(records, weights) -> np.ndarray:
    """Weighted J populations per pulse; rows n = 0..N, columns J = 0..J_edge.

    Row 0 is the unkicked ensemble.  Rows sum to 1 up to the (bounded)
    truncation leakage.
    """
    counts = {r.pulse_count for r in records}
    if len(counts) != 1:
        raise ValueError("records disagree on pulse count")
    n_pulses = counts.pop()
    j_edge = max(int(r.window.levels[-1]) for r in records)
    hist = np.zeros((n_pulses + 1, j_edge + 1))
    for rec, w in zip(records, weights):
        cols = rec.window.levels
        hist[0, cols] += w * np.abs(rec.initial_amplitudes) ** 2
        hist[1:, cols] += w * np.abs(rec.amplitudes) ** 2
    return hist


def mean_j(history: np.ndarray) -> np.ndarray:
    """Population-weighted <J> for each row of a population history."""
    return history @ np.arange(history.shape[1])
