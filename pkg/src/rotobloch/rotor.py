"""Angular-momentum basis, molecule parameters, and field-free evolution.

Everything downstream works on a ladder of |J, M> states with fixed M and
fixed J-parity, since the interaction conserves both.  Internally all phases
are expressed in units of the revival time, so the only physical constants
appear at the configuration boundary (thermal weights, picosecond inputs).
"""

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy.constants import hbar
from scipy.constants import k as k_boltzmann


@dataclass(frozen=True)
class MoleculeSpec:
    """Linear-rotor species: revival time, spin weights, temperature.

    Exactly one of ``revival_time_ps`` and ``rotational_constant`` (rad/s)
    must be supplied; the other is derived through t_rev = pi / B.
    """

    revival_time_ps: float | None = None
    rotational_constant: float | None = None
    even_j_weight: float = 1.0
    odd_j_weight: float = 1.0
    temperature_K: float = 0.0

    def __post_init__(self):
        if (self.revival_time_ps is None) == (self.rotational_constant is None):
            raise ValueError(
                "supply exactly one of revival_time_ps and rotational_constant"
            )
        if self.revival_time_ps is None:
            object.__setattr__(
                self, "revival_time_ps", np.pi / (self.rotational_constant * 1e-12)
            )
        else:
            object.__setattr__(
                self, "rotational_constant", np.pi / (self.revival_time_ps * 1e-12)
            )
        if self.revival_time_ps <= 0:
            raise ValueError("revival_time_ps must be positive")
        if self.even_j_weight < 0 or self.odd_j_weight < 0:
            raise ValueError("spin weights must be non-negative")
        if self.even_j_weight + self.odd_j_weight <= 0:
            raise ValueError("at least one spin weight must be positive")
        if self.temperature_K < 0:
            raise ValueError("temperature_K must be non-negative")

    def parity_weight(self, j: int) -> float:
        return self.even_j_weight if j % 2 == 0 else self.odd_j_weight

    def boltzmann_exponent(self) -> float:
        """Return beta = hbar*B / (kB*T), the exponent unit of J(J+1)."""
        if self.temperature_K == 0:
            return np.inf
        return hbar * self.rotational_constant / (k_boltzmann * self.temperature_K)

    @classmethod
    def nitrogen(cls, temperature_K: float = 298.0) -> "MoleculeSpec":
        """14N2 parameters: t_rev = 8.38 ps, spin weights 2:1 (even:odd)."""
        return cls(
            revival_time_ps=8.38,
            even_j_weight=2.0,
            odd_j_weight=1.0,
            temperature_K=temperature_K,
        )


@dataclass(frozen=True)
class BasisWindow:
    """Truncated J ladder at fixed M and parity.

    ``j_max`` is the nominal top of the physical window; ``buffer`` extra
    levels above it absorb transient population during a kick so that
    truncation artifacts are detectable rather than silent.
    """

    m: int
    parity: int
    j_max: int
    buffer: int = 6

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0 (even J) or 1 (odd J)")
        if self.buffer < 2:
            raise ValueError("buffer must be at least 2")
        if self.j_max < self.j_lowest:
            raise ValueError("j_max below the lowest level compatible with m")

    @property
    def j_lowest(self) -> int:
        m = abs(self.m)
        return m if m % 2 == self.parity else m + 1

    @property
    def levels(self) -> np.ndarray:
        return np.arange(self.j_lowest, self.j_max + self.buffer + 1, 2)

    @property
    def size(self) -> int:
        return len(self.levels)

    def grown(self) -> "BasisWindow":
        return replace(self, j_max=2 * self.j_max)


@dataclass
class RotationalState:
    """Complex amplitudes C_J on the levels of a BasisWindow."""

    window: BasisWindow
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (self.window.size,):
            raise ValueError("amplitude vector does not match the window")

    @classmethod
    def from_level(cls, window: BasisWindow, j: int) -> "RotationalState":
        levels = window.levels
        idx = np.searchsorted(levels, j)
        if idx >= len(levels) or levels[idx] != j:
            raise ValueError(f"level J={j} not in window")
        amps = np.zeros(len(levels), dtype=complex)
        amps[idx] = 1.0
        return cls(window, amps)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def edge_population(self) -> float:
        return float(np.abs(self.amplitudes[-1]) ** 2)

    def buffer_population(self) -> float:
        mask = self.window.levels > self.window.j_max
        return float(np.sum(np.abs(self.amplitudes[mask]) ** 2))

    def is_valid(self, leakage_tolerance: float = 1e-8) -> bool:
        return (
            abs(self.norm() - 1.0) < 1e-10
            and self.edge_population() < leakage_tolerance
        )

    def embedded(self, window: BasisWindow) -> "RotationalState":
        """Re-express this state on a taller window with the same base."""
        if (
            window.j_lowest != self.window.j_lowest
            or window.size < self.window.size
        ):
            raise ValueError("target window must extend the current one upward")
        amps = np.zeros(window.size, dtype=complex)
        amps[: self.window.size] = self.amplitudes
        return RotationalState(window, amps)


def cos2_matrix_element(j: int, j_prime: int, m: int) -> float:
    """Matrix element <j', m| cos^2(theta) |j, m> of the alignment operator.

    Parameters
    ----------
    j, j_prime : int
        Angular momentum quantum numbers; both must satisfy J >= |m|.
    m : int
        Common projection quantum number (the operator conserves M).

    Returns
    -------
    float
        The closed-form element.  Nonzero only for j' in {j, j +- 2};
        symmetric under exchange of j and j'.
    """
    m = abs(m)
    if j < m or j_prime < m:
        raise ValueError("need j >= |m| and j_prime >= |m|")
    if j_prime < j:
        j, j_prime = j_prime, j
    if j_prime == j:
        jj = float(j)
        return 1.0 / 3.0 + (2.0 / 3.0) * (jj * (jj + 1) - 3 * m * m) / (
            (2 * jj - 1) * (2 * jj + 3)
        )
    if j_prime == j + 2:
        jj = float(j)
        return (1.0 / (2 * jj + 3)) * np.sqrt(
            ((jj + 1) ** 2 - m * m)
            * ((jj + 2) ** 2 - m * m)
            / ((2 * jj + 1) * (2 * jj + 5))
        )
    return 0.0


def cos2_diagonal(levels: np.ndarray, m: int) -> np.ndarray:
    j = np.asarray(levels, dtype=float)
    m2 = float(m) ** 2
    return 1.0 / 3.0 + (2.0 / 3.0) * (j * (j + 1) - 3 * m2) / ((2 * j - 1) * (2 * j + 3))


def cos2_offdiagonal(levels: np.ndarray, m: int) -> np.ndarray:
    """Elements <J+2, m|cos^2|J, m> for each J in ``levels``."""
    j = np.asarray(levels, dtype=float)
    m2 = float(m) ** 2
    return (1.0 / (2 * j + 3)) * np.sqrt(
        ((j + 1) ** 2 - m2) * ((j + 2) ** 2 - m2) / ((2 * j + 1) * (2 * j + 5))
    )


def phase_turns(levels: np.ndarray, revival_fraction: float) -> np.ndarray:
    # J(J+1) is always even, so the free phase pi*J(J+1)*r is an integer
    # number of half-turns; reducing J(J+1)/2 * r mod 1 keeps t = t_rev an
    # exact identity instead of a ~1e-12 residue from large-angle trig.
    levels = np.asarray(levels)
    half = (levels * (levels + 1)) // 2
    return np.mod(half * float(revival_fraction), 1.0)


def free_phases(levels: np.ndarray, revival_fraction: float) -> np.ndarray:
    """Per-level factors exp(-i pi J(J+1) r) for r in revival-time units."""
    return np.exp(-2j * np.pi * phase_turns(levels, revival_fraction))


def free_propagate(
    state: RotationalState, t_ps: float, molecule: MoleculeSpec
) -> RotationalState:
    """Evolve freely for ``t_ps`` picoseconds: C_J *= exp(-i pi J(J+1) t/t_rev).

    Norm is preserved exactly; t = t_rev (and any multiple) is the identity.
    """
    if t_ps < 0:
        raise ValueError("t_ps must be non-negative")
    r = t_ps / molecule.revival_time_ps
    return RotationalState(
        state.window, state.amplitudes * free_phases(state.window.levels, r)
    )


class ThermalMember(NamedTuple):
    j0: int
    m0: int
    weight: float


_J_SCAN_LIMIT = 512


def thermal_ensemble(
    molecule: MoleculeSpec, weight_cutoff: float = 1e-6
) -> list[ThermalMember]:
    """Boltzmann-weighted list of initial states (J0, M0, weight).

    Parameters
    ----------
    molecule : MoleculeSpec
        Supplies the rotational constant, temperature and the parity spin
        weights g(J).
    weight_cutoff : float
        The high-J tail is dropped once its cumulative weight falls below
        this fraction of the total; the kept weights are renormalized.

    Returns
    -------
    list of ThermalMember
        One entry per (J0, M0) with M0 = -J0..J0, ordered by (J0, M0),
        each carrying weight proportional to g(J0) exp[-beta J0(J0+1)].
        At T = 0 only the lowest level with nonzero spin weight is
        populated, its M states sharing the weight equally.
    """
    if not 0 < weight_cutoff < 1:
        raise ValueError("weight_cutoff must lie in (0, 1)")
    if molecule.temperature_K == 0:
        j0 = 0 if molecule.even_j_weight > 0 else 1
        share = 1.0 / (2 * j0 + 1)
        return [ThermalMember(j0, m, share) for m in range(-j0, j0 + 1)]

    beta = molecule.boltzmann_exponent()
    js = np.arange(_J_SCAN_LIMIT)
    g = np.where(js % 2 == 0, molecule.even_j_weight, molecule.odd_j_weight)
    level_w = g * (2 * js + 1) * np.exp(-beta * js * (js + 1))
    # tail[J] is the fraction of population at J and above; keep the
    # smallest prefix whose discarded tail is below the cutoff.
    tail = np.cumsum(level_w[::-1])[::-1] / level_w.sum()
    below = np.nonzero(tail < weight_cutoff)[0]
    j_cut = int(below[0]) if len(below) else _J_SCAN_LIMIT

    members = []
    for j0 in range(j_cut):
        w = molecule.parity_weight(j0) * float(np.exp(-beta * j0 * (j0 + 1)))
        for m0 in range(-j0, j0 + 1):
            members.append((j0, m0, w))
    kept = sum(w for _, _, w in members)
    return [ThermalMember(j0, m0, w / kept) for j0, m0, w in members]
