"""Reduced models on the angular-momentum lattice.

The J ladder at fixed M and parity behaves as a 1D lattice with spacing 2:
a weak kick couples neighbors with amplitude P/4 and the detuning acts as
an on-site potential pi*delta*J(J+1).  This module carries the first-order
map, the continuum ODE with its cosine band, and the semiclassical
trajectories used to predict oscillation periods.
"""

import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import kernels

J_SITE_MAX = 200


@dataclass
class LatticeState:
    """Amplitudes on one parity sublattice; ``periodic`` is a test-only ring."""

    j_sites: np.ndarray
    amplitudes: np.ndarray
    detuning: float = 0.0
    periodic: bool = False

    def __post_init__(self):
        self.j_sites = np.asarray(self.j_sites)
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.j_sites.shape != self.amplitudes.shape:
            raise ValueError("sites and amplitudes differ in shape")

    @classmethod
    def single_site(
        cls, j0: int = 0, detuning: float = 0.0, n_sites: int | None = None
    ) -> "LatticeState":
        parity = j0 % 2
        if n_sites is None:
            n_sites = (J_SITE_MAX - parity) // 2 + 1
        sites = parity + 2 * np.arange(n_sites)
        amps = np.zeros(n_sites, dtype=complex)
        amps[(j0 - parity) // 2] = 1.0
        return cls(sites, amps, detuning)

    @property
    def on_site_potential(self) -> np.ndarray:
        j = self.j_sites.astype(float)
        return np.pi * self.detuning * j * (j + 1)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def centroid(self) -> float:
        p = np.abs(self.amplitudes) ** 2
        return float(np.sum(self.j_sites * p) / np.sum(p))


def _neighbor_sum(c: np.ndarray, periodic: bool) -> np.ndarray:
    if periodic:
        return np.roll(c, 1) + np.roll(c, -1)
    nb = np.zeros_like(c)
    nb[1:] += c[:-1]
    nb[:-1] += c[1:]
    return nb


def tb_map_step(state: LatticeState, P: float) -> LatticeState:
    """One pulse of the first-order map C_J += i(P/4)(C_{J+2}+C_{J-2}) - iV C_J.

    Applied simultaneously from the pre-step amplitudes.  The map is the
    linearization of the unitary dynamics, so its norm drifts at O(P^2)
    per step; that drift is left visible on purpose.
    """
    c = state.amplitudes
    new = c + 1j * (P / 4.0) * _neighbor_sum(c, state.periodic)
    new = new - 1j * state.on_site_potential * c
    return replace(state, amplitudes=new)


def tb_ode_evolve(
    state: LatticeState, P: float, n_total: float, dn: float = 0.01
) -> LatticeState:
    """Integrate i dC/dn = -(P/4)(C_{J+2}+C_{J-2}) + V(J) C with classical RK4.

    Norm is conserved to O(dn^4) per step and not renormalized, so the
    residual drift stays available as an accuracy diagnostic.
    """
    if dn > 0.1:
        raise ValueError("dn must not exceed 0.1")
    steps = int(round(n_total / dn))
    if abs(steps * dn - n_total) > 1e-9 * max(1.0, abs(n_total)):
        raise ValueError("n_total must be an integer number of dn steps")
    v = state.on_site_potential
    periodic = state.periodic

    def deriv(c):
        return -1j * (-(P / 4.0) * _neighbor_sum(c, periodic) + v * c)

    c = state.amplitudes.copy()
    for _ in range(steps):
        k1 = deriv(c)
        k2 = deriv(c + 0.5 * dn * k1)
        k3 = deriv(c + 0.5 * dn * k2)
        k4 = deriv(c + dn * k3)
        c = c + (dn / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not periodic and float(np.abs(c[-1]) ** 2) > 1e-10:
        warnings.warn("wave packet reached the lattice boundary", stacklevel=2)
    return replace(state, amplitudes=c)


def dispersion(k, P: float):
    """Band energy of the lattice coupling: eps(k) = -(P/2) cos(2k)."""
    return -(P / 2.0) * np.cos(2.0 * np.asarray(k, dtype=float))


@dataclass
class SemiClassicalTrajectory:
    """Sampled (n, J, k) path; k is stored unwrapped, J may cross zero."""

    n: np.ndarray
    j: np.ndarray
    k: np.ndarray
    period: float | None


# Half the k-band width.  The force -pi*delta*(2J+1) reverses sign when J
# crosses -1/2, which bounds the k excursion to barely above pi/2: a full
# pi traversal never happens for the standard launch point.  |k - k0|
# first reaches pi/2 exactly when J returns to its initial value (the k
# swing is time-symmetric about the band edge), so this threshold reads
# off the observable J-oscillation period.
K_TRAVERSAL = np.pi / 2.0


def semiclassical_trajectory(
    P: float,
    delta: float,
    j0: float = 0.0,
    k0: float = np.pi / 4.0,
    n_max: float = 100.0,
    dn: float = 0.001,
) -> SemiClassicalTrajectory:
    """Integrate dJ/dn = P sin(2k), dk/dn = -pi delta (2J+1) from (j0, k0).

    The returned period is the first time |k - k0| reaches K_TRAVERSAL,
    located by linear interpolation between integrator samples, or None
    when no crossing occurs within n_max (delta = 0 in particular).
    """
    if dn > 0.01:
        raise ValueError("dn must not exceed 0.01")
    if n_max <= 0:
        raise ValueError("n_max must be positive")
    ns, js, ks, crossing = kernels.rk4_semiclassical(
        float(P), float(delta), float(j0), float(k0), float(n_max), float(dn),
        K_TRAVERSAL,
    )
    return SemiClassicalTrajectory(ns, js, ks, crossing if crossing > 0 else None)


def semiclassical_period(
    P: float, delta: float, n_max: float = 100.0, dn: float = 0.001
) -> float | None:
    """Bloch period from the standard launch point j0=0, k0=pi/4.

    None at delta = 0, where the packet grows without turning.
    """
    if delta == 0:
        return None
    return semiclassical_trajectory(P, delta, n_max=n_max, dn=dn).period
