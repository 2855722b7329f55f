import numpy as np
import pytest

from rotobloch import (
    BasisWindow,
    K_TRAVERSAL,
    LatticeState,
    PulseTrainSpec,
    RotationalState,
    dispersion,
    mean_j,
    population_history,
    propagate_train,
    semiclassical_period,
    semiclassical_trajectory,
    tb_map_step,
    tb_ode_evolve,
)


def _ring_wave(n_sites: int, q: int) -> tuple[LatticeState, float]:
    """Bloch wave on the even ring; k quantized so the wrap joins smoothly."""
    k = np.pi * q / n_sites
    sites = 2 * np.arange(n_sites)
    amps = np.exp(1j * k * sites) / np.sqrt(n_sites)
    return LatticeState(sites, amps, detuning=0.0, periodic=True), k


class TestLatticeState:
    def test_single_site(self):
        s = LatticeState.single_site(4, detuning=-0.002)
        assert s.norm() == 1.0
        assert s.centroid() == 4.0
        assert s.j_sites[0] == 0
        assert np.all(s.j_sites % 2 == 0)

    def test_odd_parity_site(self):
        s = LatticeState.single_site(3, n_sites=20)
        assert s.j_sites[0] == 1
        assert s.centroid() == 3.0

    def test_on_site_potential(self):
        s = LatticeState.single_site(0, detuning=-0.002, n_sites=4)
        expected = np.pi * -0.002 * s.j_sites * (s.j_sites + 1)
        assert np.allclose(s.on_site_potential, expected, atol=0)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            LatticeState(np.arange(3), np.zeros(4, dtype=complex))


class TestTightBindingMap:
    def test_single_step_spreads_to_neighbors(self):
        s = LatticeState.single_site(4, n_sites=9)
        out = tb_map_step(s, 1.0)
        idx = 2
        assert out.amplitudes[idx] == pytest.approx(1.0)
        assert out.amplitudes[idx - 1] == pytest.approx(0.25j)
        assert out.amplitudes[idx + 1] == pytest.approx(0.25j)
        assert np.all(out.amplitudes[: idx - 1] == 0)

    def test_norm_drift_is_second_order(self):
        # linearized map on a lone interior site: norm gains exactly 2 (P/4)^2
        s = LatticeState.single_site(10, n_sites=50)
        out = tb_map_step(s, 1.0)
        assert out.norm() == pytest.approx(1.125, abs=1e-14)

    def test_ring_bloch_wave_is_eigenvector(self):
        s, k = _ring_wave(16, 3)
        out = tb_map_step(s, 2.0)
        factor = 1.0 + 1j * (2.0 / 2.0) * np.cos(2 * k)
        assert np.allclose(out.amplitudes, factor * s.amplitudes, atol=1e-14)


class TestTightBindingOde:
    def test_ring_bloch_phase(self):
        s, k = _ring_wave(12, 2)
        P, n_total = 3.0, 1.0
        out = tb_ode_evolve(s, P, n_total, dn=0.005)
        expected = np.exp(-1j * dispersion(k, P) * n_total) * s.amplitudes
        assert np.abs(out.amplitudes - expected).max() < 1e-8

    def test_norm_conserved_tightly(self):
        s = LatticeState.single_site(0, detuning=-0.002)
        out = tb_ode_evolve(s, 5.0, 20.0, dn=0.01)
        assert abs(out.norm() - 1.0) < 1e-9

    def test_step_validation(self):
        s = LatticeState.single_site(0, n_sites=10)
        with pytest.raises(ValueError):
            tb_ode_evolve(s, 1.0, 1.0, dn=0.2)
        with pytest.raises(ValueError):
            tb_ode_evolve(s, 1.0, 1.005, dn=0.01)

    def test_boundary_arrival_warns(self):
        s = LatticeState.single_site(0, n_sites=8)
        with pytest.warns(UserWarning):
            tb_ode_evolve(s, 5.0, 5.0, dn=0.01)


def test_dispersion_shape():
    assert dispersion(0.0, 4.0) == -2.0
    assert dispersion(np.pi / 2, 4.0) == pytest.approx(2.0)
    k = np.linspace(0, np.pi, 7)
    assert np.allclose(dispersion(k, 3.0), dispersion(k + np.pi, 3.0), atol=1e-12)


class TestSemiclassical:
    def test_trajectory_initial_conditions(self):
        tr = semiclassical_trajectory(5.0, -0.002, n_max=1.0)
        assert tr.n[0] == 0.0
        assert tr.j[0] == 0.0
        assert tr.k[0] == pytest.approx(np.pi / 4)
        assert len(tr.n) == len(tr.j) == len(tr.k) == 1001

    def test_frozen_reference_period(self):
        # pinned against an independent prototype integrator
        period = semiclassical_period(5.0, -0.002)
        assert period == pytest.approx(10.26199835, abs=1e-6)

    def test_zero_detuning_never_turns(self):
        assert semiclassical_period(5.0, 0.0) is None
        tr = semiclassical_trajectory(5.0, 0.0, n_max=10.0)
        assert tr.period is None

    def test_detuning_sign_symmetry(self):
        up = semiclassical_period(5.0, 0.002)
        down = semiclassical_period(5.0, -0.002)
        assert up == pytest.approx(down, rel=1e-9)

    def test_period_monotone_in_detuning_and_strength(self):
        by_delta = [semiclassical_period(5.0, -d) for d in (0.002, 0.003, 0.004)]
        assert by_delta[0] > by_delta[1] > by_delta[2]
        by_p = [semiclassical_period(P, -0.003) for P in (3.0, 5.0, 7.0)]
        assert by_p[0] > by_p[1] > by_p[2]

    def test_quasimomentum_excursion_is_bounded(self):
        # the restoring force reverses at J = -1/2, which caps |k - k0|
        # just above pi/2; this is what makes the traversal rule usable
        tr = semiclassical_trajectory(5.0, -0.002, n_max=60.0)
        excursion = np.abs(tr.k - tr.k[0]).max()
        assert K_TRAVERSAL <= excursion < K_TRAVERSAL + 0.02

    def test_step_validation(self):
        with pytest.raises(ValueError):
            semiclassical_trajectory(5.0, -0.002, dn=0.1)
        with pytest.raises(ValueError):
            semiclassical_trajectory(5.0, -0.002, n_max=-1.0)


@pytest.mark.xfail(
    strict=True,
    reason="the quantum ladder climbs (8/(3 sqrt 5))^2 ~ 1.42x faster than "
    "the uniform-hopping lattice near J=0; the centroid gap passes 1 J unit "
    "at pulse 10",
)
def test_lattice_tracks_quantum_centroid_within_one_unit(n2):
    cold = BasisWindow(m=0, parity=0, j_max=40)
    rec = propagate_train(
        RotationalState.from_level(cold, 0), PulseTrainSpec(1.0, -0.002, 10), n2
    )
    quantum = mean_j(population_history([rec], [1.0]))

    tb = LatticeState.single_site(0, detuning=-0.002)
    for n in range(1, 11):
        tb_n = tb_ode_evolve(tb, 1.0, float(n), dn=0.01)
        assert abs(tb_n.centroid() - quantum[n]) <= 1.0
