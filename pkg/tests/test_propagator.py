import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rotobloch import (
    BasisWindow,
    LeakageError,
    PulseTrainSpec,
    RotationalState,
    kick_operator,
    mean_j,
    population_history,
    propagate_train,
)

from .oracles import kick_unitary_expm


def test_pulse_train_validation():
    with pytest.raises(ValueError):
        PulseTrainSpec(-1.0, 0.0, 4)
    with pytest.raises(ValueError):
        PulseTrainSpec(5.0, -1.0, 4)
    with pytest.raises(ValueError):
        PulseTrainSpec(5.0, 0.0, 0)


def test_pulse_period(n2):
    train = PulseTrainSpec(5.0, 8.36 / 8.38 - 1.0, 8)
    assert train.pulse_period_ps(n2) == pytest.approx(8.36, rel=1e-14)


class TestKickOperator:
    @given(st.floats(min_value=0.0, max_value=10.0, allow_nan=False))
    def test_unitarity(self, P):
        w = BasisWindow(m=1, parity=1, j_max=15, buffer=2)
        u = kick_operator(w, P)
        defect = np.abs(u @ u.conj().T - np.eye(w.size)).max()
        assert defect < 1e-12

    def test_matches_expm_oracle(self):
        w = BasisWindow(m=0, parity=0, j_max=24, buffer=4)
        for P in (1.0, 5.0):
            u = kick_operator(w, P)
            ref = kick_unitary_expm(w, P)
            assert np.abs(u - ref).max() < 1e-10

    def test_zero_strength_is_identity(self):
        w = BasisWindow(m=0, parity=0, j_max=10)
        assert np.abs(kick_operator(w, 0.0) - np.eye(w.size)).max() < 1e-13

    def test_negative_strength_inverts(self):
        w = BasisWindow(m=2, parity=0, j_max=14)
        u = kick_operator(w, 3.0)
        v = kick_operator(w, -3.0)
        assert np.abs(u @ v - np.eye(w.size)).max() < 1e-12

    def test_cached(self):
        w = BasisWindow(m=0, parity=0, j_max=12)
        assert kick_operator(w, 2.5) is kick_operator(w, 2.5)


class TestPropagateTrain:
    def test_record_shape_and_initial_state(self, n2):
        w = BasisWindow(m=0, parity=0, j_max=30)
        init = RotationalState.from_level(w, 0)
        rec = propagate_train(init, PulseTrainSpec(2.0, -0.002, 5), n2)
        assert rec.pulse_count == 5
        assert rec.amplitudes.shape == (5, rec.window.size)
        assert np.array_equal(rec.state_after(0).amplitudes, init.amplitudes)

    def test_norm_conserved_each_pulse(self, n2):
        w = BasisWindow(m=1, parity=1, j_max=35)
        init = RotationalState.from_level(w, 3)
        rec = propagate_train(init, PulseTrainSpec(5.0, -0.003, 8), n2)
        norms = np.sum(np.abs(rec.amplitudes) ** 2, axis=1)
        assert np.abs(norms - 1.0).max() < 1e-12

    def test_unnormalized_initial_rejected(self, n2):
        w = BasisWindow(m=0, parity=0, j_max=10)
        bad = RotationalState(w, np.full(w.size, 0.5, dtype=complex))
        with pytest.raises(ValueError):
            propagate_train(bad, PulseTrainSpec(1.0, 0.0, 1), n2)

    def test_leakage_raises_when_growth_capped(self, n2):
        w = BasisWindow(m=0, parity=0, j_max=6, buffer=2)
        init = RotationalState.from_level(w, 0)
        with pytest.raises(LeakageError):
            propagate_train(
                init, PulseTrainSpec(5.0, 0.0, 8), n2, j_max_ceiling=6
            )

    def test_window_growth_matches_direct_big_window(self, n2):
        train = PulseTrainSpec(5.0, 0.0, 8)
        small = RotationalState.from_level(
            BasisWindow(m=0, parity=0, j_max=6, buffer=2), 0
        )
        grown = propagate_train(small, train, n2)
        assert grown.window.j_max > 6

        big = RotationalState.from_level(
            BasisWindow(m=0, parity=0, j_max=grown.window.j_max, buffer=2), 0
        )
        direct = propagate_train(big, train, n2)
        a = grown.state_after(8).amplitudes
        b = direct.state_after(8).amplitudes
        assert a.shape == b.shape
        assert abs(np.vdot(a, b)) ** 2 == pytest.approx(1.0, abs=1e-12)


class TestPopulationHistory:
    def test_rows_sum_to_one(self, n2):
        w = BasisWindow(m=0, parity=0, j_max=30)
        recs = [
            propagate_train(
                RotationalState.from_level(w, j0), PulseTrainSpec(3.0, -0.002, 4), n2
            )
            for j0 in (0, 2)
        ]
        hist = population_history(recs, [0.25, 0.75])
        assert np.abs(hist.sum(axis=1) - 1.0).max() < 1e-10

    def test_initial_row_is_unkicked_ensemble(self, n2):
        w = BasisWindow(m=0, parity=0, j_max=30)
        recs = [
            propagate_train(
                RotationalState.from_level(w, j0), PulseTrainSpec(3.0, -0.002, 4), n2
            )
            for j0 in (0, 4)
        ]
        hist = population_history(recs, [0.5, 0.5])
        assert hist[0, 0] == 0.5
        assert hist[0, 4] == 0.5
        assert mean_j(hist)[0] == pytest.approx(2.0, abs=1e-14)

    def test_mismatched_pulse_counts_rejected(self, n2):
        w = BasisWindow(m=0, parity=0, j_max=30)
        r1 = propagate_train(
            RotationalState.from_level(w, 0), PulseTrainSpec(1.0, 0.0, 2), n2
        )
        r2 = propagate_train(
            RotationalState.from_level(w, 0), PulseTrainSpec(1.0, 0.0, 3), n2
        )
        with pytest.raises(ValueError):
            population_history([r1, r2], [0.5, 0.5])
