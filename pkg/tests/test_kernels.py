"""Equivalence of the compiled kernels and the pure-numpy fallback."""

import numpy as np
import pytest

from rotobloch import _fallback
from rotobloch.kernels import backend_name
from rotobloch.rotor import cos2_diagonal, cos2_offdiagonal

compiled = pytest.importorskip(
    "rotobloch._kernels", reason="compiled extension not built"
)


def _alignment_inputs(seed: int, size: int = 28):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=size) + 1j * rng.normal(size=size)
    c /= np.linalg.norm(c)
    levels = np.arange(0, 2 * size, 2, dtype=float)
    d = cos2_diagonal(levels, 0)
    o = cos2_offdiagonal(levels[:-1], 0)
    return np.ascontiguousarray(c), levels, d, o


def test_backend_is_reported():
    assert backend_name() in ("compiled", "pure")


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("samples", [1, 2, 7, 100])
def test_revival_alignment_agrees(seed, samples):
    c, levels, d, o = _alignment_inputs(seed)
    a = compiled.revival_alignment(c, levels, d, o, samples)
    b = _fallback.revival_alignment(c, levels, d, o, samples)
    assert a == pytest.approx(b, abs=1e-12)


def test_revival_alignment_single_level():
    c = np.array([1.0 + 0j])
    levels = np.array([0.0])
    d = cos2_diagonal(levels, 0)
    o = np.array([])
    a = compiled.revival_alignment(c, levels, d, o, 10)
    b = _fallback.revival_alignment(c, levels, d, o, 10)
    assert a == pytest.approx(b, abs=1e-14)
    assert a == pytest.approx(1 / 3, abs=1e-14)


@pytest.mark.parametrize(
    "P,delta,j0,k0",
    [
        (5.0, -0.002, 0.0, np.pi / 4),
        (3.0, 0.003, 0.0, np.pi / 4),
        (7.0, -0.004, 2.0, 0.9),
        (1.0, -0.01, 0.0, np.pi / 4),
    ],
)
def test_rk4_semiclassical_agrees(P, delta, j0, k0):
    args = (P, delta, j0, k0, 40.0, 0.001, np.pi / 2)
    na, ja, ka, ca = compiled.rk4_semiclassical(*args)
    nb, jb, kb, cb = _fallback.rk4_semiclassical(*args)
    assert np.array_equal(na, nb)
    assert np.abs(ja - jb).max() < 1e-9
    assert np.abs(ka - kb).max() < 1e-9
    assert ca == pytest.approx(cb, abs=1e-9)
