"""Pure-numpy implementations of the hot kernels.

Used when the compiled extension is unavailable (or forced via
ROTOBLOCH_BACKEND=pure).  Same signatures and same math as _kernels.pyx.
"""

import numpy as np


def revival_alignment(c, levels, d, o, samples):
    """Time-averaged <cos^2 theta> over one revival after a kick.

    Averages the expectation value at ``samples`` uniform delays
    t_s = s/samples * t_rev, s = 0..samples-1.  The diagonal part is
    delay-independent; each J/J+2 coherence beats at 2*pi*(2J+3) per
    revival.
    """
    c = np.asarray(c)
    diag = float(np.sum(d * (c.real**2 + c.imag**2)))
    if len(c) < 2 or samples < 1:
        return diag
    z = o * np.conj(c[1:]) * c[:-1]
    theta = 2.0 * np.pi * (2.0 * np.asarray(levels[:-1], dtype=float) + 3.0) / samples
    s = np.arange(samples)
    coh = np.exp(-1j * np.outer(s, theta)) @ z
    return diag + 2.0 * float(np.mean(coh.real))


def rk4_semiclassical(P, delta, j0, k0, n_max, dn, k_threshold):
    """Integrate dJ/dn = P sin(2k), dk/dn = -pi*delta*(2J+1) with RK4.

    Returns (n, J, k, crossing) where crossing is the linearly
    interpolated first time |k - k0| reaches k_threshold, or -1.0.
    """
    steps = int(round(n_max / dn))
    ns = np.empty(steps + 1)
    js = np.empty(steps + 1)
    ks = np.empty(steps + 1)
    j, k = float(j0), float(k0)
    ns[0], js[0], ks[0] = 0.0, j, k
    crossing = -1.0
    prev = 0.0
    pidelta = np.pi * delta
    for it in range(steps):
        k1j = P * np.sin(2.0 * k)
        k1k = -pidelta * (2.0 * j + 1.0)
        k2j = P * np.sin(2.0 * (k + 0.5 * dn * k1k))
        k2k = -pidelta * (2.0 * (j + 0.5 * dn * k1j) + 1.0)
        k3j = P * np.sin(2.0 * (k + 0.5 * dn * k2k))
        k3k = -pidelta * (2.0 * (j + 0.5 * dn * k2j) + 1.0)
        k4j = P * np.sin(2.0 * (k + dn * k3k))
        k4k = -pidelta * (2.0 * (j + dn * k3j) + 1.0)
        j += (dn / 6.0) * (k1j + 2.0 * k2j + 2.0 * k3j + k4j)
        k += (dn / 6.0) * (k1k + 2.0 * k2k + 2.0 * k3k + k4k)
        n = (it + 1) * dn
        ns[it + 1], js[it + 1], ks[it + 1] = n, j, k
        cur = abs(k - k0)
        if crossing < 0.0 and cur >= k_threshold and cur > prev:
            crossing = n - dn + dn * (k_threshold - prev) / (cur - prev)
        prev = cur
    return ns, js, ks, crossing
