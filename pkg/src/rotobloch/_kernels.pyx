# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: revival-averaged alignment and the semiclassical
RK4 integrator.  Mirrors _fallback.py exactly; see there for semantics."""

from libc.math cimport M_PI, cos, fabs, sin

import numpy as np


def revival_alignment(double complex[::1] c, double[::1] levels, double[::1] d,
                      double[::1] o, Py_ssize_t samples):
    cdef Py_ssize_t L = c.shape[0]
    cdef Py_ssize_t i, s
    cdef double diag = 0.0, acc = 0.0
    cdef double re_z, im_z, theta, ct, st, cr, ci, tmp, part

    for i in range(L):
        diag += d[i] * (c[i].real * c[i].real + c[i].imag * c[i].imag)
    if L < 2 or samples < 1:
        return diag

    for i in range(L - 1):
        # z = o * conj(c[i+1]) * c[i]; its phase advances by theta per sample
        re_z = o[i] * (c[i + 1].real * c[i].real + c[i + 1].imag * c[i].imag)
        im_z = o[i] * (c[i + 1].real * c[i].imag - c[i + 1].imag * c[i].real)
        theta = 2.0 * M_PI * (2.0 * levels[i] + 3.0) / samples
        ct = cos(theta)
        st = sin(theta)
        cr = 1.0
        ci = 0.0
        part = 0.0
        for s in range(samples):
            # Re(z * e^{-i theta s}) accumulated with a rotation recurrence
            part += re_z * cr + im_z * ci
            tmp = cr * ct - ci * st
            ci = ci * ct + cr * st
            cr = tmp
        acc += part
    return diag + 2.0 * acc / samples


def rk4_semiclassical(double P, double delta, double j0, double k0,
                      double n_max, double dn, double k_threshold):
    cdef Py_ssize_t steps = <Py_ssize_t> (n_max / dn + 0.5)
    ns_arr = np.empty(steps + 1)
    js_arr = np.empty(steps + 1)
    ks_arr = np.empty(steps + 1)
    cdef double[::1] ns = ns_arr
    cdef double[::1] js = js_arr
    cdef double[::1] ks = ks_arr

    cdef double j = j0, k = k0
    cdef double crossing = -1.0, prev = 0.0, cur, n
    cdef double pidelta = M_PI * delta
    cdef double k1j, k1k, k2j, k2k, k3j, k3k, k4j, k4k
    cdef Py_ssize_t it

    ns[0] = 0.0
    js[0] = j
    ks[0] = k
    for it in range(steps):
        k1j = P * sin(2.0 * k)
        k1k = -pidelta * (2.0 * j + 1.0)
        k2j = P * sin(2.0 * (k + 0.5 * dn * k1k))
        k2k = -pidelta * (2.0 * (j + 0.5 * dn * k1j) + 1.0)
        k3j = P * sin(2.0 * (k + 0.5 * dn * k2k))
        k3k = -pidelta * (2.0 * (j + 0.5 * dn * k2j) + 1.0)
        k4j = P * sin(2.0 * (k + dn * k3k))
        k4k = -pidelta * (2.0 * (j + dn * k3j) + 1.0)
        j += (dn / 6.0) * (k1j + 2.0 * k2j + 2.0 * k3j + k4j)
        k += (dn / 6.0) * (k1k + 2.0 * k2k + 2.0 * k3k + k4k)
        n = (it + 1) * dn
        ns[it + 1] = n
        js[it + 1] = j
        ks[it + 1] = k
        cur = fabs(k - k0)
        if crossing < 0.0 and cur >= k_threshold and cur > prev:
            crossing = n - dn + dn * (k_threshold - prev) / (cur - prev)
        prev = cur
    return ns_arr, js_arr, ks_arr, crossing
