# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.

Every routine here has a numpy twin in :mod:`tentops._pycore` with the same
signature; :mod:`tentops.kernels` picks one at import time.  Summation order is
fixed (point index ascending) so results are reproducible run to run.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport pow, sqrt, fabs, atan2, exp, log, cos, sin, fmod, M_PI

cnp.import_array()

ctypedef cnp.float64_t f64


cdef inline double _neg_half_power(double d2, double e, int ip, int half) nogil:
    """d2^e where e = -(ip + half/2) when ip >= 0, else generic pow."""
    cdef double v
    cdef int j
    if ip < 0:
        return pow(d2, e)
    v = 1.0
    for j in range(ip):
        v *= d2
    if half:
        v *= sqrt(d2)
    return 1.0 / v


def kernel_sums(const f64[::1] zr, const f64[::1] zi, const f64[::1] w,
                const f64[::1] ar, const f64[::1] ai, double t):
    """out[k] = (1-|a_k|^2)^t * sum_i w_i |1 - conj(a_k) z_i|^(-(t+1))."""
    cdef Py_ssize_t n = zr.shape[0], m = ar.shape[0], i, k
    cdef double e = -(t + 1.0) / 2.0
    cdef double re, im, acc, x, y, pre
    cdef int ip = -1, half = 0
    # integer and half-integer powers avoid pow() in the inner loop
    if (t + 1.0) == <double>(<int>(t + 1.0)) and t + 1.0 <= 40.0:
        ip = (<int>(t + 1.0)) // 2
        half = (<int>(t + 1.0)) % 2
    out = np.zeros(m, dtype=np.float64)
    cdef f64[::1] o = out
    for k in range(m):
        x = ar[k]
        y = ai[k]
        pre = pow(1.0 - (x * x + y * y), t)
        acc = 0.0
        for i in range(n):
            re = 1.0 - (x * zr[i] + y * zi[i])
            im = x * zi[i] - y * zr[i]
            acc += w[i] * _neg_half_power(re * re + im * im, e, ip, half)
        o[k] = pre * acc
    return out


def box_sums(const f64[::1] zabs, const f64[::1] zarg, const f64[::1] w,
             const f64[::1] uabs, const f64[::1] uarg):
    """out[k] = sum of w_i over points lying in the Carleson box S(u_k).

    S(0) is the whole disk.  Points are given in polar form.
    """
    cdef Py_ssize_t n = zabs.shape[0], m = uabs.shape[0], i, k
    cdef double rho, phi, half, d, acc
    cdef double twopi = 2.0 * M_PI
    out = np.zeros(m, dtype=np.float64)
    cdef f64[::1] o = out
    for k in range(m):
        rho = uabs[k]
        phi = uarg[k]
        acc = 0.0
        if rho == 0.0:
            for i in range(n):
                acc += w[i]
        else:
            half = 0.5 * (1.0 - rho)
            for i in range(n):
                if zabs[i] < rho:
                    continue
                d = fmod(zarg[i] - phi, twopi)
                if d > M_PI:
                    d -= twopi
                elif d < -M_PI:
                    d += twopi
                if fabs(d) <= half:
                    acc += w[i]
        o[k] = acc
    return out


def atom_sum(const f64[::1] zr, const f64[::1] zi,
             const f64[::1] br, const f64[::1] bi, const f64[::1] s,
             const f64[::1] cr, const f64[::1] ci):
    """sum_j c_j (1 - conj(b_j) z)^(-s_j), principal branch."""
    cdef Py_ssize_t n = zr.shape[0], m = br.shape[0], i, j
    cdef double ur, ui, lr, li, mag, ph, vr, vi, accr, acci
    out = np.zeros(n, dtype=np.complex128)
    cdef cnp.complex128_t[::1] o = out
    for i in range(n):
        accr = 0.0
        acci = 0.0
        for j in range(m):
            ur = 1.0 - (br[j] * zr[i] + bi[j] * zi[i])
            ui = -(br[j] * zi[i] - bi[j] * zr[i])
            lr = 0.5 * log(ur * ur + ui * ui)
            li = atan2(ui, ur)
            mag = exp(-s[j] * lr)
            ph = -s[j] * li
            vr = mag * cos(ph)
            vi = mag * sin(ph)
            accr += cr[j] * vr - ci[j] * vi
            acci += cr[j] * vi + ci[j] * vr
        o[i].real = accr
        o[i].imag = acci
    return out


def min_pseudo_hyperbolic(const f64[::1] zr, const f64[::1] zi,
                          const f64[::1] nr, const f64[::1] ni):
    """For each sample z_i, the smallest pseudo-hyperbolic distance to a node."""
    cdef Py_ssize_t n = zr.shape[0], m = nr.shape[0], i, j
    cdef double best, num, den, dr, di, er, ei, v
    out = np.empty(n, dtype=np.float64)
    cdef f64[::1] o = out
    for i in range(n):
        best = 1.0
        for j in range(m):
            dr = zr[i] - nr[j]
            di = zi[i] - ni[j]
            # 1 - conj(w) z
            er = 1.0 - (nr[j] * zr[i] + ni[j] * zi[i])
            ei = -(nr[j] * zi[i] - ni[j] * zr[i])
            num = dr * dr + di * di
            den = er * er + ei * ei
            v = num / den
            if v < best:
                best = v
        o[i] = sqrt(best)
    return out


def min_pairwise_pseudo_hyperbolic(const f64[::1] nr, const f64[::1] ni):
    """Smallest pseudo-hyperbolic distance over distinct node pairs (1.0 if < 2 nodes)."""
    cdef Py_ssize_t m = nr.shape[0], i, j
    cdef double best = 1.0, dr, di, er, ei, v
    for i in range(m):
        for j in range(i + 1, m):
            dr = nr[i] - nr[j]
            di = ni[i] - ni[j]
            er = 1.0 - (nr[j] * nr[i] + ni[j] * ni[i])
            ei = -(nr[j] * ni[i] - ni[j] * nr[i])
            v = (dr * dr + di * di) / (er * er + ei * ei)
            if v < best:
                best = v
    return sqrt(best)
