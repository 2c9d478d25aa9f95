# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Contracts are identical to ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, log, exp, fabs, cos, sin

cnp.import_array()

cdef double _BIG = 1e200
cdef double _LOG_BIG = 460.51701859880916  # ln(1e200)


def legendre_bar(int l, int m, const double[::1] x, double log_seed):
    """Unsigned normalized column value exp(log_seed) * sin^m * recurrence, per x."""
    cdef Py_ssize_t i, npts = x.shape[0]
    cdef int n
    cdef double st, pn, a, b, nn, mm = <double>m * m
    out = np.empty(npts, dtype=np.float64)
    cdef double[::1] res = out
    cdef double[::1] p = np.ones(npts, dtype=np.float64)
    cdef double[::1] pp = np.zeros(npts, dtype=np.float64)
    cdef double[::1] scale = np.empty(npts, dtype=np.float64)
    for i in range(npts):
        st = sqrt((1.0 - x[i]) * (1.0 + x[i]))
        scale[i] = log_seed
        if m > 0:
            if st == 0.0:
                p[i] = 0.0
            else:
                scale[i] += m * log(st)
    # degree in the outer loop: the points are independent, so the inner
    # loop pipelines instead of waiting on one recurrence chain
    for n in range(m + 1, l + 1):
        nn = <double>n * n
        a = sqrt((4.0 * nn - 1.0) / (nn - mm))
        b = sqrt(((n - 1.0) * (n - 1.0) - mm) * (2.0 * n + 1.0) / ((2.0 * n - 3.0) * (nn - mm)))
        for i in range(npts):
            pn = a * x[i] * p[i] - b * pp[i]
            pp[i] = p[i]
            p[i] = pn
            if fabs(pn) > _BIG:
                p[i] = pn / _BIG
                pp[i] /= _BIG
                scale[i] += _LOG_BIG
    for i in range(npts):
        if p[i] == 0.0:
            res[i] = 0.0
        elif p[i] > 0.0:
            res[i] = exp(log(p[i]) + scale[i])
        else:
            res[i] = -exp(log(-p[i]) + scale[i])
    return out


def trig_sums(const double complex[::1] values, const double[::1] s,
              const double[::1] nus):
    """sum_j values[j] * exp(-1j * nu * s[j]) for every nu."""
    cdef Py_ssize_t j, k, npts = s.shape[0], nk = nus.shape[0]
    cdef double nu, ph, re, im, c, sn
    cdef double complex v
    out = np.empty(nk, dtype=np.complex128)
    cdef double complex[::1] res = out
    for k in range(nk):
        nu = nus[k]
        re = 0.0
        im = 0.0
        for j in range(npts):
            ph = nu * s[j]
            c = cos(ph)
            sn = sin(ph)
            v = values[j]
            re += v.real * c + v.imag * sn
            im += v.imag * c - v.real * sn
        res[k] = re + 1j * im
    return out
