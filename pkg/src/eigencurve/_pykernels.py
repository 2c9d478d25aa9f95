"""numpy implementations of the hot loops; used when the Cython build is absent."""
import math

import numpy as np

_BIG = 1e200
_LOG_BIG = math.log(_BIG)


def _coefficients(l, m):
    n = np.arange(m + 1, l + 1, dtype=np.float64)
    nn = n * n
    mm = float(m) * m
    a = np.sqrt((4.0 * nn - 1.0) / (nn - mm))
    b = np.sqrt(((n - 1.0) ** 2 - mm) * (2.0 * n + 1.0) / ((2.0 * n - 3.0) * (nn - mm)))
    return a.tolist(), b.tolist()


def _legendre_scalar(l, m, xi, log_seed, a, b):
    st = math.sqrt((1.0 - xi) * (1.0 + xi))
    if m > 0 and st == 0.0:
        return 0.0
    scale = log_seed + (m * math.log(st) if m > 0 else 0.0)
    p, pp = 1.0, 0.0
    for an, bn in zip(a, b):
        p, pp = an * xi * p - bn * pp, p
        if abs(p) > _BIG:
            p /= _BIG
            pp /= _BIG
            scale += _LOG_BIG
    if p == 0.0:
        return 0.0
    return math.copysign(math.exp(math.log(abs(p)) + scale), p)


def legendre_bar(l, m, x, log_seed):
    """Unsigned normalized column value exp(log_seed) * sin^m * recurrence, per x."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    a, b = _coefficients(l, m)
    if x.size <= 4:
        return np.array([_legendre_scalar(l, m, float(xi), log_seed, a, b) for xi in x])
    st = np.sqrt((1.0 - x) * (1.0 + x))
    with np.errstate(divide="ignore"):
        scale = np.full_like(x, log_seed) + (m * np.log(st) if m > 0 else 0.0)
    p = np.ones_like(x)
    pp = np.zeros_like(x)
    for an, bn in zip(a, b):
        p, pp = an * x * p - bn * pp, p
        big = np.abs(p) > _BIG
        if big.any():
            p[big] /= _BIG
            pp[big] /= _BIG
            scale[big] += _LOG_BIG
    out = np.zeros_like(x)
    nz = (p != 0.0) & np.isfinite(scale)
    out[nz] = np.sign(p[nz]) * np.exp(np.log(np.abs(p[nz])) + scale[nz])
    return out


def trig_sums(values, s, nus, chunk=1 << 22):
    """sum_j values[j] * exp(-1j * nu * s[j]) for every nu."""
    values = np.asarray(values, dtype=np.complex128)
    s = np.asarray(s, dtype=np.float64)
    nus = np.asarray(nus, dtype=np.float64)
    out = np.empty(nus.size, dtype=np.complex128)
    step = max(1, chunk // max(1, s.size))
    for k in range(0, nus.size, step):
        block = nus[k:k + step]
        out[k:k + step] = np.exp(-1j * np.outer(block, s)) @ values
    return out
