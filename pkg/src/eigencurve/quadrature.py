"""Periodic trapezoid rule with nested node doubling, and a C-infinity bump window.

For smooth periodic integrands the equispaced rule converges faster than
any power of the node count, and the same holds on the support of a
window that vanishes to infinite order at its ends, so one rule serves
both closed curves and windowed segments.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _backend

MAX_NODES = 1 << 24
MIN_NODES = 64


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error_estimate: float
    nodes_used: int


class ConvergenceError(ArithmeticError):
    """Node doubling hit the cap before the difference test passed."""

    def __init__(self, message, last=None, previous=None):
        super().__init__(message)
        self.last = last
        self.previous = previous


def periodic_trapezoid(f, period, n, start=0.0):
    """(period/n) * sum f(start + j*period/n) for j < n.

    ``f`` is called once with the full array of nodes.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    s = start + period * np.arange(n) / n
    return complex(period / n * np.sum(f(s)))


def initial_nodes(frequency_hint):
    """max(64, next power of two >= 8 * frequency_hint)."""
    target = max(MIN_NODES, math.ceil(8.0 * max(frequency_hint, 0.0)))
    return 1 << (target - 1).bit_length()


def adaptive_fourier(base, period, nus, frequency_hint=0.0, tol=1e-10, start=0.0,
                     max_nodes=MAX_NODES):
    """Adaptive trapezoid values of ``int base(s) exp(-i nu s) ds`` for every ``nu``.

    ``base`` is sampled once per refinement level and shared by all
    frequencies; each frequency stops at the first level where
    ``|I_N - I_{N/2}| <= tol * max(1, |I_N|)``. Returns one QuadResult per nu.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    nus = np.atleast_1d(np.asarray(nus, dtype=np.float64))
    n = initial_nodes(frequency_hint)
    if n > max_nodes:
        raise ConvergenceError(f"initial node count {n} exceeds the cap {max_nodes}")
    s = start + period * np.arange(n) / n
    vals = np.ascontiguousarray(base(s), dtype=np.complex128)
    even = _backend.trig_sums(np.ascontiguousarray(vals[0::2]), np.ascontiguousarray(s[0::2]), nus)
    sums = even + _backend.trig_sums(np.ascontiguousarray(vals[1::2]), np.ascontiguousarray(s[1::2]), nus)
    prev = even * (2.0 * period / n)
    results = [None] * nus.size
    active = np.arange(nus.size)
    while True:
        cur = sums * (period / n)
        err = np.abs(cur - prev)
        done = err <= tol * np.maximum(1.0, np.abs(cur))
        for k in np.flatnonzero(done):
            results[active[k]] = QuadResult(complex(cur[k]), float(err[k]), n)
        keep = ~done
        if not keep.any():
            return results
        if 2 * n > max_nodes:
            k = int(np.flatnonzero(keep)[0])
            raise ConvergenceError(
                f"no convergence by {n} nodes at nu={nus[active[k]]!r}",
                last=complex(cur[k]), previous=complex(prev[k]))
        active, sums, prev = active[keep], sums[keep], cur[keep]
        n *= 2
        s_new = start + period * (2 * np.arange(n // 2) + 1) / n
        vals = np.ascontiguousarray(base(s_new), dtype=np.complex128)
        sums = sums + _backend.trig_sums(vals, s_new, nus[active])


def adaptive_periodic(f, period, frequency_hint=0.0, tol=1e-10, start=0.0, max_nodes=MAX_NODES):
    """Integrate a smooth ``period``-periodic ``f`` over one period by node doubling.

    ``frequency_hint`` is the largest expected frequency in cycles per
    period; it sets the starting node count.
    """
    return adaptive_fourier(f, period, [0.0], frequency_hint, tol, start, max_nodes)[0]


def bump_window(s, center, halfwidth):
    """exp(1 - 1/(1 - t^2)) with t = (s - center)/halfwidth, zero for |t| >= 1."""
    if halfwidth <= 0:
        raise ValueError("halfwidth must be positive")
    t = (np.asarray(s, dtype=np.float64) - center) / halfwidth
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    ti = t[inside]
    out[inside] = np.exp(1.0 - 1.0 / ((1.0 - ti) * (1.0 + ti)))
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=None)
def _unit_bump_integral():
    return adaptive_periodic(lambda s: bump_window(s, 0.0, 1.0), 2.0, 0.0, 1e-15, start=-1.0).value.real


def bump_integral(halfwidth):
    """Integral of bump_window over its support, about 1.2069 times the halfwidth."""
    return halfwidth * _unit_bump_integral()
