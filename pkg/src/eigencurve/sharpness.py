"""Closed forms for equatorial inner products of spherical harmonics.

On the equator ``Y_l^m`` restricts to ``Pbar_l^m(0) exp(i m phi)``, so for
even ``l`` and ``m`` the pairing with the highest-weight harmonic ``Y_m^m``
is ``2 pi |Pbar_l^m(0)| |Pbar_m^m(0)|`` in modulus. The size of
``|Pbar_l^m(0)|`` is controlled by the telescoping product

    prod_{k=1}^{m} (l - m + 2k) / (l - m + 2k - 1)
        = (l-m)!/(l+m)! * ((l+m)!!)^2 / ((l-m)!!)^2,

which stays below (l+m)/(l-m+1) < 2/(1-c) whenever m < c l.
"""
import math
from dataclasses import dataclass

import numpy as np

from .special import (
    DomainError,
    log_double_factorial,
    log_normalization,
    log_paper_pmn_zero_surrogate,
    log_pmn_zero_abs,
)


def _check_even(l, m):
    if l % 2 or m % 2:
        raise DomainError(f"l and m must both be even, got l={l}, m={m}")
    if not 0 <= m <= l:
        raise DomainError(f"need 0 <= m <= l, got l={l}, m={m}")


def log_equator_value(l, m):
    """ln |Pbar_l^m(0)|, the modulus of Y_l^m on the equator (even l + m)."""
    return log_normalization(l, m) + log_pmn_zero_abs(l, m)


def equator_mixed_inner_product_exact(l, m):
    """|int_equator Y_l^m conj(Y_m^m) dphi| for even l, m; evaluated in logs."""
    _check_even(l, m)
    return 2.0 * math.pi * math.exp(log_equator_value(l, m) + log_equator_value(m, m))


def telescoping_product(l, m, method="direct"):
    """prod_{k=1}^{m} (l-m+2k)/(l-m+2k-1) for even l, m.

    ``method="direct"`` multiplies the factors; ``method="factorial"``
    evaluates (l-m)!/(l+m)! ((l+m)!!)^2/((l-m)!!)^2 through log-gamma.
    """
    _check_even(l, m)
    if method == "direct":
        top = np.arange(l - m + 2, l + m + 1, 2, dtype=np.float64)
        return float(np.prod(top / (top - 1.0)))
    if method == "factorial":
        lv = (math.lgamma(l - m + 1) - math.lgamma(l + m + 1)
              + 2.0 * log_double_factorial(l + m) - 2.0 * log_double_factorial(l - m))
        return math.exp(lv)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class TelescopingBound:
    value: float
    upper: float
    cap: float
    holds: bool


def telescoping_bound_check(l, m, c):
    """Evaluate the chain 1 < product < (l+m)/(l-m+1) < 2/(1-c) for m < c l.

    For m = 0 the product is empty and equals 1; the chain then reduces to
    1 < 2/(1-c), and ``holds`` reports that.
    """
    if not 0.0 < c < 1.0:
        raise DomainError(f"c must lie in (0, 1), got {c}")
    if not m < c * l:
        raise DomainError(f"need m < c*l, got m={m}, c*l={c * l}")
    value = telescoping_product(l, m)
    upper = (l + m) / (l - m + 1)
    cap = 2.0 / (1.0 - c)
    if m == 0:
        holds = value == 1.0 and value < cap
    else:
        holds = 1.0 < value < upper < cap
    return TelescopingBound(value, upper, cap, holds)


@dataclass(frozen=True)
class SharpnessRecord:
    l: int
    m: int
    exact_value: float
    surrogate_value: float
    telescoping: float
    ratio_bound: float


def sharpness_record(l, m):
    """Exact and literal-surrogate equatorial pairings for even (l, m), 0 < m < l."""
    _check_even(l, m)
    if not 0 < m < l:
        raise DomainError("sharpness records need 0 < m < l")
    exact = equator_mixed_inner_product_exact(l, m)
    surrogate = 2.0 * math.pi * math.exp(
        log_normalization(l, m) + log_paper_pmn_zero_surrogate(l, m) + log_equator_value(m, m))
    return SharpnessRecord(l, m, exact, surrogate, telescoping_product(l, m), 2.0 / (1.0 - m / l))
