"""Double factorials and normalized associated Legendre functions at high degree.

Everything that can overflow is carried in the log domain. The Legendre
column is seeded at the diagonal ``l == m`` from a log-domain closed form
and advanced upward in ``l`` with the three-term recurrence; the mantissa
is rescaled on the fly so degrees of order 10^4 stay finite.

Convention: ``Pbar_l^m(x) = (-1)^m sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m(x)``
with ``P_l^m`` free of the Condon-Shortley phase, so that
``Y_l^m = Pbar_l^m(cos theta) exp(i m phi)`` is orthonormal on the unit sphere
and ``Y_l^{-m} = (-1)^m conj(Y_l^m)``.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import _backend

LOG_4PI = math.log(4.0 * math.pi)


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class HarmonicIndex:
    degree: int
    order: int

    def __post_init__(self):
        if self.degree < 0 or abs(self.order) > self.degree:
            raise DomainError(f"need |m| <= l, got l={self.degree}, m={self.order}")


def _as_index(idx):
    if isinstance(idx, HarmonicIndex):
        return idx
    l, m = idx
    return HarmonicIndex(int(l), int(m))


def log_double_factorial(n):
    """ln(n!!), with the convention (-1)!! = 0!! = 1.

    Small arguments use the exact integer product; larger ones the
    log-gamma identities n!! = 2^k k! (n = 2k) and
    n!! = (2k)! / (2^k k!) (n = 2k - 1).
    """
    n = int(n)
    if n < -1:
        raise DomainError(f"double factorial needs n >= -1, got {n}")
    if n <= 20:
        return math.log(math.prod(range(n, 0, -2))) if n > 1 else 0.0
    if n % 2 == 0:
        k = n // 2
        return k * math.log(2.0) + math.lgamma(k + 1)
    k = (n + 1) // 2
    return math.lgamma(2 * k + 1) - k * math.log(2.0) - math.lgamma(k + 1)


def log_normalization(l, m):
    """ln sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!), the orthonormalization factor."""
    m = abs(m)
    if m > l:
        raise DomainError(f"need |m| <= l, got l={l}, m={m}")
    return 0.5 * (math.log(2 * l + 1) - LOG_4PI + math.lgamma(l - m + 1) - math.lgamma(l + m + 1))


def _log_diagonal_seed(m):
    # |Pbar_m^m(x)| = sqrt((2m+1)/(4 pi) * (2m-1)!!/(2m)!!) * (1-x^2)^(m/2)
    return 0.5 * (math.log(2 * m + 1) - LOG_4PI
                  + log_double_factorial(2 * m - 1) - log_double_factorial(2 * m))


def normalized_assoc_legendre(idx, x):
    """Fully normalized associated Legendre function ``Pbar_l^m(x)``.

    ``idx`` is a :class:`HarmonicIndex` or an ``(l, m)`` pair; ``x`` is a
    scalar or array in [-1, 1]. Returns a float or an array shaped like ``x``.
    """
    idx = _as_index(idx)
    l, m = idx.degree, idx.order
    xa = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(xa) > 1.0 + 1e-14):
        raise DomainError("x must lie in [-1, 1]")
    flat = np.clip(xa, -1.0, 1.0).ravel()
    am = abs(m)
    vals = _backend.legendre_bar(l, am, np.ascontiguousarray(flat), _log_diagonal_seed(am))
    if m > 0 and m % 2 == 1:
        vals = -vals
    vals = np.asarray(vals).reshape(xa.shape)
    return float(vals) if vals.ndim == 0 else vals


def _exp_or_inf(v):
    return math.exp(v) if v < 709.78 else math.inf


def log_pmn_zero_abs(l, m):
    """ln |P_l^m(0)|; ``-inf`` when ``l + m`` is odd."""
    if m < 0 or m > l:
        raise DomainError(f"need 0 <= m <= l, got l={l}, m={m}")
    if (l + m) % 2:
        return -math.inf
    return log_double_factorial(l + m - 1) - log_double_factorial(l - m)


def pmn_zero_abs(l, m):
    """|P_l^m(0)| = (l+m-1)!!/(l-m)!! for even ``l + m``, exactly 0 otherwise.

    Returns ``inf`` once the value leaves double range (l of a few hundred
    near m = l/2); use :func:`log_pmn_zero_abs` there.
    """
    return _exp_or_inf(log_pmn_zero_abs(l, m))


def log_paper_pmn_zero_surrogate(l, m):
    """ln of (l-1)!!/l!! * (l+m)!!/(l-m)!!, defined for even l and m."""
    if l % 2 or m % 2:
        raise DomainError(f"surrogate is defined for even l and m, got l={l}, m={m}")
    if m < 0 or m > l:
        raise DomainError(f"need 0 <= m <= l, got l={l}, m={m}")
    # grouped so that m = 0 reproduces log_pmn_zero_abs bit for bit
    head = log_double_factorial(l - 1) - log_double_factorial(l)
    return head + (log_double_factorial(l + m) - log_double_factorial(l - m))


def paper_pmn_zero_surrogate(l, m):
    """The closed form (l-1)!!/l!! * (l+m)!!/(l-m)!! taken literally.

    It agrees with |P_l^m(0)| at m = 0 and exceeds it by a factor close to
    sqrt((l+m)/l) otherwise, e.g. 4 instead of 3 at (2, 2).
    """
    return _exp_or_inf(log_paper_pmn_zero_surrogate(l, m))


def surrogate_ratio(l, m):
    """paper_pmn_zero_surrogate(l, m) / pmn_zero_abs(l, m), formed in the log domain."""
    return math.exp(log_paper_pmn_zero_surrogate(l, m) - log_pmn_zero_abs(l, m))
