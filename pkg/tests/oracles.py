"""Independent reference computations used only by the tests."""
import math

import mpmath
import numpy as np


def double_factorial_mp(n, dps=60):
    """ln(n!!) from the exact integer product, rounded at ``dps`` digits."""
    with mpmath.workdps(dps):
        return float(mpmath.log(mpmath.mpf(math.prod(range(n, 0, -2)))))


def pmn_zero_mp(l, m):
    """|P_l^m(0)| from mpmath's Legendre function at high precision."""
    with mpmath.workdps(50):
        return float(abs(mpmath.legenp(l, m, 0)))


def ybar_mp(l, m, theta, phi=0.0):
    """Orthonormal Y_l^m with the Condon-Shortley phase, from mpmath."""
    with mpmath.workdps(40):
        return complex(mpmath.spherharm(l, m, theta, phi))


def legendre_p(l, x):
    """Ordinary Legendre polynomial P_l(x) by Bonnet's recurrence."""
    p0, p1 = 1.0, x
    if l == 0:
        return p0
    for n in range(1, l):
        p0, p1 = p1, ((2 * n + 1) * x * p1 - n * p0) / (n + 1)
    return p1


def addition_theorem_sum(l, values_at_p, values_at_q, cos_angle):
    """Both sides of sum_m Y_l^m(p) conj(Y_l^m(q)) = (2l+1)/(4 pi) P_l(cos angle)."""
    lhs = np.sum(np.asarray(values_at_p) * np.conj(np.asarray(values_at_q)))
    rhs = (2 * l + 1) / (4 * math.pi) * legendre_p(l, cos_angle)
    return lhs, rhs


def brute_two_squares(N):
    """Scan m over [-sqrt N, sqrt N] and keep exact square remainders."""
    out = []
    r = math.isqrt(N)
    for m in range(-r, r + 1):
        rest = N - m * m
        n = math.isqrt(rest)
        if n * n == rest:
            out.extend({(m, n), (m, -n)})
    return sorted(out)


def r2_divisor_count(N):
    """Jacobi: r_2(N) = 4 (d_1(N) - d_3(N)) for N >= 1."""
    d1 = d3 = 0
    for d in range(1, math.isqrt(N) + 1):
        if N % d == 0:
            for e in {d, N // d}:
                d1 += e % 4 == 1
                d3 += e % 4 == 3
    return 4 * (d1 - d3)


def dense_trapezoid(f, start, length, n):
    s = start + length * np.arange(n) / n
    return complex(length / n * np.sum(f(s)))
