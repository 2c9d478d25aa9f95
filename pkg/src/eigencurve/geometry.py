"""Model surfaces with their eigenfunctions, and closed curves parametrized by arc length.

Two surfaces are supported: the unit sphere, with the orthonormal
harmonics ``Y_l^m``, and the flat torus ``[0, 2pi)^2``, whose eigenspaces are
spanned by plane waves on a lattice circle ``m^2 + n^2 = lambda^2``.
Torus waves are normalized so that ``sum |a_mn|^2 = 1`` and the mode sum is
divided by ``2 pi``, which makes them unit vectors in L^2 of the torus.
"""
import math
from dataclasses import dataclass

import numpy as np

from .special import DomainError, HarmonicIndex, normalized_assoc_legendre

TWO_PI = 2.0 * math.pi


def _wrap(v, period=TWO_PI):
    r = math.fmod(v, period)
    if r < 0.0:
        r += period
    return 0.0 if r >= period else r


@dataclass(frozen=True)
class SpherePoint:
    theta: float
    phi: float


@dataclass(frozen=True)
class TorusPoint:
    x: float
    y: float


def sphere_point(theta, phi):
    """Build a SpherePoint, reducing phi modulo 2 pi."""
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"colatitude must lie in [0, pi], got {theta}")
    return SpherePoint(float(theta), _wrap(float(phi)))


def to_cartesian(point):
    """Unit vector in R^3 for a SpherePoint."""
    st = math.sin(point.theta)
    return np.array([st * math.cos(point.phi), st * math.sin(point.phi), math.cos(point.theta)])


def from_cartesian(v):
    x, y, z = (float(c) for c in v)
    return SpherePoint(math.atan2(math.hypot(x, y), z), _wrap(math.atan2(y, x)))


# -- eigenfunctions ---------------------------------------------------------

@dataclass(frozen=True)
class SphereHarmonic:
    index: HarmonicIndex

    surface = "sphere"

    @classmethod
    def of(cls, l, m):
        return cls(HarmonicIndex(int(l), int(m)))

    @property
    def eigenfrequency(self):
        l = self.index.degree
        return math.sqrt(l * (l + 1.0))


@dataclass(frozen=True)
class TorusWave:
    """Finite plane-wave sum ``sum a_mn exp(i(m x + n y)) / (2 pi)`` on one lattice circle."""

    modes: tuple

    surface = "torus"

    def __post_init__(self):
        modes = tuple((int(m), int(n), complex(a)) for m, n, a in self.modes)
        if not modes:
            raise DomainError("a torus wave needs at least one mode")
        radii = {m * m + n * n for m, n, _ in modes}
        if len(radii) != 1:
            raise DomainError(f"modes must share one lattice circle, got m^2+n^2 in {sorted(radii)}")
        norm = sum(abs(a) ** 2 for _, _, a in modes)
        if abs(norm - 1.0) > 1e-12:
            raise DomainError(f"coefficients must satisfy sum |a|^2 = 1, got {norm!r}")
        object.__setattr__(self, "modes", modes)

    @classmethod
    def single(cls, m, n):
        return cls(((m, n, 1.0),))

    @property
    def eigenfrequency(self):
        m, n, _ = self.modes[0]
        return math.sqrt(m * m + n * n)


# -- curves -----------------------------------------------------------------

@dataclass(frozen=True)
class TiltedGreatCircle:
    """Equator rotated by ``tilt`` about the x-axis: s -> (cos s, cos a sin s, sin a sin s)."""

    tilt: float = 0.0

    surface = "sphere"
    length = TWO_PI

    def __post_init__(self):
        if not 0.0 <= self.tilt <= math.pi / 2:
            raise DomainError(f"tilt must lie in [0, pi/2], got {self.tilt}")


@dataclass(frozen=True)
class Equator(TiltedGreatCircle):
    tilt: float = 0.0

    def __post_init__(self):
        if self.tilt != 0.0:
            raise DomainError("the equator has zero tilt")


@dataclass(frozen=True)
class TorusGeodesic:
    """Closed straight line of direction (p, q) through (offset, 0)."""

    p: int
    q: int
    offset: float = 0.0

    surface = "torus"

    def __post_init__(self):
        if math.gcd(self.p, self.q) != 1:
            raise DomainError(f"torus geodesic direction must be coprime, got ({self.p}, {self.q})")

    @property
    def speed_norm(self):
        return math.hypot(self.p, self.q)

    @property
    def length(self):
        return TWO_PI * self.speed_norm


def _sphere_frame(curve, s):
    s = np.asarray(s, dtype=np.float64)
    ca, sa = math.cos(curve.tilt), math.sin(curve.tilt)
    cs, sn = np.cos(s), np.sin(s)
    if curve.tilt == 0.0:
        pos = np.stack([cs, sn, np.zeros_like(s)], axis=-1)
        tan = np.stack([-sn, cs, np.zeros_like(s)], axis=-1)
    else:
        pos = np.stack([cs, ca * sn, sa * sn], axis=-1)
        tan = np.stack([-sn, ca * cs, sa * cs], axis=-1)
    return pos, tan


def sphere_frame(curve, s):
    """Ambient positions and unit tangents of a sphere curve at parameters ``s``."""
    if curve.surface != "sphere":
        raise DomainError("sphere_frame needs a sphere curve")
    return _sphere_frame(curve, s)


def torus_coordinates(curve, s):
    """Unreduced (x, y) of a torus geodesic at parameters ``s``."""
    s = np.asarray(s, dtype=np.float64)
    w = curve.speed_norm
    return curve.offset + s * (curve.p / w), s * (curve.q / w)


def curve_point(curve, s):
    """Point of the surface at arc length ``s`` (taken modulo the curve length)."""
    s = _wrap(float(s), curve.length)
    if curve.surface == "sphere":
        pos, _ = _sphere_frame(curve, s)
        return from_cartesian(pos)
    x, y = torus_coordinates(curve, s)
    return TorusPoint(_wrap(float(x)), _wrap(float(y)))


def restrict(f, curve, s):
    """Values ``f(gamma(s))`` as a complex array, vectorized over ``s``."""
    if f.surface != curve.surface:
        raise DomainError(f"{f.surface} eigenfunction on a {curve.surface} curve")
    s = np.asarray(s, dtype=np.float64)
    if curve.surface == "sphere":
        pos, _ = _sphere_frame(curve, s)
        return _eval_sphere(f, pos[..., 0], pos[..., 1], pos[..., 2])
    x, y = torus_coordinates(curve, s)
    return _eval_torus(f, x, y)


def _eval_sphere(f, x, y, z):
    l, m = f.index.degree, f.index.order
    radial = normalized_assoc_legendre((l, m), z)
    if m == 0:
        return np.asarray(radial, dtype=np.complex128)
    return radial * np.exp(1j * m * np.arctan2(y, x))


def _eval_torus(f, x, y):
    out = np.zeros(np.shape(x), dtype=np.complex128)
    for m, n, a in f.modes:
        out += a * np.exp(1j * (m * np.asarray(x) + n * np.asarray(y)))
    return out / TWO_PI


def eval_eigenfunction(f, point):
    """Evaluate an eigenfunction at a SpherePoint or TorusPoint."""
    if isinstance(point, SpherePoint):
        if f.surface != "sphere":
            raise DomainError("sphere point given to a torus eigenfunction")
        x, y, z = to_cartesian(point)
        return complex(_eval_sphere(f, x, y, z))
    if isinstance(point, TorusPoint):
        if f.surface != "torus":
            raise DomainError("torus point given to a sphere eigenfunction")
        return complex(_eval_torus(f, point.x, point.y))
    raise DomainError(f"unsupported point type {type(point).__name__}")


# -- lattice circles --------------------------------------------------------

def _gauss_mul(u, v):
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _gauss_pow(u, k):
    out = (1, 0)
    for _ in range(k):
        out = _gauss_mul(out, u)
    return out


def prime_as_two_squares(p):
    """(a, b) with a^2 + b^2 = p for a prime p = 1 mod 4 (Hermite-Serret reduction)."""
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    r0, r1 = p, pow(c, (p - 1) // 4, p)
    while r1 * r1 > p:
        r0, r1 = r1, r0 % r1
    a = r1
    b = math.isqrt(p - a * a)
    if a * a + b * b != p:
        raise ArithmeticError(f"{p} is not a prime congruent to 1 mod 4")
    return a, b


def sum_two_squares(N):
    """All integer pairs (m, n) with m^2 + n^2 = N, in lexicographic order.

    Built from the Gaussian-prime factorization of N: each rational prime
    p = 1 mod 4 splits as (a+bi)(a-bi), primes p = 3 mod 4 must occur to an
    even power, and 2 ramifies as -i(1+i)^2.
    """
    from sympy import factorint

    N = int(N)
    if N < 0:
        raise DomainError(f"N must be nonnegative, got {N}")
    if N == 0:
        return [(0, 0)]
    reps = [(1, 0)]
    for p, e in sorted(factorint(N).items()):
        if p == 2:
            reps = [_gauss_mul(g, _gauss_pow((1, 1), e)) for g in reps]
        elif p % 4 == 3:
            if e % 2:
                return []
            reps = [(g[0] * p ** (e // 2), g[1] * p ** (e // 2)) for g in reps]
        else:
            a, b = prime_as_two_squares(p)
            powers = [_gauss_mul(_gauss_pow((a, b), k), _gauss_pow((a, -b), e - k)) for k in range(e + 1)]
            reps = [_gauss_mul(g, w) for g in reps for w in powers]
    units = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    return sorted({_gauss_mul(g, u) for g in reps for u in units})
