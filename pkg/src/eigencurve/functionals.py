"""Curve integrals of eigenfunctions: inner products and generalized periods, plus the kernel probe.

All three reduce to one integral along a curve,

    int f(gamma(s)) * conj(g(gamma(s))) * exp(-i nu s) * chi(s) ds,

taken either over the whole closed curve (``chi = 1``; ``nu`` must then be a
multiple of 2 pi / L so the integrand stays periodic) or over the support of
a bump window ``chi`` centred at ``window[0]`` with halfwidth ``window[1]``.
"""
import math
from dataclasses import dataclass

import numpy as np

from .geometry import SpherePoint, from_cartesian, restrict, sphere_frame, to_cartesian
from .quadrature import adaptive_fourier, bump_window
from .special import DomainError

DEFAULT_TOL = 1e-10


class PreconditionError(DomainError):
    """Kernel probe target outside the admissible annulus around the window."""


@dataclass(frozen=True)
class FunctionalRequest:
    """One pairing (f, g, curve) at frequency ``nu``; ``g=None`` means the constant 1."""

    f: object
    curve: object
    g: object = None
    nu: float = 0.0
    window: tuple = None
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        for h in (self.f, self.g):
            if h is not None and h.surface != self.curve.surface:
                raise DomainError(f"{h.surface} eigenfunction paired with a {self.curve.surface} curve")
        if self.window is not None:
            center, half = self.window
            if not 0.0 < half <= self.curve.length / 2:
                raise DomainError(f"window halfwidth must lie in (0, L/2], got {half}")
            object.__setattr__(self, "window", (float(center), float(half)))
        if self.tol <= 0:
            raise DomainError("tol must be positive")

    @property
    def span(self):
        """(start, length) of the integration interval."""
        if self.window is None:
            return 0.0, self.curve.length
        center, half = self.window
        return center - half, 2.0 * half


def _is_dual_lattice(nu, length):
    k = nu * length / (2.0 * math.pi)
    return abs(k - round(k)) <= 1e-9 * max(1.0, abs(k))


def _base_integrand(f, g, curve, window):
    def base(s):
        vals = restrict(f, curve, s)
        if g is not None:
            vals = vals * np.conj(restrict(g, curve, s))
        if window is not None:
            vals = vals * bump_window(s, *window)
        return vals
    return base


def _spectrum(f, g, curve, nus, window, tol):
    req = FunctionalRequest(f, curve, g, 0.0, window, tol)
    nus = np.atleast_1d(np.asarray(nus, dtype=np.float64))
    if window is None:
        bad = [float(nu) for nu in nus if not _is_dual_lattice(nu, curve.length)]
        if bad:
            raise DomainError(
                f"nu={bad[0]!r} is not a multiple of 2pi/L on a closed curve; pass a window instead")
    start, span = req.span
    lam_g = 0.0 if g is None else g.eigenfrequency
    peak = float(np.max(np.abs(nus))) if nus.size else 0.0
    hint = (f.eigenfrequency + lam_g + peak) * span / (2.0 * math.pi)
    return adaptive_fourier(_base_integrand(f, g, curve, req.window), span, nus, hint, tol, start)


def generalized_inner_product(req):
    """QuadResult for the curve integral described by a FunctionalRequest."""
    return _spectrum(req.f, req.g, req.curve, [req.nu], req.window, req.tol)[0]


def spectrum_results(f, curve, nus, window=None, tol=DEFAULT_TOL, g=None):
    """Generalized periods for a batch of frequencies, as (nu, QuadResult) pairs.

    The restriction is sampled once per refinement level for the whole
    batch, and the starting node count follows the largest ``|nu|``, so the
    values agree with single calls to within ``tol`` but not bit for bit.
    """
    nus = [float(nu) for nu in nus]
    return list(zip(nus, _spectrum(f, g, curve, nus, window, tol)))


def fourier_spectrum(f, curve, nus, window=None, tol=DEFAULT_TOL):
    """(nu, complex value) for each nu, in input order."""
    return [(nu, r.value) for nu, r in spectrum_results(f, curve, nus, window, tol)]


# -- stationary-phase kernel probe on the sphere ------------------------------

EPS0 = 0.5
C1, C2 = 0.9, 1.1


def _distance(pos, target):
    cross = np.linalg.norm(np.cross(pos, target), axis=-1)
    return np.arctan2(cross, pos @ target)


def _target_vector(target):
    return to_cartesian(target) if isinstance(target, SpherePoint) else np.asarray(target, dtype=np.float64)


def admissible_target(curve, center, distance, angle):
    """Point at geodesic ``distance`` from gamma(center) whose geodesic arrives there at ``angle``.

    The unit vector at gamma(center) pointing away from the returned point
    makes the angle ``angle`` with the curve velocity, so the phase
    derivative at the window centre is ``cos(angle)``.
    """
    pos, tan = sphere_frame(curve, center)
    normal = np.cross(pos, tan)
    away = math.cos(angle) * tan + math.sin(angle) * normal
    return from_cartesian(math.cos(distance) * pos - math.sin(distance) * away)


def cos_departure_angle(curve, target, s):
    """cos of the angle between gamma'(s) and the geodesic direction pointing away from ``target``."""
    x = _target_vector(target)
    pos, tan = sphere_frame(curve, s)
    d = _distance(pos, x)
    away = (pos * np.cos(d)[..., None] - x) / np.sin(d)[..., None]
    return np.sum(tan * away, axis=-1)


def _check_annulus(curve, target, window, eps0, c1, c2):
    pos, _ = sphere_frame(curve, window[0])
    d = float(_distance(pos, _target_vector(target)))
    if not c1 * eps0 - 1e-12 <= d <= c2 * eps0 + 1e-12:
        raise PreconditionError(
            f"target lies at distance {d:.6g} from the window centre; need [{c1 * eps0:.6g}, {c2 * eps0:.6g}]")


def kernel_probe(lam, nu, curve, target, window=(0.0, 0.25), tol=DEFAULT_TOL,
                 eps0=EPS0, c1=C1, c2=C2):
    """Windowed oscillatory integral ``int exp(i(lam d(gamma(s), x) - nu s)) chi(s) ds``.

    ``d`` is the exact great-circle distance to the target ``x``. The target
    must lie at distance in ``[c1 eps0, c2 eps0]`` from the window centre.
    """
    if curve.surface != "sphere":
        raise DomainError("kernel_probe runs on sphere curves")
    center, half = float(window[0]), float(window[1])
    if half <= 0:
        raise DomainError("window halfwidth must be positive")
    _check_annulus(curve, target, (center, half), eps0, c1, c2)
    x = _target_vector(target)

    def base(s):
        pos, _ = sphere_frame(curve, s)
        return np.exp(1j * lam * _distance(pos, x)) * bump_window(s, center, half)

    hint = (abs(lam) + abs(nu)) * 2.0 * half / (2.0 * math.pi)
    return adaptive_fourier(base, 2.0 * half, [nu], hint, tol, center - half)[0]


def stationary_point(lam, nu, curve, target, window=(0.0, 0.25), step=1e-6, grid=401):
    """Zero of d/ds [lam d(gamma(s), x) - nu s] inside the window, by bisection.

    The derivative is a centred finite difference of the phase; raises
    DomainError when the window contains no sign change.
    """
    x = _target_vector(target)
    center, half = window

    def dphase(s):
        s = np.asarray(s, dtype=np.float64)
        hi, _ = sphere_frame(curve, s + step)
        lo, _ = sphere_frame(curve, s - step)
        return lam * (_distance(hi, x) - _distance(lo, x)) / (2 * step) - nu

    grid_s = np.linspace(center - half, center + half, grid)
    vals = dphase(grid_s)
    flips = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)
    if flips.size == 0:
        raise DomainError("phase has no stationary point in the window")
    # nearest to the centre when several exist
    k = flips[np.argmin(np.abs(grid_s[flips] - center))]
    a, b = grid_s[k], grid_s[k + 1]
    fa = vals[k]
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = dphase(mid)
        if fm == 0 or b - a < 1e-14:
            break
        if np.sign(fm) == np.sign(fa):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)
