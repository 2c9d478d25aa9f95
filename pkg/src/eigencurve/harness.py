"""Degree sweeps, log-log power-law fits and pass/fail bands for experiments E1-E6.

E1  |<Y_l^m, Y_m^m>| on the equator, m ~ c l even          exponent 1/4 in m
E2  <Y_l^l, Y_l^l> on the equator                          exponent 1/2 in l
E3  windowed periods of Y_l^{floor(c l)}, nu in [.4, .5] lam  bounded envelope
E4  same family, nu in [1.9, 2.1] lam                         rapid decay
E5  stationary-phase kernel at nu = c lam, and at nu = 2 lam  exponent -1/2
E6  torus wave on a matched rational geodesic              exact period
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .functionals import (
    FunctionalRequest,
    admissible_target,
    generalized_inner_product,
    kernel_probe,
    spectrum_results,
)
from .geometry import Equator, SphereHarmonic, TiltedGreatCircle, TorusGeodesic, TorusWave, to_cartesian
from .quadrature import ConvergenceError
from .sharpness import equator_mixed_inner_product_exact
from .special import DomainError

EXPERIMENTS = ("E1", "E2", "E3", "E4", "E5", "E6")
CROSS_CHECK_RTOL = 1e-8


class ExperimentError(RuntimeError):
    """A row failed; ``rows`` holds what was computed before the failure."""

    def __init__(self, message, rows):
        super().__init__(message)
        self.rows = rows


@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    log_intercept: float
    r_squared: float
    residuals: tuple

    def as_dict(self):
        return {"exponent": self.exponent, "log_intercept": self.log_intercept,
                "r_squared": self.r_squared, "residuals": list(self.residuals)}


def fit_power_law(points):
    """Least-squares line through (ln x, ln y); the slope is the exponent."""
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 3:
        raise DomainError("a power-law fit needs at least three points")
    x, y = np.array(pts).T
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("power-law fit needs strictly positive data")
    if np.any(y < 1e-300):
        raise DomainError("values below 1e-300 cannot be fitted in log space")
    lx, ly = np.log(x), np.log(y)
    design = np.column_stack([lx, np.ones_like(lx)])
    (slope, intercept), *_ = np.linalg.lstsq(design, ly, rcond=None)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    # constant data: ss_tot is rounding noise and the fit is exact
    r2 = 1.0 if ss_tot <= 1e-24 * ly.size else max(0.0, 1.0 - float(np.sum(resid ** 2)) / ss_tot)
    return PowerLawFit(float(slope), float(intercept), r2, tuple(float(r) for r in resid))


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    lmin: int = 64
    lmax: int = 1024
    c: float = 0.5
    curve: object = field(default_factory=Equator)
    window: tuple = None
    tol: float = 1e-10
    seed: int = 0
    nu_band: tuple = None
    nu_step: float = 0.25
    exponent_band: tuple = None
    min_r2: float = None
    cross_check: bool = True
    modes: tuple = None
    workers: int = 1

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise DomainError(f"unknown experiment {self.experiment!r}")
        if not 0.0 < self.c < 1.0:
            raise DomainError(f"c must lie in (0, 1), got {self.c}")
        if self.lmin < 1 or self.lmax <= self.lmin:
            raise DomainError("degree grid must be strictly increasing with lmin >= 1")
        if self.tol <= 0:
            raise DomainError("tol must be positive")

    @classmethod
    def default(cls, experiment, **overrides):
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return cls(experiment, **{**_DEFAULTS[experiment], **overrides})

    def degrees(self):
        """Geometric base-2 grid lmin, 2 lmin, ... <= lmax."""
        out, l = [], self.lmin
        while l <= self.lmax:
            out.append(l)
            l *= 2
        return out


_TILT = math.pi / 6
_DEFAULTS = {
    "E1": dict(lmin=64, lmax=2048, c=0.5, exponent_band=(0.20, 0.30), min_r2=0.99),
    "E2": dict(lmin=64, lmax=1024, exponent_band=(0.45, 0.55)),
    "E3": dict(lmin=64, lmax=1024, c=0.3, curve=TiltedGreatCircle(_TILT),
               window=(math.pi / 2, 0.25), nu_band=(0.4, 0.5), exponent_band=(-0.1, 0.1)),
    "E4": dict(lmin=64, lmax=1024, c=0.3, curve=TiltedGreatCircle(_TILT),
               window=(math.pi / 2, 0.25), nu_band=(1.9, 2.1), exponent_band=(-math.inf, -4.0),
               tol=1e-14),
    "E5": dict(lmin=128, lmax=4096, c=0.5, curve=TiltedGreatCircle(_TILT),
               window=(0.0, 0.4), exponent_band=(-0.6, -0.4)),
    "E6": dict(lmin=1, lmax=2, curve=TorusGeodesic(3, 4, 0.0), modes=((3, 4, 1.0),)),
}


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    rows: list
    fit: PowerLawFit = None
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)


def even_order(l, c):
    """floor(c l), lowered by one when odd so that m stays even and below c l."""
    m = math.floor(c * l)
    return m - (m % 2)


def _collect(fn, items, workers):
    # pool.map yields in submission order, so row order never depends on timing
    rows = []
    try:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                rows.extend(pool.map(fn, items))
        else:
            for x in items:
                rows.append(fn(x))
    except ConvergenceError as exc:
        raise ExperimentError(f"quadrature failed after {len(rows)} rows: {exc}", rows) from exc
    return rows


def _in_band(value, band):
    return band[0] <= value <= band[1]


def _equator_rows(cfg, pairs):
    def row(lm):
        l, m = lm
        exact = equator_mixed_inner_product_exact(l, m)
        out = {"l": l, "m": m, "value": exact, "source": "closed-form"}
        if cfg.cross_check:
            q = generalized_inner_product(FunctionalRequest(
                SphereHarmonic.of(l, m), Equator(), SphereHarmonic.of(m, m), tol=cfg.tol))
            out["quadrature_value"] = abs(q.value)
            out["rel_diff"] = abs(abs(q.value) - exact) / exact
            out["source"] = "closed-form+quadrature"
        return out
    return _collect(row, pairs, cfg.workers)


def _cross_check(rows):
    if "rel_diff" not in rows[0]:
        return ("closed form vs quadrature", True, "skipped")
    worst = max(r["rel_diff"] for r in rows)
    return ("closed form vs quadrature", worst <= CROSS_CHECK_RTOL, f"max rel diff {worst:.3g}")


def _run_e1(cfg):
    rows = _equator_rows(cfg, [(l, even_order(l, cfg.c)) for l in cfg.degrees()])
    fit = fit_power_law([(r["m"], r["value"]) for r in rows])
    checks = [_cross_check(rows),
              ("exponent", _in_band(fit.exponent, cfg.exponent_band),
               f"{fit.exponent:.4f} in {cfg.exponent_band}")]
    if cfg.min_r2 is not None:
        checks.append(("r_squared", fit.r_squared >= cfg.min_r2, f"{fit.r_squared:.5f} >= {cfg.min_r2}"))
    return rows, fit, checks


def _run_e2(cfg):
    degrees = cfg.degrees()
    if any(l % 2 for l in degrees):
        raise DomainError("E2 needs even degrees")
    rows = _equator_rows(cfg, [(l, l) for l in degrees])
    fit = fit_power_law([(r["l"], r["value"]) for r in rows])
    checks = [_cross_check(rows),
              ("exponent", _in_band(fit.exponent, cfg.exponent_band),
               f"{fit.exponent:.4f} in {cfg.exponent_band}")]
    return rows, fit, checks


def _envelope_rows(cfg):
    lo, hi = cfg.nu_band

    def row(l):
        m = math.floor(cfg.c * l)
        f = SphereHarmonic.of(l, m)
        lam = f.eigenfrequency
        nus = np.arange(lo * lam, hi * lam + 0.5 * cfg.nu_step, cfg.nu_step)
        res = spectrum_results(f, cfg.curve, nus, cfg.window, cfg.tol)
        mods = np.array([abs(r.value) for _, r in res])
        k = int(np.argmax(mods))
        return {"l": l, "m": m, "lam": lam, "nu_lo": lo * lam, "nu_hi": hi * lam,
                "n_nu": len(res), "envelope": float(mods[k]), "argmax_nu": float(nus[k]),
                "max_error_estimate": max(r.error_estimate for _, r in res), "source": "quadrature"}
    return _collect(row, cfg.degrees(), cfg.workers)


def _run_e3(cfg):
    rows = _envelope_rows(cfg)
    fit = fit_power_law([(r["l"], r["envelope"]) for r in rows])
    return rows, fit, [("envelope exponent", _in_band(fit.exponent, cfg.exponent_band),
                        f"{fit.exponent:.4f} in {cfg.exponent_band}")]


def _run_e4(cfg):
    rows = _envelope_rows(cfg)
    fit = fit_power_law([(r["l"], r["envelope"]) for r in rows])
    tail = [r["envelope"] for r in rows if r["l"] >= 256]
    tiny = bool(tail) and max(tail) < 1e-8
    ok = _in_band(fit.exponent, cfg.exponent_band) or tiny
    return rows, fit, [("rapid decay", ok,
                        f"exponent {fit.exponent:.3f} <= {cfg.exponent_band[1]} "
                        f"or max envelope for l >= 256 below 1e-8 ({max(tail) if tail else float('nan'):.3g})")]


def seeded_target(curve, center, ratio, seed):
    """Admissible kernel-probe target drawn from ``seed``.

    Distance to gamma(center) is uniform in [0.9, 1.1] * 0.5 and the arrival
    angle is arccos(ratio) + U(-0.05, 0.05), so for nu = ratio * lam the
    stationary point sits near the window centre.
    """
    rng = np.random.default_rng(seed)
    distance = rng.uniform(0.45, 0.55)
    angle = math.acos(ratio) + rng.uniform(-0.05, 0.05)
    return admissible_target(curve, center, distance, angle)


def _run_e5(cfg):
    target = seeded_target(cfg.curve, cfg.window[0], cfg.c, cfg.seed)
    tvec = to_cartesian(target)
    items = [(lam, ratio) for lam in cfg.degrees() for ratio in (cfg.c, 2.0)]

    def row(item):
        lam, ratio = item
        r = kernel_probe(lam, ratio * lam, cfg.curve, target, cfg.window, cfg.tol)
        return {"lam": lam, "nu": ratio * lam,
                "regime": "stationary" if ratio < 1 else "nonstationary",
                "re": r.value.real, "im": r.value.imag, "modulus": abs(r.value),
                "error_estimate": r.error_estimate, "nodes_used": r.nodes_used,
                "target_theta": target.theta, "target_phi": target.phi,
                "target_x": float(tvec[0]), "target_y": float(tvec[1]), "target_z": float(tvec[2]),
                "source": "quadrature"}
    rows = _collect(row, items, cfg.workers)
    stat = [r for r in rows if r["regime"] == "stationary"]
    fit = fit_power_law([(r["lam"], r["modulus"]) for r in stat])
    tail = [r["modulus"] for r in rows if r["regime"] == "nonstationary" and r["lam"] >= 256]
    checks = [("stationary exponent", _in_band(fit.exponent, cfg.exponent_band),
               f"{fit.exponent:.4f} in {cfg.exponent_band}"),
              ("nonstationary decay", bool(tail) and max(tail) < 1e-6,
               f"max |K| at nu = 2 lam, lam >= 256: {max(tail) if tail else float('nan'):.3g}")]
    return rows, fit, checks


def _run_e6(cfg):
    f = TorusWave(cfg.modes)
    curve = cfg.curve
    lam = f.eigenfrequency
    # velocity . (m, n) is the restriction frequency of each mode
    freqs = {(m * curve.p + n * curve.q) / curve.speed_norm for m, n, _ in f.modes}
    matched = freqs.pop() if len(freqs) == 1 else None
    if matched is None:
        raise DomainError("E6 needs every mode to restrict to the same frequency")
    dual = 2.0 * math.pi / curve.length
    kmax = int(math.ceil(2 * lam / dual))
    kmatch = round(matched / dual)
    amp = abs(sum(a for _, _, a in f.modes))
    rows = []
    for k in range(-kmax, kmax + 1):
        nu = k * dual
        r = generalized_inner_product(FunctionalRequest(f, curve, nu=nu, tol=cfg.tol))
        expected = amp * curve.length / (2.0 * math.pi) if k == kmatch else 0.0
        rows.append({"k": k, "nu": nu, "re": r.value.real, "im": r.value.imag,
                     "modulus": abs(r.value), "expected": expected,
                     "abs_error": abs(abs(r.value) - expected), "source": "quadrature+closed-form"})
    hit = [r for r in rows if r["k"] == kmatch]
    miss = [r["modulus"] for r in rows if r["k"] != kmatch]
    checks = [("matched period", bool(hit) and hit[0]["abs_error"] <= 1e-10,
               f"|value| = {hit[0]['modulus']:.15g}, expected {hit[0]['expected']:.15g}" if hit else "missing"),
              ("mismatched periods", max(miss) < 1e-12, f"max {max(miss):.3g}")]
    return rows, None, checks


_RUNNERS = {"E1": _run_e1, "E2": _run_e2, "E3": _run_e3, "E4": _run_e4, "E5": _run_e5, "E6": _run_e6}


def run_experiment(config):
    """Run one experiment; rows come back in a fixed order for a fixed config."""
    rows, fit, checks = _RUNNERS[config.experiment](config)
    return ExperimentResult(config, rows, fit, checks)
