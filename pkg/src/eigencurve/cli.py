"""Command-line entry point.

Exit codes: 0 success (for ``experiment``: every check passed), 1 an
experiment check failed, 2 usage or domain error, 3 numerical failure.
"""
import argparse
import csv
import io
import json
import math
import os
import shlex
import sys
import tempfile
import time
from dataclasses import replace

from .functionals import FunctionalRequest, generalized_inner_product, kernel_probe, spectrum_results
from .geometry import Equator, SphereHarmonic, TiltedGreatCircle, TorusGeodesic, TorusWave, sphere_point
from .harness import EXPERIMENTS, ExperimentConfig, ExperimentError, run_experiment, seeded_target
from .quadrature import ConvergenceError
from .sharpness import equator_mixed_inner_product_exact, sharpness_record, telescoping_bound_check, telescoping_product
from .special import DomainError, surrogate_ratio

SCHEMA_VERSION = "1"


class UsageError(ValueError):
    pass


# -- argument parsing ---------------------------------------------------------

def _floats(text, n=None, what="value"):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"bad {what}: {text!r}") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"{what} needs {n} comma-separated numbers, got {text!r}")
    return vals


def parse_curve(text):
    """``equator``, ``tilted:<alpha>`` or ``geodesic:<p>,<q>[,<offset>]``."""
    kind, _, rest = text.partition(":")
    if kind == "equator" and not rest:
        return Equator()
    if kind == "tilted":
        return TiltedGreatCircle(_floats(rest, 1, "tilt")[0])
    if kind == "geodesic":
        parts = rest.split(",")
        if len(parts) not in (2, 3):
            raise UsageError(f"geodesic needs p,q[,offset], got {rest!r}")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError:
            raise UsageError(f"geodesic direction must be integers, got {rest!r}") from None
        offset = float(parts[2]) if len(parts) == 3 else 0.0
        return TorusGeodesic(p, q, offset)
    raise UsageError(f"unknown curve {text!r}")


def parse_harmonic(text):
    try:
        l, m = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"harmonic index must be l,m, got {text!r}") from None
    return SphereHarmonic.of(l, m)


def parse_modes(text):
    """``m,n[;m,n...]`` with equal coefficients normalized to unit norm."""
    pairs = []
    for chunk in text.split(";"):
        try:
            m, n = (int(v) for v in chunk.split(","))
        except ValueError:
            raise UsageError(f"mode must be m,n, got {chunk!r}") from None
        pairs.append((m, n))
    a = 1.0 / math.sqrt(len(pairs))
    return TorusWave(tuple((m, n, a) for m, n in pairs))


def parse_window(text):
    if text is None:
        return None
    return tuple(_floats(text, 2, "window"))


def _eigenfunctions(args):
    if args.surface == "sphere":
        if args.f is None:
            raise UsageError("--f l,m is required on the sphere")
        f = parse_harmonic(args.f)
        g_text = getattr(args, "g", None)
        g = None if g_text in (None, "one") else parse_harmonic(g_text)
    else:
        if args.modes is None:
            raise UsageError("--modes is required on the torus")
        f = parse_modes(args.modes)
        g_modes = getattr(args, "g_modes", None)
        g = None if g_modes is None else parse_modes(g_modes)
    return f, g


def _curve(args):
    curve = parse_curve(args.curve)
    if curve.surface != args.surface:
        raise UsageError(f"curve {args.curve!r} does not lie on the {args.surface}")
    return curve


# -- output -----------------------------------------------------------------

def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render(record, fmt):
    if fmt == "json":
        return json.dumps(record, indent=2, allow_nan=True) + "\n"
    rows = record["rows"]
    cols = ["schema_version"] + (list(rows[0]) if rows else [])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([record["schema_version"]] + [_fmt(row[c]) for c in cols[1:]])
    return buf.getvalue()


def write_output(record, out, fmt):
    text = render(record, fmt)
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".eigencurve-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _quad_row(r):
    return {"re": r.value.real, "im": r.value.imag, "modulus": abs(r.value),
            "error_estimate": r.error_estimate, "nodes_used": r.nodes_used}


# -- subcommands ------------------------------------------------------------

def cmd_inner_product(args):
    f, g = _eigenfunctions(args)
    req = FunctionalRequest(f, _curve(args), g, args.nu, parse_window(args.window), args.tol)
    return [_quad_row(generalized_inner_product(req))], None, None


def cmd_period(args):
    args.g = None
    args.g_modes = None
    return cmd_inner_product(args)


def cmd_spectrum(args):
    f, _ = _eigenfunctions(args)
    nus = _floats(args.nu_list, what="nu list")
    res = spectrum_results(f, _curve(args), nus, parse_window(args.window), args.tol)
    return [{"nu": nu, **_quad_row(r)} for nu, r in res], None, None


def cmd_kernel_probe(args):
    args.surface = "sphere"
    curve = _curve(args)
    window = parse_window(args.window)
    if args.target is not None:
        theta, phi = _floats(args.target, 2, "target")
        target = sphere_point(theta, phi)
    else:
        ratio = args.nu / args.lam if args.lam and 0 <= args.nu / args.lam < 1 else 0.5
        target = seeded_target(curve, window[0], ratio, args.seed)
    r = kernel_probe(args.lam, args.nu, curve, target, window, args.tol)
    row = {"lam": args.lam, "nu": args.nu, **_quad_row(r),
           "target_theta": target.theta, "target_phi": target.phi}
    return [row], None, None


def cmd_sharpness(args):
    l, m = args.l, args.m
    c = args.c if args.c is not None else 0.5 * (1.0 + m / l)
    row = {"l": l, "m": m, "exact_value": equator_mixed_inner_product_exact(l, m)}
    if 0 < m < l:
        rec = sharpness_record(l, m)
        row.update(surrogate_value=rec.surrogate_value, surrogate_ratio=surrogate_ratio(l, m),
                   telescoping=rec.telescoping,
                   telescoping_factorial=telescoping_product(l, m, "factorial"),
                   ratio_bound=rec.ratio_bound)
    if m < c * l:
        b = telescoping_bound_check(l, m, c)
        row.update(c=c, upper=b.upper, cap=b.cap, holds=b.holds)
    return [row], None, None


def _experiment_config(args):
    overrides = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            overrides.update(json.load(fh))
        if "curve" in overrides:
            overrides["curve"] = parse_curve(overrides["curve"])
        for key in ("window", "nu_band", "exponent_band"):
            if overrides.get(key) is not None:
                overrides[key] = tuple(overrides[key])
        if overrides.get("modes") is not None:
            overrides["modes"] = tuple(tuple(mode) for mode in overrides["modes"])
    flags = {"lmin": args.lmin, "lmax": args.lmax, "c": args.c, "tol": args.tol, "seed": args.seed,
             "workers": args.workers,
             "curve": parse_curve(args.curve) if args.curve else None,
             "window": parse_window(args.window),
             "nu_band": tuple(_floats(args.nu_band, 2, "nu band")) if args.nu_band else None}
    overrides.update({k: v for k, v in flags.items() if v is not None})
    try:
        cfg = ExperimentConfig.default(args.experiment, **overrides)
    except TypeError as exc:
        raise UsageError(f"bad experiment config: {exc}") from None
    if args.no_cross_check:
        cfg = replace(cfg, cross_check=False)
    return cfg


def cmd_experiment(args):
    result = run_experiment(_experiment_config(args))
    for name, ok, detail in result.checks:
        print(f"[{'PASS' if ok else 'FAIL'}] {args.experiment} {name}: {detail}", file=sys.stderr)
    checks = [{"name": n, "passed": ok, "detail": d} for n, ok, d in result.checks]
    return result.rows, result.fit, {"checks": checks, "passed": result.passed}


def build_parser():
    parser = argparse.ArgumentParser(prog="eigencurve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, surface=True):
        if surface:
            p.add_argument("--surface", choices=("sphere", "torus"), default="sphere")
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--out")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--seed", type=int, default=0)

    def eigen(p):
        p.add_argument("--f", help="sphere harmonic l,m")
        p.add_argument("--modes", help="torus modes m,n[;m,n...]")
        p.add_argument("--curve", required=True)
        p.add_argument("--window", help="center,halfwidth")

    p = sub.add_parser("inner-product", help="int f conj(g) exp(-i nu s) ds along a curve")
    common(p)
    eigen(p)
    p.add_argument("--g", default="one", help="sphere harmonic l,m or 'one'")
    p.add_argument("--g-modes", help="torus modes for g")
    p.add_argument("--nu", type=float, default=0.0)
    p.set_defaults(func=cmd_inner_product)

    p = sub.add_parser("period", help="generalized period int f exp(-i nu s) ds")
    common(p)
    eigen(p)
    p.add_argument("--nu", type=float, required=True)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("spectrum", help="generalized periods for a list of frequencies")
    common(p)
    eigen(p)
    p.add_argument("--nu-list", required=True, help="comma-separated frequencies")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("kernel-probe", help="windowed stationary-phase kernel on the sphere")
    common(p, surface=False)
    p.add_argument("--lam", type=float, required=True)
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--curve", default="tilted:0.5235987755982988")
    p.add_argument("--window", default="0,0.25")
    p.add_argument("--target", help="theta,phi; drawn from --seed when omitted")
    p.set_defaults(func=cmd_kernel_probe)

    p = sub.add_parser("sharpness", help="equatorial closed forms for even l, m")
    common(p, surface=False)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", type=float)
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("experiment", help="run E1..E6 and check the fitted exponents")
    common(p, surface=False)
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--config", help="JSON file with ExperimentConfig fields")
    p.add_argument("--lmin", type=int)
    p.add_argument("--lmax", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--curve")
    p.add_argument("--window")
    p.add_argument("--nu-band")
    p.add_argument("--workers", type=int)
    p.add_argument("--no-cross-check", action="store_true")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    if args.command not in ("experiment",) and args.tol is None:
        args.tol = 1e-10
    fmt = args.format or ("json" if args.out and args.out.endswith(".json") else "csv")
    started = time.perf_counter()
    try:
        rows, fit, extra = args.func(args)
    except (UsageError, DomainError, OSError, json.JSONDecodeError) as exc:
        print(f"eigencurve: error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, ExperimentError) as exc:
        print(f"eigencurve: numerical failure: {exc}", file=sys.stderr)
        return 3
    record = {"schema_version": SCHEMA_VERSION, "command": shlex.join(["eigencurve", *argv]),
              "rows": rows, "fit": fit.as_dict() if fit is not None else None,
              "timing_ms": (time.perf_counter() - started) * 1e3}
    if extra:
        record.update(extra)
    write_output(record, args.out, fmt)
    if extra is not None and not extra["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
