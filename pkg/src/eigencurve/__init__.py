"""Restrictions of Laplace eigenfunctions to curves on the round sphere and flat torus."""
from ._backend import BACKEND
from .functionals import (
    FunctionalRequest,
    PreconditionError,
    admissible_target,
    fourier_spectrum,
    generalized_inner_product,
    kernel_probe,
    spectrum_results,
    stationary_point,
)
from .geometry import (
    Equator,
    SphereHarmonic,
    SpherePoint,
    TiltedGreatCircle,
    TorusGeodesic,
    TorusPoint,
    TorusWave,
    curve_point,
    eval_eigenfunction,
    restrict,
    sum_two_squares,
)
from .harness import ExperimentConfig, ExperimentError, fit_power_law, run_experiment
from .quadrature import ConvergenceError, QuadResult, adaptive_periodic, bump_window, periodic_trapezoid
from .sharpness import equator_mixed_inner_product_exact, telescoping_bound_check, telescoping_product
from .special import (
    DomainError,
    HarmonicIndex,
    log_double_factorial,
    normalized_assoc_legendre,
    paper_pmn_zero_surrogate,
    pmn_zero_abs,
)

__version__ = "0.1.0"
