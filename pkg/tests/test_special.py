import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigencurve.special import (
    DomainError,
    HarmonicIndex,
    log_double_factorial,
    log_normalization,
    normalized_assoc_legendre,
    paper_pmn_zero_surrogate,
    pmn_zero_abs,
    surrogate_ratio,
)
from oracles import double_factorial_mp, pmn_zero_mp, ybar_mp


@pytest.mark.parametrize("n, expected", [(-1, 0.0), (0, 0.0), (1, 0.0), (5, math.log(15)), (6, math.log(48))])
def test_log_double_factorial_small(n, expected):
    assert log_double_factorial(n) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("n", [19, 20, 21, 22, 101, 301, 1000, 4097])
def test_log_double_factorial_against_exact_product(n):
    assert log_double_factorial(n) == pytest.approx(double_factorial_mp(n), rel=1e-13)


def test_log_double_factorial_rejects_negative():
    with pytest.raises(DomainError):
        log_double_factorial(-2)


def test_harmonic_index_validation():
    HarmonicIndex(3, -3)
    with pytest.raises(DomainError):
        HarmonicIndex(3, 4)
    with pytest.raises(DomainError):
        normalized_assoc_legendre((2, -3), 0.1)


def test_low_degree_values():
    assert normalized_assoc_legendre((0, 0), 0.3) == pytest.approx(1 / math.sqrt(4 * math.pi), rel=1e-15)
    assert normalized_assoc_legendre((1, 0), 1.0) == pytest.approx(math.sqrt(3 / (4 * math.pi)), rel=1e-15)
    # Condon-Shortley sign on Y_1^1
    assert normalized_assoc_legendre((1, 1), 0.0) == pytest.approx(-math.sqrt(3 / (8 * math.pi)), rel=1e-15)


@pytest.mark.parametrize("l, m", [(2, 1), (5, 3), (8, -3), (17, 17), (30, 0), (40, -21)])
def test_matches_mpmath_spherharm(l, m):
    for theta in (0.2, 0.7, 1.9, 3.0):
        want = ybar_mp(l, m, theta).real
        got = normalized_assoc_legendre((l, m), math.cos(theta))
        assert got == pytest.approx(want, rel=1e-11, abs=1e-14)


def test_negative_order_symmetry():
    x = np.linspace(-0.9, 0.9, 7)
    for l, m in [(6, 1), (6, 2), (11, 5)]:
        np.testing.assert_allclose(normalized_assoc_legendre((l, -m), x),
                                   (-1) ** m * normalized_assoc_legendre((l, m), x), rtol=1e-15)


def test_array_and_scalar_shapes():
    x = np.linspace(-1, 1, 12).reshape(3, 4)
    out = normalized_assoc_legendre((9, 4), x)
    assert out.shape == (3, 4)
    assert out[1, 2] == normalized_assoc_legendre((9, 4), x[1, 2])
    assert isinstance(normalized_assoc_legendre((9, 4), 0.5), float)


def test_x_out_of_range():
    with pytest.raises(DomainError):
        normalized_assoc_legendre((3, 1), 1.5)


def test_l200_m100_at_origin():
    want = math.exp(log_normalization(200, 100)) * pmn_zero_abs(200, 100)
    assert abs(normalized_assoc_legendre((200, 100), 0.0)) == pytest.approx(want, rel=1e-10)


def test_no_overflow_at_8192():
    v = normalized_assoc_legendre((8192, 4096), np.array([0.0, 0.3, 0.99]))
    assert np.all(np.isfinite(v))
    assert abs(v[0]) > 0


def test_normalization_integral():
    # Gauss-Legendre with enough nodes integrates |Pbar|^2 exactly
    x, w = np.polynomial.legendre.leggauss(80)
    for l, m in [(0, 0), (7, 3), (40, 40), (60, 11)]:
        p = normalized_assoc_legendre((l, m), x)
        assert 2 * math.pi * np.sum(w * p * p) == pytest.approx(1.0, rel=1e-12)


def test_orthogonality_in_degree():
    x, w = np.polynomial.legendre.leggauss(80)
    p = normalized_assoc_legendre((20, 4), x)
    q = normalized_assoc_legendre((22, 4), x)
    assert abs(2 * math.pi * np.sum(w * p * q)) < 1e-14


@pytest.mark.parametrize("l, m, expected", [(2, 0, 0.5), (2, 2, 3.0), (3, 0, 0.0), (4, 1, 0.0), (6, 2, 13.125)])
def test_pmn_zero_abs_small(l, m, expected):
    assert pmn_zero_abs(l, m) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("l, m", [(10, 4), (40, 20), (101, 33), (150, 150)])
def test_pmn_zero_abs_against_mpmath(l, m):
    assert pmn_zero_abs(l, m) == pytest.approx(pmn_zero_mp(l, m), rel=1e-12)


def test_pmn_zero_abs_domain():
    with pytest.raises(DomainError):
        pmn_zero_abs(3, 4)
    assert pmn_zero_abs(3, 0) == 0.0


def test_surrogate_values():
    assert paper_pmn_zero_surrogate(2, 0) == pytest.approx(0.5)
    assert paper_pmn_zero_surrogate(2, 2) == pytest.approx(4.0)
    assert 1.0 <= surrogate_ratio(400, 200) <= 1.5
    with pytest.raises(DomainError):
        paper_pmn_zero_surrogate(3, 2)


def test_surrogate_ratio_close_to_sqrt():
    for l, m in [(100, 20), (400, 200), (1024, 512)]:
        assert surrogate_ratio(l, m) == pytest.approx(math.sqrt((l + m) / l), rel=2e-2)


def test_surrogate_large_arguments_stay_finite_in_ratio():
    assert math.isinf(pmn_zero_abs(1024, 512))
    assert math.isfinite(surrogate_ratio(1024, 512))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 64), st.floats(0, math.pi), st.floats(0, 2 * math.pi))
def test_addition_theorem_property(l, theta, phi):
    x = math.cos(theta)
    total = sum(normalized_assoc_legendre((l, m), x) ** 2 for m in range(-l, l + 1))
    assert total == pytest.approx((2 * l + 1) / (4 * math.pi), rel=1e-10)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 300), st.data(), st.floats(-1, 1))
def test_parity_property(l, data, x):
    m = data.draw(st.integers(-l, l))
    a = normalized_assoc_legendre((l, m), -x)
    b = (-1) ** (l + m) * normalized_assoc_legendre((l, m), x)
    assert a == pytest.approx(b, rel=1e-12, abs=1e-300)


def test_origin_consistency_all_even_pairs():
    worst = 0.0
    for l in range(0, 513, 2):
        ms = np.arange(0, l + 1, 2)
        for m in ms:
            m = int(m)
            got = abs(normalized_assoc_legendre((l, m), 0.0))
            want = math.exp(log_normalization(l, m) + math.log(pmn_zero_abs(l, m))) \
                if math.isfinite(pmn_zero_abs(l, m)) else None
            if want is None:
                continue
            worst = max(worst, abs(got - want) / want)
    assert worst <= 1e-10
