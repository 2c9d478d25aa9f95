import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigencurve import harness
from eigencurve.geometry import TiltedGreatCircle
from eigencurve.harness import (
    ExperimentConfig,
    ExperimentError,
    even_order,
    fit_power_law,
    run_experiment,
    seeded_target,
)
from eigencurve.quadrature import ConvergenceError
from eigencurve.special import DomainError


def test_fit_exact_power_law():
    fit = fit_power_law([(x, 3 * x ** 0.25) for x in (2, 4, 8)])
    assert fit.exponent == pytest.approx(0.25, abs=1e-12)
    assert fit.log_intercept == pytest.approx(math.log(3), abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0)


def test_fit_constant():
    fit = fit_power_law([(x, 7.0) for x in range(1, 11)])
    assert fit.exponent == pytest.approx(0.0, abs=1e-12)
    assert fit.r_squared == 1.0


def test_fit_noisy_quarter_law():
    rng = np.random.default_rng(42)
    x = 2.0 ** np.arange(6, 12)
    y = x ** 0.25 * (1 + rng.uniform(-0.01, 0.01, x.size))
    assert fit_power_law(zip(x, y)).exponent == pytest.approx(0.25, abs=0.01)


@settings(max_examples=100, deadline=None)
@given(st.floats(-3, 3), st.floats(-5, 5), st.lists(st.floats(0.1, 1e4), min_size=3, max_size=12, unique=True))
def test_fit_recovers_exponent_and_centres_residuals(p, logc, xs):
    if max(xs) / min(xs) < 1.5:
        return
    fit = fit_power_law([(x, math.exp(logc) * x ** p) for x in xs])
    assert fit.exponent == pytest.approx(p, abs=1e-9)
    assert abs(sum(fit.residuals)) < 1e-9


def test_fit_rejects_bad_input():
    with pytest.raises(DomainError):
        fit_power_law([(1, 1), (2, 2)])
    with pytest.raises(DomainError):
        fit_power_law([(1, 1), (2, -2), (3, 3)])
    with pytest.raises(DomainError):
        fit_power_law([(1, 1), (2, 1e-310), (3, 3)])


def test_config_validation():
    with pytest.raises(DomainError):
        ExperimentConfig.default("E1", c=1.2)
    with pytest.raises(DomainError):
        ExperimentConfig.default("E1", lmin=128, lmax=64)
    with pytest.raises(DomainError):
        ExperimentConfig("E9")
    assert ExperimentConfig.default("E1", lmin=64, lmax=256).degrees() == [64, 128, 256]


def test_even_order():
    assert even_order(64, 0.5) == 32
    assert even_order(100, 0.33) == 32
    assert even_order(10, 0.3) == 2


def test_e1_small_grid():
    res = run_experiment(ExperimentConfig.default("E1", lmin=64, lmax=256))
    values = [r["value"] for r in res.rows]
    assert values == sorted(values)
    assert res.fit.exponent == pytest.approx(0.25, abs=0.05)
    assert all(r["rel_diff"] <= 1e-8 for r in res.rows)
    assert all(r["source"] == "closed-form+quadrature" for r in res.rows)


def test_e1_tolerance_halving_keeps_exponent():
    a = run_experiment(ExperimentConfig.default("E1", lmin=64, lmax=256, tol=1e-10))
    b = run_experiment(ExperimentConfig.default("E1", lmin=64, lmax=256, tol=5e-11))
    assert abs(a.fit.exponent - b.fit.exponent) <= 1e-3


def test_e2_exponent():
    res = run_experiment(ExperimentConfig.default("E2"))
    assert res.passed
    assert res.fit.exponent == pytest.approx(0.5, abs=0.05)


def test_e6_exact():
    res = run_experiment(ExperimentConfig.default("E6"))
    assert res.passed
    hit = [r for r in res.rows if r["expected"] > 0]
    assert len(hit) == 1 and hit[0]["modulus"] == pytest.approx(5.0, abs=1e-10)


def _table(res):
    return json.dumps(res.rows, sort_keys=True)


@pytest.mark.parametrize("eid, overrides", [("E1", dict(lmin=64, lmax=256)),
                                            ("E3", dict(lmin=64, lmax=256)),
                                            ("E5", dict(lmin=128, lmax=512))])
def test_determinism_and_worker_independence(eid, overrides):
    a = run_experiment(ExperimentConfig.default(eid, **overrides))
    b = run_experiment(ExperimentConfig.default(eid, **overrides))
    c = run_experiment(ExperimentConfig.default(eid, workers=4, **overrides))
    assert _table(a) == _table(b) == _table(c)


def test_seeded_target_is_admissible_and_recorded():
    curve = TiltedGreatCircle(math.pi / 6)
    t1 = seeded_target(curve, 0.0, 0.5, 7)
    assert t1 == seeded_target(curve, 0.0, 0.5, 7)
    assert t1 != seeded_target(curve, 0.0, 0.5, 8)
    res = run_experiment(ExperimentConfig.default("E5", lmin=128, lmax=512, seed=7))
    assert {(r["target_theta"], r["target_phi"]) for r in res.rows} == {(t1.theta, t1.phi)}


def test_partial_rows_on_convergence_failure(monkeypatch):
    calls = []
    real = harness.generalized_inner_product

    def flaky(req):
        calls.append(req)
        if len(calls) > 2:
            raise ConvergenceError("forced", 0j, 0j)
        return real(req)
    monkeypatch.setattr(harness, "generalized_inner_product", flaky)
    with pytest.raises(ExperimentError) as exc:
        run_experiment(ExperimentConfig.default("E1", lmin=64, lmax=512))
    assert len(exc.value.rows) == 2


def test_e4_rapid_decay_small():
    res = run_experiment(ExperimentConfig.default("E4", lmin=64, lmax=256))
    assert max(r["envelope"] for r in res.rows) < 1e-3
