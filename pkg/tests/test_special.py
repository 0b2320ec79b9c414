import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import jv

from cyclic_dunkl.errors import GammaPoleError, ParameterError
from cyclic_dunkl.operators import OperatorContext, eigen_series
from cyclic_dunkl.series import GroupConfig, MultiIndex, TruncatedSeries, evaluate, project
from cyclic_dunkl.special import (
    cos_m_eval,
    cos_m_values,
    dunkl_kernel_eval,
    eigen_eval,
    hyper_bessel_eval,
    hyper_bessel_series,
    hyper_bessel_values,
    kernel_closed_form,
    kernel_decomposition_check,
    kernel_fd_check,
    kernel_literal_check,
    kernel_series_check,
    ode_check,
    recurrence_check,
    sin_ml_eval,
)

from conftest import random_valid_nu


# -- hyper-trigonometric ---------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 7])
def test_cos_sin_at_zero(m):
    assert cos_m_eval(m, 0).value == 1
    for l in range(1, m):
        assert sin_ml_eval(m, l, 0).value == 0


def test_cos2_is_cosine():
    assert abs(cos_m_eval(2, 1).value - 0.5403023058681398) < 1e-14


def test_cos3_partial_sum_oracle():
    exact = sum(Fraction((-1) ** n, math.factorial(3 * n)) for n in range(50))
    assert abs(cos_m_eval(3, 1).value - float(exact)) < 1e-14


def test_sin21_is_sine():
    assert abs(sin_ml_eval(2, 1, 1).value - 0.8414709848078965) < 1e-14


def test_sin_index_range():
    with pytest.raises(ParameterError):
        sin_ml_eval(3, 3, 1.0)
    with pytest.raises(ParameterError):
        cos_m_eval(1, 1.0)


def test_exponential_decomposition_m4():
    m, x = 4, 0.8
    kappa = cmath.exp(1j * math.pi / m)
    total = cos_m_eval(m, x).value + sum(kappa**l * sin_ml_eval(m, l, x).value for l in range(1, m))
    assert abs(total - cmath.exp(kappa * x)) < 1e-13


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_cos_m_is_class_m_part_of_exp(m):
    kappa = GroupConfig(m).kappa
    part = project(TruncatedSeries.exp(80, kappa), m, GroupConfig(m))
    xs = np.array([0.3, -1.2, 2.0, 1.5j, 1 + 1j])
    assert np.allclose(cos_m_values(m, xs), [evaluate(part, x) for x in xs], rtol=0, atol=1e-13)


def test_cos_m_values_shape():
    x = np.linspace(0, 2, 6).reshape(2, 3)
    assert cos_m_values(2, x).shape == (2, 3)
    assert np.allclose(cos_m_values(2, x), np.cos(x), atol=1e-14)


# -- hyper-Bessel ------------------------------------------------------------

def test_hyper_bessel_at_zero():
    assert hyper_bessel_eval(MultiIndex((0.2, 0.4)), 3, 0).value == 1


def test_hyper_bessel_sinc():
    r = hyper_bessel_eval(MultiIndex((0.5,)), 2, math.pi / 2)
    assert abs(r.value - 2 / math.pi) < 1e-12


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5])
def test_hyper_bessel_classical(nu):
    x = np.linspace(0.1, 10, 25)
    ref = 2**nu * math.gamma(nu + 1) * x ** (-nu) * jv(nu, x)
    got = hyper_bessel_values(MultiIndex((nu,)), 2, x)
    assert np.allclose(got, ref, rtol=0, atol=1e-10)


def test_hyper_bessel_pole():
    with pytest.raises(GammaPoleError):
        hyper_bessel_eval(MultiIndex((-2.0,)), 2, 1.0)


def test_hyper_bessel_series_matches_eval():
    nu = MultiIndex((0.2, 0.4))
    s = hyper_bessel_series(nu, 3, 1.3, 60)
    assert abs(evaluate(s, 0.9) - hyper_bessel_eval(nu, 3, 1.17).value) < 1e-14


def test_ode_example():
    assert ode_check(MultiIndex((0.2, 0.4)), 3, 1.3, 60).max_residual <= 1e-12


def test_recurrence_examples():
    reports = recurrence_check(MultiIndex((0.5,)), 2, 40)
    raise_ = [r for r in reports if r.identity == "recurrence-raise"][0]
    assert raise_.max_residual <= 1e-13
    reports = recurrence_check(MultiIndex((0.5, 0.7)), 3, 40)
    lower = [r for r in reports if r.identity.startswith("recurrence-lower") and r.details.get("k") == 2][0]
    assert lower.max_residual <= 1e-13


def test_recurrence_degenerate():
    reports = recurrence_check(MultiIndex((0.0, 0.7)), 3, 40)
    statuses = {r.details.get("k"): r.status for r in reports if r.identity.startswith("recurrence-lower")}
    assert statuses[1] == "degenerate"
    assert statuses[2] == "pass"


# -- error estimates -------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 5])
@pytest.mark.parametrize("x", [0.5, 3.0, 7.0 + 2j])
def test_error_estimate_sound(m, x, rng):
    nu = MultiIndex(random_valid_nu(rng, m))
    r = hyper_bessel_eval(nu, m, x)
    longer = hyper_bessel_eval(nu, m, x, tol=0.0, max_terms=2 * r.terms_used)
    assert not longer.converged
    assert abs(longer.value - r.value) <= r.error_estimate
    c = cos_m_eval(m, x)
    c2 = cos_m_eval(m, x, tol=0.0, max_terms=2 * c.terms_used)
    assert abs(c2.value - c.value) <= c.error_estimate


def test_error_estimate_kernel(ctx_m3):
    mu = ctx_m3.cfg.kappa * 1.4
    r = eigen_eval(ctx_m3, mu, 2.0)
    longer = eigen_eval(ctx_m3, mu, 2.0, tol=0.0, max_terms=2 * r.terms_used)
    assert abs(longer.value - r.value) <= r.error_estimate


# -- Dunkl kernel ------------------------------------------------------------

def _kernel_by_hand(kappa, x, terms=60):
    # m = 2, k_1 = 2: a_n = kappa a_(n-1) / (n + 2 [n odd])
    total, a = 1 + 0j, 1 + 0j
    for n in range(1, terms):
        a = a * kappa * x / (n + (2 if n % 2 else 0))
        total += a
    return total


def test_kernel_m2_example():
    ctx = OperatorContext.build(2, [0.5])
    r = dunkl_kernel_eval(ctx, 1.0, 1.0)
    ref = _kernel_by_hand(1j, 1.0)
    assert abs(r.value - ref) < 1e-14
    # classical form: j_{1/2}(1) + i/3 j_{3/2}(1) = sin 1 + i (sin 1 - cos 1)
    assert abs(r.value - complex(math.sin(1), math.sin(1) - math.cos(1))) < 1e-14
    assert r.info["difference"] < 1e-12
    assert r.info["theorem_condition"]


def test_kernel_at_zero(ctx_m3):
    assert dunkl_kernel_eval(ctx_m3, 2.3 - 1j, 0.0).value == 1


@pytest.mark.parametrize("m", [2, 3, 4])
def test_kernel_closed_form_corrected(rng, m):
    ctx = OperatorContext.build(m, random_valid_nu(rng, m))
    lam = complex(*rng.uniform(-2, 2, 2))
    assert kernel_series_check(ctx, lam, 60).max_residual <= 1e-12
    assert kernel_decomposition_check(ctx, lam, 60).max_residual <= 1e-12
    for x in (0.4, 1.5, -0.7 + 0.3j):
        r = dunkl_kernel_eval(ctx, lam, x)
        assert r.info["corrected_difference"] <= 1e-12 * max(1, abs(r.value))


def test_kernel_literal_reading_flagged():
    ctx = OperatorContext.build(3, [0.2, 0.4])
    r = dunkl_kernel_eval(ctx, 1.0, 1.5, reading="literal")
    assert r.info["discrepancy"]
    assert not r.info["corrected_discrepancy"]
    rep = kernel_literal_check(ctx, 1.0, [0.5, 1.0, 1.5])
    assert rep.status == "documented-discrepancy"
    assert rep.passed


def test_kernel_unknown_reading(ctx_m2):
    with pytest.raises(ParameterError):
        kernel_closed_form(ctx_m2, 1.0, 1.0, reading="other")


def test_kernel_fd(ctx_m3):
    assert kernel_fd_check(ctx_m3, 1.0, [0.5, 1.0, 0.3 + 0.6j]).max_residual <= 1e-8


def test_kernel_mu_direct(ctx_m3):
    mu = 0.8 - 0.1j
    r = dunkl_kernel_eval(ctx_m3, mu, 1.2, mu_direct=True)
    ref = evaluate(eigen_series(ctx_m3, mu, 80), 1.2)
    assert abs(r.value - ref) < 1e-14
    assert r.info["difference"] < 1e-12


def test_kernel_negative_weights_flag():
    ctx = OperatorContext.build(2, [-0.7])
    r = dunkl_kernel_eval(ctx, 1.0, 0.5)
    assert not r.info["theorem_condition"]
