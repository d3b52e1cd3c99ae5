import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import special

from src.analysis.quadrature_oracle import jam_max_quadrature, power_min_quadrature
from src.analysis.success_probability import (
    incomplete_gamma_negative_order,
    jam_max_series,
    scaled_incomplete_gamma,
    success_prob_jam_max,
    success_prob_power_min,
)
from src.models.schema.probability_schema import ProbabilityInputs

BASE = dict(
    rho_sd=10.0,
    rho_se=1.0,
    rho_ed=1.0,
    sigma2=1.0,
    sigma2_tilde=2.0,
    p_s=10.0,
    gamma_s=1.0,
)


def _inputs(**changes):
    return ProbabilityInputs(**{**BASE, "m": 3, **changes})


def test_power_min_two_chains_is_exponential_tail():
    inp = _inputs(m=2, sigma2_tilde=1.0, gamma_s=1.0, p_s=1.0, rho_se=1.0)
    assert success_prob_power_min(inp) == pytest.approx(math.exp(-1.0))


@pytest.mark.parametrize("m", [2, 3, 5, 8])
@pytest.mark.parametrize("gamma_s", [0.1, 1.0, 10.0])
def test_power_min_matches_quadrature(m, gamma_s):
    inp = _inputs(m=m, gamma_s=gamma_s)
    assert success_prob_power_min(inp) == pytest.approx(
        power_min_quadrature(inp), rel=1e-8, abs=1e-12
    )


def test_power_min_decreases_with_gamma_s():
    values = [success_prob_power_min(_inputs(gamma_s=g)) for g in (0.1, 1, 10, 100)]
    assert all(a > b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("k", [0, 1, 2, 4])
@pytest.mark.parametrize("x", [0.5, 2.0, 8.0])
def test_scaled_incomplete_gamma_matches_exponential_integrals(k, x):
    expected = math.exp(x) * x ** (-k) * special.expn(k + 1, x)
    assert scaled_incomplete_gamma(k, x)[k] == pytest.approx(expected, rel=1e-8)
    assert incomplete_gamma_negative_order(k, x) == pytest.approx(
        x ** (-k) * special.expn(k + 1, x), rel=1e-8
    )


def test_scaled_incomplete_gamma_rejects_nonpositive_argument():
    with pytest.raises(ValueError):
        scaled_incomplete_gamma(2, 0.0)


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("factor", [0.5, 2.0])
def test_jam_max_matches_quadrature(m, factor):
    inp = _inputs(m=m, p_j=factor * BASE["rho_sd"] * BASE["sigma2_tilde"])
    assert success_prob_jam_max(inp) == pytest.approx(
        jam_max_quadrature(inp), rel=1e-7, abs=1e-9
    )


@pytest.mark.parametrize("m", [4, 8])
@pytest.mark.parametrize("p_j", [1e-2, 1e-3, 1e-4])
def test_jam_max_matches_quadrature_under_weak_jamming(m, p_j):
    inp = _inputs(m=m, p_j=p_j)
    assert success_prob_jam_max(inp, clamp=False) == pytest.approx(
        jam_max_quadrature(inp), abs=1e-7
    )


@pytest.mark.parametrize("m", [3, 4, 8])
def test_jam_max_tends_to_passive_limit(m):
    passive = success_prob_jam_max(_inputs(m=m, p_j=0.0))
    faint = success_prob_jam_max(_inputs(m=m, p_j=1e-9), clamp=False)
    assert faint == pytest.approx(passive, abs=1e-6)


@pytest.mark.parametrize("m", [2, 3, 5])
def test_series_matches_confluent_form_on_moderate_arguments(m):
    inp = _inputs(m=m, p_j=20.0)
    assert jam_max_series(inp) == pytest.approx(
        success_prob_jam_max(inp, clamp=False), rel=1e-8
    )


def test_jam_max_two_chains_closed_form():
    inp = _inputs(m=2, p_j=20.0)
    k_coef = inp.rho_sd * inp.sigma2_tilde / (inp.rho_se * inp.rho_ed * inp.p_j)
    a = inp.sigma2 / (inp.rho_ed * inp.p_j) + k_coef
    expected = 1.0 - k_coef * math.exp(a) * special.exp1(a)
    assert success_prob_jam_max(inp) == pytest.approx(expected, rel=1e-9)


def test_jam_max_without_jamming_is_passive():
    inp = _inputs(m=3, p_j=0.0)
    ratio = inp.rho_se * inp.sigma2 / (inp.sigma2_tilde * inp.rho_sd)
    assert success_prob_jam_max(inp) == pytest.approx(1 - (1 + ratio) ** -2)
    assert success_prob_jam_max(inp) == pytest.approx(
        jam_max_quadrature(inp), rel=1e-8
    )


def test_jam_max_grows_with_jamming_power():
    values = [success_prob_jam_max(_inputs(p_j=p)) for p in (0.0, 5.0, 20.0, 80.0)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert all(0.0 <= v <= 1.0 for v in values)


@pytest.mark.parametrize("m", [2, 3, 5])
def test_literal_coefficient_is_undefined(m):
    assert np.isnan(success_prob_jam_max(_inputs(m=m, p_j=20.0), "literal"))


def test_inputs_validation():
    with pytest.raises(ValidationError):
        _inputs(m=1)
    with pytest.raises(ValidationError):
        _inputs(p_j=-1.0)
