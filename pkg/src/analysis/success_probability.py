"""Closed-form eavesdropping success probabilities."""

import math
from typing import Literal

import numpy as np
from scipy import special

from src.models.schema.probability_schema import ProbabilityInputs

CoefficientVariant = Literal["factorial", "literal"]

_EXP_LIMIT = 500.0


def success_prob_power_min(inp: ProbabilityInputs) -> float:
    """Success probability when SINR_D is held at gamma_s.

    SINR_E = p_s gamma_se / sigma_tilde^2 with gamma_se ~ Gamma(M-1, rho_se),
    so the result is the Erlang tail e^{-a} sum_{k<M-1} a^k / k!.
    """
    a = inp.sigma2_tilde * inp.gamma_s / (inp.p_s * inp.rho_se)
    return float(special.gammaincc(inp.m - 1, a))


def scaled_incomplete_gamma(k_max: int, x: float) -> np.ndarray:
    """Return e^x Gamma(-k, x) = x^{-k} e^x E_{k+1}(x) for k = 0..k_max.

    Every entry is evaluated on its own, never from a neighbour. Past the
    range where e^x is representable the Tricomi form U(k+1, k+1, x) is used.
    """
    if x <= 0:
        raise ValueError("x must be positive")
    orders = np.arange(k_max + 1)
    if x < _EXP_LIMIT:
        return math.exp(x) * x ** (-orders.astype(float)) * special.expn(orders + 1, x)
    return special.hyperu(orders + 1.0, orders + 1.0, x)


def incomplete_gamma_negative_order(k: int, x: float) -> float:
    """Upper incomplete gamma Gamma(-k, x) for integer k >= 0."""
    return float(math.exp(-x) * scaled_incomplete_gamma(k, x)[k])


def _passive_success(inp: ProbabilityInputs) -> float:
    ratio = inp.rho_se * inp.sigma2 / (inp.sigma2_tilde * inp.rho_sd)
    return float(1.0 - (1.0 + ratio) ** (-(inp.m - 1)))


def _jam_max_arguments(inp: ProbabilityInputs):
    k_coef = inp.rho_sd * inp.sigma2_tilde / (inp.rho_se * inp.rho_ed * inp.p_j)
    a = inp.sigma2 / (inp.rho_ed * inp.p_j) + k_coef
    return k_coef, a


def jam_max_series(
    inp: ProbabilityInputs, coefficient: CoefficientVariant = "factorial"
) -> float:
    """Term-by-term alternating sum over k = 0..M-2, unclamped.

    The terms nearly cancel once ``a`` is large against M, so this form is
    only trusted on moderate arguments; it exists to compare coefficient
    variants.
    """
    if inp.p_j == 0:
        return _passive_success(inp)
    m = inp.m
    k_coef, a = _jam_max_arguments(inp)
    scaled = scaled_incomplete_gamma(m - 2, a)
    total = 0.0
    for k in range(m - 1):
        second = math.factorial(m - k - 2) if coefficient == "factorial" else m - k - 2
        denominator = math.factorial(k) * second
        if denominator == 0:
            return float("nan")
        total += (-1) ** k * a**k * scaled[k] / denominator
    return float(1.0 - k_coef ** (m - 1) * total)


def success_prob_jam_max(
    inp: ProbabilityInputs,
    coefficient: CoefficientVariant = "factorial",
    clamp: bool = True,
) -> float:
    """Success probability when the monitor jams with power ``p_j``.

    With factorial coefficients the alternating sum collapses to
    K^{M-1} U(M-1, 1, a), which is evaluated in log space. ``literal``
    drops the second factorial, divides by zero at k = M-2 and yields NaN.
    """
    if inp.p_j == 0:
        return _passive_success(inp)
    if coefficient != "factorial":
        return jam_max_series(inp, coefficient)
    m = inp.m
    k_coef, a = _jam_max_arguments(inp)
    tricomi = float(special.hyperu(m - 1.0, 1.0, a))
    if tricomi <= 0.0 or not math.isfinite(tricomi):
        # U(M-1, 1, a) ~ a^{-(M-1)} past the range hyperu resolves
        failure = (k_coef / a) ** (m - 1)
    else:
        failure = math.exp((m - 1) * math.log(k_coef) + math.log(tricomi))
    probability = 1.0 - failure
    if clamp:
        probability = min(max(probability, 0.0), 1.0)
    return float(probability)
