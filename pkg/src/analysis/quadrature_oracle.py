"""Numerical-integration oracles for the success-probability closed forms."""

import math

import numpy as np
from scipy import integrate, special

from src.models.schema.probability_schema import ProbabilityInputs

_EPSABS = 1e-13
_EPSREL = 1e-11


def _gamma_pdf(x: float, shape: int, scale: float) -> float:
    if x <= 0:
        return 0.0
    log_pdf = (
        (shape - 1) * math.log(x)
        - x / scale
        - special.gammaln(shape)
        - shape * math.log(scale)
    )
    return math.exp(log_pdf)


def power_min_quadrature(inp: ProbabilityInputs) -> float:
    """Integrate the gamma_se density over SINR_E >= gamma_s."""
    lower = inp.sigma2_tilde * inp.gamma_s / inp.p_s
    shape = inp.m - 1
    mode = max((shape - 1) * inp.rho_se, lower)
    pieces = [(lower, mode), (mode, np.inf)] if mode > lower else [(lower, np.inf)]
    total = 0.0
    for start, stop in pieces:
        value, _ = integrate.quad(
            _gamma_pdf,
            start,
            stop,
            args=(shape, inp.rho_se),
            epsabs=_EPSABS,
            epsrel=_EPSREL,
            limit=400,
        )
        total += value
    return float(total)


def jam_max_quadrature(inp: ProbabilityInputs) -> float:
    """Integrate the jamming-gain density against the conditional failure.

    Given a jamming gain g, failure means S > X (p_j g + sigma^2) / sigma_tilde^2
    with S exponential and X ~ Gamma(M-1, rho_se); its probability is the
    gamma moment generating function evaluated at the resulting rate.
    """
    shape = inp.m - 1

    def conditional_failure(g: float) -> float:
        rate = (inp.p_j * g + inp.sigma2) / (inp.sigma2_tilde * inp.rho_sd)
        return (1.0 + inp.rho_se * rate) ** (-shape)

    def integrand(g: float) -> float:
        return _gamma_pdf(g, shape, inp.rho_ed) * conditional_failure(g)

    mode = max((shape - 1) * inp.rho_ed, 0.0)
    split = mode + 10.0 * inp.rho_ed
    head, _ = integrate.quad(
        integrand, 0.0, split, epsabs=_EPSABS, epsrel=_EPSREL, limit=400
    )
    tail, _ = integrate.quad(
        integrand, split, np.inf, epsabs=_EPSABS, epsrel=_EPSREL, limit=400
    )
    return float(1.0 - head - tail)
