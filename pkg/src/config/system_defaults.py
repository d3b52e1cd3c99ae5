"""Default parameter blocks for the simulation study.

Values are raw inputs to ``SystemConfig``; dB-spelled keys are converted at
validation time so that normalized quantities follow ``n_antennas``.
"""

from typing import Any, Dict

from src.config.settings import settings

FULL_DEFAULTS: Dict[str, Any] = {
    "n_antennas": 128,
    "n_rf": 4,
    "noise_rx_monitor": 2.0,
    "noise_rx_d": 1.0,
    "gamma_s_db": 0.0,
    "gamma_r_db": 10.0,
    "p_s_db": 10.0,
    "p_max_db": 20.0,
    "lambda_r": 0.1,
    "lambda_w": 0.9,
    "rho_sd": 10.0,
    "rho_se": 1.0,
    "rho_ed": 1.0,
    "antenna_spacing_ratio": 0.5,
    "beta_magnitude": 0.1,
}

DESK_OVERRIDES: Dict[str, Any] = {
    "n_antennas": settings.DESK_N_ANTENNAS,
    "n_rf": settings.DESK_N_RF,
}

# Fields whose CLI overrides must spell out the unit.
AMBIGUOUS_FIELDS = ("gamma_s", "gamma_r", "p_s", "p_max")
