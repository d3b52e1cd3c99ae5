from typing import Sequence, Tuple

import numpy as np

from src.channel.array_model import array_response
from src.models.domain.allocation_domain import PowerAllocation
from src.models.domain.beamformer_domain import BeamformerSet
from src.models.schema.config_schema import SystemConfig


def beampattern(
    alloc: PowerAllocation,
    bf_all: Sequence[BeamformerSet],
    n: int,
    angle_samples: int,
    cfg: SystemConfig,
) -> Tuple[np.ndarray, np.ndarray]:
    """Radiated gain |alpha(theta)^T U_n p_nr|^2 of one probe direction.

    Args:
        alloc: Assembled allocation.
        bf_all: Beamformers of every direction.
        n: 1-based probe direction.
        angle_samples: Number of uniform sin(theta) samples on [-1, 1).
        cfg: System configuration.

    Returns:
        (sin_theta samples, linear gains).
    """
    if angle_samples < 1:
        raise ValueError("angle_samples must be positive")
    sin_theta = -1.0 + 2.0 * np.arange(angle_samples) / angle_samples
    radiated = bf_all[n - 1].u_tx @ alloc.p_nr[n - 1]
    gains = np.abs(array_response(sin_theta, cfg).T @ radiated) ** 2
    return sin_theta, gains


def dominant_lobes(gains: np.ndarray, threshold_db: float) -> np.ndarray:
    """Indices of local maxima within ``threshold_db`` of the global peak.

    Neighbours wrap around, since sin(theta) = -1 and 1 are the same
    direction for half-wavelength spacing.
    """
    peak = gains.max()
    if peak <= 0:
        return np.array([], dtype=int)
    is_max = (gains >= np.roll(gains, 1)) & (gains > np.roll(gains, -1))
    strong = gains >= peak * 10.0 ** (-threshold_db / 10.0)
    return np.flatnonzero(is_max & strong)
