"""Uniform linear array geometry: scan grid, steering vectors, DFT codebook."""

from functools import lru_cache
from typing import Optional

import numpy as np

from src.models.domain.channel_domain import DirectionGrid
from src.models.schema.config_schema import SystemConfig


def direction_grid(cfg: SystemConfig) -> DirectionGrid:
    """Build the N-beam scan grid with sin(theta_n) = -1 + 2(n-1)/N."""
    n = cfg.n_antennas
    sin_values = -1.0 + 2.0 * np.arange(n) / n
    return DirectionGrid(angles=np.arcsin(sin_values), sin_values=sin_values)


def _steering(sin_values: np.ndarray, n_antennas: int, spacing: float):
    k = np.arange(n_antennas)[:, None]
    return np.exp(2j * np.pi * spacing * k * np.atleast_1d(sin_values)[None, :])


def steering_vector(
    grid: DirectionGrid, n: int, cfg: SystemConfig
) -> np.ndarray:
    """Steering vector alpha(theta_n) for a 1-based direction index.

    Args:
        grid: Scan grid.
        n: Direction index in 1..N.
        cfg: System configuration (antenna count and spacing).

    Returns:
        Complex vector of length N with unit-modulus entries.

    Raises:
        IndexError: If ``n`` is outside 1..N.
    """
    if not 1 <= n <= grid.size:
        raise IndexError(f"direction index {n} outside 1..{grid.size}")
    return _steering(
        grid.sin_values[n - 1], cfg.n_antennas, cfg.antenna_spacing_ratio
    )[:, 0]


def array_response(sin_values: np.ndarray, cfg: SystemConfig) -> np.ndarray:
    """Steering vectors for arbitrary sin(theta) samples, one per column."""
    return _steering(
        np.asarray(sin_values, dtype=float),
        cfg.n_antennas,
        cfg.antenna_spacing_ratio,
    )


@lru_cache(maxsize=16)
def _cached_codebook(n_antennas: int, spacing: float) -> np.ndarray:
    sin_values = -1.0 + 2.0 * np.arange(n_antennas) / n_antennas
    codebook = _steering(sin_values, n_antennas, spacing)
    codebook.setflags(write=False)
    return codebook


def dft_codebook(grid: DirectionGrid, cfg: SystemConfig) -> np.ndarray:
    """N x N codebook whose n-th column is the steering vector of theta_n."""
    if grid.size != cfg.n_antennas:
        raise ValueError("grid size must equal n_antennas")
    return _cached_codebook(cfg.n_antennas, cfg.antenna_spacing_ratio)


def probing_channel(
    grid: DirectionGrid, n: int, beta_n: complex, cfg: SystemConfig
) -> np.ndarray:
    """Rank-1 probing channel beta_n * alpha(theta_n) alpha(theta_n)^T."""
    alpha = steering_vector(grid, n, cfg)
    return beta_n * np.outer(alpha, alpha)


def collinear_index(
    grid: DirectionGrid, target_sin: float, cfg: SystemConfig
) -> Optional[int]:
    """0-based index of the codeword equal to alpha at ``target_sin``, if any.

    Two steering vectors coincide when their phase progressions differ by a
    whole number of turns, i.e. (d/lambda) * (sin_a - sin_b) is an integer.
    """
    offset = cfg.antenna_spacing_ratio * (grid.sin_values - target_sin)
    distance = np.abs(offset - np.round(offset))
    hits = np.flatnonzero(distance < 1e-9)
    return int(hits[0]) if hits.size else None
