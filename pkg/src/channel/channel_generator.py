"""Random channel draws with counter-based, per-trial reproducible streams."""

from functools import lru_cache

import numpy as np

from src.models.domain.channel_domain import ChannelSet
from src.models.schema.config_schema import SystemConfig


def trial_seed(master_seed: int, trial_index: int) -> int:
    """Derive the 64-bit seed of one Monte Carlo trial."""
    sequence = np.random.SeedSequence([master_seed, trial_index])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


@lru_cache(maxsize=64)
def calibration_scale(n_antennas: int, n_rf: int) -> float:
    """Mean of the top M-1 order statistics of N unit exponentials.

    Selecting the M-1 strongest codeword projections inflates their power by
    this factor relative to an arbitrary projection; raw entries are scaled
    down by it so that each selected projection has mean power rho.
    """
    harmonic = np.concatenate(([0.0], np.cumsum(1.0 / np.arange(1, n_antennas + 1))))
    top = [harmonic[n_antennas] - harmonic[i - 1] for i in range(1, n_rf)]
    return float(np.mean(top))


def _complex_normal(rng: np.random.Generator, variance: float, size=None):
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def generate_channels(cfg: SystemConfig, seed: int) -> ChannelSet:
    """Draw one ChannelSet; a pure function of ``(cfg, seed)``.

    Args:
        cfg: System configuration.
        seed: 64-bit key of the Philox stream.

    Returns:
        ChannelSet with h_sd ~ CN(0, rho_sd), calibrated h_se and h_ed, and
        beta_n of fixed magnitude with uniform phase.
    """
    rng = np.random.Generator(np.random.Philox(key=int(seed) % 2**64))
    n = cfg.n_antennas
    per_entry = 1.0 / (n * calibration_scale(n, cfg.n_rf))
    h_sd = complex(_complex_normal(rng, cfg.rho_sd))
    h_se = _complex_normal(rng, cfg.rho_se * per_entry, n)
    h_ed = _complex_normal(rng, cfg.rho_ed * per_entry, n)
    beta = cfg.beta_magnitude * np.exp(2j * np.pi * rng.random(n))
    return ChannelSet(h_se=h_se, h_sd=h_sd, h_ed=h_ed, beta=beta)
