import numpy as np
import pytest

from src.beamforming.beam_select import build_all_beamformers
from src.channel.array_model import dft_codebook, direction_grid
from src.channel.channel_generator import generate_channels, trial_seed
from src.experiments.pipeline import prepare_trial
from src.models.domain.channel_domain import ChannelSet
from src.utils.config_loader import build_config, effective_inputs
from src.utils.error_handler import SimulationError


@pytest.fixture
def small_cfg():
    """Desk-scale configuration, N=16 and M=3."""
    return build_config(effective_inputs())


@pytest.fixture
def channels(small_cfg):
    return generate_channels(small_cfg, trial_seed(7, 0))


@pytest.fixture
def beamformers(small_cfg, channels):
    return build_all_beamformers(small_cfg, channels)


@pytest.fixture
def feasible_trial(small_cfg):
    """First draw the case dispatcher serves: (cfg, channels, bf_all, alloc)."""
    for index in range(50):
        try:
            channels, bf_all, alloc = prepare_trial(small_cfg, trial_seed(7, index))
        except SimulationError:
            continue
        return small_cfg, channels, bf_all, alloc
    pytest.fail("no feasible draw in 50 seeds")


@pytest.fixture
def lobe_channels():
    """N=64, M=4 channels whose jamming link spans three separated codewords."""
    cfg = build_config(effective_inputs(overrides={"n_antennas": 64, "n_rf": 4}))
    codebook = dft_codebook(direction_grid(cfg), cfg)
    rng = np.random.default_rng(808)
    channels = ChannelSet(
        h_se=rng.standard_normal(64) + 1j * rng.standard_normal(64),
        h_sd=1.0 + 0.0j,
        h_ed=codebook[:, [8, 24, 40]].sum(axis=1) / 8.0,
        beta=np.full(64, cfg.beta_magnitude, dtype=complex),
    )
    return cfg, channels
