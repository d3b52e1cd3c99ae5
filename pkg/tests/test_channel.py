import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from src.channel.array_model import (
    array_response,
    collinear_index,
    dft_codebook,
    direction_grid,
    probing_channel,
    steering_vector,
)
from src.channel.channel_generator import (
    calibration_scale,
    generate_channels,
    trial_seed,
)


def test_direction_grid_spacing(small_cfg):
    grid = direction_grid(small_cfg)
    assert grid.size == 16
    assert grid.sin_values[0] == -1.0
    assert_allclose(np.diff(grid.sin_values), 2.0 / 16)
    assert grid.sin_values[-1] < 1.0


def test_steering_vector_unit_modulus_and_bounds(small_cfg):
    grid = direction_grid(small_cfg)
    alpha = steering_vector(grid, 5, small_cfg)
    assert_allclose(np.abs(alpha), 1.0)
    assert alpha[0] == 1.0
    with pytest.raises(IndexError):
        steering_vector(grid, 0, small_cfg)
    with pytest.raises(IndexError):
        steering_vector(grid, 17, small_cfg)


def test_codebook_columns_orthogonal(small_cfg):
    codebook = dft_codebook(direction_grid(small_cfg), small_cfg)
    assert_allclose(codebook.conj().T @ codebook, 16 * np.eye(16), atol=1e-10)
    assert not codebook.flags.writeable


def test_array_response_matches_codebook(small_cfg):
    grid = direction_grid(small_cfg)
    assert_allclose(
        array_response(grid.sin_values, small_cfg),
        dft_codebook(grid, small_cfg),
    )


def test_probing_channel_is_rank_one(small_cfg):
    grid = direction_grid(small_cfg)
    matrix = probing_channel(grid, 3, 0.1j, small_cfg)
    singular = np.linalg.svd(matrix, compute_uv=False)
    assert singular[0] == pytest.approx(0.1 * 16)
    assert singular[1] < 1e-10


def test_conjugate_steering_vector_is_mirror_codeword(small_cfg):
    grid = direction_grid(small_cfg)
    codebook = dft_codebook(grid, small_cfg)
    for n in range(1, 17):
        mirror = collinear_index(grid, -grid.sin_values[n - 1], small_cfg)
        assert mirror is not None
        assert_allclose(codebook[:, mirror], codebook[:, n - 1].conj(), atol=1e-9)
    assert collinear_index(grid, 0.01, small_cfg) is None


def test_generate_channels_is_deterministic(small_cfg):
    first = generate_channels(small_cfg, 99)
    second = generate_channels(small_cfg, 99)
    assert_array_equal(first.h_se, second.h_se)
    assert first.h_sd == second.h_sd
    other = generate_channels(small_cfg, 100)
    assert not np.allclose(first.h_ed, other.h_ed)


def test_beta_has_fixed_magnitude(channels, small_cfg):
    assert_allclose(np.abs(channels.beta), small_cfg.beta_magnitude)


def test_trial_seeds_are_distinct_and_stable():
    seeds = {trial_seed(7, i) for i in range(100)}
    assert len(seeds) == 100
    assert trial_seed(7, 3) == trial_seed(7, 3)


@pytest.mark.parametrize(
    "n, m, expected",
    [
        (1, 2, 1.0),
        (2, 2, 1.5),
        (2, 3, 1.0),
    ],
)
def test_calibration_scale_small_cases(n, m, expected):
    assert calibration_scale(n, m) == pytest.approx(expected)


def test_h_sd_variance_matches_rho_sd(small_cfg):
    draws = np.array(
        [generate_channels(small_cfg, trial_seed(1, i)).h_sd for i in range(20_000)]
    )
    assert np.mean(np.abs(draws) ** 2) == pytest.approx(small_cfg.rho_sd, rel=0.05)


def test_selected_projection_power_is_calibrated(small_cfg):
    codebook = dft_codebook(direction_grid(small_cfg), small_cfg)
    powers = []
    for i in range(3000):
        h_ed = generate_channels(small_cfg, trial_seed(2, i)).h_ed
        projections = np.sort(np.abs(codebook.conj().T @ h_ed) ** 2)[::-1]
        powers.append(projections[: small_cfg.n_rf - 1].mean())
    assert np.mean(powers) == pytest.approx(small_cfg.rho_ed, rel=0.05)
