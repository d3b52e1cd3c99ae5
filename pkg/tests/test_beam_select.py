import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from src.beamforming.beam_select import (
    build_all_beamformers,
    correlation_ranking,
    direction_bases,
    null_space_rank1,
    select_rx_codewords,
    select_tx_codewords,
)
from src.channel.array_model import collinear_index, dft_codebook, direction_grid
from src.utils.error_handler import ConsistencyError, DegenerateInputError


@pytest.fixture
def codebook(small_cfg):
    return dft_codebook(direction_grid(small_cfg), small_cfg)


def test_ties_break_on_lowest_index(codebook):
    channel = codebook[:, 5] + codebook[:, 2]
    assert_array_equal(correlation_ranking(codebook, channel)[:2], [2, 5])


@pytest.mark.parametrize("n", [1, 4, 9, 16])
def test_tx_selection_layout(small_cfg, codebook, channels, n):
    grid = direction_grid(small_cfg)
    u_tx = select_tx_codewords(codebook, channels.h_ed, n, 3, grid, small_cfg)
    assert u_tx.shape == (16, 3)
    assert_allclose(u_tx[:, -1], codebook[:, n - 1].conj())
    mirror = collinear_index(grid, -grid.sin_values[n - 1], small_cfg)
    for column in u_tx[:, :-1].T:
        assert not np.allclose(column, codebook[:, mirror])


def test_tx_selection_without_grid_finds_same_mirror(small_cfg, codebook, channels):
    grid = direction_grid(small_cfg)
    for n in range(1, 17):
        with_grid = select_tx_codewords(
            codebook, channels.h_ed, n, 3, grid, small_cfg
        )
        bare = select_tx_codewords(codebook, channels.h_ed, n, 3)
        assert_allclose(with_grid, bare)


def test_rx_selection_excludes_own_direction(codebook, channels):
    u_rx = select_rx_codewords(codebook, channels.h_se, 6, 3)
    assert_allclose(u_rx[:, -1], codebook[:, 5])
    for column in u_rx[:, :-1].T:
        assert not np.allclose(column, codebook[:, 5])


def test_selection_rejects_too_many_chains(codebook, channels):
    with pytest.raises(ValueError):
        select_tx_codewords(codebook, channels.h_ed, 1, 17)
    with pytest.raises(ValueError):
        select_rx_codewords(codebook, channels.h_se, 1, 17)


def test_null_space_of_vector():
    rng = np.random.default_rng(3)
    q = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    z = null_space_rank1(q)
    assert z.shape == (4, 3)
    assert_allclose(z.conj().T @ z, np.eye(3), atol=1e-12)
    assert_allclose(z.conj().T @ q, 0.0, atol=1e-12)


def test_null_space_of_rank_one_matrix():
    rng = np.random.default_rng(4)
    a = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    b = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    z = null_space_rank1(np.outer(a, b))
    assert_allclose(z.conj().T @ np.outer(a, b), 0.0, atol=1e-12)


def test_null_space_rejects_degenerate_inputs():
    with pytest.raises(DegenerateInputError):
        null_space_rank1(np.zeros(3))
    with pytest.raises(DegenerateInputError):
        null_space_rank1(np.zeros((3, 3)))
    with pytest.raises(DegenerateInputError):
        null_space_rank1(np.eye(3))


def test_beamformer_invariants(small_cfg, beamformers):
    n_antennas = small_cfg.n_antennas
    assert len(beamformers) == n_antennas
    for bf in beamformers:
        assert bf.n_rf == 3
        assert_allclose(bf.z_s.conj().T @ bf.b_echo, 0.0, atol=1e-9)
        assert_allclose(bf.z_r.conj().T @ bf.q_se, 0.0, atol=1e-9)
        assert bf.g_sum == pytest.approx(bf.g_radar + bf.g_jam, rel=1e-10)
        assert 0.0 < bf.g_n <= n_antennas**4 * (1 + 1e-9)


def test_direction_bases_are_orthonormal_pair(beamformers):
    for bf in beamformers:
        for vector in (bf.v_sum, bf.v_radar, bf.v_jam, bf.v_new):
            assert np.linalg.norm(vector) == pytest.approx(1.0)
        assert abs(np.vdot(bf.v_sum, bf.v_new)) < 1e-9
        overlap = np.vdot(bf.v_radar, bf.v_sum)
        assert abs(overlap.imag) < 1e-9
        assert overlap.real >= 0.0


def test_v_sum_decomposes_over_radar_and_jam(beamformers):
    for bf in beamformers:
        rebuilt = (
            np.sqrt(bf.g_radar / bf.g_sum) * bf.v_radar
            + np.sqrt(bf.g_jam / bf.g_sum) * bf.v_jam
        )
        assert abs(abs(np.vdot(rebuilt, bf.v_sum)) - 1.0) < 1e-9


def test_build_is_deterministic(small_cfg, channels):
    first = build_all_beamformers(small_cfg, channels)
    second = build_all_beamformers(small_cfg, channels)
    for a, b in zip(first, second):
        assert_array_equal(a.u_tx, b.u_tx)
        assert a.g_jam == b.g_jam


def test_direction_bases_reject_radar_leaking_into_jam(codebook, channels):
    rng = np.random.default_rng(3)
    skewed = rng.standard_normal((16, 3)) + 1j * rng.standard_normal((16, 3))
    with pytest.raises(ConsistencyError):
        direction_bases(skewed, channels.h_ed, codebook[:, 4])
