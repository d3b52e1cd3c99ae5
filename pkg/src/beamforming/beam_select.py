"""Per-direction analog beam selection, rank-1 null spaces and direction bases."""

from typing import List, Optional, Tuple

import numpy as np

from src.channel.array_model import (
    collinear_index,
    dft_codebook,
    direction_grid,
)
from src.models.domain.beamformer_domain import BeamformerSet
from src.models.domain.channel_domain import ChannelSet, DirectionGrid
from src.models.schema.config_schema import SystemConfig
from src.utils.error_handler import (
    ConsistencyError,
    DegenerateGeometryError,
    DegenerateInputError,
)

_RANK_TOL = 1e-6
_GAIN_FLOOR = 1e-12


def correlation_ranking(codebook: np.ndarray, channel: np.ndarray) -> np.ndarray:
    """Codeword indices sorted by decreasing |codeword^H channel|.

    Magnitudes are compared after rounding to 12 significant digits so that
    numerically tied correlations fall back to the lowest index.
    """
    magnitude = np.abs(codebook.conj().T @ channel)
    peak = magnitude.max()
    key = np.round(magnitude / peak, 12) if peak > 0 else magnitude
    return np.lexsort((np.arange(magnitude.size), -key))


def _pick(ranking: np.ndarray, excluded: Optional[int], count: int):
    kept = ranking[ranking != excluded] if excluded is not None else ranking
    return kept[:count]


def select_tx_codewords(
    codebook: np.ndarray,
    h_ed: np.ndarray,
    n: int,
    m: int,
    grid: Optional[DirectionGrid] = None,
    cfg: Optional[SystemConfig] = None,
    ranking: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Transmit analog beamformer U_n of a 1-based direction ``n``.

    Columns 1..M-1 are the strongest jamming codewords; column M is
    conj(alpha(theta_n)). A codeword collinear with column M is never
    selected. ``ranking`` lets callers reuse one correlation sort across
    directions.
    """
    n_antennas = codebook.shape[1]
    if not m - 1 < n_antennas:
        raise ValueError("n_rf - 1 must be smaller than n_antennas")
    radar_column = codebook[:, n - 1].conj()
    if grid is not None and cfg is not None:
        mirror = collinear_index(grid, -grid.sin_values[n - 1], cfg)
    else:
        overlap = np.abs(codebook.conj().T @ radar_column)
        mirror = int(np.argmax(overlap))
        if overlap[mirror] < (1 - 1e-9) * n_antennas:
            mirror = None
    if ranking is None:
        ranking = correlation_ranking(codebook, h_ed)
    chosen = _pick(ranking, mirror, m - 1)
    return np.column_stack([codebook[:, chosen], radar_column])


def select_rx_codewords(
    codebook: np.ndarray,
    h_se: np.ndarray,
    n: int,
    m: int,
    ranking: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Receive analog beamformer with column M = alpha(theta_n)."""
    if not m - 1 < codebook.shape[1]:
        raise ValueError("n_rf - 1 must be smaller than n_antennas")
    if ranking is None:
        ranking = correlation_ranking(codebook, h_se)
    chosen = _pick(ranking, n - 1, m - 1)
    return np.column_stack([codebook[:, chosen], codebook[:, n - 1]])


def _householder_complement(q: np.ndarray) -> np.ndarray:
    size = q.shape[0]
    lead = np.flatnonzero(np.abs(q) > 1e-14 * np.abs(q).max())[0]
    q = q * np.exp(-1j * np.angle(q[lead]))
    # Reflect e_lead onto -q; the remaining columns are orthogonal to q.
    w = q.copy()
    w[lead] += 1.0
    reflector = np.eye(size, dtype=complex) - 2.0 * np.outer(
        w, w.conj()
    ) / np.vdot(w, w).real
    return np.delete(reflector, lead, axis=1)


def null_space_rank1(b: np.ndarray) -> np.ndarray:
    """Orthonormal basis Z with Z^H b = 0 for a rank-1 matrix or a vector.

    For a matrix the basis spans the orthogonal complement of its column
    space, so that Z^H B = 0.

    Raises:
        DegenerateInputError: If the input is zero or its rank exceeds one.
    """
    b = np.asarray(b, dtype=complex)
    if b.ndim == 1:
        norm = np.linalg.norm(b)
        if norm == 0:
            raise DegenerateInputError("null space of a zero vector")
        return _householder_complement(b / norm)
    left, singular, _ = np.linalg.svd(b)
    if singular[0] == 0:
        raise DegenerateInputError("null space of a zero matrix")
    if singular.size > 1 and singular[1] > _RANK_TOL * singular[0]:
        raise DegenerateInputError(
            f"rank above one (sigma2/sigma1 = {singular[1] / singular[0]:.3e})"
        )
    return _householder_complement(left[:, 0])


def compute_gains(
    u_tx: np.ndarray,
    u_rx: np.ndarray,
    z_r: np.ndarray,
    h_ed: np.ndarray,
    alpha_n: np.ndarray,
) -> Tuple[float, float, float, float]:
    """Return (g_n, g_sum, g_radar, g_jam) of one direction.

    g_n carries the squared norm of U_n^H conj(alpha(theta_n)) so that
    beta_n^2 g_n p_radar^2 is the radar echo power collected along the
    normalized radar basis.

    Raises:
        DegenerateGeometryError: If g_n is not positive.
    """
    radar_leak = np.linalg.norm(z_r.conj().T @ (u_rx.conj().T @ alpha_n)) ** 2
    radar_norm = np.linalg.norm(u_tx.conj().T @ alpha_n.conj()) ** 2
    g_n = float(radar_leak * radar_norm)
    projected = u_tx.conj().T @ h_ed
    g_sum = float(np.linalg.norm(projected) ** 2)
    g_radar = float(abs(alpha_n @ h_ed) ** 2)
    g_jam = float(np.linalg.norm(projected[:-1]) ** 2)
    if abs(g_sum - (g_radar + g_jam)) > 1e-8 * max(g_sum, 1e-300):
        raise ConsistencyError("g_sum != g_radar + g_jam")
    if g_n <= _GAIN_FLOOR:
        raise DegenerateGeometryError("radar direction fully suppressed")
    return g_n, g_sum, g_radar, g_jam


def _unit(vector: np.ndarray, label: str) -> np.ndarray:
    norm = np.linalg.norm(vector)
    if norm == 0:
        raise DegenerateGeometryError(f"{label} defining vector is zero")
    return vector / norm


def direction_bases(
    u_tx: np.ndarray, h_ed: np.ndarray, alpha_n: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Return the unit bases (v_sum, v_radar, v_jam, v_new).

    v_radar is rotated by a unit phase so that <v_sum, v_radar> is real and
    nonnegative; v_new completes v_sum to an orthonormal pair spanning
    {v_radar, v_jam}.
    """
    projected = u_tx.conj().T @ h_ed
    v_sum = _unit(projected, "v_sum")
    jam = projected.copy()
    jam[-1] = 0.0
    v_jam = _unit(jam, "v_jam")
    v_radar = _unit(u_tx.conj().T @ alpha_n.conj(), "v_radar")
    if abs(np.vdot(v_jam, v_radar)) > 1e-10:
        raise ConsistencyError("v_radar has a component along v_jam")
    overlap = np.vdot(v_radar, v_sum)
    if abs(overlap) > 0:
        v_radar = v_radar * np.exp(1j * np.angle(overlap))
    g_sum = np.vdot(projected, projected).real
    g_jam = np.vdot(jam, jam).real
    g_radar = max(g_sum - g_jam, 0.0)
    v_new = (
        -np.sqrt(g_radar / g_jam) * v_sum + np.sqrt(g_sum / g_jam) * v_radar
    )
    return v_sum, v_radar, v_jam, v_new


def build_beamformer(
    codebook: np.ndarray,
    grid: DirectionGrid,
    channels: ChannelSet,
    n: int,
    cfg: SystemConfig,
    rankings: Optional[Tuple[np.ndarray, np.ndarray]] = None,
) -> BeamformerSet:
    """Run selection, null spaces, gains and bases for direction ``n``."""
    m = cfg.n_rf
    tx_rank, rx_rank = rankings if rankings else (None, None)
    alpha_n = codebook[:, n - 1]
    u_tx = select_tx_codewords(
        codebook, channels.h_ed, n, m, grid, cfg, ranking=tx_rank
    )
    u_rx = select_rx_codewords(codebook, channels.h_se, n, m, ranking=rx_rank)
    q_se = u_rx.conj().T @ channels.h_se
    a_rx = u_rx.conj().T @ alpha_n
    a_tx = u_tx.T @ alpha_n
    b_echo = channels.beta[n - 1] * np.outer(a_rx, a_tx)
    z_s = null_space_rank1(b_echo)
    z_r = null_space_rank1(q_se)
    g_n, g_sum, g_radar, g_jam = compute_gains(
        u_tx, u_rx, z_r, channels.h_ed, alpha_n
    )
    v_sum, v_radar, v_jam, v_new = direction_bases(u_tx, channels.h_ed, alpha_n)
    return BeamformerSet(
        n=n,
        u_tx=u_tx,
        u_rx=u_rx,
        z_s=z_s,
        z_r=z_r,
        g_n=g_n,
        g_sum=g_sum,
        g_radar=g_radar,
        g_jam=g_jam,
        v_sum=v_sum,
        v_radar=v_radar,
        v_jam=v_jam,
        v_new=v_new,
        q_se=q_se,
        b_echo=b_echo,
    )


def build_all_beamformers(
    cfg: SystemConfig, channels: ChannelSet
) -> List[BeamformerSet]:
    """Beamformers for every scan direction, sharing one correlation sort."""
    grid = direction_grid(cfg)
    codebook = dft_codebook(grid, cfg)
    rankings = (
        correlation_ranking(codebook, channels.h_ed),
        correlation_ranking(codebook, channels.h_se),
    )
    return [
        build_beamformer(codebook, grid, channels, n, cfg, rankings)
        for n in range(1, cfg.n_antennas + 1)
    ]

