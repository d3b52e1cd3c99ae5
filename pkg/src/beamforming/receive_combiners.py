"""Digital receive combiners: null-space optimal forms and benchmarks."""

from typing import Sequence, Tuple

import numpy as np

from src.models.domain.beamformer_domain import BeamformerSet
from src.models.schema.config_schema import SystemConfig
from src.utils.error_handler import ConsistencyError, DegenerateGeometryError


def stacked_surveillance_channel(
    bf_all: Sequence[BeamformerSet], h_se: np.ndarray
) -> np.ndarray:
    """Rows Z_s,n^H U_rx,n^H h_se, one per direction (N x (M-1))."""
    return np.stack(
        [bf.z_s.conj().T @ (bf.u_rx.conj().T @ h_se) for bf in bf_all]
    )


def optimal_surveillance_combiner(
    bf_all: Sequence[BeamformerSet], h_se: np.ndarray, cfg: SystemConfig
) -> np.ndarray:
    """Stacked surveillance combiner h_tilde_s / sigma_tilde^2.

    Raises:
        DegenerateGeometryError: If the null spaces remove the whole
            surveillance channel.
    """
    h_tilde = stacked_surveillance_channel(bf_all, h_se).reshape(-1)
    if not np.any(h_tilde):
        raise DegenerateGeometryError("surveillance channel entirely nulled")
    return h_tilde / cfg.noise_rx_monitor


def optimal_radar_combiner(
    bf: BeamformerSet, p_nr: np.ndarray, cfg: SystemConfig
) -> np.ndarray:
    """Reduced radar combiner Z_r^H U_rx^H A_n U_tx p_nr / sigma_tilde^2."""
    w_tilde = bf.z_r.conj().T @ (bf.b_echo @ p_nr) / cfg.noise_rx_monitor
    radar_part = abs(np.vdot(bf.v_radar, p_nr))
    floor = 1e-12 * max(np.linalg.norm(p_nr), 1e-300)
    if not np.any(w_tilde) and radar_part > floor:
        raise ConsistencyError("radar combiner vanished with a radar component")
    return w_tilde


def _normalized(vector: np.ndarray, label: str) -> np.ndarray:
    norm = np.linalg.norm(vector)
    if norm == 0:
        raise DegenerateGeometryError(f"{label} defining vector is zero")
    return vector / norm


def mrc_combiners(
    u_rx: np.ndarray,
    h_se: np.ndarray,
    echo_operator: np.ndarray,
    p_nr: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray]:
    """Matched-filter combiners without null-space projection.

    ``echo_operator`` is U_rx^H A_n U_tx of the direction.
    """
    w_s = _normalized(u_rx.conj().T @ h_se, "surveillance")
    w_r = _normalized(echo_operator @ p_nr, "radar echo")
    return w_s, w_r


def surveillance_centric_combiners(
    bf: BeamformerSet, h_se: np.ndarray, p_nr: np.ndarray, cfg: SystemConfig
) -> Tuple[np.ndarray, np.ndarray]:
    """Matched surveillance combiner with a null-space radar combiner."""
    w_s = _normalized(bf.u_rx.conj().T @ h_se, "surveillance")
    w_r = bf.z_r @ optimal_radar_combiner(bf, p_nr, cfg)
    return w_s, w_r
