from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BeamformerSet:
    """Analog beamformers, null spaces, gains and bases of one direction.

    ``u_tx``/``u_rx`` are N x M; ``z_s``/``z_r`` are M x (M-1). ``q_se`` caches
    the receive projection of h_se and ``b_echo`` the M x M radar echo
    operator U_rx^H A_n U_tx.
    """

    n: int
    u_tx: np.ndarray
    u_rx: np.ndarray
    z_s: np.ndarray
    z_r: np.ndarray
    g_n: float
    g_sum: float
    g_radar: float
    g_jam: float
    v_sum: np.ndarray
    v_radar: np.ndarray
    v_jam: np.ndarray
    v_new: np.ndarray
    q_se: np.ndarray
    b_echo: np.ndarray

    @property
    def n_rf(self) -> int:
        return int(self.u_tx.shape[1])
