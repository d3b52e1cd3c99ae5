"""SINRs, power and the eavesdropping success indicator of one trial."""

from typing import Sequence

import numpy as np

from src.models.domain.allocation_domain import PowerAllocation
from src.models.domain.beamformer_domain import BeamformerSet
from src.models.domain.channel_domain import ChannelSet
from src.models.domain.combiner_domain import ReceiveCombiners
from src.models.schema.config_schema import SystemConfig
from src.models.schema.metrics_schema import TrialMetrics


def _zero_radar_column(p: np.ndarray) -> np.ndarray:
    masked = np.array(p, dtype=complex, copy=True)
    masked[..., -1] = 0.0
    return masked


def sinr_e(
    combiners: ReceiveCombiners,
    bf_all: Sequence[BeamformerSet],
    channels: ChannelSet,
    alloc: PowerAllocation,
    cfg: SystemConfig,
) -> float:
    """Scan-period SINR at the monitor.

    Signal adds coherently over directions; noise and the radar echo leaking
    through each combiner add in power, the echo weighted by the time share
    of its interval.
    """
    signal = 0.0 + 0.0j
    noise = 0.0
    wait = _zero_radar_column(alloc.p_nw)
    for bf, w, p_r, p_w in zip(bf_all, combiners.w_s, alloc.p_nr, wait):
        q = bf.u_rx.conj().T @ channels.h_se
        signal += np.vdot(w, q)
        noise += cfg.noise_rx_monitor * np.vdot(w, w).real
        noise += cfg.lambda_r * abs(np.vdot(w, bf.b_echo @ p_r)) ** 2
        noise += cfg.lambda_w * abs(np.vdot(w, bf.b_echo @ p_w)) ** 2
    if noise == 0:
        return 0.0
    return float(cfg.p_s * abs(signal) ** 2 / noise)


def sinr_d(
    channels: ChannelSet,
    bf_all: Sequence[BeamformerSet],
    alloc: PowerAllocation,
    cfg: SystemConfig,
) -> float:
    """Scan-period SINR at the suspicious receiver."""
    n = cfg.n_antennas
    wait = _zero_radar_column(alloc.p_nw)
    jamming = 0.0
    for bf, p_r, p_w in zip(bf_all, alloc.p_nr, wait):
        leak = bf.u_tx.conj().T @ channels.h_ed
        jamming += cfg.lambda_r * abs(np.vdot(leak, p_r)) ** 2
        jamming += cfg.lambda_w * abs(np.vdot(leak, p_w)) ** 2
    signal = n * abs(channels.h_sd) ** 2 * cfg.p_s
    return float(signal / (jamming + n * cfg.noise_rx_d))


def sinr_r(
    combiners: ReceiveCombiners,
    bf_all: Sequence[BeamformerSet],
    channels: ChannelSet,
    alloc: PowerAllocation,
    cfg: SystemConfig,
    n: int,
) -> float:
    """Radar SINR of 1-based direction ``n`` (suspicious signal as interference)."""
    bf = bf_all[n - 1]
    w = combiners.w_r[n - 1]
    echo = abs(np.vdot(w, bf.b_echo @ alloc.p_nr[n - 1])) ** 2
    q = bf.u_rx.conj().T @ channels.h_se
    noise = cfg.noise_rx_monitor * np.vdot(w, w).real
    noise += cfg.p_s * abs(np.vdot(w, q)) ** 2
    if noise == 0:
        return 0.0
    return float(echo / noise)


def total_power(alloc: PowerAllocation, cfg: SystemConfig) -> float:
    probe = np.sum(np.abs(alloc.p_nr) ** 2)
    wait = np.sum(np.abs(_zero_radar_column(alloc.p_nw)) ** 2)
    return float(cfg.lambda_r * probe + cfg.lambda_w * wait)


def evaluate_trial(
    combiners: ReceiveCombiners,
    bf_all: Sequence[BeamformerSet],
    channels: ChannelSet,
    alloc: PowerAllocation,
    cfg: SystemConfig,
) -> TrialMetrics:
    """Collect every metric of one (scheme, allocation, channel) triple."""
    e = sinr_e(combiners, bf_all, channels, alloc, cfg)
    d = sinr_d(channels, bf_all, alloc, cfg)
    radar = [
        sinr_r(combiners, bf_all, channels, alloc, cfg, n)
        for n in range(1, len(bf_all) + 1)
    ]
    return TrialMetrics(
        sinr_e=e,
        sinr_d=d,
        sinr_r=radar,
        p_total=total_power(alloc, cfg),
        success=int(e >= d),
        gamma_s_violated=alloc.gamma_s_violated,
        radar_violated=alloc.radar_violated,
        case_label=alloc.case_label.value,
    )
