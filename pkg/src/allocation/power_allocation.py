"""Closed-form transmit power allocation and the case dispatcher."""

from typing import List, Sequence, Tuple

import numpy as np

from src.models.domain.allocation_domain import (
    AllocationInstance,
    CaseLabel,
    PowerAllocation,
)
from src.models.domain.beamformer_domain import BeamformerSet
from src.models.domain.channel_domain import ChannelSet
from src.models.schema.config_schema import SystemConfig
from src.utils.error_handler import (
    DegenerateGeometryError,
    MonitoringInfeasibleError,
    OverJammedError,
    RadarInfeasibleError,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)


def allocation_instance(
    cfg: SystemConfig, channels: ChannelSet, bf_all: Sequence[BeamformerSet]
) -> AllocationInstance:
    """Collect the per-direction gains and constants of one channel draw."""
    n = cfg.n_antennas
    signal = abs(channels.h_sd) ** 2 * cfg.p_s
    g_n = np.array([bf.g_n for bf in bf_all])
    beta_sq = np.abs(channels.beta) ** 2
    return AllocationInstance(
        lambda_r=cfg.lambda_r,
        lambda_w=cfg.lambda_w,
        g_jam=np.array([bf.g_jam for bf in bf_all]),
        g_radar=np.array([bf.g_radar for bf in bf_all]),
        c2_sq=cfg.gamma_r * cfg.noise_rx_monitor / (beta_sq * g_n),
        c1=n * signal / cfg.gamma_s - n * cfg.noise_rx_d,
        p_max=cfg.p_max,
        monitoring_margin=signal - cfg.noise_rx_d * cfg.gamma_s,
    )


def power_min_coefficients(
    inst: AllocationInstance,
) -> Tuple[np.ndarray, np.ndarray]:
    """Squared (p_jam, p_radar) of the power-minimizing allocation.

    The jamming share is split equally across directions using the
    scan-averaged jamming gain, which keeps the SINR_D constraint binding.

    Raises:
        MonitoringInfeasibleError: gamma_s unreachable without jamming.
        OverJammedError: radar leakage alone exceeds the jamming target.
    """
    if inst.monitoring_margin <= 0:
        raise MonitoringInfeasibleError(
            f"|h_sd|^2 p_s - sigma^2 gamma_s = {inst.monitoring_margin:.4g}"
        )
    total_gain = float(np.sum(inst.g_jam))
    if total_gain <= 0:
        raise DegenerateGeometryError("jamming gain is zero in every direction")
    leakage = float(np.sum(inst.c2_sq * inst.g_radar))
    radicand = (inst.c1 / inst.lambda_r - leakage) / total_gain
    if radicand < 0:
        raise OverJammedError(
            f"radar leakage {leakage:.4g} exceeds target {inst.c1 / inst.lambda_r:.4g}"
        )
    p_jam_sq = np.full(inst.n_directions, radicand)
    return p_jam_sq, inst.c2_sq.copy()


def threshold_power(inst: AllocationInstance) -> float:
    """Minimum total power meeting every constraint (power-min objective)."""
    n = inst.n_directions
    g_bar = float(np.mean(inst.g_jam))
    if inst.monitoring_margin <= 0:
        raise MonitoringInfeasibleError("gamma_s unreachable without jamming")
    if g_bar <= 0:
        raise DegenerateGeometryError("jamming gain is zero in every direction")
    radar_floor = inst.lambda_r * float(np.sum(inst.c2_sq))
    leakage = inst.lambda_r * float(np.sum(inst.c2_sq * inst.g_radar))
    p_th = inst.c1 / g_bar - leakage / g_bar + radar_floor
    if p_th < radar_floor:
        raise OverJammedError("threshold below the radar floor")
    logger.debug("p_th=%.6g over %d directions", p_th, n)
    return float(p_th)


def jam_max_coefficients(
    inst: AllocationInstance,
) -> Tuple[np.ndarray, np.ndarray]:
    """Squared (p_jam, p_radar) of the jamming-maximizing allocation.

    Raises:
        RadarInfeasibleError: the budget cannot cover the radar floor.
    """
    n = inst.n_directions
    radicand = inst.p_max / (n * inst.lambda_r) - float(np.sum(inst.c2_sq)) / n
    if radicand < 0:
        raise RadarInfeasibleError(
            f"p_max={inst.p_max:.4g} below radar floor "
            f"{inst.lambda_r * float(np.sum(inst.c2_sq)):.4g}"
        )
    return np.full(n, radicand), inst.c2_sq.copy()


def assemble_tx_vectors(
    p_jam: np.ndarray, p_radar: np.ndarray, bf_all: Sequence[BeamformerSet]
) -> Tuple[np.ndarray, np.ndarray]:
    """Digital transmit vectors of the probe and wait intervals.

    The jamming component is placed in phase quadrature with the radar
    component, so the jamming power at D is p_jam^2 g_jam + p_radar^2 g_radar
    with no cross term.
    """
    p_nr = np.stack(
        [
            1j * pj * bf.v_jam + pr * bf.v_radar
            for pj, pr, bf in zip(p_jam, p_radar, bf_all)
        ]
    )
    return p_nr, np.zeros_like(p_nr)


def _scan_power(p_nr: np.ndarray, p_nw: np.ndarray, cfg: SystemConfig) -> float:
    probe = np.sum(np.abs(p_nr) ** 2)
    wait = np.sum(np.abs(p_nw[:, :-1]) ** 2)
    return float(cfg.lambda_r * probe + cfg.lambda_w * wait)


def _build(
    case: CaseLabel,
    p_jam_sq: np.ndarray,
    p_radar_sq: np.ndarray,
    p_th: float,
    bf_all: Sequence[BeamformerSet],
    cfg: SystemConfig,
    **flags,
) -> PowerAllocation:
    p_jam = np.sqrt(np.maximum(p_jam_sq, 0.0))
    p_radar = np.sqrt(np.maximum(p_radar_sq, 0.0))
    p_nr, p_nw = assemble_tx_vectors(p_jam, p_radar, bf_all)
    return PowerAllocation(
        case_label=case,
        p_jam=p_jam,
        p_radar=p_radar,
        p_nr=p_nr,
        p_nw=p_nw,
        p_th=p_th,
        p_total=_scan_power(p_nr, p_nw, cfg),
        **flags,
    )


def solve_power_min(
    cfg: SystemConfig, channels: ChannelSet, bf_all: Sequence[BeamformerSet]
) -> PowerAllocation:
    """Power-minimizing allocation meeting SINR_D = gamma_s exactly."""
    inst = allocation_instance(cfg, channels, bf_all)
    p_jam_sq, p_radar_sq = power_min_coefficients(inst)
    return _build(
        CaseLabel.POWER_MIN,
        p_jam_sq,
        p_radar_sq,
        threshold_power(inst),
        bf_all,
        cfg,
    )


def compute_p_th(
    cfg: SystemConfig, channels: ChannelSet, bf_all: Sequence[BeamformerSet]
) -> float:
    return threshold_power(allocation_instance(cfg, channels, bf_all))


def solve_jam_max(
    cfg: SystemConfig, channels: ChannelSet, bf_all: Sequence[BeamformerSet]
) -> PowerAllocation:
    """Jamming-maximizing allocation spending exactly p_max."""
    inst = allocation_instance(cfg, channels, bf_all)
    try:
        p_th = threshold_power(inst)
    except (OverJammedError, MonitoringInfeasibleError):
        p_th = float("nan")
    p_jam_sq, p_radar_sq = jam_max_coefficients(inst)
    return _build(CaseLabel.JAM_MAX, p_jam_sq, p_radar_sq, p_th, bf_all, cfg)


def algorithm1(
    cfg: SystemConfig, channels: ChannelSet, bf_all: Sequence[BeamformerSet]
) -> PowerAllocation:
    """Dispatch between power minimization and jamming maximization.

    Power minimization is kept when p_max >= p_th. An over-jammed instance
    falls through to jamming maximization with ``gamma_s_violated`` set.

    Raises:
        RadarInfeasibleError: the budget cannot cover the radar floor.
        MonitoringInfeasibleError: gamma_s unreachable without jamming.
    """
    inst = allocation_instance(cfg, channels, bf_all)
    try:
        p_jam_sq, p_radar_sq = power_min_coefficients(inst)
    except OverJammedError as exc:
        logger.debug("over-jammed, switching to jamming maximization: %s", exc)
        p_jam_sq, p_radar_sq = jam_max_coefficients(inst)
        return _build(
            CaseLabel.JAM_MAX,
            p_jam_sq,
            p_radar_sq,
            float("nan"),
            bf_all,
            cfg,
            gamma_s_violated=True,
        )
    p_th = threshold_power(inst)
    if cfg.p_max >= p_th:
        return _build(
            CaseLabel.POWER_MIN, p_jam_sq, p_radar_sq, p_th, bf_all, cfg
        )
    p_jam_sq, p_radar_sq = jam_max_coefficients(inst)
    return _build(CaseLabel.JAM_MAX, p_jam_sq, p_radar_sq, p_th, bf_all, cfg)


def forced_power_min(
    cfg: SystemConfig, channels: ChannelSet, bf_all: Sequence[BeamformerSet]
) -> PowerAllocation:
    """Power minimization regardless of the budget.

    An over-jammed instance keeps only the radar component and is flagged.
    """
    inst = allocation_instance(cfg, channels, bf_all)
    try:
        p_jam_sq, p_radar_sq = power_min_coefficients(inst)
        p_th = threshold_power(inst)
        violated = False
    except OverJammedError:
        p_jam_sq = np.zeros(inst.n_directions)
        p_radar_sq = inst.c2_sq.copy()
        p_th = float("nan")
        violated = True
    return _build(
        CaseLabel.POWER_MIN,
        p_jam_sq,
        p_radar_sq,
        p_th,
        bf_all,
        cfg,
        gamma_s_violated=violated,
    )


def radar_only_fallback(
    cfg: SystemConfig, channels: ChannelSet, bf_all: Sequence[BeamformerSet]
) -> PowerAllocation:
    """Spend the whole budget on probing when the radar floor is unreachable.

    Radar amplitudes keep the proportions of the radar floor and are scaled
    down to p_max, so every radar constraint is violated by the same factor.
    """
    inst = allocation_instance(cfg, channels, bf_all)
    floor = inst.lambda_r * float(np.sum(inst.c2_sq))
    scale = inst.p_max / floor if floor > 0 else 0.0
    return _build(
        CaseLabel.JAM_MAX,
        np.zeros(inst.n_directions),
        inst.c2_sq * scale,
        float("nan"),
        bf_all,
        cfg,
        radar_violated=True,
        notes=("radar floor above p_max",),
    )


def unit_coefficients(
    bf_all: Sequence[BeamformerSet], cfg: SystemConfig
) -> PowerAllocation:
    """Unit jamming and radar coefficients in every direction.

    Used to inspect the transmit pattern before power allocation.
    """
    ones = np.ones(len(bf_all))
    return _build(
        CaseLabel.POWER_MIN,
        ones,
        ones,
        float("nan"),
        bf_all,
        cfg,
        notes=("unit coefficients",),
    )


def jamming_power_at_d(
    alloc: PowerAllocation, bf_all: Sequence[BeamformerSet], cfg: SystemConfig
) -> float:
    """Scan-averaged jamming power reaching D, expanded through the gains."""
    g_jam = np.array([bf.g_jam for bf in bf_all])
    g_radar = np.array([bf.g_radar for bf in bf_all])
    per_direction = alloc.p_jam**2 * g_jam + alloc.p_radar**2 * g_radar
    return float(cfg.lambda_r * np.mean(per_direction))


ALLOCATION_POLICIES = {
    "algorithm1": algorithm1,
    "power_min": forced_power_min,
    "jam_max": solve_jam_max,
}


def allocate(
    policy: str,
    cfg: SystemConfig,
    channels: ChannelSet,
    bf_all: List[BeamformerSet],
) -> PowerAllocation:
    """Run a named allocation policy."""
    try:
        solver = ALLOCATION_POLICIES[policy]
    except KeyError:
        raise ValueError(f"unknown allocation policy '{policy}'") from None
    return solver(cfg, channels, bf_all)
