"""One Monte Carlo trial: channels, beams, allocation, combiners, metrics."""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import src.beamforming.schemes  # noqa: F401  registers the receive schemes
from src.allocation.power_allocation import allocate, radar_only_fallback
from src.beamforming.beam_select import build_all_beamformers
from src.beamforming.scheme_registry import global_scheme_registry
from src.channel.channel_generator import generate_channels
from src.metrics.trial_metrics import evaluate_trial
from src.models.domain.allocation_domain import PowerAllocation
from src.models.domain.beamformer_domain import BeamformerSet
from src.models.domain.channel_domain import ChannelSet
from src.models.schema.config_schema import SystemConfig
from src.models.schema.metrics_schema import TrialMetrics
from src.utils.error_handler import (
    ConsistencyError,
    DegenerateGeometryError,
    MonitoringInfeasibleError,
    RadarInfeasibleError,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class TrialOutcome:
    """Result of one scheme on one channel draw.

    ``metrics`` is None when nothing could be transmitted; such a trial
    counts as an eavesdropping failure.
    """

    scheme: str
    metrics: Optional[TrialMetrics]
    infeasible: bool = False
    reason: str = ""

    @property
    def success(self) -> int:
        return self.metrics.success if self.metrics is not None else 0


def _failed(schemes: Sequence[str], reason: str) -> Dict[str, TrialOutcome]:
    return {
        name: TrialOutcome(scheme=name, metrics=None, infeasible=True, reason=reason)
        for name in schemes
    }


def _allocation_for(
    policy: str,
    cfg: SystemConfig,
    channels: ChannelSet,
    bf_all: List[BeamformerSet],
) -> Tuple[Optional[PowerAllocation], str]:
    try:
        return allocate(policy, cfg, channels, bf_all), ""
    except MonitoringInfeasibleError as exc:
        return None, f"monitoring infeasible: {exc}"
    except RadarInfeasibleError as exc:
        return radar_only_fallback(cfg, channels, bf_all), f"radar infeasible: {exc}"
    except DegenerateGeometryError as exc:
        return None, f"degenerate geometry: {exc}"
    except ConsistencyError as exc:
        logger.warning("%s allocation inconsistent: %s", policy, exc)
        return None, f"inconsistent allocation: {exc}"


def run_trial(
    cfg: SystemConfig, schemes: Sequence[str], seed: int
) -> Dict[str, TrialOutcome]:
    """Evaluate every scheme on the same channel draw and analog beams.

    Allocations are computed once per transmit policy, so schemes sharing a
    policy also share the transmit vectors.
    """
    channels = generate_channels(cfg, seed)
    try:
        bf_all = build_all_beamformers(cfg, channels)
    except DegenerateGeometryError as exc:
        logger.debug("seed %d: degenerate geometry (%s)", seed, exc)
        return _failed(schemes, f"degenerate geometry: {exc}")
    except ConsistencyError as exc:
        logger.warning("seed %d: inconsistent beamformers (%s)", seed, exc)
        return _failed(schemes, f"inconsistent beamformers: {exc}")
    allocations: Dict[str, Tuple[Optional[PowerAllocation], str]] = {}
    outcomes: Dict[str, TrialOutcome] = {}
    for name in schemes:
        policy = global_scheme_registry.require(name).allocation
        if policy not in allocations:
            allocations[policy] = _allocation_for(policy, cfg, channels, bf_all)
        alloc, reason = allocations[policy]
        if alloc is None:
            outcomes[name] = TrialOutcome(name, None, True, reason)
            continue
        try:
            combiners = global_scheme_registry.build_combiners(
                name, bf_all, channels, alloc, cfg
            )
        except (DegenerateGeometryError, ConsistencyError) as exc:
            outcomes[name] = TrialOutcome(name, None, True, f"combiner: {exc}")
            continue
        metrics = evaluate_trial(combiners, bf_all, channels, alloc, cfg)
        outcomes[name] = TrialOutcome(
            name, metrics, infeasible=alloc.radar_violated, reason=reason
        )
    return outcomes


def prepare_trial(
    cfg: SystemConfig, seed: int, policy: str = "algorithm1"
) -> Tuple[ChannelSet, List[BeamformerSet], PowerAllocation]:
    """Channels, beamformers and allocation of one draw, errors propagated."""
    channels = generate_channels(cfg, seed)
    bf_all = build_all_beamformers(cfg, channels)
    return channels, bf_all, allocate(policy, cfg, channels, bf_all)

