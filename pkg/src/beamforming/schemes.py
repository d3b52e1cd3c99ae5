"""Receive schemes compared in the simulation study."""

from typing import Sequence

import numpy as np

from src.beamforming.receive_combiners import (
    mrc_combiners,
    optimal_radar_combiner,
    optimal_surveillance_combiner,
    surveillance_centric_combiners,
)
from src.beamforming.scheme_registry import scheme
from src.models.domain.allocation_domain import PowerAllocation
from src.models.domain.beamformer_domain import BeamformerSet
from src.models.domain.channel_domain import ChannelSet
from src.models.domain.combiner_domain import ReceiveCombiners
from src.models.schema.config_schema import SystemConfig


def _optimal(name, bf_all, channels, alloc, cfg) -> ReceiveCombiners:
    m = bf_all[0].n_rf
    w_s_tilde = optimal_surveillance_combiner(bf_all, channels.h_se, cfg)
    w_s_tilde = w_s_tilde.reshape(len(bf_all), m - 1)
    w_r_tilde = np.stack(
        [optimal_radar_combiner(bf, p, cfg) for bf, p in zip(bf_all, alloc.p_nr)]
    )
    return ReceiveCombiners(
        scheme=name,
        w_s=np.stack([bf.z_s @ w for bf, w in zip(bf_all, w_s_tilde)]),
        w_r=np.stack([bf.z_r @ w for bf, w in zip(bf_all, w_r_tilde)]),
        w_s_tilde=w_s_tilde,
        w_r_tilde=w_r_tilde,
    )


@scheme("Optimal")
def optimal(
    bf_all: Sequence[BeamformerSet],
    channels: ChannelSet,
    alloc: PowerAllocation,
    cfg: SystemConfig,
) -> ReceiveCombiners:
    """Null-space combiners that remove cross interference on both chains."""
    return _optimal("Optimal", bf_all, channels, alloc, cfg)


@scheme("ForcedPowerMin", allocation="power_min")
def forced_power_min(bf_all, channels, alloc, cfg) -> ReceiveCombiners:
    """Optimal combiners with power minimization forced on the transmitter."""
    return _optimal("ForcedPowerMin", bf_all, channels, alloc, cfg)


@scheme("ForcedJamMax", allocation="jam_max")
def forced_jam_max(bf_all, channels, alloc, cfg) -> ReceiveCombiners:
    """Optimal combiners with jamming maximization forced on the transmitter."""
    return _optimal("ForcedJamMax", bf_all, channels, alloc, cfg)


@scheme("MRC")
def mrc(bf_all, channels, alloc, cfg) -> ReceiveCombiners:
    """Matched filters on both chains, interference left in place."""
    pairs = [
        mrc_combiners(bf.u_rx, channels.h_se, bf.b_echo, p)
        for bf, p in zip(bf_all, alloc.p_nr)
    ]
    return ReceiveCombiners(
        scheme="MRC",
        w_s=np.stack([w_s for w_s, _ in pairs]),
        w_r=np.stack([w_r for _, w_r in pairs]),
    )


@scheme("SurveillanceCentric")
def surveillance_centric(bf_all, channels, alloc, cfg) -> ReceiveCombiners:
    """Matched surveillance combiner, null-space radar combiner."""
    pairs = [
        surveillance_centric_combiners(bf, channels.h_se, p, cfg)
        for bf, p in zip(bf_all, alloc.p_nr)
    ]
    return ReceiveCombiners(
        scheme="SurveillanceCentric",
        w_s=np.stack([w_s for w_s, _ in pairs]),
        w_r=np.stack([w_r for _, w_r in pairs]),
    )
