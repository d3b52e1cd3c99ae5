import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.allocation.power_allocation import (
    algorithm1,
    allocate,
    allocation_instance,
    forced_power_min,
    jam_max_coefficients,
    jamming_power_at_d,
    power_min_coefficients,
    radar_only_fallback,
    solve_jam_max,
    solve_power_min,
    threshold_power,
    unit_coefficients,
)
from src.channel.channel_generator import trial_seed
from src.experiments.pipeline import prepare_trial
from src.metrics.trial_metrics import sinr_d, total_power
from src.models.domain.allocation_domain import CaseLabel
from src.utils.config_loader import build_config, effective_inputs
from src.utils.error_handler import (
    MonitoringInfeasibleError,
    OverJammedError,
    RadarInfeasibleError,
    SimulationError,
)


def _trial(overrides, policy="algorithm1", attempts=50):
    cfg = build_config(effective_inputs(overrides=overrides))
    for index in range(attempts):
        try:
            channels, bf_all, alloc = prepare_trial(
                cfg, trial_seed(11, index), policy
            )
        except SimulationError:
            continue
        return cfg, channels, bf_all, alloc
    pytest.fail(f"no feasible draw for {overrides}")


def test_power_min_meets_gamma_s_exactly():
    cfg, channels, bf_all, alloc = _trial({"p_max_db": 60.0})
    assert alloc.case_label is CaseLabel.POWER_MIN
    assert sinr_d(channels, bf_all, alloc, cfg) == pytest.approx(cfg.gamma_s)
    inst = allocation_instance(cfg, channels, bf_all)
    assert_allclose(alloc.p_radar**2, inst.c2_sq)


def test_power_min_spends_threshold_power():
    cfg, channels, bf_all, alloc = _trial({"p_max_db": 60.0})
    assert alloc.p_total == pytest.approx(alloc.p_th, rel=1e-9)
    assert total_power(alloc, cfg) == pytest.approx(alloc.p_total)


def test_power_min_splits_jamming_equally():
    cfg, channels, bf_all, _ = _trial({"p_max_db": 60.0})
    alloc = solve_power_min(cfg, channels, bf_all)
    assert np.ptp(alloc.p_jam) == pytest.approx(0.0, abs=1e-12)


def test_jam_max_spends_whole_budget():
    cfg, channels, bf_all, _ = _trial({"p_max_db": 60.0})
    alloc = solve_jam_max(cfg, channels, bf_all)
    assert alloc.case_label is CaseLabel.JAM_MAX
    assert alloc.p_total == pytest.approx(cfg.p_max, rel=1e-9)


def test_algorithm1_picks_jam_max_below_threshold():
    cfg, channels, bf_all, _ = _trial({"p_max_db": 60.0})
    p_th = threshold_power(allocation_instance(cfg, channels, bf_all))
    tight = cfg.replace(p_max=0.5 * p_th)
    radar_floor = tight.lambda_r * float(
        np.sum(allocation_instance(tight, channels, bf_all).c2_sq)
    )
    if radar_floor > tight.p_max:
        pytest.skip("radar floor above the reduced budget")
    alloc = algorithm1(tight, channels, bf_all)
    assert alloc.case_label is CaseLabel.JAM_MAX
    assert alloc.p_th == pytest.approx(p_th)
    assert sinr_d(channels, bf_all, alloc, tight) > tight.gamma_s


def test_jamming_power_matches_direct_sum(feasible_trial):
    cfg, channels, bf_all, alloc = feasible_trial
    direct = cfg.n_antennas * cfg.p_s * abs(channels.h_sd) ** 2 / sinr_d(
        channels, bf_all, alloc, cfg
    ) - cfg.n_antennas * cfg.noise_rx_d
    assert cfg.n_antennas * jamming_power_at_d(alloc, bf_all, cfg) == (
        pytest.approx(direct, rel=1e-8)
    )


def test_wait_interval_is_silent(feasible_trial):
    _, _, _, alloc = feasible_trial
    assert not np.any(alloc.p_nw)


def test_monitoring_infeasible_raises(feasible_trial):
    cfg, channels, bf_all, _ = feasible_trial
    hopeless = cfg.replace(gamma_s=1e9)
    with pytest.raises(MonitoringInfeasibleError):
        algorithm1(hopeless, channels, bf_all)


def test_radar_infeasible_and_fallback(feasible_trial):
    cfg, channels, bf_all, _ = feasible_trial
    starved = cfg.replace(p_max=1e-12)
    inst = allocation_instance(starved, channels, bf_all)
    with pytest.raises(RadarInfeasibleError):
        jam_max_coefficients(inst)
    fallback = radar_only_fallback(starved, channels, bf_all)
    assert fallback.radar_violated
    assert fallback.p_total == pytest.approx(starved.p_max)
    assert not np.any(fallback.p_jam)


def test_over_jammed_instance():
    cfg, channels, bf_all, _ = _trial({"p_max_db": 60.0})
    inst = allocation_instance(cfg, channels, bf_all)
    crowded = type(inst)(
        lambda_r=inst.lambda_r,
        lambda_w=inst.lambda_w,
        g_jam=inst.g_jam,
        g_radar=inst.g_radar,
        c2_sq=inst.c2_sq * 1e12,
        c1=inst.c1,
        p_max=inst.p_max,
        monitoring_margin=inst.monitoring_margin,
    )
    with pytest.raises(OverJammedError):
        power_min_coefficients(crowded)


def test_forced_power_min_flags_over_jamming(feasible_trial):
    cfg, channels, bf_all, _ = feasible_trial
    loud = cfg.replace(gamma_r=cfg.gamma_r * 1e12)
    alloc = forced_power_min(loud, channels, bf_all)
    assert alloc.case_label is CaseLabel.POWER_MIN
    assert alloc.gamma_s_violated
    assert not np.any(alloc.p_jam)


def test_unit_coefficients(beamformers, small_cfg):
    alloc = unit_coefficients(beamformers, small_cfg)
    assert_allclose(alloc.p_jam, 1.0)
    assert_allclose(np.abs(alloc.p_nr) ** 2 @ np.ones(small_cfg.n_rf), 2.0)


def test_unknown_policy_rejected(feasible_trial):
    cfg, channels, bf_all, _ = feasible_trial
    with pytest.raises(ValueError):
        allocate("greedy", cfg, channels, bf_all)
