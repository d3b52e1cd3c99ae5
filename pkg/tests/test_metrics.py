import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError

from src.allocation.power_allocation import unit_coefficients
from src.beamforming.beam_select import build_all_beamformers
from src.beamforming.scheme_registry import global_scheme_registry
from src.channel.channel_generator import trial_seed
from src.experiments import pipeline
from src.experiments.pipeline import run_trial
from src.metrics.beampattern import beampattern, dominant_lobes
from src.metrics.trial_metrics import evaluate_trial, sinr_d
from src.models.schema.metrics_schema import TrialMetrics
from src.utils.error_handler import ConsistencyError, DegenerateGeometryError


def test_success_indicator_must_match_sinrs():
    with pytest.raises(ValidationError):
        TrialMetrics(sinr_e=1.0, sinr_d=2.0, sinr_r=[], p_total=1.0, success=1)
    ok = TrialMetrics(sinr_e=2.0, sinr_d=2.0, sinr_r=[], p_total=1.0, success=1)
    assert ok.success == 1


def test_evaluate_trial_collects_every_direction(feasible_trial):
    cfg, channels, bf_all, alloc = feasible_trial
    combiners = global_scheme_registry.build_combiners(
        "Optimal", bf_all, channels, alloc, cfg
    )
    metrics = evaluate_trial(combiners, bf_all, channels, alloc, cfg)
    assert len(metrics.sinr_r) == cfg.n_antennas
    assert metrics.p_total == pytest.approx(alloc.p_total)
    assert metrics.case_label == alloc.case_label.value
    assert metrics.success == int(metrics.sinr_e >= metrics.sinr_d)


def test_sinr_d_without_jamming(feasible_trial):
    cfg, channels, bf_all, alloc = feasible_trial
    silent = type(alloc)(
        case_label=alloc.case_label,
        p_jam=alloc.p_jam,
        p_radar=alloc.p_radar,
        p_nr=np.zeros_like(alloc.p_nr),
        p_nw=np.zeros_like(alloc.p_nw),
        p_th=alloc.p_th,
        p_total=0.0,
    )
    expected = abs(channels.h_sd) ** 2 * cfg.p_s / cfg.noise_rx_d
    assert sinr_d(channels, bf_all, silent, cfg) == pytest.approx(expected)


def test_run_trial_shares_channels_across_schemes(small_cfg):
    outcomes = run_trial(small_cfg, ["Optimal", "MRC"], trial_seed(7, 3))
    assert set(outcomes) == {"Optimal", "MRC"}
    feasible = [o for o in outcomes.values() if o.metrics is not None]
    if len(feasible) == 2:
        assert outcomes["Optimal"].metrics.sinr_d == outcomes["MRC"].metrics.sinr_d


def test_infeasible_trial_counts_as_failure(small_cfg):
    hopeless = small_cfg.replace(gamma_s=1e9)
    outcomes = run_trial(hopeless, ["Optimal"], trial_seed(7, 0))
    outcome = outcomes["Optimal"]
    assert outcome.infeasible
    assert outcome.metrics is None
    assert outcome.success == 0
    assert outcome.reason.startswith("monitoring infeasible")


@pytest.mark.parametrize(
    "error, reason",
    [
        (DegenerateGeometryError("zero radar gain"), "degenerate geometry"),
        (ConsistencyError("g_sum != g_radar + g_jam"), "inconsistent allocation"),
    ],
)
def test_allocation_errors_are_counted_not_raised(
    small_cfg, monkeypatch, error, reason
):
    def broken_allocate(*args, **kwargs):
        raise error

    monkeypatch.setattr(pipeline, "allocate", broken_allocate)
    outcomes = run_trial(small_cfg, ["Optimal", "MRC"], trial_seed(7, 0))
    for outcome in outcomes.values():
        assert outcome.infeasible
        assert outcome.success == 0
        assert outcome.reason.startswith(reason)


def test_beampattern_sample_count(small_cfg, beamformers):
    alloc = unit_coefficients(beamformers, small_cfg)
    sin_theta, gains = beampattern(alloc, beamformers, 1, 2, small_cfg)
    assert_allclose(sin_theta, [-1.0, 0.0])
    assert gains.shape == (2,)
    with pytest.raises(ValueError):
        beampattern(alloc, beamformers, 1, 0, small_cfg)


def test_beampattern_total_radiated_energy(small_cfg, beamformers):
    alloc = unit_coefficients(beamformers, small_cfg)
    _, gains = beampattern(alloc, beamformers, 5, 16, small_cfg)
    radiated = beamformers[4].u_tx @ alloc.p_nr[4]
    assert gains.sum() == pytest.approx(16 * np.linalg.norm(radiated) ** 2)


def test_unit_beampattern_shows_one_lobe_per_chain(lobe_channels):
    cfg, channels = lobe_channels
    bf_all = build_all_beamformers(cfg, channels)
    _, gains = beampattern(unit_coefficients(bf_all, cfg), bf_all, 13, 2048, cfg)
    lobes = dominant_lobes(gains, 10.0)
    assert lobes.size == cfg.n_rf


def test_dominant_lobes_wrap_and_silence():
    gains = np.array([1.0, 0.5, 4.0, 0.5, 5.0])
    assert list(dominant_lobes(gains, 3.0)) == [2, 4]
    assert dominant_lobes(np.zeros(4), 3.0).size == 0
