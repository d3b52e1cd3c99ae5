"""Qualitative trends of the figure sweeps at desk scale."""

import numpy as np
import pytest

from src.experiments.presets import global_preset_registry
from src.experiments.sweep_runner import run_sweep

pytestmark = pytest.mark.slow


def _curves(tag, n_trials=300):
    table = run_sweep(global_preset_registry.build(tag, n_trials=n_trials))
    curves = {}
    for row in table.rows:
        curves.setdefault(row.scheme, []).append(row.success_prob)
    return {name: np.array(values) for name, values in curves.items()}


def test_null_space_combining_beats_mrc():
    curves = _curves("fig6")
    assert curves["Optimal"].mean() >= curves["MRC"].mean()
    assert curves["Optimal"].mean() >= curves["SurveillanceCentric"].mean()


def test_stronger_suspicious_link_hurts_eavesdropping():
    optimal = _curves("fig8")["Optimal"]
    assert optimal[0] > optimal[-1]


def test_switching_tracks_the_better_forced_policy():
    curves = _curves("fig5")
    best_forced = np.maximum(curves["ForcedPowerMin"], curves["ForcedJamMax"])
    assert np.all(curves["Optimal"] >= best_forced - 0.1)


def test_radar_floor_costs_success_probability():
    optimal = _curves("fig9")["Optimal"]
    assert optimal[0] >= optimal[-1]


def test_case_switch_follows_the_budget():
    table = run_sweep(global_preset_registry.build("fig5", n_trials=300))
    fractions = [
        row.case_powermin_frac for row in table.rows if row.scheme == "Optimal"
    ]
    assert fractions[0] <= 0.1
    assert fractions[-1] >= 0.9
    assert all(b >= a - 0.05 for a, b in zip(fractions, fractions[1:]))
