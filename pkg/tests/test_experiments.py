import pytest
from pydantic import ValidationError

from src.config.system_defaults import FULL_DEFAULTS
from src.experiments.presets import global_preset_registry
from src.experiments.sweep_runner import (
    point_inputs,
    run_beampattern,
    run_beampattern_request,
    run_sweep,
)
from src.models.schema.sweep_schema import BeampatternRequest, SweepSpec


def _spec(**changes):
    fields = dict(
        figure_tag="fig8",
        param_name="rho_ratio_db",
        values=[0.0, 10.0],
        schemes=["Optimal", "MRC"],
        n_trials=3,
        master_seed=5,
        overrides={"n_antennas": 8, "n_rf": 2},
    )
    fields.update(changes)
    return SweepSpec(**fields)


def test_every_figure_has_a_preset():
    assert global_preset_registry.tags() == [
        "fig4",
        "fig5",
        "fig6",
        "fig7",
        "fig8",
        "fig9",
    ]


@pytest.mark.parametrize(
    "tag, param_name, values, schemes",
    [
        ("fig5", "p_max_db", [0, 5, 10, 15, 20, 25, 30, 35], 3),
        ("fig6", "p_max_db", [-10, -5, 0, 5, 10, 15, 20, 25, 30], 3),
        ("fig7", "gamma_s_db", [-20, -10, 0, 10, 20, 30], 3),
        ("fig8", "rho_ratio_db", [0, 5, 10, 15, 20, 25, 30], 1),
        ("fig9", "gamma_r_db", [0, 10, 20, 30, 40, 50, 60, 70], 1),
    ],
)
def test_sweep_presets(tag, param_name, values, schemes):
    spec = global_preset_registry.build(tag, n_trials=10, master_seed=3)
    assert spec.figure_tag == tag
    assert spec.param_name == param_name
    assert spec.values == values
    assert len(spec.schemes) == schemes
    assert spec.n_trials == 10
    assert spec.master_seed == 3


def test_presets_default_to_desk_scale():
    desk = global_preset_registry.build("fig9")
    assert desk.overrides["n_antennas"] == 16
    full = global_preset_registry.build("fig9", full_scale=True)
    assert "n_antennas" not in full.overrides
    tuned = global_preset_registry.build("fig9", overrides={"n_antennas": 32})
    assert tuned.overrides["n_antennas"] == 32


def test_beampattern_preset_direction():
    request = global_preset_registry.build("fig4")
    assert isinstance(request, BeampatternRequest)
    assert request.direction == 128 // 2 + 1 + 128 // 8


def test_unknown_preset():
    with pytest.raises(ValueError, match="fig4"):
        global_preset_registry.build("fig10")


@pytest.mark.parametrize(
    "changes",
    [
        {"values": [10.0, 0.0]},
        {"values": []},
        {"schemes": ["ZeroForcing"]},
        {"value_unit": "linear", "values": [0.0, 1.0]},
        {"n_trials": 0},
    ],
)
def test_sweep_spec_validation(changes):
    with pytest.raises(ValidationError):
        _spec(**changes)


def test_point_inputs():
    base = dict(FULL_DEFAULTS)
    rho = point_inputs(base, "rho_ratio_db", 20.0)
    assert rho["rho_sd"] == pytest.approx(100.0 * base["rho_se"])
    budget = point_inputs({**base, "p_max": 3.0}, "p_max_db", 10.0)
    assert budget["p_max_db"] == 10.0
    assert "p_max" not in budget


def test_sweep_rows_follow_spec_order():
    table = run_sweep(_spec(), threads=2)
    assert [(r.param_value_db, r.scheme) for r in table.rows] == [
        (0.0, "Optimal"),
        (0.0, "MRC"),
        (10.0, "Optimal"),
        (10.0, "MRC"),
    ]
    assert table.rows[1].param_value_linear == pytest.approx(1.0)
    assert table.config["n_antennas"] == 8
    assert all(row.n_trials == 3 for row in table.rows)


def test_sweep_does_not_depend_on_thread_count():
    serial = run_sweep(_spec(), threads=1)
    parallel = run_sweep(_spec(), threads=4)
    assert serial.rows == parallel.rows


def test_linear_sweep_values_are_reported_in_db():
    table = run_sweep(
        _spec(param_name="gamma_s_db", value_unit="linear", values=[1.0, 10.0])
    )
    assert [row.param_value_db for row in table.rows[::2]] == pytest.approx(
        [0.0, 10.0]
    )


def test_beampattern_table(small_cfg):
    table = run_beampattern(small_cfg, 7, 3, 2)
    assert len(table.rows) == 2
    assert table.direction == 3
    assert not table.allocated
    with pytest.raises(IndexError):
        run_beampattern(small_cfg, 7, 17, 2)


def test_beampattern_request_applies_overrides():
    request = BeampatternRequest(
        direction=2, samples=4, seed=1, overrides={"n_antennas": 8, "n_rf": 2}
    )
    table = run_beampattern_request(request, FULL_DEFAULTS)
    assert table.config["n_antennas"] == 8
    assert len(table.rows) == 4
