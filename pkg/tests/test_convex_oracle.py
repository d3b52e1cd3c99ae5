import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.allocation.power_allocation import (
    jam_max_coefficients,
    power_min_coefficients,
)
from src.analysis.convex_oracle import (
    LinearProgram,
    convex_oracle,
    kkt_residual,
    project_hyperplane_box,
    solve_jam_max_oracle,
    solve_linear_program,
    solve_power_min_oracle,
    solve_wait_interval_oracle,
    synthetic_instance,
)
from src.models.domain.allocation_domain import CaseLabel
from src.utils.error_handler import OracleFailureError


@pytest.fixture
def instances():
    rng = np.random.default_rng(2024)
    return [synthetic_instance(rng, 8, 3) for _ in range(5)]


def test_projection_lands_on_feasible_set():
    rng = np.random.default_rng(1)
    a = rng.uniform(0.5, 2.0, 6)
    lower = rng.uniform(0.0, 0.2, 6)
    x = project_hyperplane_box(rng.standard_normal(6), a, 3.0, lower)
    assert float(a @ x) == pytest.approx(3.0)
    assert np.all(x >= lower)


def test_projection_keeps_feasible_point():
    a = np.ones(3)
    y = np.array([0.2, 0.3, 0.5])
    assert_allclose(project_hyperplane_box(y, a, 1.0, np.zeros(3)), y)


def test_projection_rejects_infeasible_bounds():
    with pytest.raises(OracleFailureError):
        project_hyperplane_box(np.zeros(2), np.ones(2), 1.0, np.ones(2))


def test_small_program_picks_cheapest_variable():
    problem = LinearProgram(
        c=np.array([1.0, 2.0]), a=np.ones(2), b=1.0, lower=np.zeros(2)
    )
    result = solve_linear_program(problem)
    assert_allclose(result.x, [1.0, 0.0], atol=1e-7)
    assert result.objective == pytest.approx(1.0, rel=1e-7)
    residual, nu = kkt_residual(problem, result.x)
    assert residual <= 1e-7
    assert nu == pytest.approx(-1.0)


def test_power_min_oracle_matches_closed_form(instances):
    for inst in instances:
        p_jam_sq, p_radar_sq = power_min_coefficients(inst)
        closed = inst.lambda_r * float(np.sum(p_jam_sq + p_radar_sq))
        result = solve_power_min_oracle(inst)
        assert result.objective == pytest.approx(closed, rel=1e-6)
        assert_allclose(result.x[inst.n_directions :], inst.c2_sq, rtol=1e-6)


def test_jam_max_oracle_matches_closed_form(instances):
    for inst in instances:
        p_jam_sq, p_radar_sq = jam_max_coefficients(inst)
        closed = inst.lambda_r * float(
            np.sum(p_jam_sq * inst.g_jam + p_radar_sq * inst.g_radar)
        )
        result = solve_jam_max_oracle(inst)
        assert result.objective == pytest.approx(closed, rel=1e-6)


def test_oracle_reports_failure_on_unreachable_tolerance():
    problem = LinearProgram(
        c=np.array([1.0, 2.0]), a=np.ones(2), b=1.0, lower=np.zeros(2)
    )
    with pytest.raises(OracleFailureError):
        solve_linear_program(problem, max_iter=5, tol=-1.0)


def test_wait_interval_relaxation_spends_nothing_while_waiting(instances):
    for inst in instances:
        solution = solve_wait_interval_oracle(inst)
        assert solution.x_wait == 0.0
        assert solution.wait_multiplier > 0.0
        assert solution.kkt_residual < 1e-6
        delivered = inst.lambda_r * float(np.sum(inst.g_sum * solution.a_sum**2))
        assert delivered == pytest.approx(inst.c1, rel=1e-8)


def test_wait_interval_needs_positive_target(instances):
    inst = instances[0]
    broken = type(inst)(**{**inst.__dict__, "c1": 0.0})
    with pytest.raises(OracleFailureError):
        solve_wait_interval_oracle(broken)


def test_wait_interval_carries_jamming_when_waiting_is_cheaper(instances):
    for inst in instances:
        baseline = solve_wait_interval_oracle(inst)
        g_wait = 1e3 * float(np.max(inst.g_sum))
        solution = solve_wait_interval_oracle(inst, g_wait=g_wait)
        assert solution.x_wait > 0.0
        assert solution.wait_multiplier == pytest.approx(0.0, abs=1e-12)
        assert solution.kkt_residual < 1e-6
        probe = inst.lambda_r * float(np.sum(inst.g_sum * solution.a_sum**2))
        waiting = inst.lambda_w * g_wait * solution.x_wait
        assert probe + waiting == pytest.approx(inst.c1, rel=1e-8)
        assert solution.objective < baseline.objective


@pytest.mark.parametrize("tag", [CaseLabel.POWER_MIN, "PowerMin"])
def test_convex_oracle_dispatches_power_min(instances, tag):
    inst = instances[0]
    assert convex_oracle(tag, inst).objective == pytest.approx(
        solve_power_min_oracle(inst).objective
    )


def test_convex_oracle_dispatches_jam_max(instances):
    inst = instances[1]
    assert convex_oracle(CaseLabel.JAM_MAX, inst).objective == pytest.approx(
        solve_jam_max_oracle(inst).objective
    )


def test_convex_oracle_rejects_unknown_tag(instances):
    with pytest.raises(OracleFailureError, match="unknown problem tag"):
        convex_oracle("WaitInterval", instances[0])
