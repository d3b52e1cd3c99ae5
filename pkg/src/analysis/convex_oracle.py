"""Iterative reference solvers for the power allocation problems.

The closed forms in ``src.allocation.power_allocation`` are checked against
these solvers, which share no algebra with them: a projected-gradient method
for the linear programs in squared amplitudes and a multiplier search for
the wait-interval relaxation.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple, Union

import numpy as np

from src.config.settings import settings
from src.models.domain.allocation_domain import AllocationInstance, CaseLabel
from src.utils.error_handler import OracleFailureError
from src.utils.logger import get_logger

logger = get_logger(__name__)

_BISECTION_STEPS = 200


@dataclass(frozen=True)
class OracleResult:
    x: np.ndarray
    objective: float
    kkt_residual: float
    iterations: int
    duals: Dict[str, np.ndarray] = field(default_factory=dict)


@dataclass(frozen=True)
class LinearProgram:
    """min c^T x subject to a^T x = b and x >= lower."""

    c: np.ndarray
    a: np.ndarray
    b: float
    lower: np.ndarray


def project_hyperplane_box(
    y: np.ndarray, a: np.ndarray, b: float, lower: np.ndarray
) -> np.ndarray:
    """Euclidean projection onto {x : a^T x = b, x >= lower} for a > 0."""
    if float(a @ lower) > b * (1 + 1e-14) + 1e-300:
        raise OracleFailureError("lower bounds already exceed the equality")

    def mass(tau: float) -> float:
        return float(a @ np.maximum(lower, y - tau * a))

    lo, hi = -1.0, 1.0
    while mass(lo) < b:
        lo *= 2.0
    while mass(hi) > b:
        hi *= 2.0
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if mass(mid) > b:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16 * max(1.0, abs(mid)):
            break
    tau = 0.5 * (lo + hi)
    free = y - tau * a > lower
    if np.any(free):
        # Exact multiplier for the active set found by bisection.
        fixed_mass = float(a[~free] @ lower[~free])
        tau = float((a[free] @ y[free] - (b - fixed_mass)) / (a[free] @ a[free]))
    return np.maximum(lower, y - tau * a)


def kkt_residual(problem: LinearProgram, x: np.ndarray) -> Tuple[float, float]:
    """Scaled KKT residual of ``x`` and the recovered equality multiplier."""
    c, a, lower = problem.c, problem.a, problem.lower
    scale_x = max(float(np.max(np.abs(x))), 1e-300)
    slack = x - lower
    free = slack > 1e-9 * np.maximum(1.0, np.abs(lower))
    if np.any(free):
        nu = float(-(c[free] @ a[free]) / (a[free] @ a[free]))
    else:
        nu = float(np.max(-c / a))
    bound_dual = c + nu * a
    scale_c = max(float(np.max(np.abs(c))), 1e-300)
    stationarity = np.max(np.abs(bound_dual[free])) if np.any(free) else 0.0
    dual_feasibility = -float(np.min(bound_dual[~free], initial=0.0))
    primal = abs(float(a @ x) - problem.b) / max(abs(problem.b), 1e-300)
    bound_violation = max(0.0, -float(np.min(slack))) / scale_x
    complementarity = float(np.max(np.abs(bound_dual * slack))) / (scale_c * scale_x)
    residual = max(
        stationarity / scale_c,
        dual_feasibility / scale_c,
        primal,
        bound_violation,
        complementarity,
    )
    return float(residual), nu


def solve_linear_program(
    problem: LinearProgram,
    max_iter: Optional[int] = None,
    tol: Optional[float] = None,
) -> OracleResult:
    """Projected gradient with backtracking on the step size.

    Raises:
        OracleFailureError: the iteration budget ran out before the KKT
            residual dropped below ``tol``.
    """
    max_iter = max_iter or settings.ORACLE_MAX_ITER
    tol = tol or settings.ORACLE_TOL
    c, a, b, lower = problem.c, problem.a, problem.b, problem.lower
    start = lower + b / float(np.sum(a))
    x = project_hyperplane_box(start, a, b, lower)
    step = float(np.max(np.abs(x)) + 1.0) / max(float(np.max(np.abs(c))), 1e-300)
    residual = float("inf")
    for iteration in range(1, max_iter + 1):
        candidate = project_hyperplane_box(x - step * c, a, b, lower)
        while float(c @ (candidate - x)) > 0 and step > 1e-300:
            step *= 0.5
            candidate = project_hyperplane_box(x - step * c, a, b, lower)
        moved = float(np.linalg.norm(candidate - x))
        x = candidate
        residual, nu = kkt_residual(problem, x)
        if residual <= tol and moved <= tol * (1.0 + float(np.linalg.norm(x))):
            logger.debug("oracle converged in %d iterations", iteration)
            return OracleResult(
                x=x,
                objective=float(c @ x),
                kkt_residual=residual,
                iterations=iteration,
                duals={"nu": np.array([nu]), "bound": c + nu * a},
            )
        step *= 2.0
    raise OracleFailureError(
        f"no convergence after {max_iter} iterations (residual {residual:.3e})"
    )


def power_min_program(inst: AllocationInstance) -> LinearProgram:
    """Variables [p_jam^2 (N), p_radar^2 (N)] minimizing total probe power."""
    n = inst.n_directions
    lam = inst.lambda_r
    return LinearProgram(
        c=np.full(2 * n, lam),
        a=lam * np.concatenate([inst.g_jam, inst.g_radar]),
        b=float(inst.c1),
        lower=np.concatenate([np.zeros(n), inst.c2_sq]),
    )


def jam_max_program(inst: AllocationInstance) -> LinearProgram:
    """Variables [p_jam^2 (N), p_radar^2 (N)] maximizing jamming at D."""
    n = inst.n_directions
    lam = inst.lambda_r
    return LinearProgram(
        c=-lam * np.concatenate([inst.g_jam, inst.g_radar]),
        a=np.full(2 * n, lam),
        b=float(inst.p_max),
        lower=np.concatenate([np.zeros(n), inst.c2_sq]),
    )


def solve_power_min_oracle(inst: AllocationInstance, **kwargs) -> OracleResult:
    return solve_linear_program(power_min_program(inst), **kwargs)


def solve_jam_max_oracle(inst: AllocationInstance, **kwargs) -> OracleResult:
    result = solve_linear_program(jam_max_program(inst), **kwargs)
    return OracleResult(
        x=result.x,
        objective=-result.objective,
        kkt_residual=result.kkt_residual,
        iterations=result.iterations,
        duals=result.duals,
    )


def convex_oracle(
    problem_tag: Union[CaseLabel, str], inst: AllocationInstance, **kwargs
) -> OracleResult:
    """Solve the PowerMin or JamMax program named by ``problem_tag``."""
    try:
        tag = CaseLabel(problem_tag)
    except ValueError as exc:
        raise OracleFailureError(f"unknown problem tag {problem_tag!r}") from exc
    if tag is CaseLabel.POWER_MIN:
        return solve_power_min_oracle(inst, **kwargs)
    return solve_jam_max_oracle(inst, **kwargs)


def synthetic_instance(
    rng: np.random.Generator,
    n_directions: int,
    m: int,
    lambda_r: float = 0.1,
    budget_factor: float = 2.0,
) -> AllocationInstance:
    """Random gain-level instance with a common jamming gain.

    Radar leakage gains stay strictly below the jamming gain, so both linear
    programs have the equal-split closed forms among their optima and the
    radar floor binds.
    """
    g_jam_value = float(rng.uniform(0.5, 2.0)) * (m - 1)
    g_jam = np.full(n_directions, g_jam_value)
    g_radar = rng.uniform(0.01, 0.9, n_directions) * g_jam_value
    c2_sq = rng.uniform(0.1, 1.0, n_directions)
    leakage = lambda_r * float(np.sum(c2_sq * g_radar))
    c1 = leakage + lambda_r * float(rng.uniform(0.5, 5.0)) * float(np.sum(g_jam))
    floor = lambda_r * float(np.sum(c2_sq))
    return AllocationInstance(
        lambda_r=lambda_r,
        lambda_w=1.0 - lambda_r,
        g_jam=g_jam,
        g_radar=g_radar,
        c2_sq=c2_sq,
        c1=c1,
        p_max=floor * budget_factor + c1 / g_jam_value,
        monitoring_margin=1.0,
    )


@dataclass(frozen=True)
class WaitIntervalSolution:
    """Optimum of the relaxation that lets the monitor jam while waiting.

    Amplitudes are per direction along v_sum and v_new; ``x_wait`` is the
    wait-interval jamming power and ``wait_multiplier`` its bound dual.
    """

    a_sum: np.ndarray
    b_new: np.ndarray
    x_wait: float
    multiplier: float
    wait_multiplier: float
    objective: float
    kkt_residual: float


def solve_wait_interval_oracle(
    inst: AllocationInstance, g_wait: Optional[float] = None
) -> WaitIntervalSolution:
    """Minimize probe plus wait power with wait-interval jamming allowed.

    Along v_sum a direction contributes jamming sqrt(g_sum) a_n, and the
    radar constraint reads c_r a_n + c_j b_n >= C2 with c_r, c_j the
    projections of the normalized radar basis on v_sum and v_new. Power
    ``x_wait`` spent while waiting delivers ``g_wait`` jamming gain per
    unit, max(g_jam) by default. The optimum is found by a bisection over
    the jamming multiplier; whatever probing cannot deliver at the cheapest
    multiplier goes to the wait interval.

    Raises:
        OracleFailureError: the instance has no jamming target or gain.
    """
    g_sum = inst.g_sum
    if inst.c1 <= 0 or np.any(g_sum <= 0) or np.any(inst.g_jam <= 0):
        raise OracleFailureError("wait-interval relaxation needs C1, gains > 0")
    lam_r, lam_w = inst.lambda_r, inst.lambda_w
    c2 = np.sqrt(inst.c2_sq)
    c_r = np.sqrt(inst.g_radar / g_sum)
    c_j = np.sqrt(inst.g_jam / g_sum)
    g_wait = float(np.max(inst.g_jam)) if g_wait is None else float(g_wait)
    if g_wait <= 0:
        raise OracleFailureError("wait-interval jamming gain must be positive")
    g_top = max(float(np.max(g_sum)), g_wait)

    def amplitudes(mu: float) -> Tuple[np.ndarray, np.ndarray]:
        t = 1.0 + mu * g_sum
        denominator = c_j**2 * t + c_r**2
        return c2 * c_r / denominator, c2 * c_j * t / denominator

    def jamming(mu: float) -> float:
        a_sum, _ = amplitudes(mu)
        return lam_r * float(np.sum(g_sum * a_sum**2))

    mu_min = -1.0 / g_top
    x_wait = 0.0
    if jamming(mu_min) >= inst.c1:
        hi = 1.0
        while jamming(hi) > inst.c1:
            hi *= 2.0
        lo = mu_min
        for _ in range(_BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            if jamming(mid) > inst.c1:
                lo = mid
            else:
                hi = mid
        mu = 0.5 * (lo + hi)
        a_sum, b_new = amplitudes(mu)
    else:
        mu = mu_min
        a_sum, b_new = amplitudes(mu)
        top = np.isclose(g_sum, g_top, rtol=1e-12, atol=0.0)
        rest = lam_r * float(np.sum(g_sum[~top] * a_sum[~top] ** 2))
        if np.any(top):
            share = (inst.c1 - rest) / (lam_r * float(np.sum(g_sum[top])))
            a_sum[top] = np.sqrt(share)
            b_new[top] = 0.0
        else:
            x_wait = (inst.c1 - rest) / (lam_w * g_wait)

    wait_multiplier = lam_w * (1.0 + mu * g_wait)
    delivered = lam_r * float(np.sum(g_sum * a_sum**2)) + lam_w * g_wait * x_wait
    residuals = [abs(delivered - inst.c1) / inst.c1]
    radar = c_r * a_sum + c_j * b_new
    shortfall = np.maximum(0.0, c2 - radar) / np.maximum(c2, 1e-300)
    residuals.append(float(np.max(shortfall)))
    binding = b_new > 0
    # Stationarity in a_n once the radar multiplier is fixed by b_n.
    nu = np.where(binding, 2.0 * lam_r * b_new / c_j, 0.0)
    stationarity = lam_r * (1.0 + mu * g_sum) * 2.0 * a_sum - nu * c_r
    scale = lam_r * max(float(np.max(a_sum)), 1e-300)
    residuals.append(float(np.max(np.abs(stationarity))) / scale)
    residuals.append(max(0.0, -wait_multiplier) / lam_w)
    residuals.append(abs(wait_multiplier * x_wait) / (lam_w * max(x_wait, 1.0)))
    objective = lam_r * float(np.sum(a_sum**2 + b_new**2)) + lam_w * x_wait
    return WaitIntervalSolution(
        a_sum=a_sum,
        b_new=b_new,
        x_wait=float(x_wait),
        multiplier=float(mu),
        wait_multiplier=float(wait_multiplier),
        objective=objective,
        kkt_residual=float(max(residuals)),
    )
