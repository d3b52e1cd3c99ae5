"""Oracle-equivalence, identity and invariant checks of the simulator."""

import dataclasses
import itertools
import math
import time
from typing import Callable, Iterator, List, Tuple

import numpy as np

from src.allocation.power_allocation import (
    algorithm1,
    allocation_instance,
    compute_p_th,
    jam_max_coefficients,
    jamming_power_at_d,
    power_min_coefficients,
    threshold_power,
    unit_coefficients,
)
from src.analysis.convex_oracle import (
    convex_oracle,
    jam_max_program,
    power_min_program,
    solve_wait_interval_oracle,
    synthetic_instance,
)
from src.analysis.monte_carlo import (
    monte_carlo_success_prob,
    probability_inputs_from_config,
    sample_fading_model,
)
from src.analysis.quadrature_oracle import jam_max_quadrature, power_min_quadrature
from src.analysis.success_probability import (
    jam_max_series,
    success_prob_jam_max,
    success_prob_power_min,
)
from src.beamforming.beam_select import build_all_beamformers, select_tx_codewords
from src.beamforming.scheme_registry import global_scheme_registry
from src.channel.array_model import collinear_index, dft_codebook, direction_grid
from src.channel.channel_generator import generate_channels, trial_seed
from src.config.settings import settings
from src.experiments.pipeline import prepare_trial
from src.experiments.verification.check_registry import verification_check
from src.metrics.beampattern import beampattern, dominant_lobes
from src.metrics.trial_metrics import evaluate_trial, sinr_d, total_power
from src.models.domain.allocation_domain import AllocationInstance, CaseLabel
from src.models.domain.channel_domain import ChannelSet
from src.models.schema.check_schema import CheckOutcome
from src.models.schema.config_schema import SystemConfig
from src.models.schema.probability_schema import ProbabilityInputs
from src.utils.config_loader import build_config, effective_inputs
from src.utils.error_handler import AllocationInfeasibleError, SimulationError

Coefficients = Callable[[AllocationInstance], Tuple[np.ndarray, np.ndarray]]

_ORACLE_SHAPES = ((8, 2), (16, 3))


def _instances(depth: str) -> int:
    return settings.FULL_INSTANCES if depth == "full" else settings.QUICK_INSTANCES


def _desk_cfg(**changes) -> SystemConfig:
    return build_config(effective_inputs(overrides=changes))


def _feasible_trials(
    cfg: SystemConfig, count: int, master_seed: int
) -> Iterator[tuple]:
    """Yield (channels, bf_all, alloc) of draws the case dispatcher can serve."""
    found, index = 0, 0
    while found < count and index < 20 * count:
        try:
            yield prepare_trial(cfg, trial_seed(master_seed, index))
            found += 1
        except SimulationError:
            pass
        index += 1


def _outcome(checks: List[Tuple[str, float, float]]) -> CheckOutcome:
    """Combine (label, worst value, tolerance) triples into one outcome."""
    failed = [label for label, value, tol in checks if not value <= tol]
    detail = "; ".join(
        f"{label}={value:.3e} (tol {tol:.0e})" for label, value, tol in checks
    )
    if failed:
        detail = f"failed: {', '.join(failed)}; {detail}"
    worst = max((v for _, v, _ in checks), default=0.0)
    return CheckOutcome(passed=not failed, worst_residual=float(worst), detail=detail)


@verification_check(depth="quick")
def codebook_orthogonality(depth: str = "quick") -> CheckOutcome:
    """DFT codebook columns are orthogonal with squared norm N."""
    worst = 0.0
    for n in (8, 16, 32, 64):
        cfg = _desk_cfg(n_antennas=n, n_rf=2)
        codebook = dft_codebook(direction_grid(cfg), cfg)
        gram = codebook.conj().T @ codebook
        worst = max(worst, float(np.max(np.abs(gram - n * np.eye(n)))) / n)
    return _outcome([("gram deviation", worst, 1e-10)])


@verification_check(depth="quick")
def beamformer_invariants(depth: str = "quick") -> CheckOutcome:
    """Null spaces, gain identity and direction bases hold on random draws."""
    count = 1000 if depth == "full" else 20
    worst = {"null": 0.0, "orthonormal": 0.0, "gain": 0.0, "basis": 0.0}
    for m in (2, 3, 4):
        cfg = _desk_cfg(n_rf=m)
        for index in range(count // 3 + 1):
            channels = generate_channels(cfg, trial_seed(11 + m, index))
            for bf in build_all_beamformers(cfg, channels):
                eye = np.eye(m - 1)
                worst["orthonormal"] = max(
                    worst["orthonormal"],
                    float(np.max(np.abs(bf.z_s.conj().T @ bf.z_s - eye))),
                    float(np.max(np.abs(bf.z_r.conj().T @ bf.z_r - eye))),
                )
                echo = np.linalg.norm(bf.z_s.conj().T @ bf.b_echo)
                surveillance = np.linalg.norm(bf.z_r.conj().T @ bf.q_se)
                worst["null"] = max(
                    worst["null"],
                    echo / np.linalg.norm(bf.b_echo),
                    surveillance / np.linalg.norm(bf.q_se),
                )
                gain_gap = abs(bf.g_sum - bf.g_radar - bf.g_jam) / bf.g_sum
                worst["gain"] = max(worst["gain"], gain_gap)
                rebuilt = (
                    math.sqrt(bf.g_radar) * bf.v_radar
                    + math.sqrt(bf.g_jam) * bf.v_jam
                ) / math.sqrt(bf.g_sum)
                worst["basis"] = max(
                    worst["basis"],
                    float(np.linalg.norm(bf.v_sum - rebuilt)),
                    abs(np.vdot(bf.v_radar, bf.v_jam)),
                    abs(np.vdot(bf.v_sum, bf.v_new)),
                    abs(np.linalg.norm(bf.v_new) - 1.0),
                )
    return _outcome(
        [
            ("null-space leakage", worst["null"], 1e-10),
            ("orthonormality", worst["orthonormal"], 1e-10),
            ("gain identity", worst["gain"], 1e-10),
            ("basis identities", worst["basis"], 1e-10),
        ]
    )


@verification_check(depth="quick")
def selection_bruteforce(depth: str = "quick") -> CheckOutcome:
    """Greedy jamming codeword choice equals exhaustive subset search."""
    count = 200 if depth == "full" else 25
    cfg = _desk_cfg(n_antennas=8, n_rf=3)
    grid = direction_grid(cfg)
    codebook = dft_codebook(grid, cfg)
    mismatches = 0
    for index in range(count):
        channels = generate_channels(cfg, trial_seed(23, index))
        for n in range(1, cfg.n_antennas + 1):
            u_tx = select_tx_codewords(
                codebook, channels.h_ed, n, cfg.n_rf, grid, cfg
            )
            chosen = np.linalg.norm(u_tx[:, :-1].conj().T @ channels.h_ed) ** 2
            mirror = collinear_index(grid, -grid.sin_values[n - 1], cfg)
            allowed = [k for k in range(cfg.n_antennas) if k != mirror]
            best = max(
                np.linalg.norm(codebook[:, list(s)].conj().T @ channels.h_ed) ** 2
                for s in itertools.combinations(allowed, cfg.n_rf - 1)
            )
            if chosen < best * (1 - 1e-12):
                mismatches += 1
    return _outcome([("suboptimal selections", float(mismatches), 0.0)])


def _oracle_equivalence(
    depth: str,
    coefficients: Coefficients,
    program_builder: Callable,
    tag: CaseLabel,
    sign: float,
    seed: int,
) -> CheckOutcome:
    rng = np.random.default_rng(seed)
    worst_obj = worst_var = worst_kkt = worst_floor = 0.0
    for n, m in _ORACLE_SHAPES:
        for _ in range(_instances(depth)):
            inst = synthetic_instance(rng, n, m)
            p_jam_sq, p_radar_sq = coefficients(inst)
            x_closed = np.concatenate([p_jam_sq, p_radar_sq])
            result = convex_oracle(tag, inst)
            closed_objective = sign * float(program_builder(inst).c @ x_closed)
            worst_obj = max(
                worst_obj,
                abs(closed_objective - result.objective) / abs(result.objective),
            )
            scale = max(1.0, float(np.max(np.abs(result.x))))
            worst_var = max(
                worst_var, float(np.max(np.abs(x_closed - result.x))) / scale
            )
            worst_kkt = max(worst_kkt, result.kkt_residual)
            floor_gap = np.abs(result.x[n:] - inst.c2_sq) / inst.c2_sq
            worst_floor = max(worst_floor, float(np.max(floor_gap)))
    return _outcome(
        [
            ("objective", worst_obj, 1e-5),
            ("variables", worst_var, 1e-4),
            ("kkt", worst_kkt, 1e-6),
            ("radar floor binding", worst_floor, 1e-9),
        ]
    )


@verification_check(depth="quick")
def power_min_oracle_equivalence(
    depth: str = "quick", coefficients: Coefficients = power_min_coefficients
) -> CheckOutcome:
    """Power-minimization closed form matches the projected-gradient oracle."""
    return _oracle_equivalence(
        depth, coefficients, power_min_program, CaseLabel.POWER_MIN, 1.0, 101
    )


@verification_check(depth="quick")
def jam_max_oracle_equivalence(
    depth: str = "quick", coefficients: Coefficients = jam_max_coefficients
) -> CheckOutcome:
    """Jamming-maximization closed form matches the projected-gradient oracle."""
    return _oracle_equivalence(
        depth, coefficients, jam_max_program, CaseLabel.JAM_MAX, -1.0, 202
    )


@verification_check(depth="quick")
def channel_instance_oracle_gap(depth: str = "quick") -> CheckOutcome:
    """On channel-derived gains the closed forms never beat the oracle."""
    cfg = _desk_cfg()
    count = 20 if depth == "full" else 5
    gaps = []
    violation = 0.0
    for channels, bf_all, _ in _feasible_trials(cfg, count, 31):
        inst = allocation_instance(cfg, channels, bf_all)
        try:
            closed_min = threshold_power(inst)
            p_jam_sq, p_radar_sq = jam_max_coefficients(inst)
        except AllocationInfeasibleError:
            continue
        oracle_min = convex_oracle(CaseLabel.POWER_MIN, inst).objective
        violation = max(violation, (oracle_min - closed_min) / closed_min)
        closed_jam = -float(
            jam_max_program(inst).c @ np.concatenate([p_jam_sq, p_radar_sq])
        )
        oracle_jam = convex_oracle(CaseLabel.JAM_MAX, inst).objective
        violation = max(violation, (closed_jam - oracle_jam) / oracle_jam)
        gaps.append((closed_min - oracle_min) / oracle_min)
    outcome = _outcome([("closed form beats oracle", violation, 1e-6)])
    mean_gap = float(np.mean(gaps)) if gaps else float("nan")
    outcome.detail += f"; mean power-min gap {mean_gap:.3e} over {len(gaps)} draws"
    return outcome


@verification_check(depth="quick")
def wait_interval_kkt(depth: str = "quick") -> CheckOutcome:
    """Allowing wait-interval jamming leaves it unused at the optimum."""
    rng = np.random.default_rng(303)
    worst_kkt, worst_wait, min_multiplier = 0.0, 0.0, math.inf
    for n, m in _ORACLE_SHAPES:
        for _ in range(_instances(depth)):
            solution = solve_wait_interval_oracle(synthetic_instance(rng, n, m))
            worst_kkt = max(worst_kkt, solution.kkt_residual)
            worst_wait = max(worst_wait, abs(solution.x_wait))
            min_multiplier = min(min_multiplier, solution.wait_multiplier)
    return _outcome(
        [
            ("kkt", worst_kkt, 1e-6),
            ("wait power", worst_wait, 0.0),
            ("negative wait multiplier", max(0.0, -min_multiplier), 0.0),
        ]
    )


@verification_check(depth="quick")
def threshold_identity(depth: str = "quick") -> CheckOutcome:
    """p_th equals the scan power of the power-min solution; case flips there."""
    rng = np.random.default_rng(404)
    count = 1000 if depth == "full" else 200
    worst_identity = 0.0
    for _ in range(count):
        n = int(rng.integers(4, 33))
        g_jam = rng.uniform(0.5, 3.0, n)
        g_radar = rng.uniform(0.0, 2.0, n)
        c2_sq = rng.uniform(0.05, 2.0, n)
        lam = float(rng.uniform(0.05, 0.5))
        c1 = lam * (float(np.sum(c2_sq * g_radar)) + rng.uniform(0.1, 10.0) * n)
        inst = AllocationInstance(lam, 1 - lam, g_jam, g_radar, c2_sq, c1, 1.0, 1.0)
        p_jam_sq, p_radar_sq = power_min_coefficients(inst)
        scan_power = lam * float(np.sum(p_jam_sq + p_radar_sq))
        p_th = threshold_power(inst)
        worst_identity = max(worst_identity, abs(p_th - scan_power) / scan_power)
    label_errors, worst_jump = 0.0, 0.0
    cfg = _desk_cfg()
    for channels, bf_all, _ in _feasible_trials(cfg, 10, 41):
        try:
            p_th = compute_p_th(cfg, channels, bf_all)
        except AllocationInfeasibleError:
            continue
        above = algorithm1(cfg.replace(p_max=p_th * (1 + 1e-9)), channels, bf_all)
        below = algorithm1(cfg.replace(p_max=p_th * (1 - 1e-9)), channels, bf_all)
        label_errors += above.case_label != CaseLabel.POWER_MIN
        label_errors += below.case_label != CaseLabel.JAM_MAX
        worst_jump = max(worst_jump, abs(above.p_total - below.p_total) / p_th)
    return _outcome(
        [
            ("threshold identity", worst_identity, 1e-9),
            ("case labels", float(label_errors), 0.0),
            ("p_total jump at p_th", worst_jump, 1e-6),
        ]
    )


@verification_check(depth="quick")
def binding_constraints(depth: str = "quick") -> CheckOutcome:
    """Allocations meet SINR_R = gamma_r, and SINR_D = gamma_s at power-min."""
    count = 50 if depth == "full" else 8
    worst_radar = worst_d = 0.0
    labels = set()
    for p_max_db in (0.0, 30.0):
        cfg = _desk_cfg(p_max_db=p_max_db)
        for channels, bf_all, alloc in _feasible_trials(cfg, count, 53):
            if alloc.radar_violated or alloc.gamma_s_violated:
                continue
            combiners = global_scheme_registry.build_combiners(
                "Optimal", bf_all, channels, alloc, cfg
            )
            metrics = evaluate_trial(combiners, bf_all, channels, alloc, cfg)
            radar = np.abs(np.asarray(metrics.sinr_r) / cfg.gamma_r - 1.0)
            worst_radar = max(worst_radar, float(np.max(radar)))
            labels.add(alloc.case_label)
            if alloc.case_label == CaseLabel.POWER_MIN:
                worst_d = max(worst_d, abs(metrics.sinr_d / cfg.gamma_s - 1.0))
    outcome = _outcome(
        [
            ("SINR_R / gamma_r", worst_radar, 1e-6),
            ("SINR_D / gamma_s", worst_d, 1e-6),
        ]
    )
    outcome.detail += f"; cases seen {sorted(label.value for label in labels)}"
    return outcome


@verification_check(depth="quick")
def sinr_d_two_path(depth: str = "quick") -> CheckOutcome:
    """SINR_D through the transmit vectors equals the gain-level expression."""
    cfg = _desk_cfg()
    worst = 0.0
    for channels, bf_all, alloc in _feasible_trials(cfg, 10, 61):
        direct = sinr_d(channels, bf_all, alloc, cfg)
        signal = abs(channels.h_sd) ** 2 * cfg.p_s
        via_gains = signal / (jamming_power_at_d(alloc, bf_all, cfg) + cfg.noise_rx_d)
        worst = max(worst, abs(direct - via_gains) / via_gains)
    return _outcome([("relative gap", worst, 1e-9)])


def _random_feasible_objectives(
    inst: AllocationInstance, rng: np.random.Generator, count: int
) -> Tuple[np.ndarray, np.ndarray]:
    n = inst.n_directions
    lam = inst.lambda_r
    x_radar = inst.c2_sq * (1.0 + 0.5 * rng.random((count, n)))
    weights = rng.dirichlet(np.ones(n), size=count)
    jam_target = inst.c1 / lam - x_radar @ inst.g_radar
    x_jam = weights * (jam_target[:, None] / inst.g_jam[None, :])
    powers = lam * (x_jam.sum(axis=1) + x_radar.sum(axis=1))
    powers = powers[jam_target > 0]
    budget_left = inst.p_max / lam - x_radar.sum(axis=1)
    x_jam = weights * budget_left[:, None]
    jamming = lam * (x_jam @ inst.g_jam + x_radar @ inst.g_radar)
    return powers, jamming[budget_left > 0]


@verification_check(depth="quick")
def random_allocation_optimality(depth: str = "quick") -> CheckOutcome:
    """No random feasible allocation beats the closed forms."""
    rng = np.random.default_rng(505)
    samples = 10_000 if depth == "full" else 1000
    worst_min = worst_max = 0.0
    for n, m in _ORACLE_SHAPES:
        for _ in range(_instances(depth) // 5 + 1):
            inst = synthetic_instance(rng, n, m)
            p_jam_sq, p_radar_sq = power_min_coefficients(inst)
            closed_power = inst.lambda_r * float(np.sum(p_jam_sq + p_radar_sq))
            p_jam_sq, p_radar_sq = jam_max_coefficients(inst)
            closed_jam = inst.lambda_r * float(
                p_jam_sq @ inst.g_jam + p_radar_sq @ inst.g_radar
            )
            powers, jamming = _random_feasible_objectives(inst, rng, samples)
            if powers.size:
                worst_min = max(worst_min, (closed_power - powers.min()) / closed_power)
            if jamming.size:
                worst_max = max(worst_max, (jamming.max() - closed_jam) / closed_jam)
    return _outcome(
        [
            ("power below closed form", worst_min, 1e-12),
            ("jamming above closed form", worst_max, 1e-12),
        ]
    )


def _batched_sinr_e(w, q, echo, cfg) -> np.ndarray:
    signal = np.abs(np.einsum("rnm,nm->r", w.conj(), q)) ** 2
    noise = cfg.noise_rx_monitor * np.sum(np.abs(w) ** 2, axis=(1, 2))
    noise += cfg.lambda_r * np.sum(
        np.abs(np.einsum("rnm,nm->rn", w.conj(), echo)) ** 2, axis=1
    )
    return cfg.p_s * signal / noise


def _batched_sinr_r(w, q, echo, cfg) -> np.ndarray:
    wanted = np.abs(np.einsum("rnm,nm->rn", w.conj(), echo)) ** 2
    leak = np.abs(np.einsum("rnm,nm->rn", w.conj(), q)) ** 2
    noise = cfg.noise_rx_monitor * np.sum(np.abs(w) ** 2, axis=2)
    return wanted / (noise + cfg.p_s * leak)


@verification_check(depth="quick")
def rayleigh_optimality(depth: str = "quick") -> CheckOutcome:
    """Null-space optimal combiners beat random null-space combiners."""
    cfg = _desk_cfg()
    instances, samples = (100, 10_000) if depth == "full" else (10, 1000)
    rng = np.random.default_rng(606)
    worst_e = worst_r = worst_closed = 0.0
    for channels, bf_all, alloc in _feasible_trials(cfg, instances, 67):
        combiners = global_scheme_registry.build_combiners(
            "Optimal", bf_all, channels, alloc, cfg
        )
        metrics = evaluate_trial(combiners, bf_all, channels, alloc, cfg)
        h_tilde = combiners.stacked_w_s_tilde * cfg.noise_rx_monitor
        closed = cfg.p_s * np.vdot(h_tilde, h_tilde).real / cfg.noise_rx_monitor
        worst_closed = max(worst_closed, abs(metrics.sinr_e - closed) / closed)
        q = np.stack([bf.q_se for bf in bf_all])
        echo = np.stack([bf.b_echo @ p for bf, p in zip(bf_all, alloc.p_nr)])
        z_s = np.stack([bf.z_s for bf in bf_all])
        z_r = np.stack([bf.z_r for bf in bf_all])
        shape = (samples, len(bf_all), cfg.n_rf - 1)
        reduced = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        w_s = np.einsum("nmk,rnk->rnm", z_s, reduced)
        best_e = float(_batched_sinr_e(w_s, q, echo, cfg).max())
        worst_e = max(worst_e, (best_e - metrics.sinr_e) / metrics.sinr_e)
        w_r = np.einsum("nmk,rnk->rnm", z_r, reduced)
        best_r = _batched_sinr_r(w_r, q, echo, cfg).max(axis=0)
        optimal_r = np.asarray(metrics.sinr_r)
        worst_r = max(worst_r, float(np.max((best_r - optimal_r) / optimal_r)))
    return _outcome(
        [
            ("random SINR_E above optimal", worst_e, 1e-9),
            ("random SINR_R above optimal", worst_r, 1e-9),
            ("SINR_E vs closed form", worst_closed, 1e-9),
        ]
    )


@verification_check(depth="quick")
def null_space_elimination(depth: str = "quick") -> CheckOutcome:
    """Optimal combiners cancel the echo and the suspicious signal exactly."""
    cfg = _desk_cfg()
    worst_echo = worst_signal = 0.0
    for channels, bf_all, alloc in _feasible_trials(cfg, 10, 71):
        combiners = global_scheme_registry.build_combiners(
            "Optimal", bf_all, channels, alloc, cfg
        )
        for bf, w_s, w_r, p in zip(bf_all, combiners.w_s, combiners.w_r, alloc.p_nr):
            echo = bf.b_echo @ p
            scale = np.linalg.norm(w_s) * max(np.linalg.norm(echo), 1e-300)
            worst_echo = max(worst_echo, abs(np.vdot(w_s, echo)) / scale)
            scale = np.linalg.norm(w_r) * np.linalg.norm(bf.q_se)
            if scale > 0:
                worst_signal = max(worst_signal, abs(np.vdot(w_r, bf.q_se)) / scale)
    return _outcome(
        [("echo leakage", worst_echo, 1e-8), ("signal leakage", worst_signal, 1e-8)]
    )


@verification_check(depth="quick")
def orthogonal_component_waste(depth: str = "quick") -> CheckOutcome:
    """Transmit components outside span{v_radar, v_jam} only cost power."""
    cfg = _desk_cfg(n_rf=3)
    worst_sinr, power_gain = 0.0, math.inf
    for channels, bf_all, alloc in _feasible_trials(cfg, 10, 79):
        extra = []
        for bf, p in zip(bf_all, alloc.p_nr):
            basis = np.column_stack([bf.v_radar, bf.v_jam])
            left, _, _ = np.linalg.svd(basis)
            extra.append(p + 0.1 * np.linalg.norm(p) * left[:, 2])
        perturbed = dataclasses.replace(alloc, p_nr=np.stack(extra))
        base_d = sinr_d(channels, bf_all, alloc, cfg)
        new_d = sinr_d(channels, bf_all, perturbed, cfg)
        worst_sinr = max(worst_sinr, abs(new_d - base_d) / base_d)
        radar = []
        for candidate in (alloc, perturbed):
            combiners = global_scheme_registry.build_combiners(
                "Optimal", bf_all, channels, candidate, cfg
            )
            radar.append(
                np.asarray(
                    evaluate_trial(combiners, bf_all, channels, candidate, cfg).sinr_r
                )
            )
        worst_sinr = max(worst_sinr, float(np.max(np.abs(radar[1] / radar[0] - 1))))
        power_gain = min(
            power_gain, total_power(perturbed, cfg) - total_power(alloc, cfg)
        )
    return _outcome(
        [
            ("SINR change", worst_sinr, 1e-9),
            ("power not increased", max(0.0, -power_gain), 0.0),
        ]
    )


def _probability_grid(depth: str) -> List[ProbabilityInputs]:
    rho_sd_values = (1.0, 3.0, 10.0, 30.0, 100.0)
    jam_factors = (0.5, 1.0, 2.0, 5.0, 20.0)
    m_values = (2, 3, 4, 5, 6)
    if depth != "full":
        rho_sd_values = (1.0, 10.0, 100.0)
        jam_factors = (0.5, 2.0, 20.0)
        m_values = (2, 4, 6)
    grid = [
        ProbabilityInputs(
            rho_sd=rho_sd,
            rho_se=1.0,
            rho_ed=1.0,
            sigma2=1.0,
            sigma2_tilde=2.0,
            p_s=10.0,
            gamma_s=1.0,
            m=m,
            p_j=factor * rho_sd * 2.0,
        )
        for rho_sd, factor, m in itertools.product(rho_sd_values, jam_factors, m_values)
    ]
    grid.append(
        ProbabilityInputs(
            rho_sd=10.0,
            rho_se=1.0,
            rho_ed=1.0,
            sigma2=1.0,
            sigma2_tilde=2.0,
            p_s=10.0,
            gamma_s=1.0,
            m=4,
            p_j=100.0,
        )
    )
    return grid


def _weak_jamming_grid(depth: str) -> List[ProbabilityInputs]:
    m_values = (3, 4, 6, 8) if depth == "full" else (4, 8)
    return [
        ProbabilityInputs(
            rho_sd=10.0,
            rho_se=1.0,
            rho_ed=1.0,
            sigma2=1.0,
            sigma2_tilde=2.0,
            p_s=10.0,
            gamma_s=1.0,
            m=m,
            p_j=p_j,
        )
        for m, p_j in itertools.product(m_values, (1.0, 1e-2, 1e-3, 1e-4))
    ]


@verification_check(depth="quick")
def erlang_tail_quadrature(depth: str = "quick") -> CheckOutcome:
    """Power-min success probability matches numerical integration."""
    rng = np.random.default_rng(707)
    worst = 0.0
    for _ in range(200 if depth == "full" else 40):
        inp = ProbabilityInputs(
            rho_sd=float(rng.uniform(0.5, 50)),
            rho_se=float(rng.uniform(0.1, 20)),
            rho_ed=1.0,
            sigma2=1.0,
            sigma2_tilde=float(rng.uniform(0.5, 4)),
            p_s=float(rng.uniform(0.5, 100)),
            gamma_s=float(10 ** rng.uniform(-2, 2)),
            m=int(rng.integers(2, 9)),
        )
        worst = max(
            worst, abs(success_prob_power_min(inp) - power_min_quadrature(inp))
        )
    return _outcome([("absolute deviation", worst, 1e-8)])


def coefficient_variant_verdict(
    grid: List[ProbabilityInputs], tolerance: float = 1e-6
) -> Tuple[str, dict]:
    """Name the coefficient variant whose closed form matches quadrature."""
    reference = [jam_max_quadrature(inp) for inp in grid]
    deviations = {}
    for variant in ("literal", "factorial"):
        values = [jam_max_series(inp, coefficient=variant) for inp in grid]
        gaps = np.abs(np.asarray(values) - np.asarray(reference))
        finite = np.all(np.isfinite(gaps))
        deviations[variant] = float(np.max(gaps)) if finite else math.nan
    matching = [v for v, dev in deviations.items() if dev <= tolerance]
    return (matching[0] if matching else "none"), deviations


@verification_check(depth="quick")
def jam_max_probability_quadrature(depth: str = "quick") -> CheckOutcome:
    """Jamming-case closed form matches the two-stage integral."""
    grid = _probability_grid(depth) + _weak_jamming_grid(depth)
    verdict, deviations = coefficient_variant_verdict(_probability_grid(depth))
    worst = max(
        abs(success_prob_jam_max(inp, clamp=False) - jam_max_quadrature(inp))
        for inp in grid
    )
    outcome = _outcome(
        [
            ("closed form", worst, 1e-6),
            ("factorial variant", deviations["factorial"], 1e-6),
        ]
    )
    outcome.detail += (
        f"; coefficient verdict: {verdict}"
        f" (literal deviation {deviations['literal']})"
    )
    return outcome


@verification_check(depth="quick")
def beampattern_lobes(depth: str = "quick") -> CheckOutcome:
    """Unit-coefficient beampattern shows M-1 jamming lobes and one probe lobe."""
    cfg = _desk_cfg(n_antennas=64, n_rf=4)
    grid = direction_grid(cfg)
    codebook = dft_codebook(grid, cfg)
    rng = np.random.default_rng(808)
    channels = ChannelSet(
        h_se=rng.standard_normal(64) + 1j * rng.standard_normal(64),
        h_sd=1.0 + 0.0j,
        h_ed=codebook[:, [8, 24, 40]].sum(axis=1) / 8.0,
        beta=np.full(64, cfg.beta_magnitude, dtype=complex),
    )
    bf_all = build_all_beamformers(cfg, channels)
    _, gains = beampattern(
        unit_coefficients(bf_all, cfg), bf_all, 13, settings.BEAMPATTERN_SAMPLES, cfg
    )
    lobes = dominant_lobes(gains, settings.LOBE_THRESHOLD_DB)
    return _outcome([("lobe count error", float(abs(lobes.size - cfg.n_rf)), 0.0)])


@verification_check(depth="full")
def complexity_scaling(depth: str = "full") -> CheckOutcome:
    """Pipeline time grows no faster than N^2 between N=64 and N=256."""
    timings = {}
    for n in (64, 256):
        cfg = _desk_cfg(n_antennas=n, n_rf=4)
        best = math.inf
        for repeat in range(3):
            channels = generate_channels(cfg, trial_seed(89, repeat))
            start = time.perf_counter()
            bf_all = build_all_beamformers(cfg, channels)
            try:
                algorithm1(cfg, channels, bf_all)
            except AllocationInfeasibleError:
                pass
            best = min(best, time.perf_counter() - start)
        timings[n] = best
    ratio = timings[256] / timings[64]
    return _outcome([("time ratio N=256 / N=64", ratio, 24.0)])


@verification_check(depth="quick")
def fading_model_agreement(depth: str = "quick") -> CheckOutcome:
    """Sampling the fading model lands within 3 standard errors of the closed forms."""
    n_samples = 100_000 if depth == "full" else 20_000
    base = dict(
        rho_sd=10.0,
        rho_se=1.0,
        rho_ed=1.0,
        sigma2=1.0,
        sigma2_tilde=2.0,
        p_s=10.0,
        m=3,
    )
    cases = [
        (
            "power-min",
            ProbabilityInputs(**base, gamma_s=10.0),
            success_prob_power_min,
        ),
        (
            "jam-max",
            ProbabilityInputs(**base, gamma_s=1.0, p_j=20.0),
            success_prob_jam_max,
        ),
    ]
    checks = []
    for seed, (case, inp, closed_form) in enumerate(cases, start=61):
        expected = closed_form(inp)
        sampled, _ = sample_fading_model(inp, case, n_samples, seed)
        band = 3.0 * math.sqrt(expected * (1.0 - expected) / n_samples)
        checks.append((f"{case} gap / 3 SE", abs(sampled - expected) / band, 1.0))
    return _outcome(checks)


@verification_check(depth="full")
def analytic_gap_report(depth: str = "full") -> CheckOutcome:
    """Measure the Monte Carlo vs analytic success probability gap."""
    cfg = _desk_cfg(p_max_db=30.0)
    estimate = monte_carlo_success_prob(cfg, "Optimal", 2000, settings.DEFAULT_SEED)
    inputs = probability_inputs_from_config(cfg)
    analytic = (
        success_prob_power_min(inputs)
        if estimate.case_powermin_frac >= 0.5
        else success_prob_jam_max(inputs)
    )
    gap = abs(estimate.estimate - analytic)
    return CheckOutcome(
        passed=math.isfinite(gap),
        worst_residual=gap,
        detail=(
            f"monte carlo {estimate.estimate:.4f} +- {estimate.std_error:.4f}, "
            f"analytic {analytic:.4f}, gap {gap:.4f} (reported, not bounded)"
        ),
    )
