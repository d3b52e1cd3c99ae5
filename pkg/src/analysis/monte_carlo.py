"""Empirical success probabilities and the analytic-parameter bridge."""

import math
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from src.channel.channel_generator import trial_seed
from src.config.settings import settings
from src.experiments.pipeline import TrialOutcome, run_trial
from src.models.schema.config_schema import SystemConfig
from src.models.schema.probability_schema import MonteCarloEstimate, ProbabilityInputs


def probability_inputs_from_config(
    cfg: SystemConfig, p_j: Optional[float] = None
) -> ProbabilityInputs:
    """Map a system configuration onto the analytic formula parameters.

    The monitor combines the suspicious signal over all N directions, so the
    effective surveillance channel strength is N rho_se. The jamming power
    reaching D is weighted by the probe time share, and when ``p_j`` is not
    given it is the per-direction jamming-maximization power at the nominal
    radar floor gamma_r sigma_tilde^2 / (|beta|^2 N^4).
    """
    n = cfg.n_antennas
    if p_j is None:
        c2_sq = cfg.gamma_r * cfg.noise_rx_monitor / (cfg.beta_magnitude**2 * n**4)
        p_jam_sq = max(cfg.p_max / (n * cfg.lambda_r) - c2_sq, 0.0)
        p_j = cfg.lambda_r * p_jam_sq
    return ProbabilityInputs(
        rho_sd=cfg.rho_sd,
        rho_se=n * cfg.rho_se,
        rho_ed=cfg.rho_ed,
        sigma2=cfg.noise_rx_d,
        sigma2_tilde=cfg.noise_rx_monitor,
        p_s=cfg.p_s,
        gamma_s=cfg.gamma_s,
        m=cfg.n_rf,
        p_j=p_j,
    )


def sample_fading_model(
    inp: ProbabilityInputs,
    case: Literal["power-min", "jam-max"],
    n_samples: int,
    seed: int,
) -> Tuple[float, float]:
    """Estimate a success probability by drawing the fading model directly.

    The surveillance gain is Gamma(M-1, rho_se). Power-min holds SINR_D at
    gamma_s; jam-max draws |h_sd|^2 ~ Exp(rho_sd) and a Gamma(M-1, rho_ed)
    jamming gain scaled by ``p_j``. Returns the estimate and its standard
    error.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    rng = np.random.Generator(np.random.Philox(key=int(seed) % 2**64))
    shape = inp.m - 1
    sinr_e = inp.p_s * rng.gamma(shape, inp.rho_se, n_samples) / inp.sigma2_tilde
    if case == "power-min":
        sinr_d = np.full(n_samples, inp.gamma_s)
    else:
        signal = inp.p_s * rng.exponential(inp.rho_sd, n_samples)
        jamming = inp.p_j * rng.gamma(shape, inp.rho_ed, n_samples)
        sinr_d = signal / (jamming + inp.sigma2)
    estimate = float(np.mean(sinr_e >= sinr_d))
    return estimate, math.sqrt(estimate * (1.0 - estimate) / n_samples)


def summarize_outcomes(
    scheme: str, outcomes: Sequence[TrialOutcome]
) -> MonteCarloEstimate:
    """Reduce per-trial outcomes of one scheme, in trial order."""
    n_trials = len(outcomes)
    if n_trials == 0:
        raise ValueError("no trials to summarize")
    successes = sum(outcome.success for outcome in outcomes)
    estimate = successes / n_trials
    evaluated = [o.metrics for o in outcomes if o.metrics is not None]
    power_min = sum(1 for m in evaluated if m.case_label == "PowerMin")
    radar = [value for m in evaluated for value in m.sinr_r]
    mean_radar = float(np.mean(radar)) if radar else 0.0
    return MonteCarloEstimate(
        scheme=scheme,
        estimate=estimate,
        std_error=math.sqrt(estimate * (1.0 - estimate) / n_trials),
        n_trials=n_trials,
        n_infeasible=sum(1 for o in outcomes if o.infeasible),
        n_gamma_s_violated=sum(1 for m in evaluated if m.gamma_s_violated),
        case_powermin_frac=power_min / n_trials,
        mean_sinr_r_db=10.0 * math.log10(mean_radar) if mean_radar > 0 else None,
    )


def monte_carlo_estimates(
    cfg: SystemConfig,
    schemes: Iterable[str],
    n_trials: int,
    master_seed: int,
    progress: Optional[bool] = None,
) -> Dict[str, MonteCarloEstimate]:
    """Success probability of several schemes on common channel draws."""
    if n_trials < 1:
        raise ValueError("n_trials must be at least 1")
    schemes = list(schemes)
    show = settings.SHOW_PROGRESS if progress is None else progress
    per_scheme: Dict[str, List[TrialOutcome]] = {name: [] for name in schemes}
    for index in tqdm(range(n_trials), disable=not show, desc="trials"):
        outcomes = run_trial(cfg, schemes, trial_seed(master_seed, index))
        for name in schemes:
            per_scheme[name].append(outcomes[name])
    return {name: summarize_outcomes(name, per_scheme[name]) for name in schemes}


def monte_carlo_success_prob(
    cfg: SystemConfig, scheme: str, n_trials: int, master_seed: int
) -> MonteCarloEstimate:
    return monte_carlo_estimates(cfg, [scheme], n_trials, master_seed)[scheme]
