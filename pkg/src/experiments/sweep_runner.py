"""Concurrent execution of Monte Carlo sweeps and beampattern requests."""

import asyncio
import math
import os
from typing import Any, Dict, List, Optional

import numpy as np

from src.allocation.power_allocation import allocate, unit_coefficients
from src.analysis.monte_carlo import monte_carlo_estimates
from src.beamforming.beam_select import build_all_beamformers
from src.channel.channel_generator import generate_channels
from src.config.settings import settings
from src.config.system_defaults import FULL_DEFAULTS
from src.metrics.beampattern import beampattern, dominant_lobes
from src.models.schema.config_schema import SystemConfig, db_to_linear
from src.models.schema.probability_schema import MonteCarloEstimate
from src.models.schema.sweep_schema import (
    BeampatternRequest,
    BeampatternRow,
    BeampatternTable,
    ResultRow,
    ResultTable,
    SweepSpec,
)
from src.utils.config_loader import build_config, merge_inputs
from src.utils.logger import get_logger
from src.utils.result_writer import version_string

logger = get_logger(__name__)


def point_inputs(
    base: Dict[str, Any], param_name: str, value_db: float
) -> Dict[str, Any]:
    """Raw config inputs of one sweep point."""
    if param_name == "rho_ratio_db":
        rho_se = float(base.get("rho_se", FULL_DEFAULTS["rho_se"]))
        return merge_inputs(base, {"rho_sd": rho_se * db_to_linear(value_db)})
    return merge_inputs(base, {param_name: value_db})


def _value_db(spec: SweepSpec, value: float) -> float:
    return 10.0 * math.log10(value) if spec.value_unit == "linear" else value


def _row(
    spec: SweepSpec, value_db: float, estimate: MonteCarloEstimate
) -> ResultRow:
    return ResultRow(
        figure_tag=spec.figure_tag,
        scheme=estimate.scheme,
        param_name=spec.param_name,
        param_value_linear=db_to_linear(value_db),
        param_value_db=value_db,
        success_prob=estimate.estimate,
        std_err=estimate.std_error,
        case_powermin_frac=estimate.case_powermin_frac,
        infeasible_frac=estimate.n_infeasible / estimate.n_trials,
        mean_sinr_r_db=estimate.mean_sinr_r_db,
        n_trials=estimate.n_trials,
        n_infeasible=estimate.n_infeasible,
        n_gamma_s_violated=estimate.n_gamma_s_violated,
    )


class SweepRunner:
    """Runs sweep points on worker threads and reduces them in sweep order.

    Every point reuses the same master seed, so all points and schemes see
    the same channel draws.
    """

    def __init__(self, threads: Optional[int] = None):
        threads = settings.SIM_THREADS if threads is None else threads
        self.threads = threads if threads > 0 else (os.cpu_count() or 1)
        self.point_results: Dict[int, List[ResultRow]] = {}

    def _run_point(self, spec: SweepSpec, index: int) -> List[ResultRow]:
        value_db = _value_db(spec, spec.values[index])
        inputs = merge_inputs(FULL_DEFAULTS, spec.overrides)
        cfg = build_config(point_inputs(inputs, spec.param_name, value_db))
        estimates = monte_carlo_estimates(
            cfg, spec.schemes, spec.n_trials, spec.master_seed
        )
        logger.info(
            "%s %s=%g: %s",
            spec.figure_tag,
            spec.param_name,
            value_db,
            ", ".join(f"{k}={v.estimate:.4f}" for k, v in estimates.items()),
        )
        return [_row(spec, value_db, estimates[name]) for name in spec.schemes]

    async def execute_point(
        self, spec: SweepSpec, index: int, semaphore: asyncio.Semaphore
    ) -> None:
        async with semaphore:
            rows = await asyncio.to_thread(self._run_point, spec, index)
        self.point_results[index] = rows

    async def run(self, spec: SweepSpec) -> ResultTable:
        """Execute every point of ``spec`` and assemble the result table.

        Raises:
            ConfigurationError: a sweep point produced an invalid config.
        """
        self.point_results = {}
        # Validate the base config before spawning any work.
        base_cfg = build_config(merge_inputs(FULL_DEFAULTS, spec.overrides))
        semaphore = asyncio.Semaphore(self.threads)
        await asyncio.gather(
            *[
                self.execute_point(spec, index, semaphore)
                for index in range(len(spec.values))
            ]
        )
        rows = [
            row
            for index in range(len(spec.values))
            for row in self.point_results[index]
        ]
        return ResultTable(
            figure_tag=spec.figure_tag,
            version=version_string(),
            spec=spec,
            config=base_cfg.model_dump(),
            rows=rows,
        )


def run_sweep(spec: SweepSpec, threads: Optional[int] = None) -> ResultTable:
    return asyncio.run(SweepRunner(threads).run(spec))


def run_beampattern(
    cfg: SystemConfig,
    seed: int,
    n: int,
    samples: int,
    allocated: bool = False,
    figure_tag: str = "fig4",
) -> BeampatternTable:
    """Beampattern of direction ``n`` after the full pipeline on one draw.

    By default the probe vector uses unit jamming and radar coefficients,
    which is the pattern before power allocation; ``allocated`` switches to
    the dispatched allocation.
    """
    if not 1 <= n <= cfg.n_antennas:
        raise IndexError(f"direction {n} outside 1..{cfg.n_antennas}")
    channels = generate_channels(cfg, seed)
    bf_all = build_all_beamformers(cfg, channels)
    if allocated:
        alloc = allocate("algorithm1", cfg, channels, bf_all)
    else:
        alloc = unit_coefficients(bf_all, cfg)
    sin_theta, gains = beampattern(alloc, bf_all, n, samples, cfg)
    gains_db = 10.0 * np.log10(np.maximum(gains, 1e-300))
    lobes = dominant_lobes(gains, settings.LOBE_THRESHOLD_DB)
    return BeampatternTable(
        figure_tag=figure_tag,
        version=version_string(),
        direction=n,
        allocated=allocated,
        lobe_count=int(lobes.size),
        config=cfg.model_dump(),
        rows=[
            BeampatternRow(sin_theta=float(s), gain_db=float(g))
            for s, g in zip(sin_theta, gains_db)
        ],
    )


def run_beampattern_request(
    request: BeampatternRequest, base_inputs: Dict[str, Any]
) -> BeampatternTable:
    cfg = build_config(merge_inputs(base_inputs, request.overrides))
    return run_beampattern(
        cfg, request.seed, request.direction, request.samples, request.allocated
    )
