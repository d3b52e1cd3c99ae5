"""Command-line surface: argument parsing and subcommand dispatch."""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ValidationError

import src.beamforming.schemes  # noqa: F401  registers the receive schemes
from src.analysis.success_probability import (
    success_prob_jam_max,
    success_prob_power_min,
)
from src.beamforming.scheme_registry import global_scheme_registry
from src.config.settings import settings
from src.config.system_defaults import FULL_DEFAULTS
from src.experiments.presets import global_preset_registry
from src.experiments.sweep_runner import (
    run_beampattern,
    run_beampattern_request,
    run_sweep,
)
from src.experiments.verification.suite import run_verification_suite
from src.models.schema.cli_schema import CliInvocation
from src.models.schema.config_schema import db_to_linear, linear_to_db
from src.models.schema.probability_schema import ProbabilityInputs
from src.models.schema.sweep_schema import BeampatternRequest, SweepSpec
from src.utils.config_loader import (
    build_config,
    effective_inputs,
    load_config_file,
    merge_inputs,
    parse_overrides,
)
from src.utils.error_handler import ConfigurationError, SimulationError
from src.utils.logger import get_logger
from src.utils.result_writer import render, write_output
from src.utils.session_context import run_state

logger = get_logger(__name__)

DEFAULT_SCHEMES = ["Optimal", "SurveillanceCentric", "MRC"]


class ProbabilityResult(BaseModel):
    case: str
    coefficient: str
    probability: float
    inputs: ProbabilityInputs


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="JSON file of config inputs")
    parser.add_argument("--output", type=Path, help="file to write besides stdout")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="config override; gamma_s, gamma_r, p_s, p_max need _db or _lin",
    )
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument(
        "--full-scale",
        action="store_true",
        help="keep N=128, M=4 instead of the desk-scale array",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isac-eavesdrop",
        description="Radar-assisted proactive eavesdropping simulator",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    simulate = sub.add_parser("simulate", help="Monte Carlo at one config")
    _common(simulate)
    simulate.add_argument(
        "--schemes", nargs="+", default=DEFAULT_SCHEMES, metavar="SCHEME"
    )

    figure = sub.add_parser("figure", help="run a figure preset")
    _common(figure)
    figure.add_argument("--tag", required=True, choices=global_preset_registry.tags())

    pattern = sub.add_parser("beampattern", help="transmit beampattern")
    _common(pattern)
    pattern.add_argument("--direction", type=int, default=None)
    pattern.add_argument("--samples", type=int, default=None)
    pattern.add_argument(
        "--allocated",
        action="store_true",
        help="use allocated coefficients instead of unit ones",
    )

    verify = sub.add_parser("verify", help="run the verification suite")
    _common(verify)
    verify.add_argument("--depth", choices=["quick", "full"], default="quick")

    prob = sub.add_parser("prob", help="analytic success probability")
    _common(prob)
    prob.add_argument("--case", choices=["power-min", "jam-max"], required=True)
    prob.add_argument("--m", type=int, required=True)
    prob.add_argument("--rho-sd", type=float, default=FULL_DEFAULTS["rho_sd"])
    prob.add_argument("--rho-se", type=float, default=FULL_DEFAULTS["rho_se"])
    prob.add_argument("--rho-ed", type=float, default=FULL_DEFAULTS["rho_ed"])
    prob.add_argument("--sigma2", type=float, default=FULL_DEFAULTS["noise_rx_d"])
    prob.add_argument(
        "--sigma2-tilde", type=float, default=FULL_DEFAULTS["noise_rx_monitor"]
    )
    prob.add_argument("--p-s", type=float, default=10.0, help="linear p_s")
    gamma = prob.add_mutually_exclusive_group()
    gamma.add_argument("--gamma-s-db", type=float, default=None)
    gamma.add_argument("--gamma-s-lin", type=float, default=None)
    prob.add_argument("--p-j", type=float, default=0.0, help="jamming power P_J")
    prob.add_argument(
        "--coefficient", choices=["factorial", "literal"], default="factorial"
    )
    return parser


def parse_invocation(
    parser: argparse.ArgumentParser, argv: Optional[List[str]]
) -> CliInvocation:
    """Parse ``argv``; invalid values end in a usage error (exit 2)."""
    args = parser.parse_args(argv)
    try:
        overrides = parse_overrides(args.overrides)
        probability = {}
        if args.subcommand == "prob":
            gamma_s = (
                args.gamma_s_lin
                if args.gamma_s_lin is not None
                else db_to_linear(args.gamma_s_db or 0.0)
            )
            probability = ProbabilityInputs(
                rho_sd=args.rho_sd,
                rho_se=args.rho_se,
                rho_ed=args.rho_ed,
                sigma2=args.sigma2,
                sigma2_tilde=args.sigma2_tilde,
                p_s=args.p_s,
                gamma_s=gamma_s,
                m=args.m,
                p_j=args.p_j,
            ).model_dump()
            probability.update(case=args.case, coefficient=args.coefficient)
        return CliInvocation(
            subcommand=args.subcommand,
            config_path=args.config,
            output=args.output,
            overrides=overrides,
            seed=args.seed,
            trials=args.trials,
            format=args.format,
            full_scale=args.full_scale,
            schemes=getattr(args, "schemes", []),
            tag=getattr(args, "tag", None),
            direction=getattr(args, "direction", None),
            samples=getattr(args, "samples", None),
            allocated=getattr(args, "allocated", False),
            depth=getattr(args, "depth", "quick"),
            probability=probability,
        )
    except (ConfigurationError, ValidationError) as exc:
        parser.error(str(exc))


def _file_layer(invocation: CliInvocation) -> dict:
    layer = {}
    if invocation.config_path is not None:
        layer = load_config_file(invocation.config_path)
    return merge_inputs(layer, invocation.overrides)


def _simulate(invocation: CliInvocation) -> BaseModel:
    for name in invocation.schemes:
        global_scheme_registry.require(name)
    inputs = effective_inputs(
        invocation.config_path, invocation.overrides, invocation.full_scale
    )
    cfg = build_config(inputs)
    budget_db = linear_to_db(cfg.p_max / (cfg.n_antennas * cfg.noise_rx_d))
    spec = SweepSpec(
        figure_tag="simulate",
        param_name="p_max_db",
        values=[budget_db],
        schemes=invocation.schemes,
        n_trials=invocation.trials or settings.DESK_TRIALS,
        master_seed=invocation.seed,
        overrides=inputs,
    )
    return run_sweep(spec)


def _figure(invocation: CliInvocation) -> BaseModel:
    preset = global_preset_registry.build(
        invocation.tag,
        n_trials=invocation.trials,
        master_seed=invocation.seed,
        overrides=_file_layer(invocation),
        full_scale=invocation.full_scale,
    )
    if isinstance(preset, BeampatternRequest):
        return run_beampattern_request(preset, FULL_DEFAULTS)
    return run_sweep(preset)


def _beampattern(invocation: CliInvocation) -> BaseModel:
    cfg = build_config(
        effective_inputs(
            invocation.config_path, invocation.overrides, invocation.full_scale
        )
    )
    n = cfg.n_antennas
    direction = invocation.direction
    if direction is None:
        direction = n // 2 + 1 + n // 8
    elif not 1 <= direction <= n:
        raise ConfigurationError(f"--direction {direction} outside 1..{n}")
    return run_beampattern(
        cfg,
        invocation.seed,
        direction,
        invocation.samples or settings.BEAMPATTERN_SAMPLES,
        allocated=invocation.allocated,
        figure_tag="beampattern",
    )


def _prob(invocation: CliInvocation) -> BaseModel:
    params = dict(invocation.probability)
    case = params.pop("case")
    coefficient = params.pop("coefficient")
    inputs = ProbabilityInputs(**params)
    if case == "power-min":
        probability = success_prob_power_min(inputs)
    else:
        probability = success_prob_jam_max(inputs, coefficient=coefficient)
    return ProbabilityResult(
        case=case, coefficient=coefficient, probability=probability, inputs=inputs
    )


HANDLERS = {
    "simulate": _simulate,
    "figure": _figure,
    "beampattern": _beampattern,
    "prob": _prob,
}


def dispatch(invocation: CliInvocation) -> int:
    """Run one invocation and return the process status."""
    run_state.set(f"{invocation.subcommand}:{invocation.seed}")
    try:
        if invocation.subcommand == "verify":
            report = run_verification_suite(invocation.depth)
            status = 0 if report.passed else 1
            for failure in report.failures:
                logger.error("check %s failed: %s", failure.name, failure.detail)
            result = report
        else:
            result = HANDLERS[invocation.subcommand](invocation)
            status = 0
        text = render(result, invocation.format)
        write_output(text, invocation.output)
        sys.stdout.write(text)
        return status
    except (SimulationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    return dispatch(parse_invocation(parser, argv))
