"""Sweep presets for each figure of the simulation study."""

from typing import Any, Callable, Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel

from src.config.settings import settings
from src.config.system_defaults import DESK_OVERRIDES, FULL_DEFAULTS
from src.models.schema.sweep_schema import BeampatternRequest, SweepSpec

PresetResult = Union[SweepSpec, BeampatternRequest]


class Preset(BaseModel):
    tag: str
    description: str
    builder: Callable[..., PresetResult]


class PresetRegistry:
    def __init__(self):
        self._presets: Dict[str, Preset] = {}

    def register(self, preset: Preset) -> None:
        self._presets[preset.tag] = preset

    def get(self, tag: str) -> Optional[Preset]:
        return self._presets.get(tag)

    def tags(self) -> List[str]:
        return sorted(self._presets)

    def build(
        self,
        tag: str,
        n_trials: Optional[int] = None,
        master_seed: Optional[int] = None,
        overrides: Optional[Dict[str, Any]] = None,
        full_scale: bool = False,
    ) -> PresetResult:
        """Instantiate a preset with caller-provided trials, seed and overrides.

        Raises:
            ValueError: If no preset carries ``tag``.
        """
        preset = self.get(tag)
        if preset is None:
            raise ValueError(f"unknown figure tag '{tag}' (known: {self.tags()})")
        return preset.builder(
            n_trials=n_trials or settings.DESK_TRIALS,
            master_seed=settings.DEFAULT_SEED if master_seed is None else master_seed,
            overrides=dict(overrides or {}),
            full_scale=full_scale,
        )


global_preset_registry = PresetRegistry()


def figure_preset(tag: str):
    """Register a preset builder; its docstring's first line describes it."""

    def decorator(func: Callable[..., PresetResult]) -> Callable[..., PresetResult]:
        doc = (func.__doc__ or "").strip().splitlines()
        global_preset_registry.register(
            Preset(tag=tag, description=doc[0] if doc else "", builder=func)
        )
        return func

    return decorator


def _scale(overrides: Dict[str, Any], full_scale: bool) -> Dict[str, Any]:
    layered = {} if full_scale else dict(DESK_OVERRIDES)
    layered.update(overrides)
    return layered


def _grid(start: float, stop: float, step: float) -> List[float]:
    return [float(v) for v in np.arange(start, stop + step / 2, step)]


@figure_preset("fig4")
def beampattern_preset(n_trials, master_seed, overrides, full_scale):
    """Transmit beampattern of one probe direction at N=128, M=4."""
    n_antennas = int(overrides.get("n_antennas", FULL_DEFAULTS["n_antennas"]))
    return BeampatternRequest(
        direction=n_antennas // 2 + 1 + n_antennas // 8,
        samples=settings.BEAMPATTERN_SAMPLES,
        seed=master_seed,
        overrides=dict(overrides),
    )


@figure_preset("fig5")
def case_switch_preset(n_trials, master_seed, overrides, full_scale):
    """Forced power minimization vs forced jamming maximization vs p_max."""
    return SweepSpec(
        figure_tag="fig5",
        param_name="p_max_db",
        values=_grid(0.0, 35.0, 5.0),
        schemes=["ForcedPowerMin", "ForcedJamMax", "Optimal"],
        n_trials=n_trials,
        master_seed=master_seed,
        overrides=_scale(overrides, full_scale),
    )


@figure_preset("fig6")
def budget_preset(n_trials, master_seed, overrides, full_scale):
    """Optimal vs surveillance-centric vs MRC combining across p_max."""
    return SweepSpec(
        figure_tag="fig6",
        param_name="p_max_db",
        values=_grid(-10.0, 30.0, 5.0),
        schemes=["Optimal", "SurveillanceCentric", "MRC"],
        n_trials=n_trials,
        master_seed=master_seed,
        overrides=_scale(overrides, full_scale),
    )


@figure_preset("fig7")
def target_sinr_preset(n_trials, master_seed, overrides, full_scale):
    """Success probability against the SINR target gamma_s of D."""
    return SweepSpec(
        figure_tag="fig7",
        param_name="gamma_s_db",
        values=[-20.0, -10.0, 0.0, 10.0, 20.0, 30.0],
        schemes=["Optimal", "SurveillanceCentric", "MRC"],
        n_trials=n_trials,
        master_seed=master_seed,
        overrides=_scale(overrides, full_scale),
    )


@figure_preset("fig8")
def channel_ratio_preset(n_trials, master_seed, overrides, full_scale):
    """Success probability against rho_sd / rho_se."""
    return SweepSpec(
        figure_tag="fig8",
        param_name="rho_ratio_db",
        values=_grid(0.0, 30.0, 5.0),
        schemes=["Optimal"],
        n_trials=n_trials,
        master_seed=master_seed,
        overrides=_scale(overrides, full_scale),
    )


@figure_preset("fig9")
def radar_floor_preset(n_trials, master_seed, overrides, full_scale):
    """Success probability and radar SINR against the radar target gamma_r."""
    return SweepSpec(
        figure_tag="fig9",
        param_name="gamma_r_db",
        values=_grid(0.0, 70.0, 10.0),
        schemes=["Optimal"],
        n_trials=n_trials,
        master_seed=master_seed,
        overrides=_scale(overrides, full_scale),
    )
