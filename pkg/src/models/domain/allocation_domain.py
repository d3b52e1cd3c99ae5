from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class CaseLabel(str, Enum):
    POWER_MIN = "PowerMin"
    JAM_MAX = "JamMax"


@dataclass(frozen=True)
class AllocationInstance:
    """Gain-level data the closed forms and the oracles operate on.

    ``c1`` is N|h_sd|^2 p_s / gamma_s - N sigma^2, ``c2_sq`` holds
    gamma_r sigma_tilde^2 / (beta_n^2 g_n) and ``monitoring_margin`` is
    |h_sd|^2 p_s - sigma^2 gamma_s.
    """

    lambda_r: float
    lambda_w: float
    g_jam: np.ndarray
    g_radar: np.ndarray
    c2_sq: np.ndarray
    c1: float
    p_max: float
    monitoring_margin: float

    @property
    def n_directions(self) -> int:
        return int(self.g_jam.shape[0])

    @property
    def g_sum(self) -> np.ndarray:
        return self.g_jam + self.g_radar


@dataclass(frozen=True)
class PowerAllocation:
    """Transmit coefficients of one scan period and the assembled vectors."""

    case_label: CaseLabel
    p_jam: np.ndarray
    p_radar: np.ndarray
    p_nr: np.ndarray
    p_nw: np.ndarray
    p_th: float
    p_total: float
    gamma_s_violated: bool = False
    radar_violated: bool = False
    notes: tuple = field(default_factory=tuple)
