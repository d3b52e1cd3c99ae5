from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DirectionGrid:
    """Scan directions of the phased array, ordered by increasing sin(theta)."""

    angles: np.ndarray
    sin_values: np.ndarray

    @property
    def size(self) -> int:
        return int(self.sin_values.shape[0])


@dataclass(frozen=True)
class ChannelSet:
    """One realization of the surveillance, suspicious and jamming channels."""

    h_se: np.ndarray
    h_sd: complex
    h_ed: np.ndarray
    beta: np.ndarray

    def __post_init__(self) -> None:
        n = self.h_se.shape[0]
        if self.h_ed.shape != (n,) or self.beta.shape != (n,):
            raise ValueError("channel vectors must share length N")
        arrays = (self.h_se, self.h_ed, self.beta, np.asarray(self.h_sd))
        if not all(np.all(np.isfinite(a)) for a in arrays):
            raise ValueError("channel entries must be finite")
        if np.any(np.abs(self.beta) == 0):
            raise ValueError("every beta_n must be nonzero")

    def replace(self, **changes) -> "ChannelSet":
        fields = {
            "h_se": self.h_se,
            "h_sd": self.h_sd,
            "h_ed": self.h_ed,
            "beta": self.beta,
        }
        fields.update(changes)
        return ChannelSet(**fields)
