from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class ReceiveCombiners:
    """Digital receive combiners of one scheme over a scan period.

    ``w_s``/``w_r`` are the effective M-dimensional combiners applied after
    the analog stage, one row per direction. Null-space schemes also keep the
    reduced (M-1)-dimensional forms.
    """

    scheme: str
    w_s: np.ndarray
    w_r: np.ndarray
    w_s_tilde: Optional[np.ndarray] = None
    w_r_tilde: Optional[np.ndarray] = None

    @property
    def stacked_w_s_tilde(self) -> Optional[np.ndarray]:
        if self.w_s_tilde is None:
            return None
        return self.w_s_tilde.reshape(-1)
