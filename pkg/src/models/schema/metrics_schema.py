from typing import List, Optional

from pydantic import BaseModel, Field, model_validator


class TrialMetrics(BaseModel):
    sinr_e: float = Field(..., ge=0, description="SINR at the monitor")
    sinr_d: float = Field(..., ge=0, description="SINR at the suspicious receiver")
    sinr_r: List[float] = Field(..., description="Radar SINR per direction")
    p_total: float = Field(..., ge=0, description="Scan-period transmit power")
    success: int = Field(..., description="1 when sinr_e >= sinr_d")
    gamma_s_violated: bool = False
    radar_violated: bool = False
    case_label: Optional[str] = None

    @model_validator(mode="after")
    def indicator_matches(self) -> "TrialMetrics":
        if self.success != int(self.sinr_e >= self.sinr_d):
            raise ValueError("success indicator disagrees with the SINRs")
        return self
