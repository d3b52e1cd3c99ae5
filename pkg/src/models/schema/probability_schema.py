from typing import Optional

from pydantic import BaseModel, Field


class ProbabilityInputs(BaseModel):
    """Parameters of the analytic eavesdropping success probability."""

    rho_sd: float = Field(..., gt=0)
    rho_se: float = Field(..., gt=0)
    rho_ed: float = Field(..., gt=0)
    sigma2: float = Field(..., gt=0, description="Noise variance at D")
    sigma2_tilde: float = Field(..., gt=0, description="Noise variance at E")
    p_s: float = Field(..., gt=0)
    gamma_s: float = Field(..., gt=0)
    m: int = Field(..., ge=2, description="RF chain count M")
    p_j: float = Field(0.0, ge=0, description="Jamming power reaching D per unit gain")


class MonteCarloEstimate(BaseModel):
    scheme: str
    estimate: float = Field(..., ge=0, le=1)
    std_error: float = Field(..., ge=0)
    n_trials: int
    n_infeasible: int = 0
    n_gamma_s_violated: int = 0
    case_powermin_frac: float = 0.0
    mean_sinr_r_db: Optional[float] = None
