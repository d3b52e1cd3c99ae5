from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

FigureTag = Literal["fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "simulate"]
SchemeName = Literal[
    "Optimal", "MRC", "SurveillanceCentric", "ForcedPowerMin", "ForcedJamMax"
]
SweptParameter = Literal["p_max_db", "gamma_s_db", "rho_ratio_db", "gamma_r_db"]

CSV_COLUMNS = (
    "figure_tag",
    "scheme",
    "param_name",
    "param_value_linear",
    "param_value_db",
    "success_prob",
    "std_err",
    "case_powermin_frac",
    "infeasible_frac",
    "mean_sinr_r_db",
)


class SweepSpec(BaseModel):
    """One Monte Carlo sweep over a single parameter."""

    figure_tag: FigureTag
    param_name: SweptParameter
    values: List[float] = Field(..., min_length=1)
    value_unit: Literal["db", "linear"] = "db"
    schemes: List[SchemeName] = Field(..., min_length=1)
    n_trials: int = Field(..., ge=1)
    master_seed: int = Field(..., ge=0)
    overrides: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("values")
    @classmethod
    def values_sorted(cls, values: List[float]) -> List[float]:
        if any(b < a for a, b in zip(values, values[1:])):
            raise ValueError("swept values must be sorted ascending")
        return values

    @model_validator(mode="after")
    def linear_values_positive(self) -> "SweepSpec":
        if self.value_unit == "linear" and min(self.values) <= 0:
            raise ValueError("linear swept values must be positive")
        return self


class ResultRow(BaseModel):
    figure_tag: str
    scheme: str
    param_name: str
    param_value_linear: float
    param_value_db: float
    success_prob: float
    std_err: float
    case_powermin_frac: float
    infeasible_frac: float
    mean_sinr_r_db: Optional[float] = None
    n_trials: int
    n_infeasible: int = 0
    n_gamma_s_violated: int = 0


class ResultTable(BaseModel):
    figure_tag: str
    version: str
    spec: SweepSpec
    config: Dict[str, Any]
    rows: List[ResultRow]


class BeampatternRequest(BaseModel):
    figure_tag: Literal["fig4"] = "fig4"
    direction: int = Field(..., ge=1, description="1-based probe direction")
    samples: int = Field(..., ge=1)
    seed: int = Field(..., ge=0)
    allocated: bool = False
    overrides: Dict[str, Any] = Field(default_factory=dict)


class BeampatternRow(BaseModel):
    sin_theta: float
    gain_db: float


class BeampatternTable(BaseModel):
    figure_tag: str
    version: str
    direction: int
    allocated: bool
    lobe_count: int
    config: Dict[str, Any]
    rows: List[BeampatternRow]
