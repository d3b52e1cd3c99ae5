import math
from typing import Any, Dict

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from src.utils.error_handler import ConfigurationError


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    return 10.0 * math.log10(value) if value > 0 else -math.inf


class SystemConfig(BaseModel):
    """Scalar parameters of one simulated monitoring system (linear units)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_antennas: int = Field(..., gt=0, description="Antenna count N")
    n_rf: int = Field(..., ge=2, description="RF chain count M")
    noise_rx_monitor: float = Field(
        ..., gt=0, description="Noise plus clutter variance at the monitor"
    )
    noise_rx_d: float = Field(
        ..., gt=0, description="Noise variance at the suspicious receiver"
    )
    gamma_s: float = Field(..., gt=0, description="Minimum SINR_D")
    gamma_r: float = Field(
        ..., ge=0, description="Minimum SINR_R, 0 disables the radar floor"
    )
    p_s: float = Field(..., gt=0, description="Suspicious transmit power")
    p_max: float = Field(..., gt=0, description="Monitor power budget")
    lambda_r: float = Field(..., gt=0, lt=1, description="Probe time ratio")
    lambda_w: float = Field(..., gt=0, lt=1, description="Wait time ratio")
    rho_sd: float = Field(..., gt=0)
    rho_se: float = Field(..., gt=0)
    rho_ed: float = Field(..., gt=0)
    antenna_spacing_ratio: float = Field(0.5, gt=0, description="d/lambda")
    beta_magnitude: float = Field(0.1, gt=0, description="|beta_n|")

    @model_validator(mode="before")
    @classmethod
    def convert_db_inputs(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        values = dict(data)
        noise_d = float(values.get("noise_rx_d", 1.0))
        n_antennas = int(values.get("n_antennas", 1))
        scales = {
            "gamma_s": 1.0,
            "gamma_r": 1.0,
            "p_s": noise_d,
            "p_max": n_antennas * noise_d,
        }
        for name, scale in scales.items():
            key_db = f"{name}_db"
            if name in values and key_db in values:
                raise ValueError(f"both {name} and {key_db} were given")
            if key_db in values:
                values[name] = scale * db_to_linear(float(values.pop(key_db)))
        if "p_max" not in values:
            values["p_max"] = n_antennas * noise_d * db_to_linear(20.0)
        if "p_s" not in values:
            values["p_s"] = noise_d * db_to_linear(10.0)
        return values

    @field_validator("n_rf")
    @classmethod
    def rf_below_antennas(cls, value: int, info) -> int:
        n_antennas = info.data.get("n_antennas")
        if n_antennas is not None and value > n_antennas:
            raise ValueError("n_rf must not exceed n_antennas")
        return value

    @model_validator(mode="after")
    def codebook_is_orthogonal(self) -> "SystemConfig":
        # DFT columns are orthogonal iff 2 d/lambda is an integer coprime with N
        twice = 2.0 * self.antenna_spacing_ratio
        whole = round(twice)
        if abs(twice - whole) > 1e-12 or math.gcd(whole, self.n_antennas) != 1:
            raise ValueError(
                "antenna_spacing_ratio must make 2 d/lambda an integer"
                " coprime with n_antennas"
            )
        return self

    @model_validator(mode="after")
    def time_ratios_sum_to_one(self) -> "SystemConfig":
        if abs(self.lambda_r + self.lambda_w - 1.0) > 1e-12:
            raise ValueError("lambda_r + lambda_w must equal 1")
        return self

    @classmethod
    def from_inputs(cls, inputs: Dict[str, Any]) -> "SystemConfig":
        """Validate raw inputs, raising ConfigurationError on any problem."""
        try:
            return cls.model_validate(inputs)
        except ValidationError as exc:
            raise ConfigurationError(str(exc)) from exc

    @classmethod
    def from_json(cls, text: str) -> "SystemConfig":
        try:
            return cls.model_validate_json(text)
        except ValidationError as exc:
            raise ConfigurationError(str(exc)) from exc

    def replace(self, **changes: Any) -> "SystemConfig":
        """Return a validated copy with ``changes`` applied."""
        return self.from_inputs({**self.model_dump(), **changes})
