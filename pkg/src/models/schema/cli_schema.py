from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

Subcommand = Literal["simulate", "figure", "beampattern", "verify", "prob"]


class CliInvocation(BaseModel):
    """Validated command line of one run."""

    subcommand: Subcommand
    config_path: Optional[Path] = None
    output: Optional[Path] = None
    overrides: Dict[str, Any] = Field(default_factory=dict)
    seed: int = Field(..., ge=0)
    trials: Optional[int] = Field(None, ge=1)
    format: Literal["csv", "json"] = "csv"
    full_scale: bool = False
    schemes: List[str] = Field(default_factory=list)
    tag: Optional[str] = None
    direction: Optional[int] = Field(None, ge=1)
    samples: Optional[int] = Field(None, ge=1)
    allocated: bool = False
    depth: Literal["quick", "full"] = "quick"
    probability: Dict[str, Any] = Field(default_factory=dict)
