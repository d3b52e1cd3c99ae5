from typing import Callable, Literal

from pydantic import BaseModel, Field

AllocationPolicy = Literal["algorithm1", "power_min", "jam_max"]


class Scheme(BaseModel):
    name: str = Field(..., description="Scheme name used in result tables")
    description: str = Field(..., description="One-line summary")
    combiner: Callable = Field(
        ..., description="Builds ReceiveCombiners from an allocated trial"
    )
    allocation: AllocationPolicy = Field(
        "algorithm1", description="Transmit allocation policy"
    )
