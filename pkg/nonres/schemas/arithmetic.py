from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class ArithTables(BaseModel):
    """Sieve output. Every array is indexed directly by n, so has length limit + 1."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    limit: int = Field(..., ge=1)
    smallest_prime_factor: np.ndarray  # 0 at n = 0, 1
    von_mangoldt: np.ndarray  # natural-log units
    omega: np.ndarray

    @model_validator(mode="after")
    def check_shapes(self) -> "ArithTables":
        for name in ("smallest_prime_factor", "von_mangoldt", "omega"):
            if getattr(self, name).shape != (self.limit + 1,):
                raise ValueError(f"{name} must have length limit + 1 = {self.limit + 1}")
        return self

    @property
    def prime_powers(self) -> np.ndarray:
        """All n <= limit with von_mangoldt[n] > 0, ascending."""
        return np.nonzero(self.von_mangoldt > 0)[0]


class PrincipalDecomposition(BaseModel):
    q: int
    x: float
    full_sum: float
    restricted_sum: float
    discrepancy: float
    ratio: Optional[float] = None  # discrepancy / (x log x log q); None when that scale vanishes
