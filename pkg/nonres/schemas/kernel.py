import math
from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator


class KernelParams(BaseModel):
    """(x, y, t0) defining the tent weight supported on (x/y^2, x y^2)."""

    model_config = ConfigDict(frozen=True)

    x: float = Field(..., gt=0, examples=[50.0])
    y: float = Field(..., gt=1, examples=[2.193280050738015])
    t0: float = Field(..., examples=[2.0])

    @model_validator(mode="after")
    def check_finite(self) -> "KernelParams":
        if not all(math.isfinite(v) for v in (self.x, self.y, self.t0)):
            raise ValueError("kernel parameters must be finite")
        return self

    @property
    def log_y(self) -> float:
        return math.log(self.y)

    @property
    def support(self) -> tuple[float, float]:
        return self.x / self.y ** 2, self.x * self.y ** 2

    @property
    def admissible(self) -> bool:
        """Inside the range the bound argument needs: 2 <= y <= x^(1/3) and |t0| > 1."""
        return 2 <= self.y <= self.x ** (1.0 / 3.0) and abs(self.t0) > 1


class KernelCheckRow(BaseModel):
    s_re: float
    s_im: float
    x: float
    y: float
    t0: float
    closed_form_re: float
    closed_form_im: float
    quadrature_re: float
    quadrature_im: float
    relative_error: float


class KernelCheckReport(BaseModel):
    samples: int
    seed: int
    tolerance: float
    max_relative_error: float
    mean_relative_error: float
    passed: bool
    rows: List[KernelCheckRow] = []
