import math
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from nonres.models.enums import AuditMode, HypothesisStatus


class AuditConfig(BaseModel):
    """Bound audit parameters; C, K1, K2 are free calibration constants."""

    mode: AuditMode = AuditMode.THEOREM_1_3
    delta: float = Field(..., gt=0, le=0.5)
    t0: float = 2.0
    C: float = Field(1.0, gt=0)
    K1: float = Field(1.0, gt=0)
    K2: float = Field(1.0, gt=0)
    theta: float = Field(0.1, gt=0, lt=1)

    @model_validator(mode="after")
    def check_t0(self) -> "AuditConfig":
        if self.mode != AuditMode.THEOREM_1_2 and abs(self.t0) <= 1:
            raise ValueError(f"|t0| must exceed 1 for {self.mode.value} (got {self.t0})")
        return self


class AuditResult(BaseModel):
    character: str
    hypothesis_status: HypothesisStatus
    checked_height: float
    log_x: float
    bound_value_log: float
    observed_n_chi: int = Field(..., ge=1)
    passes: Optional[bool] = None
    log_K: Optional[float] = None
    resonance_inequality: Optional[bool] = None
    remainder_log: Optional[float] = None
    remainder_dominated: Optional[bool] = None
    warnings: List[str] = []

    @model_validator(mode="after")
    def check_passes(self) -> "AuditResult":
        if self.hypothesis_status == HypothesisStatus.VIOLATED and self.passes is not None:
            raise ValueError("passes is undefined when the hypothesis is violated")
        if self.hypothesis_status == HypothesisStatus.VERIFIED_TO_HEIGHT:
            expected = math.log(self.observed_n_chi) < self.bound_value_log
            if self.passes != expected:
                raise ValueError("passes must equal log n(chi) < bound_value_log")
        return self
