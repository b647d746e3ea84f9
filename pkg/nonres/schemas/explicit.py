from typing import List, Optional

from pydantic import BaseModel, Field

from nonres.models.enums import FormulaVariant, InverseSquareMode


class ComplexNumber(BaseModel):
    re: float
    im: float

    @classmethod
    def of(cls, z: complex) -> "ComplexNumber":
        z = complex(z)
        return cls(re=z.real, im=z.imag)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return abs(complex(self))


class FormulaReport(BaseModel):
    """Both sides of an explicit formula; residual = prime_side - zero_side - trivial_term."""

    character: str
    variant: FormulaVariant
    x: float
    y: Optional[float] = None
    t0: Optional[float] = None
    prime_side: ComplexNumber
    zero_side: ComplexNumber
    trivial_term: ComplexNumber
    truncation_height: float
    residual: ComplexNumber
    residual_scale: float
    zero_count: int
    full_trivial: bool = True
    expected_residual_scale: Optional[float] = None
    notes: List[str] = []


class InverseSquareReport(BaseModel):
    mode: InverseSquareMode
    q: int
    t0: float
    R: float
    sum: float
    bound_form: float
    ratio: float
    zero_count: int


class DensityRectangleRow(BaseModel):
    T: int
    count: int
    ratio: float


class DensityDiscRow(BaseModel):
    r: float
    t: float
    count: int
    ratio: float


class DensityTable(BaseModel):
    character: str
    T_max: float
    rectangle_rows: List[DensityRectangleRow] = []
    disc_rows: List[DensityDiscRow] = []
    c_fit_rectangle: float
    c_fit_disc: float
    tau_convention: str = "tau = |t| + 4"


class MainTermReport(BaseModel):
    q: int
    x: float
    y: float
    t0: float
    observed: ComplexNumber
    predicted: float = Field(..., ge=0)
    relative_gap: float
    resonance_factor: float
    predicted_with_phase: float
