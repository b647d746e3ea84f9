from fractions import Fraction
from math import gcd
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer, model_validator


class CharacterLabel(BaseModel):
    """Conrey label q.index of a Dirichlet character."""

    model_config = ConfigDict(frozen=True)

    modulus: int = Field(..., ge=1, examples=[7])
    index: int = Field(..., ge=1, examples=[6])

    @model_validator(mode="after")
    def check_index(self) -> "CharacterLabel":
        if gcd(self.index, self.modulus) != 1:
            raise ValueError(f"index {self.index} is not coprime to modulus {self.modulus}")
        if self.index >= self.modulus and not (self.modulus == 1 and self.index == 1):
            raise ValueError(f"index {self.index} must be smaller than modulus {self.modulus}")
        return self

    @classmethod
    def parse(cls, text: str) -> "CharacterLabel":
        parts = str(text).strip().split(".")
        if len(parts) != 2 or not all(part.isdigit() for part in parts):
            raise ValueError(f"malformed character label '{text}', expected 'q.index'")
        return cls(modulus=int(parts[0]), index=int(parts[1]))

    @property
    def is_principal(self) -> bool:
        return self.index == 1

    def sort_key(self) -> tuple[int, int]:
        return (self.modulus, self.index)

    def __str__(self) -> str:
        return f"{self.modulus}.{self.index}"


class UnitComplexValue(BaseModel):
    """A character value: zero or a root of unity, with its exact turn when nonzero."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    re: float
    im: float
    turn: Optional[Fraction] = None  # value = exp(2*pi*i*turn)

    @field_serializer("turn")
    def serialize_turn(self, turn: Optional[Fraction]) -> Optional[str]:
        return None if turn is None else str(turn)

    @property
    def is_zero(self) -> bool:
        return self.turn is None

    @property
    def is_one(self) -> bool:
        return self.turn == 0

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


class CharacterRead(BaseModel):
    """Schema for listing a character."""

    label: str
    order: int
    parity_kappa: int = Field(..., ge=0, le=1)
    conductor: int
    inducing_label: str
    primitive: bool
    real: bool


class NonresidueRow(BaseModel):
    q: int
    label: str
    n_chi: int
