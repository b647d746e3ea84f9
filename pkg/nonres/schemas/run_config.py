import re
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from nonres.models.enums import AuditMode, Command, FormulaVariant, OutputFormat
from nonres.schemas.character import CharacterLabel

MODE_ALIASES = {
    "theorem12": AuditMode.THEOREM_1_2,
    "theorem13": AuditMode.THEOREM_1_3,
    "theorem13-centered": AuditMode.THEOREM_1_3_CENTERED,
}
Q_RANGE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")


class RunConfig(BaseModel):
    """Everything one CLI invocation needs, validated before any work starts."""

    command: Command
    q: Optional[int] = Field(None, ge=1)
    q_range: Optional[tuple[int, int]] = None
    select: Optional[str] = None
    label: Optional[str] = None

    x: Optional[float] = Field(None, gt=0)
    t0: Optional[float] = None
    k: Optional[int] = Field(None, ge=0)
    y: Optional[float] = Field(None, gt=1)
    height: Optional[float] = Field(None, ge=0)
    step: Optional[float] = Field(None, gt=0, le=0.05)

    variant: FormulaVariant = FormulaVariant.THEOREM2
    partial_trivial: bool = False
    max_residual: float = Field(0.15, gt=0)
    max_gap: float = Field(0.3, gt=0)

    mode: AuditMode = AuditMode.THEOREM_1_3
    delta: Optional[float] = Field(None, gt=0, le=0.5)
    C: float = Field(1.0, gt=0)
    K1: float = Field(1.0, gt=0)
    K2: float = Field(1.0, gt=0)
    theta: Optional[float] = Field(None, gt=0, lt=1)

    samples: int = Field(100, ge=1)
    seed: int = 0

    archive: Optional[Path] = None
    output: Optional[Path] = None
    format: OutputFormat = OutputFormat.JSON
    plot: Optional[Path] = None
    out_dir: Optional[Path] = None

    table_limit: Optional[int] = Field(None, ge=1)
    hurwitz_tolerance: Optional[float] = Field(None, gt=0)
    hurwitz_backend: Optional[str] = None
    log_level: Optional[str] = None

    @field_validator("q_range", mode="before")
    @classmethod
    def parse_q_range(cls, value):
        if value is None or isinstance(value, (tuple, list)):
            return value
        match = Q_RANGE.match(str(value))
        if not match:
            raise ValueError(f"--q-range must look like 3..50 (got '{value}')")
        lo, hi = int(match.group(1)), int(match.group(2))
        if lo < 1 or lo > hi:
            raise ValueError(f"--q-range {value} is empty")
        return lo, hi

    @field_validator("mode", mode="before")
    @classmethod
    def parse_mode(cls, value):
        if isinstance(value, str) and value in MODE_ALIASES:
            return MODE_ALIASES[value]
        return value

    @field_validator("label")
    @classmethod
    def parse_label(cls, value):
        if value is not None:
            try:
                CharacterLabel.parse(value)
            except ValueError:
                raise ValueError(f"--label must be a valid q.index label (got '{value}')")
        return value

    @field_validator("hurwitz_backend")
    @classmethod
    def check_backend(cls, value):
        if value is not None and value not in ("euler_maclaurin", "mpmath"):
            raise ValueError(f"--hurwitz-backend must be euler_maclaurin or mpmath (got '{value}')")
        return value

    @model_validator(mode="after")
    def check_command_inputs(self) -> "RunConfig":
        cmd = self.command
        if cmd in (Command.CHARS, Command.DENSITY, Command.AUDIT, Command.MAIN_TERM) and self.q is None:
            raise ValueError(f"{cmd.value} needs --q")
        if cmd == Command.ZEROS and self.q is None and self.label is None:
            raise ValueError("zeros needs --q or --label")
        if cmd == Command.NONRES and self.q_range is None and self.q is None:
            raise ValueError("nonres needs --q-range or --q")
        if cmd == Command.EXPLICIT:
            if self.label is None:
                raise ValueError("explicit needs --label")
            if self.x is None or self.height is None:
                raise ValueError("explicit needs --x and --height")
        needs_kernel = cmd == Command.MAIN_TERM or (cmd == Command.EXPLICIT and self.variant == FormulaVariant.THEOREM2)
        if needs_kernel:
            if self.x is None:
                raise ValueError(f"{cmd.value} needs --x")
            if self.t0 is None or abs(self.t0) <= 1:
                raise ValueError(f"{cmd.value} needs --t0 with |t0| > 1")
            if self.y is not None and self.k is not None:
                raise ValueError("give either --y or --k, not both")
        if cmd == Command.AUDIT:
            if self.delta is None:
                raise ValueError("audit needs --delta")
            if self.mode != AuditMode.THEOREM_1_2 and (self.t0 is None or abs(self.t0) <= 1):
                raise ValueError(f"audit mode {self.mode.value} needs --t0 with |t0| > 1")
        if cmd == Command.SCHEMA and self.out_dir is None:
            raise ValueError("schema needs --out")
        return self
