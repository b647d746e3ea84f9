import bisect
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from nonres.models.enums import ZeroMethod
from nonres.schemas.character import CharacterLabel
from nonres.utils.util_error import ArchiveIncompleteError

GAMMA_DIGITS = 12


def quantize_gamma(gamma: float) -> float:
    """Round to the digits the archive file keeps, so a write/read cycle is exact."""
    return float(f"{gamma:.{GAMMA_DIGITS}g}")


def _same_zero(a: "ZeroRecord", b: "ZeroRecord") -> bool:
    tol = max(a.tolerance, b.tolerance)
    return abs(a.gamma - b.gamma) <= tol and abs(a.beta - b.beta) <= tol


class ZeroRecord(BaseModel):
    """One nontrivial zero rho = beta + i gamma of L(s, chi)."""

    model_config = ConfigDict(frozen=True)

    character: CharacterLabel
    beta: float = Field(..., ge=0, le=1)
    gamma: float
    method: ZeroMethod
    tolerance: float = Field(..., gt=0)

    @model_validator(mode="after")
    def check_line(self) -> "ZeroRecord":
        if self.method == ZeroMethod.CRITICAL_LINE_SCAN and self.beta != 0.5:
            raise ValueError("critical line zeros must have beta = 1/2")
        return self

    @property
    def rho(self) -> complex:
        return complex(self.beta, self.gamma)

    def sort_key(self) -> tuple[int, int, float]:
        return (self.character.modulus, self.character.index, self.gamma)

    def mirrored(self) -> "ZeroRecord":
        return self.model_copy(update={"gamma": -self.gamma})


class CompletenessRecord(BaseModel):
    """All zeros with |gamma| <= height were found; `count` of them."""

    character: CharacterLabel
    height: float = Field(..., ge=0)
    count: int = Field(..., ge=0)


class ZeroArchive(BaseModel):
    entries: List[ZeroRecord] = []
    completeness: List[CompletenessRecord] = []

    @model_validator(mode="after")
    def normalize(self) -> "ZeroArchive":
        """Every instance holds quantized gammas, sorted rows and no near-duplicates."""
        kept: List[ZeroRecord] = []
        last: dict = {}
        quantized = (
            z if z.gamma == quantize_gamma(z.gamma) else z.model_copy(update={"gamma": quantize_gamma(z.gamma)})
            for z in self.entries
        )
        for record in sorted(quantized, key=ZeroRecord.sort_key):
            previous = last.get(record.character)
            if previous is not None and _same_zero(previous, record):
                continue
            kept.append(record)
            last[record.character] = record
        self.entries = kept
        self.completeness = sorted(self.completeness, key=lambda c: c.character.sort_key())
        return self

    def _sort(self) -> None:
        self.entries.sort(key=ZeroRecord.sort_key)
        self.completeness.sort(key=lambda c: c.character.sort_key())

    def add(self, records: List[ZeroRecord]) -> int:
        """Insert records (gamma quantized, near-duplicates dropped); returns how many were added."""
        by_character: dict = {}
        for z in self.entries:
            by_character.setdefault(z.character, []).append(z)
        for zs in by_character.values():
            zs.sort(key=lambda z: z.gamma)

        added = 0
        for record in records:
            record = record.model_copy(update={"gamma": quantize_gamma(record.gamma)})
            known = by_character.setdefault(record.character, [])
            gammas = [z.gamma for z in known]
            pos = bisect.bisect_left(gammas, record.gamma)
            neighbours = known[max(pos - 1, 0): pos + 1]
            if any(_same_zero(other, record) for other in neighbours):
                continue
            known.insert(pos, record)
            self.entries.append(record)
            added += 1
        self._sort()
        return added

    def set_complete(self, character: CharacterLabel, height: float, count: int) -> None:
        self.completeness = [c for c in self.completeness if c.character != character]
        self.completeness.append(CompletenessRecord(character=character, height=height, count=count))
        self._sort()

    def completeness_height(self, character: CharacterLabel) -> Optional[float]:
        for record in self.completeness:
            if record.character == character:
                return record.height
        return None

    def require_complete(self, character: CharacterLabel, height: float) -> None:
        complete = self.completeness_height(character)
        if complete is None or complete < height:
            raise ArchiveIncompleteError(
                f"archive for {character} is complete only to {complete} (needed {height:g})"
            )

    def zeros_for(self, character: CharacterLabel, height: Optional[float] = None) -> List[ZeroRecord]:
        """Zeros of one character, gamma ascending, optionally restricted to |gamma| <= height."""
        return [
            z
            for z in self.entries
            if z.character == character and (height is None or abs(z.gamma) <= height)
        ]

    def merge(self, other: "ZeroArchive") -> None:
        self.add(other.entries)
        for record in other.completeness:
            self.set_complete(record.character, record.height, record.count)


class ZeroScanResult(BaseModel):
    character: CharacterLabel
    t_lo: float
    t_hi: float
    step: float
    zeros: List[ZeroRecord] = []
    sign_changes: int = 0
    rectangle_count: Optional[int] = None
    incomplete: bool = False
