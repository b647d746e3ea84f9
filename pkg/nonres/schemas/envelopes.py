"""Typed CommandResponse envelopes, one per subcommand; their JSON Schemas are the published ones."""
from typing import List, Optional

from nonres.schemas.audit import AuditResult
from nonres.schemas.character import CharacterRead, NonresidueRow
from nonres.schemas.explicit import DensityTable, FormulaReport, MainTermReport
from nonres.schemas.kernel import KernelCheckReport
from nonres.schemas.zeros import ZeroScanResult
from nonres.utils.util_response import CommandResponse


class CharsResponse(CommandResponse):
    data: List[CharacterRead] = []


class NonresResponse(CommandResponse):
    data: List[NonresidueRow] = []


class ZerosResponse(CommandResponse):
    data: List[ZeroScanResult] = []


class KernelCheckResponse(CommandResponse):
    data: Optional[KernelCheckReport] = None


class ExplicitResponse(CommandResponse):
    data: Optional[FormulaReport] = None


class DensityResponse(CommandResponse):
    data: List[DensityTable] = []


class AuditResponse(CommandResponse):
    data: List[AuditResult] = []


class MainTermResponse(CommandResponse):
    data: Optional[MainTermReport] = None


ENVELOPES = {
    "chars": CharsResponse,
    "nonres": NonresResponse,
    "zeros": ZerosResponse,
    "kernel-check": KernelCheckResponse,
    "explicit": ExplicitResponse,
    "density": DensityResponse,
    "audit": AuditResponse,
    "main-term": MainTermResponse,
}
