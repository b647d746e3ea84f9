from typing import Optional

from pydantic import BaseModel


class ErrorResponse(BaseModel):
    stack: Optional[str] = ""
    message: Optional[str] = "Internal Error"
    success: Optional[bool] = False
    exit_code: Optional[int] = 1


class NonresError(Exception):
    """Base error; `exit_code` plays the role an HTTP status plays in a service."""

    exit_code: int = 1

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class UsageError(NonresError):
    exit_code = 2


class PrimitiveRequiredError(NonresError):
    def __init__(self, label: str):
        super().__init__(f"requires primitive character (got {label})")


class PrincipalCharacterError(NonresError):
    pass


class CapExceededError(NonresError):
    pass


class TableLimitError(NonresError):
    pass


class KernelQuadratureError(NonresError):
    def __init__(self, detail: str, achieved_error: float):
        super().__init__(f"{detail} (achieved error estimate {achieved_error:.3e})")
        self.achieved_error = achieved_error


class HurwitzPoleError(NonresError):
    def __init__(self, detail: str = "pole of Hurwitz zeta"):
        super().__init__(detail)


class NearZeroError(NonresError):
    def __init__(self, detail: str = "near zero of L"):
        super().__init__(detail)


class PhaseInconsistencyError(NonresError):
    def __init__(self, detail: str = "phase inconsistency"):
        super().__init__(detail)


class BoundaryTooCloseError(NonresError):
    def __init__(self, detail: str = "boundary too close to a zero", edge: Optional[str] = None):
        super().__init__(detail)
        self.edge = edge


class ArchiveParseError(NonresError):
    def __init__(self, line_number: int, detail: str):
        super().__init__(f"line {line_number}: {detail}")
        self.line_number = line_number


class ArchiveIncompleteError(NonresError):
    pass
