# nonres/utils/response.py
from typing import Any, Optional

from nonres.utils.util_response import CommandResponse


def create_response(
    data: Optional[Any] = None,
    message: str = "",
    success: bool = True,
    total_count: Optional[int] = None,
) -> CommandResponse:
    """
    Wrap a command result in a consistent CommandResponse envelope.
    """
    if total_count is None:
        total_count = len(data) if isinstance(data, list) else (0 if data is None else 1)
    return CommandResponse(
        data=data,
        message=message,
        success=success,
        total_count=total_count,
    )
