import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional

from nonres.config import NonresSettings
from nonres.models.character import Character
from nonres.schemas.kernel import KernelParams
from nonres.schemas.run_config import RunConfig
from nonres.schemas.zeros import ZeroArchive
from nonres.services.archive_service import ArchiveService
from nonres.services.kernel_service import KernelService
from nonres.services.zero_service import ZeroService
from nonres.utils.util_error import UsageError
from nonres.utils.util_response import CommandResponse

logger = logging.getLogger(__name__)


@dataclass
class CommandOutcome:
    response: CommandResponse
    passed: bool = True
    csv_text: Optional[str] = None


def add_selection_arguments(parser, default_select: str) -> None:
    parser.add_argument("--q", type=int, help="modulus")
    parser.add_argument(
        "--select", default=default_select, help="character label q.index, 'all', 'quadratic' or 'primitive'"
    )


def kernel_params(config: RunConfig) -> KernelParams:
    """KernelParams from --x/--t0 and either --y or the resonant y_k for --k (default k = 0)."""
    y = config.y if config.y is not None else KernelService.select_yk(config.t0, config.k or 0)
    return KernelParams(x=config.x, y=y, t0=config.t0)


def inducing_characters(chars: Iterable[Character]) -> List[Character]:
    """Distinct primitive non-principal characters whose zeros the given characters share."""
    seen = {}
    for chi in chars:
        if chi.is_principal:
            continue
        star = chi if chi.is_primitive else Character(chi.inducing_label)
        if not star.is_principal:
            seen[star.label] = star
    return [seen[label] for label in sorted(seen, key=lambda lab: lab.sort_key())]


def archive_for(
    config: RunConfig, chars: List[Character], height: float, settings: NonresSettings
) -> ZeroArchive:
    """Read --archive if given, otherwise scan the needed characters to `height`."""
    if config.archive is not None:
        if not Path(config.archive).exists():
            raise UsageError(f"--archive {config.archive} does not exist")
        return ArchiveService().read(config.archive)
    height = min(math.ceil(height), settings.HEIGHT_CAP)
    logger.info(f"No --archive given; scanning {len(chars)} characters to height {height}")
    return ZeroService(settings).build_archive(inducing_characters(chars), height, config.step)


def write_plot(path: Path, header: tuple[str, str], rows: Iterable[tuple[float, float]]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for a, b in rows:
            writer.writerow([repr(float(a)), repr(float(b))])
    logger.info(f"Wrote plot data to {path}")


def rows_to_csv(header: List[str], rows: Iterable[Iterable]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"
