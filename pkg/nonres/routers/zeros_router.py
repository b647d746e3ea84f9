import math

import numpy as np

from nonres.config import NonresSettings
from nonres.models.enums import OutputFormat
from nonres.routers.common import CommandOutcome, add_selection_arguments, inducing_characters, write_plot
from nonres.schemas.run_config import RunConfig
from nonres.services.archive_service import ArchiveService
from nonres.services.character_service import CharacterService
from nonres.services.lfunction_service import LFunctionService
from nonres.services.zero_service import ZeroService
from nonres.utils.response import create_response

DEFAULT_HEIGHT = 30.0


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("zeros", parents=parents, help="scan zeros of L(s, chi) up to a height")
    add_selection_arguments(parser, default_select="primitive")
    parser.add_argument("--label", help="single character q.index (overrides --q/--select)")
    parser.add_argument("--height", type=float, default=DEFAULT_HEIGHT, help="scan |gamma| <= height")
    parser.add_argument("--step", type=float, help="grid step for Z(t), at most 0.05")
    parser.add_argument("--archive", help="write the zero archive CSV here")
    parser.add_argument("--plot", help="write (t, Z(t)) for the first character to this CSV")
    parser.set_defaults(command="zeros", handler=handle)


def handle(config: RunConfig, settings: NonresSettings) -> CommandOutcome:
    """Scan each selected primitive character; the run fails if any scan is incomplete."""
    characters = CharacterService(settings)
    if config.label is not None:
        chars = [characters.get_character(config.label)]
    else:
        chars = characters.select_characters(config.q, config.select or "primitive")
    targets = inducing_characters(chars)
    height = config.height if config.height is not None else DEFAULT_HEIGHT

    service = ZeroService(settings)
    results = [service.scan_to_height(chi, height, config.step) for chi in targets]
    archive = service.archive_from_scans(results, height)
    archive_service = ArchiveService()
    if config.archive is not None:
        archive_service.write(archive, config.archive)

    if config.plot is not None and targets:
        step = config.step or settings.SCAN_STEP
        t_lo = 0.0 if targets[0].is_real else -height
        t = np.linspace(t_lo, height, max(2, int(math.ceil((height - t_lo) / step)) + 1))
        z = LFunctionService(settings).hardy_z_batch(t, targets[0])
        write_plot(config.plot, ("t", "Z"), zip(t, z))

    incomplete = [str(r.character) for r in results if r.incomplete]
    message = f"{sum(len(r.zeros) for r in results)} zeros for {len(results)} characters to height {height:g}"
    if incomplete:
        message += f"; incomplete: {', '.join(incomplete)}"
    return CommandOutcome(
        response=create_response(
            data=[r.model_dump(mode="json") for r in results], message=message, success=not incomplete
        ),
        passed=not incomplete,
        csv_text=archive_service.dumps(archive) if config.format == OutputFormat.CSV else None,
    )
