from nonres.config import NonresSettings
from nonres.models.enums import OutputFormat
from nonres.routers.common import CommandOutcome, add_selection_arguments, archive_for, rows_to_csv, write_plot
from nonres.schemas.run_config import RunConfig
from nonres.services.character_service import CharacterService
from nonres.services.density_service import DensityService
from nonres.utils.response import create_response

DEFAULT_HEIGHT = 20.0


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("density", parents=parents, help="zero-density ratios in boxes and discs")
    add_selection_arguments(parser, default_select="primitive")
    parser.add_argument("--height", type=float, default=DEFAULT_HEIGHT, help="T_max")
    parser.add_argument("--step", type=float)
    parser.add_argument("--archive", help="zero archive CSV; scanned on demand when omitted")
    parser.add_argument("--plot", help="write (T, ratio) for the first character to this CSV")
    parser.set_defaults(command="density", handler=handle)


def handle(config: RunConfig, settings: NonresSettings) -> CommandOutcome:
    chars = [
        chi
        for chi in CharacterService(settings).select_characters(config.q, config.select or "primitive")
        if not chi.is_principal
    ]
    T_max = config.height if config.height is not None else DEFAULT_HEIGHT
    archive = archive_for(config, chars, T_max + 1, settings)
    service = DensityService()
    tables = [service.zero_density_ratios(chi, archive, T_max) for chi in chars]

    if config.plot is not None and tables:
        write_plot(config.plot, ("T", "ratio"), ((row.T, row.ratio) for row in tables[0].rectangle_rows))

    csv_text = None
    if config.format == OutputFormat.CSV:
        csv_text = rows_to_csv(
            ["character", "T", "count", "ratio"],
            ([t.character, row.T, row.count, row.ratio] for t in tables for row in t.rectangle_rows),
        )
    return CommandOutcome(
        response=create_response(
            data=[t.model_dump(mode="json") for t in tables], message=f"density ratios for {len(tables)} characters"
        ),
        csv_text=csv_text,
    )
