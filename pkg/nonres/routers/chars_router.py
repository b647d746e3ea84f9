from nonres.config import NonresSettings
from nonres.models.enums import OutputFormat
from nonres.routers.common import CommandOutcome, add_selection_arguments, rows_to_csv
from nonres.schemas.run_config import RunConfig
from nonres.services.character_service import CharacterService
from nonres.utils.response import create_response

CSV_COLUMNS = ["label", "order", "parity_kappa", "conductor", "inducing_label", "primitive", "real"]


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("chars", parents=parents, help="list characters mod q")
    add_selection_arguments(parser, default_select="all")
    parser.set_defaults(command="chars", handler=handle)


def handle(config: RunConfig, settings: NonresSettings) -> CommandOutcome:
    """List the selected characters mod q with order, parity and conductor."""
    service = CharacterService(settings)
    rows = [service.describe(chi) for chi in service.select_characters(config.q, config.select or "all")]
    csv_text = None
    if config.format == OutputFormat.CSV:
        csv_text = rows_to_csv(
            CSV_COLUMNS,
            ([r.label, r.order, r.parity_kappa, r.conductor, r.inducing_label, r.primitive, r.real] for r in rows),
        )
    return CommandOutcome(
        response=create_response(
            data=[r.model_dump(mode="json") for r in rows], message=f"{len(rows)} characters mod {config.q}"
        ),
        csv_text=csv_text,
    )
