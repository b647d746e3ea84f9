from nonres.config import NonresSettings
from nonres.models.enums import OutputFormat
from nonres.routers.common import CommandOutcome, add_selection_arguments, rows_to_csv
from nonres.schemas.run_config import RunConfig
from nonres.services.character_service import CharacterService
from nonres.utils.response import create_response


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("nonres", parents=parents, help="least character non-residues over a q-range")
    add_selection_arguments(parser, default_select="quadratic")
    parser.add_argument("--q-range", dest="q_range", help="inclusive modulus range, e.g. 3..50")
    parser.set_defaults(command="nonres", handler=handle)


def handle(config: RunConfig, settings: NonresSettings) -> CommandOutcome:
    q_lo, q_hi = config.q_range or (config.q, config.q)
    rows = CharacterService(settings).nonresidue_table(q_lo, q_hi, config.select or "quadratic")
    csv_text = None
    if config.format == OutputFormat.CSV:
        csv_text = rows_to_csv(["q", "label", "n_chi"], ([r.q, r.label, r.n_chi] for r in rows))
    return CommandOutcome(
        response=create_response(
            data=[r.model_dump(mode="json") for r in rows], message=f"n(chi) for q in {q_lo}..{q_hi}"
        ),
        csv_text=csv_text,
    )
