import math

from nonres.config import NonresSettings
from nonres.models.character import Character
from nonres.models.enums import OutputFormat
from nonres.routers.common import CommandOutcome, kernel_params, rows_to_csv, write_plot
from nonres.schemas.character import CharacterLabel
from nonres.schemas.run_config import RunConfig
from nonres.services.arithmetic_service import ArithmeticService
from nonres.services.explicit_service import ExplicitFormulaService
from nonres.utils.response import create_response


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("main-term", parents=parents, help="principal-character weighted sum vs 4x/t0^2")
    parser.add_argument("--q", type=int, help="modulus")
    parser.add_argument("--x", type=float)
    parser.add_argument("--t0", type=float)
    parser.add_argument("--k", type=int, help="resonant y_k index (default 0)")
    parser.add_argument("--y", type=float, help="explicit y instead of y_k")
    parser.add_argument("--max-gap", dest="max_gap", type=float, default=0.3)
    parser.add_argument("--plot", help="write (n, running weighted sum) to this CSV")
    parser.set_defaults(command="main-term", handler=handle)


def handle(config: RunConfig, settings: NonresSettings) -> CommandOutcome:
    params = kernel_params(config)
    tables = ArithmeticService(settings).build_tables(max(math.ceil(params.support[1]), 2))
    service = ExplicitFormulaService(settings)
    report = service.principal_main_term_check(config.q, params, tables)

    if config.plot is not None:
        chi0 = Character(CharacterLabel(modulus=config.q, index=1))
        n, running = service.cumulative_weighted_sum(chi0, params, tables)
        write_plot(config.plot, ("n", "cumulative"), zip(n, running))

    passed = report.relative_gap <= config.max_gap
    csv_text = None
    if config.format == OutputFormat.CSV:
        csv_text = rows_to_csv(
            ["q", "x", "y", "t0", "observed", "predicted", "relative_gap"],
            [[report.q, report.x, report.y, report.t0, report.observed.re, report.predicted, report.relative_gap]],
        )
    return CommandOutcome(
        response=create_response(
            data=report.model_dump(mode="json"),
            message=f"relative gap {report.relative_gap:.3f} (limit {config.max_gap:g})",
            success=passed,
        ),
        passed=passed,
        csv_text=csv_text,
    )
