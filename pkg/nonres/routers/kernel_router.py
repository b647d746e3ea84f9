from nonres.config import NonresSettings
from nonres.models.enums import OutputFormat
from nonres.routers.common import CommandOutcome, rows_to_csv
from nonres.schemas.run_config import RunConfig
from nonres.services.kernel_service import KernelService
from nonres.utils.response import create_response

CSV_COLUMNS = ["s_re", "s_im", "x", "y", "t0", "closed_form_re", "closed_form_im", "quadrature_re", "quadrature_im", "relative_error"]


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("kernel-check", parents=parents, help="closed-form kernel against quadrature")
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.set_defaults(command="kernel-check", handler=handle)


def handle(config: RunConfig, settings: NonresSettings) -> CommandOutcome:
    report = KernelService(settings).kernel_check(samples=config.samples, seed=config.seed)
    csv_text = None
    if config.format == OutputFormat.CSV:
        csv_text = rows_to_csv(CSV_COLUMNS, ([getattr(row, c) for c in CSV_COLUMNS] for row in report.rows))
    return CommandOutcome(
        response=create_response(
            data=report.model_dump(mode="json"),
            message=f"max relative error {report.max_relative_error:.3e} over {report.samples} samples",
            success=report.passed,
        ),
        passed=report.passed,
        csv_text=csv_text,
    )
