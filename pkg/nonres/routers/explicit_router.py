import math

from nonres.config import NonresSettings
from nonres.models.enums import FormulaVariant, OutputFormat
from nonres.routers.common import CommandOutcome, archive_for, kernel_params, rows_to_csv, write_plot
from nonres.schemas.kernel import KernelParams
from nonres.schemas.run_config import RunConfig
from nonres.services.arithmetic_service import ArithmeticService
from nonres.services.character_service import CharacterService
from nonres.services.explicit_service import ExplicitFormulaService
from nonres.utils.response import create_response


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("explicit", parents=parents, help="check an explicit formula for one character")
    parser.add_argument("--label", help="primitive character q.index")
    parser.add_argument("--variant", default="theorem2", choices=[v.value for v in FormulaVariant])
    parser.add_argument("--x", type=float)
    parser.add_argument("--t0", type=float)
    parser.add_argument("--k", type=int, help="resonant y_k index (default 0)")
    parser.add_argument("--y", type=float, help="explicit y instead of y_k")
    parser.add_argument("--height", type=float, help="zero truncation height T")
    parser.add_argument("--step", type=float)
    parser.add_argument("--archive", help="zero archive CSV; scanned on demand when omitted")
    parser.add_argument(
        "--partial-trivial", dest="partial_trivial", action="store_true", help="keep only the s = 0 trivial term"
    )
    parser.add_argument("--theta", type=float, help="contour offset for the expected residual scale")
    parser.add_argument("--max-residual", dest="max_residual", type=float, default=0.15)
    parser.add_argument("--plot", help="write (n, running prime sum) to this CSV")
    parser.set_defaults(command="explicit", handler=handle)


def handle(config: RunConfig, settings: NonresSettings) -> CommandOutcome:
    chi = CharacterService(settings).get_character(config.label)
    if config.variant == FormulaVariant.THEOREM2:
        params = kernel_params(config)
        needed = math.ceil(params.support[1])
    else:
        # only x enters the (x - n)-weighted identity
        params = KernelParams(x=config.x, y=config.y or 2.0, t0=config.t0 or 0.0)
        needed = math.ceil(config.x)

    archive = archive_for(config, [chi], config.height, settings)
    tables = ArithmeticService(settings).build_tables(max(needed, 2))
    service = ExplicitFormulaService(settings)
    report = service.residual_report(
        chi,
        params,
        archive,
        config.height,
        config.variant,
        tables=tables,
        full_trivial=not config.partial_trivial,
        theta=config.theta,
    )

    if config.plot is not None and config.variant == FormulaVariant.THEOREM2:
        n, running = service.cumulative_weighted_sum(chi, params, tables)
        write_plot(config.plot, ("n", "cumulative"), zip(n, running))

    passed = report.residual_scale <= config.max_residual
    csv_text = None
    if config.format == OutputFormat.CSV:
        csv_text = rows_to_csv(
            ["character", "variant", "x", "T", "prime_re", "zero_re", "trivial_re", "residual_abs", "residual_scale"],
            [
                [
                    report.character,
                    report.variant.value,
                    report.x,
                    report.truncation_height,
                    report.prime_side.re,
                    report.zero_side.re,
                    report.trivial_term.re,
                    abs(report.residual),
                    report.residual_scale,
                ]
            ],
        )
    return CommandOutcome(
        response=create_response(
            data=report.model_dump(mode="json"),
            message=f"residual scale {report.residual_scale:.3e} (limit {config.max_residual:g})",
            success=passed,
        ),
        passed=passed,
        csv_text=csv_text,
    )
