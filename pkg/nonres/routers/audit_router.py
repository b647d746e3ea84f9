import math

from nonres.config import NonresSettings
from nonres.models.enums import AuditMode, OutputFormat
from nonres.routers.common import CommandOutcome, add_selection_arguments, archive_for
from nonres.schemas.audit import AuditConfig
from nonres.schemas.run_config import MODE_ALIASES, RunConfig
from nonres.services.audit_service import AuditService
from nonres.services.character_service import CharacterService
from nonres.utils.response import create_response

DEFAULT_HEIGHT = 30.0


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("audit", parents=parents, help="audit n(chi) against the conditional bound")
    add_selection_arguments(parser, default_select="all")
    parser.add_argument(
        "--mode", default="theorem13", choices=sorted(MODE_ALIASES) + [m.value for m in AuditMode]
    )
    parser.add_argument("--t0", type=float)
    parser.add_argument("--delta", type=float)
    parser.add_argument("--C", dest="C", type=float, default=1.0)
    parser.add_argument("--K1", dest="K1", type=float, default=1.0)
    parser.add_argument("--K2", dest="K2", type=float, default=1.0)
    parser.add_argument("--theta", type=float, help="contour offset (default CONTOUR_THETA)")
    parser.add_argument("--height", type=float, help="scan height for the unrestricted-strip mode")
    parser.add_argument("--step", type=float)
    parser.add_argument("--archive", help="zero archive CSV; scanned on demand when omitted")
    parser.set_defaults(command="audit", handler=handle)


def handle(config: RunConfig, settings: NonresSettings) -> CommandOutcome:
    """A failing bound (passes == false) fails the run; violated or indeterminate hypotheses do not."""
    cfg = AuditConfig(
        mode=config.mode,
        delta=config.delta,
        t0=config.t0 if config.t0 is not None else 2.0,
        C=config.C,
        K1=config.K1,
        K2=config.K2,
        theta=config.theta if config.theta is not None else settings.CONTOUR_THETA,
    )
    service = AuditService(settings)
    chars = CharacterService(settings).select_characters(config.q, config.select or "all")
    height = service.hypothesis_height(config.q, cfg) if config.q > 2 else 0.0
    if math.isinf(height):
        height = config.height if config.height is not None else DEFAULT_HEIGHT
    archive = archive_for(config, chars, height + 1, settings)
    results = service.audit_bound(config.q, cfg, archive, chars)

    passed = not any(r.passes is False for r in results)
    return CommandOutcome(
        response=create_response(
            data=[r.model_dump(mode="json") for r in results],
            message=f"audited {len(results)} characters mod {config.q} ({cfg.mode.value})",
            success=passed,
        ),
        passed=passed,
        csv_text=AuditService.to_csv(results) if config.format == OutputFormat.CSV else None,
    )
