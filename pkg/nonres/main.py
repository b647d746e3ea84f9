import argparse
import json
import logging
import sys
import traceback
from typing import List, Optional

from pydantic import ValidationError

from nonres.config import NonresSettings, nonres_settings, validate_config
from nonres.models.enums import OutputFormat
from nonres.routers import (
    audit_router,
    chars_router,
    density_router,
    explicit_router,
    kernel_router,
    main_term_router,
    nonres_router,
    schema_router,
    zeros_router,
)
from nonres.routers.common import CommandOutcome
from nonres.schemas.envelopes import ENVELOPES
from nonres.schemas.run_config import RunConfig
from nonres.utils.util_error import ErrorResponse, NonresError
from nonres.utils.util_response import CommandResponse

logger = logging.getLogger(__name__)

ROUTERS = [
    chars_router,
    nonres_router,
    zeros_router,
    kernel_router,
    explicit_router,
    density_router,
    audit_router,
    main_term_router,
    schema_router,
]
SETTINGS_OVERRIDES = {
    "table_limit": "TABLE_LIMIT",
    "hurwitz_tolerance": "HURWITZ_TOLERANCE",
    "hurwitz_backend": "HURWITZ_BACKEND",
    "log_level": "LOG_LEVEL",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--format", default="json", choices=[f.value for f in OutputFormat])
    common.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--table-limit", dest="table_limit", type=int)
    common.add_argument("--hurwitz-tolerance", dest="hurwitz_tolerance", type=float)
    common.add_argument("--hurwitz-backend", dest="hurwitz_backend", choices=["euler_maclaurin", "mpmath"])

    parser = argparse.ArgumentParser(
        prog="nonres", description="Explicit-formula and least non-residue verification for Dirichlet characters"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for router in ROUTERS:
        router.register(subparsers, [common])
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def settings_for(config: RunConfig, base: NonresSettings = nonres_settings) -> NonresSettings:
    update = {
        field: getattr(config, key) for key, field in SETTINGS_OVERRIDES.items() if getattr(config, key) is not None
    }
    settings = base.model_copy(update=update) if update else base
    if not validate_config(settings):
        raise NonresError("invalid configuration", exit_code=2)
    return settings


def render(config: RunConfig, outcome: CommandOutcome) -> str:
    if config.format == OutputFormat.CSV and outcome.csv_text is not None:
        return outcome.csv_text
    envelope = ENVELOPES.get(config.command.value, CommandResponse)
    typed = envelope.model_validate(outcome.response.model_dump())
    return json.dumps(typed.model_dump(mode="json"), indent=2) + "\n"


def emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    with open(output, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    logger.info(f"Wrote result to {output}")


def _error(message: str, exit_code: int, stack: Optional[str] = None) -> int:
    body = ErrorResponse(stack=stack, message=message, success=False, exit_code=exit_code)
    sys.stderr.write(json.dumps(body.model_dump(), indent=2) + "\n")
    return exit_code


def run(namespace: argparse.Namespace) -> int:
    """Validate, execute one command and write its envelope; returns the process exit code."""
    values = {k: v for k, v in vars(namespace).items() if k != "handler" and v is not None}
    handler = namespace.handler
    try:
        config = RunConfig.model_validate(values)
        settings = settings_for(config)
        configure_logging(settings.LOG_LEVEL)
        outcome = handler(config, settings)
        emit(render(config, outcome), None if config.output is None else str(config.output))
    except ValidationError as exc:
        return _error(str(exc), 2)
    except NonresError as exc:
        return _error(exc.detail, exc.exit_code)
    except Exception as exc:
        return _error(f"Internal Error: {exc}", 1, traceback.format_exc())
    if not outcome.passed:
        logger.warning(f"{config.command.value}: {outcome.response.message}")
        return 1
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    namespace = parser.parse_args(argv)
    return run(namespace)


if __name__ == "__main__":
    sys.exit(main())
