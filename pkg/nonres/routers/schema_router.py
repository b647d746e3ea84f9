import json
import logging
from pathlib import Path

from nonres.config import NonresSettings
from nonres.routers.common import CommandOutcome
from nonres.schemas.envelopes import ENVELOPES
from nonres.schemas.run_config import RunConfig
from nonres.utils.response import create_response

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("schema", parents=parents, help="write JSON Schemas of every command's output")
    parser.add_argument("--out", dest="out_dir", help="directory for <command>.schema.json files")
    parser.set_defaults(command="schema", handler=handle)


def handle(config: RunConfig, settings: NonresSettings) -> CommandOutcome:
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for command, envelope in ENVELOPES.items():
        path = out_dir / f"{command}.schema.json"
        path.write_text(json.dumps(envelope.model_json_schema(), indent=2) + "\n", encoding="utf-8")
        written.append(str(path))
    logger.info(f"Wrote {len(written)} schemas to {out_dir}")
    return CommandOutcome(response=create_response(data=written, message=f"wrote {len(written)} schemas"))
