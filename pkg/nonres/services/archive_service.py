"""Zero archive CSV files.

    character,beta,gamma,method,tolerance
    #complete character=3.2 T=60.0 count=24
    3.2,0.5,-59.4,critical_line_scan,1e-08
    ...

Rows are sorted by (modulus, index, gamma); a `#complete` line precedes the block of the
character it describes. Gammas carry 12 significant digits, other floats use repr.
"""
import csv
import io
import logging
import re
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from nonres.models.enums import ZeroMethod
from nonres.schemas.character import CharacterLabel
from nonres.schemas.zeros import GAMMA_DIGITS, CompletenessRecord, ZeroArchive, ZeroRecord
from nonres.utils.util_error import ArchiveParseError

logger = logging.getLogger(__name__)

HEADER = ["character", "beta", "gamma", "method", "tolerance"]
COMPLETE_LINE = re.compile(r"^#complete character=(\d+\.\d+) T=(\S+) count=(\d+)$")


def _format_float(value: float) -> str:
    return repr(float(value))


class ArchiveService:
    def dumps(self, archive: ZeroArchive) -> str:
        entries = sorted(archive.entries, key=ZeroRecord.sort_key)
        completeness = {c.character: c for c in archive.completeness}
        order = sorted(
            {z.character for z in entries} | set(completeness), key=CharacterLabel.sort_key
        )

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(HEADER)
        for label in order:
            if label in completeness:
                c = completeness[label]
                buffer.write(f"#complete character={label} T={_format_float(c.height)} count={c.count}\n")
            for z in entries:
                if z.character != label:
                    continue
                writer.writerow(
                    [
                        str(z.character),
                        _format_float(z.beta),
                        f"{z.gamma:.{GAMMA_DIGITS}g}",
                        z.method.value,
                        _format_float(z.tolerance),
                    ]
                )
        return buffer.getvalue()

    def write(self, archive: ZeroArchive, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dumps(archive), encoding="utf-8")
        logger.info(f"Wrote {len(archive.entries)} zeros to {path}")
        return path

    def loads(self, text: str) -> ZeroArchive:
        lines = text.splitlines()
        if not lines or lines[0].strip() != ",".join(HEADER):
            raise ArchiveParseError(1, f"expected header '{','.join(HEADER)}'")

        entries: list[ZeroRecord] = []
        completeness: list[CompletenessRecord] = []
        previous_key = None
        for line_number, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            if line.startswith("#"):
                match = COMPLETE_LINE.match(line.strip())
                if not match:
                    raise ArchiveParseError(line_number, f"unrecognised comment line '{line}'")
                try:
                    completeness.append(
                        CompletenessRecord(
                            character=CharacterLabel.parse(match.group(1)),
                            height=float(match.group(2)),
                            count=int(match.group(3)),
                        )
                    )
                except (ValueError, ValidationError) as e:
                    raise ArchiveParseError(line_number, str(e))
                continue

            fields = next(csv.reader([line]))
            if len(fields) != len(HEADER):
                raise ArchiveParseError(line_number, f"expected {len(HEADER)} fields, got {len(fields)}")
            try:
                record = ZeroRecord(
                    character=CharacterLabel.parse(fields[0]),
                    beta=float(fields[1]),
                    gamma=float(fields[2]),
                    method=ZeroMethod(fields[3]),
                    tolerance=float(fields[4]),
                )
            except (ValueError, ValidationError) as e:
                raise ArchiveParseError(line_number, str(e))
            key = record.sort_key()
            if previous_key is not None and key < previous_key:
                raise ArchiveParseError(line_number, "rows are not sorted by (character, gamma)")
            previous_key = key
            entries.append(record)

        return ZeroArchive(entries=entries, completeness=sorted(completeness, key=lambda c: c.character.sort_key()))

    def read(self, path: Union[str, Path]) -> ZeroArchive:
        path = Path(path)
        archive = self.loads(path.read_text(encoding="utf-8"))
        logger.info(f"Read {len(archive.entries)} zeros from {path}")
        return archive
