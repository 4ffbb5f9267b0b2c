"""Reading shot-chart files into :class:`ShotRecord` lists.

Two input layouts are understood: delimited text with the canonical header
(see :data:`CSV_COLUMNS`) and JSON lines whose keys are those same column
names. Location columns are scaled by ``unit_scale`` into feet; the common
source convention is tenths of feet, hence the default of 0.1.

Rows that fail validation are never repaired or dropped silently. They are
counted per reason in the returned :class:`IngestReport`.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator

CSV_COLUMNS = (
    "game_id",
    "event_id",
    "player_id",
    "team_id",
    "period",
    "minutes_remaining",
    "seconds_remaining",
    "action_type",
    "shot_type",
    "shot_zone",
    "shot_distance",
    "loc_x",
    "loc_y",
    "shot_made_flag",
)

DISTANCE_TOLERANCE_FT = 1.0
MAX_DISTANCE_FT = 94.0
MIN_Y_FT = -5.25


class IngestError(Exception):
    """Fatal ingestion failure (unreadable stream, bad format, bad header)."""


class ShotType(enum.Enum):
    TWO_POINT = "2PT Field Goal"
    THREE_POINT = "3PT Field Goal"


@dataclass(frozen=True)
class ShotRecord:
    game_id: str
    event_id: str
    player_id: str
    team_id: str
    period: int
    clock_remaining_s: int
    action_type: str
    shot_type: ShotType
    shot_zone: str
    shot_distance_ft: float
    x_ft: float
    y_ft: float
    made: bool

    @property
    def is_three(self) -> bool:
        return self.shot_type is ShotType.THREE_POINT


@dataclass
class IngestReport:
    total_rows: int = 0
    accepted: int = 0
    rejected: int = 0
    rejection_reasons: dict[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "total_rows": self.total_rows,
            "accepted": self.accepted,
            "rejected": self.rejected,
            "rejection_reasons": dict(sorted(self.rejection_reasons.items())),
        }


class _Reject(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def _field(row: dict, key: str) -> str:
    value = row.get(key)
    if value is None:
        raise _Reject("missing_field")
    value = str(value).strip()
    if value == "":
        raise _Reject("missing_field")
    return value


def _number(row: dict, key: str) -> float:
    try:
        value = float(_field(row, key))
    except ValueError:
        raise _Reject("invalid_number") from None
    if not math.isfinite(value):
        raise _Reject("invalid_number")
    return value


def _integer(row: dict, key: str, reason: str) -> int:
    value = _number(row, key)
    if value != int(value):
        raise _Reject(reason)
    return int(value)


def _record_from_row(row: dict, unit_scale: float) -> ShotRecord:
    period = _integer(row, "period", "invalid_period")
    if period < 1:
        raise _Reject("invalid_period")
    minutes = _integer(row, "minutes_remaining", "invalid_clock")
    seconds = _integer(row, "seconds_remaining", "invalid_clock")
    if minutes < 0 or not 0 <= seconds < 60:
        raise _Reject("invalid_clock")

    try:
        shot_type = ShotType(_field(row, "shot_type"))
    except ValueError:
        raise _Reject("invalid_shot_type") from None

    flag = _field(row, "shot_made_flag")
    if flag not in ("0", "1"):
        raise _Reject("invalid_made_flag")

    distance = _number(row, "shot_distance")
    x = _number(row, "loc_x") * unit_scale
    y = _number(row, "loc_y") * unit_scale
    if distance < 0 or distance > MAX_DISTANCE_FT or y < MIN_Y_FT:
        raise _Reject("out_of_bounds")
    if abs(math.hypot(x, y) - distance) > DISTANCE_TOLERANCE_FT:
        raise _Reject("distance_mismatch")

    return ShotRecord(
        game_id=_field(row, "game_id"),
        event_id=_field(row, "event_id"),
        player_id=_field(row, "player_id"),
        team_id=_field(row, "team_id"),
        period=period,
        clock_remaining_s=60 * minutes + seconds,
        action_type=str(row.get("action_type") or "").strip(),
        shot_type=shot_type,
        shot_zone=str(row.get("shot_zone") or "").strip(),
        shot_distance_ft=distance,
        x_ft=x,
        y_ft=y,
        made=flag == "1",
    )


def _csv_rows(text: str) -> Iterator[dict | None]:
    reader = csv.DictReader(io.StringIO(text, newline=""))
    header = reader.fieldnames or []
    missing = [c for c in CSV_COLUMNS if c not in header]
    if missing:
        raise IngestError(f"CSV header lacks required columns: {', '.join(missing)}")
    for row in reader:
        if None in row:
            # more cells than header columns
            yield None
        else:
            yield row


def _jsonl_rows(text: str) -> Iterator[dict | None]:
    for line in text.splitlines():
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            yield None
            continue
        yield obj if isinstance(obj, dict) else None


def parse_shots(
    source: BinaryIO | bytes,
    format: str = "csv",
    unit_scale: float = 0.1,
) -> tuple[list[ShotRecord], IngestReport]:
    """Parse a shot-chart byte stream.

    Parameters
    ----------
    source : binary file object or bytes
        UTF-8 encoded CSV or JSON-lines content.
    format : {'csv', 'jsonl'}
    unit_scale : float
        Multiplier taking ``loc_x``/``loc_y`` to feet.

    Returns
    -------
    records : list of ShotRecord
        Accepted records in input order.
    report : IngestReport
    """
    if format not in ("csv", "jsonl"):
        raise IngestError(f"unknown format {format!r}")
    if not unit_scale > 0:
        raise IngestError("unit_scale must be positive")
    try:
        raw = source if isinstance(source, bytes) else source.read()
        text = raw.decode("utf-8-sig")
    except (OSError, AttributeError) as exc:
        raise IngestError(f"unreadable stream: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise IngestError(f"stream is not UTF-8: {exc}") from exc

    rows = _csv_rows(text) if format == "csv" else _jsonl_rows(text)
    malformed = "malformed_row" if format == "csv" else "malformed_json"

    records: list[ShotRecord] = []
    reasons: Counter[str] = Counter()
    total = 0
    for row in rows:
        total += 1
        if row is None:
            reasons[malformed] += 1
            continue
        try:
            records.append(_record_from_row(row, unit_scale))
        except _Reject as rej:
            reasons[rej.reason] += 1

    report = IngestReport(
        total_rows=total,
        accepted=len(records),
        rejected=sum(reasons.values()),
        rejection_reasons=dict(reasons),
    )
    return records, report


def load_shots(
    path: str | Path, format: str | None = None, unit_scale: float = 0.1
) -> tuple[list[ShotRecord], IngestReport]:
    """Open ``path`` and parse it; format defaults from the file suffix."""
    path = Path(path)
    if format is None:
        format = "jsonl" if path.suffix.lower() in (".jsonl", ".ndjson") else "csv"
    try:
        with path.open("rb") as fh:
            return parse_shots(fh, format=format, unit_scale=unit_scale)
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc


def _row_from_record(rec: ShotRecord, unit_scale: float) -> dict:
    minutes, seconds = divmod(rec.clock_remaining_s, 60)
    return {
        "game_id": rec.game_id,
        "event_id": rec.event_id,
        "player_id": rec.player_id,
        "team_id": rec.team_id,
        "period": rec.period,
        "minutes_remaining": minutes,
        "seconds_remaining": seconds,
        "action_type": rec.action_type,
        "shot_type": rec.shot_type.value,
        "shot_zone": rec.shot_zone,
        "shot_distance": repr(rec.shot_distance_ft),
        "loc_x": repr(rec.x_ft / unit_scale),
        "loc_y": repr(rec.y_ft / unit_scale),
        "shot_made_flag": int(rec.made),
    }


def write_shots_csv(
    records: Iterable[ShotRecord], stream: io.TextIOBase, unit_scale: float = 0.1
) -> None:
    """Write records with the canonical header (inverse of :func:`parse_shots`)."""
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(_row_from_record(rec, unit_scale))


def write_shots_jsonl(
    records: Iterable[ShotRecord], stream: io.TextIOBase, unit_scale: float = 0.1
) -> None:
    for rec in records:
        stream.write(json.dumps(_row_from_record(rec, unit_scale)) + "\n")
