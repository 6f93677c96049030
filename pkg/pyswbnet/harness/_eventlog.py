"""Line-oriented JSON codec for session event logs."""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable
from pathlib import Path

from mashumaro.exceptions import (
    InvalidFieldValue,
    MissingField,
    SuitableVariantNotFoundError,
)

from pyswbnet.const import (
    LOG_FORMAT_VERSION,
    SWB_MAX,
    SWB_MIN,
    RecordType,
    TieDecision,
    TieState,
)
from pyswbnet.exceptions import LogParseError, SwbNetError
from pyswbnet.models import (
    EdgesRecord,
    EventLog,
    HeaderRecord,
    LogRecord,
    RewiringRecord,
    SwbRecord,
)

_LOGGER = logging.getLogger(__name__)

ALLOWED_DECISIONS = {
    TieState.CONNECTED: frozenset({TieDecision.KEEP, TieDecision.CUT}),
    TieState.UNCONNECTED: frozenset(
        {TieDecision.PROPOSE_ACCEPT, TieDecision.PROPOSE_REJECT, TieDecision.NO_TIE}
    ),
}


def dump_record(record: LogRecord) -> str:
    """Serialize a record to a single compact JSON line."""
    return json.dumps(record.to_dict(), separators=(",", ":"))


def dump_log(log: EventLog) -> str:
    """Serialize a whole log, one record per line."""
    return "".join(f"{dump_record(record)}\n" for record in log.records())


def write_log(log: EventLog, path: Path) -> None:
    """Write a log to `path`."""
    path.write_text(dump_log(log), encoding="utf-8")
    _LOGGER.debug("Wrote event log %s", path)


def _expected_counts(log: EventLog) -> dict[RecordType, int]:
    config = log.config
    n, rounds = config.n_players, config.rounds
    return {
        RecordType.DECISION: n * rounds,
        RecordType.PAYOFF: n * rounds,
        RecordType.SWB: n * rounds,
        RecordType.EDGES: rounds + 1,
        RecordType.PAYOUT: n,
    }


def _pair_problem(pair: tuple[int, int], n: int) -> str | None:
    u, v = pair
    if not 0 <= u < v < n:
        return f"pair {list(pair)} not an ordered pair of players 0..{n - 1}"
    return None


def _index_problem(record: LogRecord, log: EventLog) -> str | None:
    config = log.config
    n = config.n_players
    player = getattr(record, "player", None)
    if player is not None and not 0 <= player < n:
        return f"player {player} out of range"
    round_number = getattr(record, "round", None)
    lowest = 0 if record.record_type is RecordType.EDGES else 1
    if round_number is not None and not lowest <= round_number <= config.rounds:
        return f"round {round_number} out of range"
    match record:
        case EdgesRecord(edges=edges):
            for edge in edges:
                if problem := _pair_problem(edge, n):
                    return f"edge {problem}"
        case SwbRecord(q1=q1, q2=q2):
            if not (SWB_MIN <= q1 <= SWB_MAX and SWB_MIN <= q2 <= SWB_MAX):
                return f"rating ({q1}, {q2}) outside {SWB_MIN}..{SWB_MAX}"
        case RewiringRecord(pair=pair, decider=decider):
            if problem := _pair_problem(pair, n):
                return problem
            if decider not in pair:
                return f"decider {decider} not in pair {list(pair)}"
            if record.decision not in ALLOWED_DECISIONS[record.pre_state]:
                return f"decision {record.decision} impossible when {record.pre_state}"
    return None


def parse_log(lines: Iterable[str], path: Path | str = "<memory>") -> EventLog:
    """Parse log lines; reject corrupt, misordered or truncated logs."""
    log: EventLog | None = None
    previous: tuple[int, ...] | None = None
    line_number = 0
    text = ""
    for line_number, raw in enumerate(lines, start=1):
        text = raw.rstrip("\n")
        if not text.strip():
            continue
        try:
            record = LogRecord.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise LogParseError(
                path, line_number, text, f"invalid JSON: {exc.msg}"
            ) from exc
        except SuitableVariantNotFoundError as exc:
            raise LogParseError(path, line_number, text, "unknown record type") from exc
        except (
            MissingField,
            InvalidFieldValue,
            SwbNetError,
            TypeError,
            ValueError,
        ) as exc:
            raise LogParseError(
                path, line_number, text, f"invalid record: {exc}"
            ) from exc

        if log is None:
            if not isinstance(record, HeaderRecord):
                raise LogParseError(path, line_number, text, "log must start with HDR")
            if record.version != LOG_FORMAT_VERSION:
                raise LogParseError(
                    path,
                    line_number,
                    text,
                    f"unsupported log version {record.version}",
                )
            log = EventLog(header=record)
            continue
        if isinstance(record, HeaderRecord):
            raise LogParseError(path, line_number, text, "duplicate HDR record")

        problem = _index_problem(record, log)
        if problem:
            raise LogParseError(path, line_number, text, problem)
        key = record.order_key(log.config.rounds)
        if previous is not None and key <= previous:
            raise LogParseError(path, line_number, text, "record out of order")
        previous = key
        log.append(record)

    if log is None:
        raise LogParseError(path, line_number, text, "empty log")
    counts = {
        RecordType.DECISION: len(log.decisions),
        RecordType.PAYOFF: len(log.payoffs),
        RecordType.SWB: len(log.ratings),
        RecordType.EDGES: len(log.snapshots),
        RecordType.PAYOUT: len(log.payouts),
    }
    for record_type, expected in _expected_counts(log).items():
        if counts[record_type] != expected:
            raise LogParseError(
                path,
                line_number,
                text,
                f"truncated log: {counts[record_type]} {record_type} records, "
                f"expected {expected}",
            )
    return log


def read_log(path: Path) -> EventLog:
    """Read and validate a log file."""
    with path.open(encoding="utf-8") as handle:
        return parse_log(handle, path)
