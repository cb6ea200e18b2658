"""Append-only per-session event logs and deterministic replay.

One UTF-8 file per session under ``<data_dir>/sessions/<CODE>.log``, one
canonically encoded record per line.  Replaying records 1..k through the
session state machine reconstructs the state after event k, which makes the
write-ahead discipline testable: an ack may only be sent once the record
that produced it is flushed and fsynced.

Recovery rules: a torn final line (the classic kill-during-write artifact)
is dropped, because its event can never have been acked; a malformed line
anywhere else, or a gap in record_seq, marks the whole log corrupt.
"""

from __future__ import annotations

import json
import logging
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from . import session as session_mod
from .session import Session

logger = logging.getLogger(__name__)

EVENT_KINDS = (
    "session_created",
    "participant_joined",
    "item_ingested",
    "board_op_applied",
    "snapshot_taken",
    "phase_changed",
)

_CODE_FILE_RE = re.compile(r"([A-Z2-9]{6})\.log")


class LogCorruptError(Exception):
    pass


@dataclass(frozen=True)
class EventRecord:
    code: str
    record_seq: int
    recorded_at: float
    event: str
    payload: dict

    def to_line(self) -> str:
        doc = {
            "code": self.code,
            "record_seq": self.record_seq,
            "recorded_at": self.recorded_at,
            "event": self.event,
            "payload": self.payload,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _record_from_obj(obj: dict) -> EventRecord:
    try:
        record = EventRecord(
            code=obj["code"],
            record_seq=obj["record_seq"],
            recorded_at=obj["recorded_at"],
            event=obj["event"],
            payload=obj["payload"],
        )
    except (KeyError, TypeError) as exc:
        raise LogCorruptError(f"record missing field: {exc}") from exc
    if record.event not in EVENT_KINDS:
        raise LogCorruptError(f"unknown event kind {record.event!r}")
    return record


class SessionLog:
    """Open append handle for one session's log file."""

    def __init__(self, path: Path, code: str, next_record_seq: int = 1):
        self.path = path
        self.code = code
        self.next_record_seq = next_record_seq
        self._fh = open(path, "a", encoding="utf-8")

    def append(self, event: str, payload: dict, recorded_at: float) -> EventRecord:
        """Buffer one record; not durable until commit() returns."""
        record = EventRecord(
            code=self.code,
            record_seq=self.next_record_seq,
            recorded_at=recorded_at,
            event=event,
            payload=payload,
        )
        self._fh.write(record.to_line() + "\n")
        self.next_record_seq += 1
        return record

    def commit(self) -> None:
        """Flush buffered records to stable storage (group commit point)."""
        self._fh.flush()
        os.fsync(self._fh.fileno())

    def close(self) -> None:
        try:
            self._fh.flush()
        finally:
            self._fh.close()


class LogStore:
    """The directory of per-session logs."""

    def __init__(self, data_dir: Path | str):
        self.data_dir = Path(data_dir)
        self.sessions_dir = self.data_dir / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, code: str) -> Path:
        return self.sessions_dir / f"{code}.log"

    def list_codes(self) -> list[str]:
        codes = []
        for entry in self.sessions_dir.iterdir():
            m = _CODE_FILE_RE.fullmatch(entry.name)
            if m:
                codes.append(m.group(1))
        return sorted(codes)

    def exists(self, code: str) -> bool:
        return self._path(code).is_file()

    def open_log(
        self, code: str, next_record_seq: int = 1, truncate_to: int | None = None
    ) -> SessionLog:
        if truncate_to is not None:
            os.truncate(self._path(code), truncate_to)
        return SessionLog(self._path(code), code, next_record_seq)

    def recover(self, code: str) -> tuple[list[EventRecord], int]:
        """Committed records plus the byte length of the valid file prefix.

        The byte length is what open_log must truncate to before appending,
        so a torn tail never glues itself onto the next record.
        """
        path = self._path(code)
        if not path.is_file():
            raise LogCorruptError(f"no log for session {code!r}")
        raw = path.read_bytes()
        lines = raw.split(b"\n")
        trailing = lines.pop()  # b"" after a clean final newline, else a torn tail
        records: list[EventRecord] = []
        valid_len = 0
        for i, line in enumerate(lines):
            try:
                obj = json.loads(line.decode("utf-8"))
                record = _record_from_obj(obj)
            except (UnicodeDecodeError, json.JSONDecodeError, LogCorruptError) as exc:
                if i == len(lines) - 1 and trailing == b"":
                    # a torn write can also land exactly on a newline boundary
                    logger.warning("dropping torn final record in %s: %s", path.name, exc)
                    break
                raise LogCorruptError(f"{path.name} line {i + 1}: {exc}") from exc
            records.append(record)
            valid_len += len(line) + 1
        if trailing != b"":
            logger.warning("dropping torn final record in %s (no newline)", path.name)
        for i, record in enumerate(records):
            if record.record_seq != i + 1:
                raise LogCorruptError(
                    f"{path.name}: record_seq gap at line {i + 1} "
                    f"(found {record.record_seq})"
                )
        return records, valid_len

    def read_records(self, code: str) -> list[EventRecord]:
        """All committed records for a session, torn tail dropped."""
        return self.recover(code)[0]


def replay(records: Iterable[EventRecord]) -> Session:
    """Fold a session's records through the state machine.

    The first record must be session_created.  Every derived value in the
    records (assigned seqs, op_seqs) is cross-checked against what the state
    machine actually assigns, so drift shows up as corruption, not as
    silently different state.
    """
    session: Session | None = None
    for record in records:
        payload = record.payload
        if record.event == "session_created":
            if session is not None:
                raise LogCorruptError("second session_created record")
            session = Session(code=payload["code"], created_at=payload["created_at"])
            continue
        if session is None:
            raise LogCorruptError(f"log starts with {record.event}, not session_created")
        if record.event == "participant_joined":
            session.join(
                payload["display_name"],
                payload["role"],
                now=payload["joined_at"],
                participant_id=payload["participant_id"],
            )
        elif record.event == "item_ingested":
            result = session.ingest(
                payload["author_id"],
                payload["client_msg_id"],
                payload["kind"],
                payload["body"],
                now=payload["received_at"],
            )
            if result.duplicate or result.item.seq != payload["seq"]:
                raise LogCorruptError(
                    f"replayed item landed at seq {result.item.seq}, "
                    f"log says {payload['seq']}"
                )
        elif record.event in ("board_op_applied", "phase_changed"):
            op = session.apply_board_op(
                payload["kind"], payload["target"], payload["payload"], payload["actor"]
            )
            if op.op_seq != payload["op_seq"]:
                raise LogCorruptError(
                    f"replayed op landed at op_seq {op.op_seq}, "
                    f"log says {payload['op_seq']}"
                )
        elif record.event == "snapshot_taken":
            pass  # informational; snapshots don't change live state
        else:  # unreachable: _record_from_obj already screens event kinds
            raise LogCorruptError(f"unknown event kind {record.event!r}")
    if session is None:
        raise LogCorruptError("empty log: session unknown")
    return session


# canonical event payload builders, shared by server and tests


def session_created_payload(session: Session) -> dict:
    return {"code": session.code, "created_at": session.created_at}


def participant_joined_payload(p: session_mod.Participant) -> dict:
    return {
        "participant_id": p.participant_id,
        "display_name": p.display_name,
        "role": p.role,
        "joined_at": p.joined_at,
    }


def item_ingested_payload(item: session_mod.BoardItem) -> dict:
    return {
        "seq": item.seq,
        "author_id": item.author_id,
        "client_msg_id": item.client_msg_id,
        "kind": item.kind,
        "body": item.body,
        "received_at": item.received_at,
    }


def board_op_payload(op: session_mod.BoardOp) -> dict:
    return {
        "op_seq": op.op_seq,
        "kind": op.kind,
        "target": op.target,
        "payload": op.payload,
        "actor": op.actor,
    }
