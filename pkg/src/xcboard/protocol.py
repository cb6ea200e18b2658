"""Wire protocol: message schemas, canonical framing, resume planning.

Messages are plain dicts carrying ``type`` and ``v`` (protocol version,
currently 1) plus type-specific fields.  A frame is the canonical textual
encoding of one message: JSON with keys sorted lexicographically, no
insignificant whitespace, UTF-8.  Encoding is injective and byte-stable, so
golden frames can be compared byte-for-byte.

The schema is strict in both directions: encoding an invalid message and
decoding a frame with unknown fields, an unknown type, or a foreign version
all fail, each with its own error code.
"""

from __future__ import annotations

import json
import re
from typing import Sequence

from .session import BoardItem, ITEM_KINDS, OP_KINDS, PHASES, PARTICIPANT_ROLES

PROTOCOL_VERSION = 1

_CODE_RE = re.compile(r"[ABCDEFGHJKMNPQRSTUVWXYZ23456789]{6}")

# decode/encode failure codes, one per failure class
MALFORMED = "malformed"
UNKNOWN_TYPE = "unknown-type"
UNKNOWN_FIELD = "unknown-field"
VERSION_MISMATCH = "version-mismatch"
MISSING_FIELD = "missing-field"
BAD_VALUE = "bad-value"


class ProtocolError(ValueError):
    def __init__(self, code: str, detail: str):
        super().__init__(f"{code}: {detail}")
        self.code = code
        self.detail = detail


def _is_nonempty_str(v) -> bool:
    return isinstance(v, str) and bool(v)


def _is_seq(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and v >= 1


def _is_index(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and v >= 0


def _is_u64(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and 0 <= v < 1 << 64


def _is_bool(v) -> bool:
    return isinstance(v, bool)


def _is_str(v) -> bool:
    return isinstance(v, str)


def _is_code(v) -> bool:
    return isinstance(v, str) and _CODE_RE.fullmatch(v) is not None


def _is_kind(v) -> bool:
    return v in ITEM_KINDS


def _is_phase(v) -> bool:
    return v in PHASES


def _is_role(v) -> bool:
    return v in PARTICIPANT_ROLES


# field name -> validator; shared across message types
_FIELD_CHECKS = {
    "code": _is_code,
    "pid": _is_nonempty_str,
    "cmid": _is_nonempty_str,
    "seq": _is_seq,
    "kind": _is_kind,
    "body": _is_str,
    "phase": _is_phase,
    "name": _is_nonempty_str,
    "role": _is_role,
    "duplicate": _is_bool,
    "deck": _is_nonempty_str,
    "seed": _is_u64,
    "entry": _is_nonempty_str,
    "prompt": _is_nonempty_str,
    "err": _is_nonempty_str,
    "detail": _is_str,
    "retry_ms": _is_index,
}

# message type -> (required fields, optional fields); "items"/"op"/"last_seen"
# have structural validators of their own
_SCHEMAS: dict[str, tuple[frozenset, frozenset]] = {
    "hello": (frozenset({"code", "name"}), frozenset({"role", "pid"})),
    "welcome": (frozenset({"code", "pid", "phase"}), frozenset()),
    "contribute": (frozenset({"cmid", "kind", "body"}), frozenset()),
    "ack": (frozenset({"cmid", "seq", "duplicate"}), frozenset()),
    "item_broadcast": (frozenset({"seq", "pid", "cmid", "kind", "body"}), frozenset()),
    "board_op": (frozenset({"cmid", "op"}), frozenset()),
    "op_broadcast": (frozenset({"seq", "pid", "op"}), frozenset()),
    "resume": (frozenset({"last_seen"}), frozenset()),
    "resume_batch": (frozenset({"phase", "items"}), frozenset()),
    "draw_stimulus": (frozenset({"deck"}), frozenset({"seed"})),
    "stimulus_card": (frozenset({"deck", "entry", "prompt"}), frozenset()),
    "error": (frozenset({"err"}), frozenset({"detail", "retry_ms", "cmid"})),
}

MESSAGE_TYPES = tuple(sorted(_SCHEMAS))

_ITEM_FIELDS = ("seq", "pid", "cmid", "kind", "body")

# board-op object: kind plus per-kind payload keys; strict like everything else
_OP_REQUIRED: dict[str, frozenset] = {
    "move": frozenset({"target", "x", "y"}),
    "assign-cluster": frozenset({"target", "cluster"}),
    "tag": frozenset({"target", "tag"}),
    "untag": frozenset({"target", "tag"}),
    "vote": frozenset({"target"}),
    "unvote": frozenset({"target"}),
    "set-phase": frozenset({"phase"}),
}
_OP_OPTIONAL: dict[str, frozenset] = {
    "move": frozenset(),
    "assign-cluster": frozenset(),
    "tag": frozenset(),
    "untag": frozenset(),
    "vote": frozenset({"value"}),
    "unvote": frozenset(),
    "set-phase": frozenset(),
}


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _check_op(op, where: str) -> None:
    if not isinstance(op, dict):
        raise ProtocolError(BAD_VALUE, f"{where} must be an object")
    kind = op.get("kind")
    if kind not in OP_KINDS:
        raise ProtocolError(BAD_VALUE, f"{where}.kind {kind!r} is not a board op kind")
    required, optional = _OP_REQUIRED[kind], _OP_OPTIONAL[kind]
    present = set(op) - {"kind"}
    for extra in sorted(present - required - optional):
        raise ProtocolError(UNKNOWN_FIELD, f"{where}.{extra} not allowed for {kind}")
    for missing in sorted(required - present):
        raise ProtocolError(MISSING_FIELD, f"{where}.{missing} required for {kind}")
    checks = {
        "target": _is_seq,
        "x": _is_number,
        "y": _is_number,
        "cluster": lambda v: v is None or _is_nonempty_str(v),
        "tag": _is_nonempty_str,
        "value": lambda v: isinstance(v, int) and not isinstance(v, bool),
        "phase": _is_phase,
    }
    for key in sorted(present):
        if not checks[key](op[key]):
            raise ProtocolError(BAD_VALUE, f"{where}.{key} has invalid value {op[key]!r}")


def _check_items(items, where: str) -> None:
    if not isinstance(items, list):
        raise ProtocolError(BAD_VALUE, f"{where} must be an array")
    for i, obj in enumerate(items):
        spot = f"{where}[{i}]"
        if not isinstance(obj, dict):
            raise ProtocolError(BAD_VALUE, f"{spot} must be an object")
        for extra in sorted(set(obj) - set(_ITEM_FIELDS)):
            raise ProtocolError(UNKNOWN_FIELD, f"{spot}.{extra}")
        for name in _ITEM_FIELDS:
            if name not in obj:
                raise ProtocolError(MISSING_FIELD, f"{spot}.{name}")
            if not _FIELD_CHECKS[name](obj[name]):
                raise ProtocolError(BAD_VALUE, f"{spot}.{name} = {obj[name]!r}")


def validate(message) -> None:
    """Raise ProtocolError unless `message` is schema-valid."""
    if not isinstance(message, dict):
        raise ProtocolError(MALFORMED, "message must be an object")
    if "v" not in message:
        raise ProtocolError(MISSING_FIELD, "v")
    if message["v"] != PROTOCOL_VERSION or isinstance(message["v"], bool):
        raise ProtocolError(
            VERSION_MISMATCH,
            f"protocol version {message['v']!r}, this peer speaks {PROTOCOL_VERSION}",
        )
    if "type" not in message:
        raise ProtocolError(MISSING_FIELD, "type")
    mtype = message["type"]
    if mtype not in _SCHEMAS:
        raise ProtocolError(UNKNOWN_TYPE, f"{mtype!r}")
    required, optional = _SCHEMAS[mtype]
    present = set(message) - {"type", "v"}
    for extra in sorted(present - required - optional):
        raise ProtocolError(UNKNOWN_FIELD, f"{extra} not allowed in {mtype}")
    for missing in sorted(required - present):
        raise ProtocolError(MISSING_FIELD, f"{missing} required in {mtype}")
    for name in sorted(present):
        value = message[name]
        if name == "op":
            _check_op(value, "op")
        elif name == "items":
            _check_items(value, "items")
        elif name == "last_seen":
            if not _is_index(value):
                raise ProtocolError(BAD_VALUE, f"last_seen = {value!r}")
        elif not _FIELD_CHECKS[name](value):
            raise ProtocolError(BAD_VALUE, f"{name} = {value!r} in {mtype}")


def encode(message: dict) -> str:
    """Canonical frame: sorted keys, no insignificant whitespace, UTF-8 text."""
    validate(message)
    return json.dumps(message, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def decode(frame: str | bytes) -> dict:
    """Parse and validate one frame; strict about unknown fields and version."""
    if isinstance(frame, bytes):
        try:
            frame = frame.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ProtocolError(MALFORMED, f"not valid UTF-8: {exc}") from exc
    try:
        message = json.loads(frame)
    except json.JSONDecodeError as exc:
        raise ProtocolError(MALFORMED, f"{exc.msg} at position {exc.pos}") from exc
    validate(message)
    return message


# ---------------------------------------------------------------------------
# message constructors


def _msg(mtype: str, **fields) -> dict:
    message = {"type": mtype, "v": PROTOCOL_VERSION}
    message.update({k: v for k, v in fields.items() if v is not None})
    return message


def hello(code: str, name: str, role: str | None = None, pid: str | None = None) -> dict:
    return _msg("hello", code=code, name=name, role=role, pid=pid)


def welcome(code: str, pid: str, phase: str) -> dict:
    return _msg("welcome", code=code, pid=pid, phase=phase)


def contribute(cmid: str, kind: str, body: str) -> dict:
    return _msg("contribute", cmid=cmid, kind=kind, body=body)


def ack(cmid: str, seq: int, duplicate: bool) -> dict:
    return _msg("ack", cmid=cmid, seq=seq, duplicate=duplicate)


def item_broadcast(seq: int, pid: str, cmid: str, kind: str, body: str) -> dict:
    return _msg("item_broadcast", seq=seq, pid=pid, cmid=cmid, kind=kind, body=body)


def board_op(cmid: str, op: dict) -> dict:
    return _msg("board_op", cmid=cmid, op=op)


def op_broadcast(seq: int, pid: str, op: dict) -> dict:
    return _msg("op_broadcast", seq=seq, pid=pid, op=op)


def resume(last_seen: int) -> dict:
    return _msg("resume", last_seen=last_seen)


def resume_batch(phase: str, items: list[dict]) -> dict:
    return _msg("resume_batch", phase=phase, items=items)


def draw_stimulus(deck: str, seed: int | None = None) -> dict:
    return _msg("draw_stimulus", deck=deck, seed=seed)


def stimulus_card(deck: str, entry: str, prompt: str) -> dict:
    return _msg("stimulus_card", deck=deck, entry=entry, prompt=prompt)


def error(
    err: str,
    detail: str | None = None,
    retry_ms: int | None = None,
    cmid: str | None = None,
) -> dict:
    return _msg("error", err=err, detail=detail, retry_ms=retry_ms, cmid=cmid)


def wire_item(item: BoardItem) -> dict:
    return {
        "seq": item.seq,
        "pid": item.author_id,
        "cmid": item.client_msg_id,
        "kind": item.kind,
        "body": item.body,
    }


def plan_resume(last_seen_seq: int, items: Sequence[BoardItem], phase: str) -> dict:
    """resume_batch covering everything after last_seen_seq, in seq order."""
    if not 0 <= last_seen_seq <= len(items):
        raise ValueError(
            f"last_seen {last_seen_seq} out of range 0..{len(items)}"
        )
    batch = [wire_item(i) for i in items[last_seen_seq:]]
    return resume_batch(phase=phase, items=batch)
