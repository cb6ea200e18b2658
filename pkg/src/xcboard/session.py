"""Live-session state machine: codes, joins, ordered ingestion, board ops.

One Session instance must only be mutated by a single logical writer (the
server funnels every mutation for a session through one queue); under that
rule the item log is totally ordered with gapless 1-based sequence numbers
and ingestion is idempotent per (author_id, client_msg_id).

Content never affects acceptance: during collect and organize every valid
non-duplicate item lands on the board.  There is no delete; items can be
tagged, moved and clustered but never removed.
"""

from __future__ import annotations

import copy
import uuid
from dataclasses import dataclass, field

from .rng import SplitMix64

PHASES = ("collect", "organize", "evaluate")
PARTICIPANT_ROLES = ("facilitator", "contributor")
ITEM_KINDS = ("text", "image")
OP_KINDS = ("move", "assign-cluster", "tag", "untag", "vote", "unvote", "set-phase")

# 31 characters; 0/O, 1/I/L left out so codes survive being read aloud
CODE_ALPHABET = "ABCDEFGHJKMNPQRSTUVWXYZ23456789"
CODE_LENGTH = 6

MAX_BODY_CHARS = 2000
MAX_NAME_CHARS = 64


class SessionError(ValueError):
    """Invalid command against a session (unknown actor/target, bad body)."""


class PhaseError(SessionError):
    """Command not allowed in the session's current phase."""


class IntegrityError(SessionError):
    """A snapshot or log is internally inconsistent (sequence gaps)."""


@dataclass
class Participant:
    participant_id: str
    display_name: str
    joined_at: float
    role: str


@dataclass
class BoardItem:
    seq: int
    author_id: str
    client_msg_id: str
    kind: str
    body: str
    received_at: float
    tags: set[str] = field(default_factory=set)
    votes: dict[str, int] = field(default_factory=dict)
    cluster_id: str | None = None
    pos: tuple[float, float] | None = None


@dataclass
class BoardOp:
    op_seq: int
    kind: str
    target: int | None
    payload: dict
    actor: str


@dataclass
class IngestResult:
    item: BoardItem
    duplicate: bool


@dataclass
class Snapshot:
    code: str
    taken_at: float
    snapshot_seq: int
    phase: str
    created_at: float
    participants: list[Participant]
    items: list[BoardItem]
    board_ops: list[BoardOp]


def generate_code(seed: int) -> str:
    rng = SplitMix64(seed)
    return "".join(CODE_ALPHABET[rng.next_below(len(CODE_ALPHABET))] for _ in range(CODE_LENGTH))


@dataclass
class Session:
    code: str
    created_at: float
    phase: str = "collect"
    participants: dict[str, Participant] = field(default_factory=dict)
    items: list[BoardItem] = field(default_factory=list)
    board_ops: list[BoardOp] = field(default_factory=list)
    # (author_id, client_msg_id) -> assigned seq; key set doubles as seen_msgs
    seen_msgs: dict[tuple[str, str], int] = field(default_factory=dict)

    @property
    def next_seq(self) -> int:
        return len(self.items) + 1

    @property
    def next_op_seq(self) -> int:
        return len(self.board_ops) + 1

    # -- participants ------------------------------------------------------

    def join(
        self,
        display_name: str,
        role: str = "contributor",
        *,
        now: float,
        participant_id: str | None = None,
    ) -> Participant:
        name = display_name.strip()[:MAX_NAME_CHARS]
        if not name:
            raise SessionError("display name is empty after trimming")
        if role not in PARTICIPANT_ROLES:
            raise SessionError(f"unknown role {role!r}")
        pid = participant_id or uuid.uuid4().hex
        if pid in self.participants:
            raise SessionError(f"participant id {pid!r} already joined")
        participant = Participant(
            participant_id=pid, display_name=name, joined_at=now, role=role
        )
        self.participants[pid] = participant
        return participant

    def _require_participant(self, pid: str) -> Participant:
        try:
            return self.participants[pid]
        except KeyError:
            raise SessionError(f"unknown participant {pid!r}") from None

    # -- ingestion ---------------------------------------------------------

    def ingest(
        self, author_id: str, client_msg_id: str, kind: str, body: str, now: float
    ) -> IngestResult:
        """Append one item, or return the already-assigned item on retry.

        Acceptance depends only on validity, never on content: any trimmed
        body of 1..2000 chars from a joined author lands on the board.
        """
        self._require_participant(author_id)
        if not client_msg_id:
            raise SessionError("client_msg_id must be non-empty")
        key = (author_id, client_msg_id)
        if key in self.seen_msgs:
            return IngestResult(item=self.items[self.seen_msgs[key] - 1], duplicate=True)
        if kind not in ITEM_KINDS:
            raise SessionError(f"unknown item kind {kind!r}")
        if self.phase == "evaluate":
            raise PhaseError("the evaluate phase does not accept new items")
        text = body.strip()
        if not 1 <= len(text) <= MAX_BODY_CHARS:
            raise SessionError(
                f"body must be 1..{MAX_BODY_CHARS} chars after trimming, got {len(text)}"
            )
        item = BoardItem(
            seq=self.next_seq,
            author_id=author_id,
            client_msg_id=client_msg_id,
            kind=kind,
            body=text,
            received_at=now,
        )
        self.items.append(item)
        self.seen_msgs[key] = item.seq
        return IngestResult(item=item, duplicate=False)

    # -- board organization ------------------------------------------------

    def _require_item(self, target) -> BoardItem:
        if not isinstance(target, int) or not 1 <= target <= len(self.items):
            raise SessionError(f"unknown item target {target!r}")
        return self.items[target - 1]

    def apply_board_op(
        self, kind: str, target: int | None, payload: dict, actor: str
    ) -> BoardOp:
        actor_p = self._require_participant(actor)
        if kind not in OP_KINDS:
            raise SessionError(f"unknown board op kind {kind!r}")
        payload = dict(payload)

        if kind == "set-phase":
            if actor_p.role != "facilitator":
                raise SessionError("only the facilitator may change the phase")
            new_phase = payload.get("phase")
            if new_phase not in PHASES:
                raise SessionError(f"unknown phase {new_phase!r}")
            if PHASES.index(new_phase) <= PHASES.index(self.phase):
                raise PhaseError(
                    f"phase may only move forward, not {self.phase} -> {new_phase}"
                )
            self.phase = new_phase
        elif kind == "move":
            item = self._require_item(target)
            try:
                x, y = float(payload["x"]), float(payload["y"])
            except (KeyError, TypeError, ValueError):
                raise SessionError("move needs numeric 'x' and 'y'") from None
            item.pos = (x, y)
        elif kind == "assign-cluster":
            item = self._require_item(target)
            cluster = payload.get("cluster")
            if cluster is not None and (not isinstance(cluster, str) or not cluster):
                raise SessionError("'cluster' must be a non-empty string or null")
            item.cluster_id = cluster
        elif kind in ("tag", "untag"):
            item = self._require_item(target)
            tag = payload.get("tag")
            if not isinstance(tag, str) or not tag.strip():
                raise SessionError(f"{kind} needs a non-empty 'tag'")
            if kind == "tag":
                item.tags.add(tag.strip())
            else:
                item.tags.discard(tag.strip())
        else:  # vote / unvote; postponed evaluation: never during collect
            if self.phase == "collect":
                raise PhaseError("voting is postponed until the organize phase")
            item = self._require_item(target)
            if kind == "vote":
                value = payload.get("value", 1)
                if isinstance(value, bool) or not isinstance(value, int):
                    raise SessionError("'value' must be an integer")
                item.votes[actor] = value
            else:
                item.votes.pop(actor, None)

        op = BoardOp(
            op_seq=self.next_op_seq, kind=kind, target=target, payload=payload, actor=actor
        )
        self.board_ops.append(op)
        return op

    # -- snapshots ---------------------------------------------------------

    def snapshot(self, now: float) -> Snapshot:
        return Snapshot(
            code=self.code,
            taken_at=now,
            snapshot_seq=self.next_seq - 1,
            phase=self.phase,
            created_at=self.created_at,
            participants=copy.deepcopy(list(self.participants.values())),
            items=copy.deepcopy(self.items),
            board_ops=copy.deepcopy(self.board_ops),
        )


def create_session(seed: int, now: float) -> Session:
    """Fresh session with a code drawn from the 31-char alphabet."""
    return Session(code=generate_code(seed), created_at=now)


def restore(snap: Snapshot) -> Session:
    """Rebuild a live session from a snapshot; ingestion continues gaplessly."""
    for k, item in enumerate(snap.items):
        if item.seq != k + 1:
            raise IntegrityError(
                f"snapshot has a sequence gap: position {k + 1} holds seq {item.seq}"
            )
    for k, op in enumerate(snap.board_ops):
        if op.op_seq != k + 1:
            raise IntegrityError(
                f"snapshot has an op gap: position {k + 1} holds op_seq {op.op_seq}"
            )
    if snap.phase not in PHASES:
        raise IntegrityError(f"snapshot names unknown phase {snap.phase!r}")
    session = Session(code=snap.code, created_at=snap.created_at, phase=snap.phase)
    session.participants = {
        p.participant_id: copy.deepcopy(p) for p in snap.participants
    }
    session.items = copy.deepcopy(snap.items)
    session.board_ops = copy.deepcopy(snap.board_ops)
    session.seen_msgs = {
        (item.author_id, item.client_msg_id): item.seq for item in session.items
    }
    if len(session.seen_msgs) != len(session.items):
        raise IntegrityError("snapshot contains duplicate (author, client_msg_id) pairs")
    return session


# ---------------------------------------------------------------------------
# snapshot document form (one UTF-8 JSON document per snapshot)


def _item_to_obj(item: BoardItem) -> dict:
    return {
        "seq": item.seq,
        "author_id": item.author_id,
        "client_msg_id": item.client_msg_id,
        "kind": item.kind,
        "body": item.body,
        "received_at": item.received_at,
        "tags": sorted(item.tags),
        "votes": dict(sorted(item.votes.items())),
        "cluster_id": item.cluster_id,
        "pos": None if item.pos is None else {"x": item.pos[0], "y": item.pos[1]},
    }


def _item_from_obj(obj: dict) -> BoardItem:
    pos = obj.get("pos")
    return BoardItem(
        seq=obj["seq"],
        author_id=obj["author_id"],
        client_msg_id=obj["client_msg_id"],
        kind=obj["kind"],
        body=obj["body"],
        received_at=obj["received_at"],
        tags=set(obj.get("tags", ())),
        votes=dict(obj.get("votes", {})),
        cluster_id=obj.get("cluster_id"),
        pos=None if pos is None else (pos["x"], pos["y"]),
    )


def snapshot_to_doc(snap: Snapshot) -> dict:
    return {
        "code": snap.code,
        "taken_at": snap.taken_at,
        "snapshot_seq": snap.snapshot_seq,
        "phase": snap.phase,
        "created_at": snap.created_at,
        "participants": [
            {
                "participant_id": p.participant_id,
                "display_name": p.display_name,
                "joined_at": p.joined_at,
                "role": p.role,
            }
            for p in snap.participants
        ],
        "items": [_item_to_obj(i) for i in snap.items],
        "board_ops": [
            {
                "op_seq": o.op_seq,
                "kind": o.kind,
                "target": o.target,
                "payload": o.payload,
                "actor": o.actor,
            }
            for o in snap.board_ops
        ],
    }


def snapshot_from_doc(doc: dict) -> Snapshot:
    try:
        return Snapshot(
            code=doc["code"],
            taken_at=doc["taken_at"],
            snapshot_seq=doc["snapshot_seq"],
            phase=doc["phase"],
            created_at=doc["created_at"],
            participants=[
                Participant(
                    participant_id=p["participant_id"],
                    display_name=p["display_name"],
                    joined_at=p["joined_at"],
                    role=p["role"],
                )
                for p in doc["participants"]
            ],
            items=[_item_from_obj(i) for i in doc["items"]],
            board_ops=[
                BoardOp(
                    op_seq=o["op_seq"],
                    kind=o["kind"],
                    target=o["target"],
                    payload=o["payload"],
                    actor=o["actor"],
                )
                for o in doc["board_ops"]
            ],
        )
    except (KeyError, TypeError) as exc:
        raise IntegrityError(f"malformed snapshot document: {exc!r}") from exc
