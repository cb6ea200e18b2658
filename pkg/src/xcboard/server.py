"""The network service: HTTP session lifecycle, streams, durable event logs.

Concurrency layout: every session has exactly one writer task; connection
readers and HTTP handlers submit commands to its queue and await replies.
The writer applies a drained batch of commands to the state machine, makes
the whole batch durable with a single fsync (group commit), and only then
releases acks and fans out broadcasts — so an ack always implies the item
is on disk, and every attached observer sees item_broadcasts in seq order.

Stream lifecycle: hello -> welcome, then the client sends resume(last_seen)
and the writer atomically replies resume_batch and marks the connection
live.  Because both happen inside one writer command, the batch plus the
following live broadcasts cover every seq above last_seen exactly once.
"""

from __future__ import annotations

import asyncio
import dataclasses
import hashlib
import json
import logging
import re
import secrets
import time
from dataclasses import dataclass, field
from pathlib import Path

from aiohttp import WSMsgType, web

from . import eventlog, protocol, resources, stimulus
from . import session as session_mod
from .clustering import cluster, clusters_to_doc
from .eventlog import LogCorruptError, LogStore
from .session import PhaseError, Session, SessionError

logger = logging.getLogger(__name__)

SERVER_KEY: web.AppKey["BoardServer"] = web.AppKey("server")
WEBSOCKETS_KEY: web.AppKey[set] = web.AppKey("websockets")

DEFAULT_RATE_LIMIT = 10.0
DEFAULT_RATE_BURST = 30
DEFAULT_ASSET_CAP = 5 * 1024 * 1024
DEFAULT_IDLE_TTL = 24 * 3600.0
DEFAULT_MAX_SESSIONS = 1024

MALFORMED_STRIKE_LIMIT = 3
OUTBOUND_QUEUE_DEPTH = 100_000
COMMAND_QUEUE_DEPTH = 4096

_ASSET_REF_RE = re.compile(r"[0-9a-f]{64}")
_CODE_RE = re.compile(r"[A-Z2-9]{6}")


class ConfigError(ValueError):
    pass


@dataclass
class ServerConfig:
    data_dir: Path
    bind_host: str = "127.0.0.1"
    bind_port: int = 0
    max_sessions: int = DEFAULT_MAX_SESSIONS
    rate_limit: float = DEFAULT_RATE_LIMIT
    rate_burst: int = DEFAULT_RATE_BURST
    asset_cap: int = DEFAULT_ASSET_CAP
    idle_ttl: float = DEFAULT_IDLE_TTL
    test_mode: bool = False
    static_dir: Path | None = None

    def validate(self) -> None:
        limits = {
            "max sessions": self.max_sessions,
            "rate limit": self.rate_limit,
            "rate burst": self.rate_burst,
            "asset size cap": self.asset_cap,
            "idle TTL": self.idle_ttl,
        }
        for name, value in limits.items():
            if value <= 0:
                raise ConfigError(f"{name} must be positive, got {value}")


class TokenBucket:
    """Per-participant flow control: `rate` tokens/sec, holding `burst` max."""

    def __init__(self, rate: float, burst: int, now: float):
        self.rate = rate
        self.burst = float(burst)
        self.tokens = float(burst)
        self.stamp = now

    def try_take(self, now: float) -> int:
        """0 if a token was taken, else suggested retry delay in ms."""
        self.tokens = min(self.burst, self.tokens + (now - self.stamp) * self.rate)
        self.stamp = now
        if self.tokens >= 1.0:
            self.tokens -= 1.0
            return 0
        return max(1, int((1.0 - self.tokens) / self.rate * 1000))


@dataclass(eq=False)
class Subscriber:
    """One stream connection's outbound side, fed only by the writer task."""

    queue: asyncio.Queue = field(
        default_factory=lambda: asyncio.Queue(maxsize=OUTBOUND_QUEUE_DEPTH)
    )
    live: bool = False  # set by the writer when resume is processed
    closed: bool = False

    def push(self, frame: str) -> None:
        if self.closed:
            return
        try:
            self.queue.put_nowait(frame)
        except asyncio.QueueFull:
            # a consumer this far behind is better disconnected; it can resume
            self.closed = True
            try:
                self.queue.put_nowait(None)
            except asyncio.QueueFull:
                pass


@dataclass
class _Command:
    kind: str
    args: dict
    future: asyncio.Future


class LiveSession:
    """A session's in-memory state plus its single writer task."""

    def __init__(self, session: Session, log: eventlog.SessionLog):
        self.session = session
        self.log = log
        self.queue: asyncio.Queue[_Command] = asyncio.Queue(maxsize=COMMAND_QUEUE_DEPTH)
        self.subscribers: set[Subscriber] = set()
        self.read_only = False
        self.last_activity = time.time()
        self.task = asyncio.create_task(self._writer(), name=f"writer-{session.code}")

    async def submit(self, cmd_kind: str, **args):
        if self.task.done():
            raise SessionError("session writer stopped")
        fut = asyncio.get_running_loop().create_future()
        await self.queue.put(_Command(cmd_kind, args, fut))
        return await fut

    async def stop(self) -> None:
        try:
            await self.submit("stop")
        except Exception:
            pass
        await self.task
        self._fail_pending()

    def _fail_pending(self) -> None:
        while True:
            try:
                cmd = self.queue.get_nowait()
            except asyncio.QueueEmpty:
                return
            if not cmd.future.cancelled():
                cmd.future.set_exception(SessionError("session writer stopped"))

    # -- writer ------------------------------------------------------------

    async def _writer(self) -> None:
        try:
            stopping = False
            while not stopping:
                stopping = self._run_batch([await self.queue.get()])
        finally:
            self.log.close()
            self._fail_pending()

    def _run_batch(self, batch: list[_Command]) -> bool:
        while True:
            try:
                batch.append(self.queue.get_nowait())
            except asyncio.QueueEmpty:
                break
        stopping = False
        outcomes: list[tuple[asyncio.Future, object, BaseException | None]] = []
        # effects run post-commit, in command order, so a subscriber attached
        # mid-batch misses broadcasts already covered by its resume batch and
        # receives everything after it
        effects: list[tuple] = []
        dirty = False
        for cmd in batch:
            if cmd.kind == "stop":
                stopping = True
                outcomes.append((cmd.future, None, None))
                continue
            try:
                result, events, cmd_effects = self._apply(cmd)
            except (SessionError, ValueError) as exc:
                outcomes.append((cmd.future, None, exc))
                continue
            if events and self.read_only:
                outcomes.append(
                    (cmd.future, None, SessionError("session is read-only"))
                )
                continue
            wrote = False
            try:
                for ev_kind, payload, at in events:
                    self.log.append(ev_kind, payload, at)
                    wrote = True
            except OSError as exc:
                logger.error("log append failed for %s: %s", self.session.code, exc)
                self.read_only = True
                outcomes.append((cmd.future, None, SessionError("session is read-only")))
                continue
            dirty = dirty or wrote
            outcomes.append((cmd.future, result, None))
            effects.extend(cmd_effects)
        if dirty:
            try:
                self.log.commit()
            except OSError as exc:
                logger.error("log commit failed for %s: %s", self.session.code, exc)
                self.read_only = True
                # nothing in this batch is durable: fail acks, drop fanout
                outcomes = [
                    (fut, None, err or SessionError("session is read-only"))
                    for fut, _, err in outcomes
                ]
                effects = []
        self.last_activity = time.time()
        for effect in effects:
            if effect[0] == "broadcast":
                for sub in self.subscribers:
                    if sub.live:
                        sub.push(effect[1])
            elif effect[0] == "attach":
                _, sub, frame = effect
                sub.push(frame)
                sub.live = True
                self.subscribers.add(sub)
            elif effect[0] == "detach":
                self.subscribers.discard(effect[1])
        for fut, result, err in outcomes:
            if fut.cancelled():
                continue
            if err is not None:
                fut.set_exception(err)
            else:
                fut.set_result(result)
        return stopping

    def _apply(self, cmd: _Command):
        """Run one command against the state machine.

        Returns (reply value, events to persist, frames to broadcast).
        Raises SessionError/ValueError for rejections; the caller turns
        those into error replies without touching the log.
        """
        s = self.session
        a = cmd.args
        now = time.time()
        if cmd.kind == "join":
            pid = a.get("pid")
            if pid is not None:
                existing = s.participants.get(pid)
                if existing is None:
                    raise SessionError(f"unknown participant {pid!r}")
                return existing, [], []
            participant = s.join(a["name"], a["role"], now=now)
            events = [
                (
                    "participant_joined",
                    eventlog.participant_joined_payload(participant),
                    now,
                )
            ]
            return participant, events, []
        if cmd.kind == "contribute":
            result = s.ingest(a["pid"], a["cmid"], a["kind"], a["body"], now=now)
            if result.duplicate:
                return result, [], []
            events = [("item_ingested", eventlog.item_ingested_payload(result.item), now)]
            frame = protocol.encode(
                protocol.item_broadcast(**protocol.wire_item(result.item))
            )
            return result, events, [("broadcast", frame)]
        if cmd.kind == "board_op":
            wire_op = a["op"]
            target = wire_op.get("target")
            payload = {k: v for k, v in wire_op.items() if k not in ("kind", "target")}
            op = s.apply_board_op(wire_op["kind"], target, payload, a["pid"])
            ev_kind = "phase_changed" if op.kind == "set-phase" else "board_op_applied"
            events = [(ev_kind, eventlog.board_op_payload(op), now)]
            frame = protocol.encode(
                protocol.op_broadcast(seq=op.op_seq, pid=op.actor, op=_wire_op(op))
            )
            return op, events, [("broadcast", frame)]
        if cmd.kind == "attach":
            batch = protocol.plan_resume(a["last_seen"], s.items, s.phase)
            return None, [], [("attach", a["subscriber"], protocol.encode(batch))]
        if cmd.kind == "detach":
            return None, [], [("detach", a["subscriber"])]
        if cmd.kind == "snapshot":
            snap = s.snapshot(now=now)
            events = []
            if not self.read_only:
                events.append(
                    (
                        "snapshot_taken",
                        {"snapshot_seq": snap.snapshot_seq, "taken_at": snap.taken_at},
                        now,
                    )
                )
            return session_mod.snapshot_to_doc(snap), events, []
        raise ValueError(f"unknown command {cmd.kind!r}")


def _wire_op(op: session_mod.BoardOp) -> dict:
    obj = {"kind": op.kind}
    if op.target is not None:
        obj["target"] = op.target
    obj.update(op.payload)
    return obj


class BoardServer:
    """Application state shared by all handlers."""

    def __init__(self, config: ServerConfig):
        config.validate()
        self.config = config
        self.store = LogStore(config.data_dir)
        self.assets_dir = Path(config.data_dir) / "assets"
        self.assets_dir.mkdir(parents=True, exist_ok=True)
        self.sessions: dict[str, LiveSession] = {}
        self.buckets: dict[tuple[str, str], TokenBucket] = {}
        self._decks: dict[str, stimulus.Deck] | None = None

    # -- startup replay ----------------------------------------------------

    def restore_sessions(self) -> None:
        now = time.time()
        for code in self.store.list_codes():
            try:
                records, valid_len = self.store.recover(code)
                if not records:
                    raise LogCorruptError("empty log")
                if now - records[-1].recorded_at > self.config.idle_ttl:
                    logger.info("session %s idle-expired, not restored", code)
                    continue
                session = eventlog.replay(records)
            except LogCorruptError as exc:
                logger.error("session %s not restored, log corrupt: %s", code, exc)
                continue
            log = self.store.open_log(
                code, next_record_seq=len(records) + 1, truncate_to=valid_len
            )
            self.sessions[code] = LiveSession(session, log)
        if self.sessions:
            logger.info("restored %d session(s)", len(self.sessions))

    # -- helpers -----------------------------------------------------------

    def decks(self) -> dict[str, stimulus.Deck]:
        if self._decks is None:
            self._decks = {}
            for path in resources.default_deck_paths():
                deck = stimulus.load_deck_file(path)
                self._decks[deck.id] = deck
        return self._decks

    def create_session(self, test_seed: int | None) -> tuple[str, bool]:
        """Returns (code, created).  Deterministic codes only in test mode."""
        if test_seed is not None:
            code = session_mod.generate_code(test_seed)
            if code in self.sessions:
                return code, False
            session = session_mod.create_session(test_seed, now=time.time())
            if self.store.exists(code):  # stale test-run leftovers start over
                self.store.open_log(code, truncate_to=0).close()
        else:
            while True:
                session = session_mod.create_session(
                    secrets.randbits(64), now=time.time()
                )
                if session.code not in self.sessions and not self.store.exists(
                    session.code
                ):
                    break
            code = session.code
        log = self.store.open_log(code)
        log.append(
            "session_created",
            eventlog.session_created_payload(session),
            session.created_at,
        )
        log.commit()
        self.sessions[code] = LiveSession(session, log)
        return code, True

    def bucket(self, code: str, pid: str) -> TokenBucket:
        key = (code, pid)
        bucket = self.buckets.get(key)
        if bucket is None:
            bucket = TokenBucket(
                self.config.rate_limit, self.config.rate_burst, time.time()
            )
            self.buckets[key] = bucket
        return bucket

    async def shutdown(self) -> None:
        await asyncio.gather(*(live.stop() for live in self.sessions.values()))


# ---------------------------------------------------------------------------
# HTTP handlers


def _json_error(status: int, err: str, detail: str | None = None) -> web.Response:
    body: dict = {"err": err}
    if detail:
        body["detail"] = detail
    return web.json_response(body, status=status)


async def handle_create_session(request: web.Request) -> web.Response:
    server: BoardServer = request.app[SERVER_KEY]
    test_seed: int | None = None
    header = request.headers.get("X-Test-Seed")
    if header is not None and server.config.test_mode:
        try:
            test_seed = int(header)
        except ValueError:
            return _json_error(400, "bad-value", "X-Test-Seed must be an integer")
    if len(server.sessions) >= server.config.max_sessions:
        return _json_error(429, "capacity", "maximum session count reached")
    code, created = server.create_session(test_seed)
    return web.json_response({"code": code}, status=201 if created else 200)


def _get_live(request: web.Request) -> LiveSession:
    server: BoardServer = request.app[SERVER_KEY]
    code = request.match_info["code"]
    live = server.sessions.get(code)
    if live is None:
        raise web.HTTPNotFound(
            text=json.dumps({"err": "unknown-session", "detail": code}),
            content_type="application/json",
        )
    return live


async def handle_session_info(request: web.Request) -> web.Response:
    live = _get_live(request)
    s = live.session
    return web.json_response(
        {
            "code": s.code,
            "phase": s.phase,
            "participants": len(s.participants),
            "items": len(s.items),
            "created_at": s.created_at,
        }
    )


async def handle_snapshot(request: web.Request) -> web.Response:
    live = _get_live(request)
    doc = await live.submit("snapshot")
    return web.json_response(doc)


async def handle_clusters(request: web.Request) -> web.Response:
    live = _get_live(request)
    raw = request.query.get("threshold", "0.5")
    try:
        threshold = float(raw)
    except ValueError:
        return _json_error(400, "bad-value", f"threshold {raw!r} is not a number")
    if not 0 < threshold <= 1:
        return _json_error(400, "bad-value", "threshold must be in (0, 1]")
    items = [dataclasses.replace(i) for i in live.session.items]
    loop = asyncio.get_running_loop()
    clusters = await loop.run_in_executor(None, cluster, items, threshold)
    return web.json_response(clusters_to_doc(clusters, threshold))


async def handle_asset_upload(request: web.Request) -> web.Response:
    server: BoardServer = request.app[SERVER_KEY]
    _get_live(request)  # 404 for unknown sessions
    cap = server.config.asset_cap
    if request.content_length is not None and request.content_length > cap:
        return _json_error(413, "asset-too-large", f"cap is {cap} bytes")
    data = b""
    async for chunk in request.content.iter_chunked(64 * 1024):
        data += chunk
        if len(data) > cap:
            return _json_error(413, "asset-too-large", f"cap is {cap} bytes")
    ref = hashlib.sha256(data).hexdigest()
    path = server.assets_dir / ref
    if not path.exists():
        tmp = path.with_suffix(".tmp")
        tmp.write_bytes(data)
        tmp.replace(path)
    return web.json_response({"ref": ref})


async def handle_asset_get(request: web.Request) -> web.StreamResponse:
    server: BoardServer = request.app[SERVER_KEY]
    ref = request.match_info["ref"]
    if not _ASSET_REF_RE.fullmatch(ref):
        return _json_error(400, "bad-value", "asset refs are 64 hex chars")
    path = server.assets_dir / ref
    if not path.is_file():
        return _json_error(404, "unknown-asset", ref)
    return web.FileResponse(path)


# ---------------------------------------------------------------------------
# stream handler


async def _send_error(sub: Subscriber, **kwargs) -> None:
    sub.push(protocol.encode(protocol.error(**kwargs)))


async def handle_stream(request: web.Request) -> web.WebSocketResponse:
    server: BoardServer = request.app[SERVER_KEY]
    ws = web.WebSocketResponse(heartbeat=55)
    await ws.prepare(request)

    sub = Subscriber()
    sender = asyncio.create_task(_sender_loop(ws, sub))
    request.app[WEBSOCKETS_KEY].add(ws)
    live: LiveSession | None = None
    try:
        live = await _stream_conversation(server, request, ws, sub)
    finally:
        request.app[WEBSOCKETS_KEY].discard(ws)
        if live is not None:
            try:
                await asyncio.wait_for(live.submit("detach", subscriber=sub), timeout=2)
            except Exception:
                pass
        sub.closed = True
        try:
            sub.queue.put_nowait(None)
        except asyncio.QueueFull:
            pass
        await sender
        await ws.close()
    return ws


async def _sender_loop(ws: web.WebSocketResponse, sub: Subscriber) -> None:
    while True:
        frame = await sub.queue.get()
        if frame is None:
            return
        try:
            await ws.send_str(frame)
        except (ConnectionError, RuntimeError):
            sub.closed = True
            return


async def _recv_frame(ws: web.WebSocketResponse) -> str | None:
    """Next text payload, or None when the peer is gone."""
    msg = await ws.receive()
    if msg.type == WSMsgType.TEXT:
        return msg.data
    if msg.type == WSMsgType.BINARY:
        raise protocol.ProtocolError(protocol.MALFORMED, "frames must be text")
    return None  # close/closing/error


async def _stream_conversation(
    server: BoardServer,
    request: web.Request,
    ws: web.WebSocketResponse,
    sub: Subscriber,
) -> LiveSession | None:
    # the first frame must be a valid hello naming a known session
    try:
        raw = await _recv_frame(ws)
    except protocol.ProtocolError as exc:
        await _send_error(sub, err=exc.code, detail=exc.detail)
        return None
    if raw is None:
        return None
    try:
        msg = protocol.decode(raw)
        if msg["type"] != "hello":
            raise protocol.ProtocolError(
                protocol.BAD_VALUE, "the first frame must be hello"
            )
    except protocol.ProtocolError as exc:
        await _send_error(sub, err=exc.code, detail=exc.detail)
        return None

    live = server.sessions.get(msg["code"])
    if live is None:
        await _send_error(sub, err="unknown-session", detail=msg["code"])
        return None

    try:
        participant = await live.submit(
            "join",
            name=msg["name"],
            role=msg.get("role", "contributor"),
            pid=msg.get("pid"),
        )
    except SessionError as exc:
        await _send_error(sub, err="join-rejected", detail=str(exc))
        return None
    pid = participant.participant_id
    sub.push(
        protocol.encode(
            protocol.welcome(code=live.session.code, pid=pid, phase=live.session.phase)
        )
    )

    strikes = 0
    while not sub.closed:
        try:
            raw = await _recv_frame(ws)
        except protocol.ProtocolError as exc:
            strikes += 1
            await _send_error(sub, err=exc.code, detail=exc.detail)
            if strikes >= MALFORMED_STRIKE_LIMIT:
                break
            continue
        if raw is None:
            break
        try:
            msg = protocol.decode(raw)
        except protocol.ProtocolError as exc:
            strikes += 1
            await _send_error(sub, err=exc.code, detail=exc.detail)
            if strikes >= MALFORMED_STRIKE_LIMIT:
                break
            continue
        await _dispatch(server, live, sub, pid, msg)
    return live


async def _dispatch(
    server: BoardServer,
    live: LiveSession,
    sub: Subscriber,
    pid: str,
    msg: dict,
) -> None:
    mtype = msg["type"]
    if mtype == "contribute":
        retry = server.bucket(live.session.code, pid).try_take(time.time())
        if retry:
            await _send_error(
                sub, err="rate-limited", retry_ms=retry, cmid=msg["cmid"]
            )
            return
        try:
            result = await live.submit(
                "contribute", pid=pid, cmid=msg["cmid"], kind=msg["kind"], body=msg["body"]
            )
        except PhaseError as exc:
            await _send_error(sub, err="phase-closed", detail=str(exc), cmid=msg["cmid"])
            return
        except SessionError as exc:
            await _send_error(sub, err="rejected", detail=str(exc), cmid=msg["cmid"])
            return
        sub.push(
            protocol.encode(
                protocol.ack(
                    cmid=msg["cmid"], seq=result.item.seq, duplicate=result.duplicate
                )
            )
        )
    elif mtype == "board_op":
        retry = server.bucket(live.session.code, pid).try_take(time.time())
        if retry:
            await _send_error(sub, err="rate-limited", retry_ms=retry, cmid=msg["cmid"])
            return
        try:
            await live.submit("board_op", pid=pid, op=msg["op"])
        except PhaseError as exc:
            await _send_error(sub, err="phase-error", detail=str(exc), cmid=msg["cmid"])
        except SessionError as exc:
            await _send_error(sub, err="rejected", detail=str(exc), cmid=msg["cmid"])
    elif mtype == "resume":
        try:
            await live.submit("attach", subscriber=sub, last_seen=msg["last_seen"])
        except ValueError as exc:
            await _send_error(sub, err="bad-value", detail=str(exc))
    elif mtype == "draw_stimulus":
        deck = server.decks().get(msg["deck"])
        if deck is None:
            await _send_error(sub, err="unknown-deck", detail=msg["deck"])
            return
        seed = msg.get("seed")
        if seed is None:
            seed = secrets.randbits(63)
        card = stimulus.draw(deck, seed=seed, n=1)[0]
        sub.push(
            protocol.encode(
                protocol.stimulus_card(deck=deck.id, entry=card.entry, prompt=card.prompt)
            )
        )
    else:
        # structurally valid, but not something a client may send
        await _send_error(
            sub, err="bad-value", detail=f"{mtype} is not a client message"
        )


# ---------------------------------------------------------------------------
# application assembly


def build_app(config: ServerConfig) -> web.Application:
    server = BoardServer(config)
    server.restore_sessions()
    app = web.Application(client_max_size=config.asset_cap + 64 * 1024)
    app[SERVER_KEY] = server
    app[WEBSOCKETS_KEY] = set()
    app.router.add_post("/v1/sessions", handle_create_session)
    app.router.add_get("/v1/sessions/{code}", handle_session_info)
    app.router.add_get("/v1/sessions/{code}/snapshot", handle_snapshot)
    app.router.add_get("/v1/sessions/{code}/clusters", handle_clusters)
    app.router.add_post("/v1/sessions/{code}/assets", handle_asset_upload)
    app.router.add_get("/v1/assets/{ref}", handle_asset_get)
    app.router.add_get("/v1/sessions/{code}/stream", handle_stream)

    static_dir = config.static_dir
    if static_dir is None:
        root = resources.repo_root()
        if root is not None:
            static_dir = root / "frontend" / "dist"
    if static_dir is not None and Path(static_dir).is_dir():
        static_dir = Path(static_dir)

        async def index(_request: web.Request) -> web.FileResponse:
            return web.FileResponse(static_dir / "index.html")

        app.router.add_get("/", index)
        app.router.add_static("/", static_dir)

    async def on_shutdown(app: web.Application) -> None:
        # closing streams first lets their handlers detach while writers live
        for ws in list(app[WEBSOCKETS_KEY]):
            await ws.close()
        await app[SERVER_KEY].shutdown()

    app.on_shutdown.append(on_shutdown)
    return app


@dataclass
class ServerHandle:
    app: web.Application
    runner: web.AppRunner
    host: str
    port: int

    @property
    def server(self) -> BoardServer:
        return self.app[SERVER_KEY]

    async def stop(self) -> None:
        await self.runner.cleanup()


async def start(config: ServerConfig) -> ServerHandle:
    """Bring the service up; raises OSError on bind failure."""
    app = build_app(config)
    runner = web.AppRunner(app)
    await runner.setup()
    site = web.TCPSite(runner, config.bind_host, config.bind_port)
    try:
        await site.start()
    except OSError:
        await runner.cleanup()
        raise
    host, port = site._server.sockets[0].getsockname()[:2]
    return ServerHandle(app=app, runner=runner, host=host, port=port)
