"""Load harness: concurrent stream clients and transcript integrity checks.

The harness answers one question: under a parallel contribution burst, does
every connected observer end up with the identical, gapless seq order?  N
clients connect, resume from 0, send M seeded contributes each (retrying
rate-limit rejections with the same client message id), then drain until
every transcript holds all N*M broadcasts.
"""

from __future__ import annotations

import asyncio
import json
import time
from dataclasses import dataclass

import aiohttp

from . import protocol
from .rng import SplitMix64

CONNECT_FAILURE_ABORT_RATIO = 0.05
DRAIN_TIMEOUT = 300.0


class BenchError(RuntimeError):
    pass


@dataclass
class BenchReport:
    participants: int
    items_sent: int
    items_acked: int
    duration: float
    throughput: float
    order_violations: int
    lost_items: int
    connection_failures: int = 0
    session_code: str = ""

    def to_doc(self) -> dict:
        return {
            "participants": self.participants,
            "items_sent": self.items_sent,
            "items_acked": self.items_acked,
            "duration": round(self.duration, 3),
            "throughput": round(self.throughput, 1),
            "order_violations": self.order_violations,
            "lost_items": self.lost_items,
            "connection_failures": self.connection_failures,
            "session_code": self.session_code,
        }


def seeded_body(seed: int, client: int, k: int) -> str:
    """Deterministic pseudo-idea text for client `client`'s k-th item."""
    rng = SplitMix64(seed ^ (client * 0x9E3779B97F4A7C15) ^ k)
    noun = _WORDS[rng.next_below(len(_WORDS))]
    verb = _VERBS[rng.next_below(len(_VERBS))]
    return f"idea {client}-{k}: {verb} the {noun}"


_WORDS = (
    "kiosk", "satellite", "garden", "bridge", "archive", "beacon", "canteen",
    "drone", "elevator", "fountain", "greenhouse", "harbor", "inbox", "jukebox",
)
_VERBS = (
    "share", "rewire", "float", "shrink", "merge", "repaint", "automate",
    "swap", "stack", "reverse",
)


class StreamClient:
    """One protocol client over a websocket stream.

    A background reader splits incoming frames into the broadcast transcript
    and per-cmid replies, so send loops can await their own acks while
    everyone else's items keep arriving.
    """

    def __init__(self, http: aiohttp.ClientSession, base_url: str, code: str):
        self.http = http
        self.base_url = base_url.rstrip("/")
        self.code = code
        self.ws: aiohttp.ClientWebSocketResponse | None = None
        self.pid: str | None = None
        self.phase: str | None = None
        self.transcript: list[int] = []  # item seqs in arrival order
        self.items_by_seq: dict[int, dict] = {}
        self.acked: dict[str, int] = {}  # cmid -> seq
        self._replies: dict[str, asyncio.Future] = {}
        self._reader: asyncio.Task | None = None
        self._closed = asyncio.Event()

    async def connect(self, name: str, role: str = "contributor",
                      pid: str | None = None, last_seen: int | None = 0) -> None:
        self.ws = await self.http.ws_connect(
            f"{self.base_url}/v1/sessions/{self.code}/stream", heartbeat=55
        )
        await self.ws.send_str(
            protocol.encode(protocol.hello(self.code, name, role=role, pid=pid))
        )
        raw = await self.ws.receive_str()
        msg = protocol.decode(raw)
        if msg["type"] == "error":
            raise BenchError(f"join failed: {msg['err']}")
        assert msg["type"] == "welcome", msg
        self.pid = msg["pid"]
        self.phase = msg["phase"]
        self._reader = asyncio.create_task(self._read_loop())
        if last_seen is not None:
            await self.resume(last_seen)

    async def resume(self, last_seen: int) -> None:
        fut = asyncio.get_running_loop().create_future()
        self._replies["__resume__"] = fut
        await self.ws.send_str(protocol.encode(protocol.resume(last_seen)))
        await fut

    async def _read_loop(self) -> None:
        try:
            async for msg in self.ws:
                if msg.type != aiohttp.WSMsgType.TEXT:
                    break
                frame = protocol.decode(msg.data)
                ftype = frame["type"]
                if ftype == "item_broadcast":
                    self.transcript.append(frame["seq"])
                    self.items_by_seq[frame["seq"]] = frame
                elif ftype == "resume_batch":
                    self.phase = frame["phase"]
                    for item in frame["items"]:
                        self.transcript.append(item["seq"])
                        self.items_by_seq[item["seq"]] = item
                    fut = self._replies.pop("__resume__", None)
                    if fut and not fut.done():
                        fut.set_result(frame)
                elif ftype == "ack":
                    self.acked[frame["cmid"]] = frame["seq"]
                    fut = self._replies.pop(frame["cmid"], None)
                    if fut and not fut.done():
                        fut.set_result(frame)
                elif ftype == "error":
                    key = frame.get("cmid", "__resume__")
                    fut = self._replies.pop(key, None)
                    if fut and not fut.done():
                        fut.set_result(frame)
                elif ftype == "op_broadcast":
                    if frame["op"]["kind"] == "set-phase":
                        self.phase = frame["op"]["phase"]
                # welcome/stimulus_card and the rest don't affect transcripts
        finally:
            self._closed.set()
            for fut in self._replies.values():
                if not fut.done():
                    fut.set_exception(BenchError("stream closed"))
            self._replies.clear()

    async def _request(self, cmid: str, frame: dict) -> dict:
        fut = asyncio.get_running_loop().create_future()
        self._replies[cmid] = fut
        await self.ws.send_str(protocol.encode(frame))
        return await fut

    async def contribute_acked(self, cmid: str, body: str, kind: str = "text") -> int:
        """Send one contribute, retrying rate limits, until acked.  Returns seq."""
        while True:
            reply = await self._request(cmid, protocol.contribute(cmid, kind, body))
            if reply["type"] == "ack":
                return reply["seq"]
            if reply["type"] == "error" and reply["err"] == "rate-limited":
                await asyncio.sleep(reply.get("retry_ms", 100) / 1000)
                continue
            raise BenchError(f"contribute rejected: {reply}")

    async def board_op(self, cmid: str, op: dict) -> dict | None:
        """Send one board_op; returns the error frame if rejected, else None."""
        fut = asyncio.get_running_loop().create_future()
        self._replies[cmid] = fut
        await self.ws.send_str(protocol.encode(protocol.board_op(cmid, op)))
        # ops are confirmed via op_broadcast, not a direct reply; give any
        # rejection a moment to arrive, then treat silence as applied
        try:
            reply = await asyncio.wait_for(fut, timeout=0.2)
        except asyncio.TimeoutError:
            self._replies.pop(cmid, None)
            return None
        if reply["type"] == "error" and reply["err"] == "rate-limited":
            await asyncio.sleep(reply.get("retry_ms", 100) / 1000)
            return await self.board_op(cmid, op)
        return reply

    async def drain_until(self, expected: int, timeout: float = DRAIN_TIMEOUT) -> None:
        deadline = time.monotonic() + timeout
        while len(self.transcript) < expected:
            if self._closed.is_set():
                raise BenchError("stream closed while draining")
            if time.monotonic() > deadline:
                raise BenchError(
                    f"drain timeout: {len(self.transcript)}/{expected} broadcasts"
                )
            await asyncio.sleep(0.02)

    async def close(self) -> None:
        if self.ws is not None:
            await self.ws.close()
        if self._reader is not None:
            await self._reader


async def create_session(http: aiohttp.ClientSession, base_url: str,
                         test_seed: int | None = None) -> str:
    headers = {}
    if test_seed is not None:
        headers["X-Test-Seed"] = str(test_seed)
    async with http.post(f"{base_url.rstrip('/')}/v1/sessions", headers=headers) as resp:
        doc = await resp.json()
        if resp.status not in (200, 201):
            raise BenchError(f"session create failed: {resp.status} {doc}")
        return doc["code"]


def transcript_violations(transcript: list[int], total: int) -> int:
    """Mismatches between a transcript and the ideal 1..total sequence."""
    violations = abs(len(transcript) - total)
    violations += sum(
        1 for pos, seq in enumerate(transcript[:total]) if seq != pos + 1
    )
    return violations


async def run_bench(
    base_url: str,
    participants: int,
    items: int,
    seed: int = 0,
    think_ms: int = 0,
) -> BenchReport:
    if participants < 1 or items < 1:
        raise BenchError("participants and items must be at least 1")
    started = time.monotonic()
    async with aiohttp.ClientSession() as http:
        code = await create_session(http, base_url)
        clients = [StreamClient(http, base_url, code) for _ in range(participants)]
        failures = 0
        connected: list[StreamClient] = []
        for i, client in enumerate(clients):
            try:
                await client.connect(f"bench-{i}")
                connected.append(client)
            except (aiohttp.ClientError, BenchError, OSError):
                failures += 1
        if failures > CONNECT_FAILURE_ABORT_RATIO * participants:
            for client in connected:
                await client.close()
            raise BenchError(
                f"{failures}/{participants} connections failed; aborting"
            )
        total = len(connected) * items

        async def send_all(idx: int, client: StreamClient) -> int:
            acked = 0
            for k in range(items):
                body = seeded_body(seed, idx, k)
                await client.contribute_acked(f"b{idx}-{k}", body)
                acked += 1
                if think_ms:
                    await asyncio.sleep(think_ms / 1000)
            return acked

        try:
            acked_counts = await asyncio.gather(
                *(send_all(i, c) for i, c in enumerate(connected))
            )
            await asyncio.gather(*(c.drain_until(total) for c in connected))
        finally:
            for client in connected:
                await client.close()

    duration = time.monotonic() - started
    items_acked = sum(acked_counts)
    order_violations = sum(
        transcript_violations(c.transcript, total) for c in connected
    )
    return BenchReport(
        participants=participants,
        items_sent=total,
        items_acked=items_acked,
        duration=duration,
        throughput=items_acked / duration if duration > 0 else 0.0,
        order_violations=order_violations,
        lost_items=total - items_acked,
        connection_failures=failures,
        session_code=code,
    )


def report_to_json(report: BenchReport) -> str:
    return json.dumps(report.to_doc(), sort_keys=True, indent=2) + "\n"
