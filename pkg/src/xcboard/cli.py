"""Operator entry point: serve, validate, bench, export.

Exit code contract: 0 success, 1 validation or integrity failure,
2 I/O or environment failure (unreadable files, unreachable server,
bind errors).
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import signal
import sys
from pathlib import Path

from . import bench as bench_mod
from . import patterns, resources, session, stimulus
from .server import ConfigError, ServerConfig, start

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ENV = 2

DEFAULT_BIND = "127.0.0.1:8080"
DEFAULT_DATA_DIR = "./xc-data"
DEFAULT_URL = "http://127.0.0.1:8080"


def _parse_bind(value: str) -> tuple[str, int]:
    host, sep, port = value.rpartition(":")
    if not sep or not host:
        raise argparse.ArgumentTypeError(
            f"bind address must look like host:port, got {value!r}"
        )
    try:
        return host, int(port)
    except ValueError:
        raise argparse.ArgumentTypeError(f"port {port!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xcboard",
        description="Shared brainstorming board: server, asset checks, load harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the board server until signaled")
    serve.add_argument("--bind", type=_parse_bind, default=DEFAULT_BIND,
                       help="host:port to listen on (port 0 picks a free port)")
    serve.add_argument("--data", default=None,
                       help=f"data directory (default $XC_DATA_DIR or {DEFAULT_DATA_DIR})")
    serve.add_argument("--max-sessions", type=int, default=1024)
    serve.add_argument("--rate-limit", type=float, default=10.0,
                       help="per-participant messages per second")
    serve.add_argument("--rate-burst", type=int, default=30)
    serve.add_argument("--asset-cap", type=int, default=5 * 1024 * 1024,
                       help="asset upload size cap in bytes")
    serve.add_argument("--idle-ttl", type=float, default=24 * 3600.0,
                       help="seconds of inactivity before a session expires")
    serve.add_argument("--test-mode", action="store_true",
                       help="honor the X-Test-Seed header for deterministic codes")
    serve.add_argument("--static", default=None,
                       help="directory with the built browser client")

    validate = sub.add_parser("validate", help="check catalog and deck files")
    validate.add_argument("paths", nargs="*",
                          help="catalog/deck files (default: the shipped assets)")

    bench = sub.add_parser(
        "bench",
        help="measure parallel-burst throughput and ordering integrity "
             "(mechanical metrics only; it says nothing about the quality "
             "of ideas or sessions)",
    )
    bench.add_argument("--url", default=DEFAULT_URL, help="server base URL")
    bench.add_argument("--participants", type=int, default=10)
    bench.add_argument("--items", type=int, default=10,
                       help="contributions per participant")
    bench.add_argument("--seed", type=int, default=0, help="content seed (u64)")
    bench.add_argument("--think-ms", type=int, default=0,
                       help="pause between a participant's sends (default: burst)")

    export = sub.add_parser("export", help="print a board snapshot document")
    source = export.add_mutually_exclusive_group(required=True)
    source.add_argument("--code", help="live session code (fetched via --url)")
    source.add_argument("--snapshot", help="snapshot document file")
    export.add_argument("--url", default=DEFAULT_URL, help="server base URL")
    export.add_argument("--format", choices=("canonical", "markdown"),
                        default="canonical")
    return parser


# ---------------------------------------------------------------------------
# serve


def cmd_serve(args: argparse.Namespace) -> int:
    data_dir = args.data or os.environ.get("XC_DATA_DIR") or DEFAULT_DATA_DIR
    host, port = args.bind if isinstance(args.bind, tuple) else _parse_bind(args.bind)
    config = ServerConfig(
        data_dir=Path(data_dir),
        bind_host=host,
        bind_port=port,
        max_sessions=args.max_sessions,
        rate_limit=args.rate_limit,
        rate_burst=args.rate_burst,
        asset_cap=args.asset_cap,
        idle_ttl=args.idle_ttl,
        test_mode=args.test_mode,
        static_dir=Path(args.static) if args.static else None,
    )
    try:
        config.validate()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        asyncio.run(_serve(config))
    except OSError as exc:
        print(f"server error: {exc}", file=sys.stderr)
        return EXIT_ENV
    return EXIT_OK


async def _serve(config: ServerConfig) -> None:
    handle = await start(config)
    print(f"listening on http://{handle.host}:{handle.port}", flush=True)
    stop = asyncio.Event()
    loop = asyncio.get_running_loop()
    for sig in (signal.SIGINT, signal.SIGTERM):
        loop.add_signal_handler(sig, stop.set)
    try:
        await stop.wait()
    finally:
        await handle.stop()


# ---------------------------------------------------------------------------
# validate


def _classify_and_check(path: Path) -> list[str]:
    """Problems found in one catalog or deck file (empty list = clean)."""
    text = path.read_text("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        return [f"{path}: invalid document: {exc.msg} (line {exc.lineno})"]
    if isinstance(doc, dict) and "patterns" in doc:
        try:
            graph = patterns.load_catalog(text)
        except patterns.CatalogError as exc:
            return [f"{path}: {exc}"]
        return [
            f"{path}: {v.rule}: {v.message}" for v in patterns.validate_graph(graph)
        ]
    if isinstance(doc, dict) and "entries" in doc:
        try:
            stimulus.load_deck(text)
        except stimulus.DeckError as exc:
            return [f"{path}: {exc}"]
        return []
    return [f"{path}: neither a catalog (patterns) nor a deck (entries) document"]


def cmd_validate(args: argparse.Namespace) -> int:
    if args.paths:
        paths = [Path(p) for p in args.paths]
    else:
        paths = [resources.default_catalog_path(), *resources.default_deck_paths()]
        if not paths:
            print("no default assets found and no paths given", file=sys.stderr)
            return EXIT_ENV
    problems: list[str] = []
    for path in paths:
        try:
            problems.extend(_classify_and_check(path))
        except OSError as exc:
            print(f"cannot read {path}: {exc}", file=sys.stderr)
            return EXIT_ENV
    for problem in problems:
        print(problem)
    if problems:
        print(f"{len(problems)} problem(s) in {len(paths)} file(s)")
        return EXIT_FAIL
    print(f"{len(paths)} file(s) clean")
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench


def cmd_bench(args: argparse.Namespace) -> int:
    import aiohttp

    try:
        report = asyncio.run(
            bench_mod.run_bench(
                args.url,
                participants=args.participants,
                items=args.items,
                seed=args.seed,
                think_ms=args.think_ms,
            )
        )
    except bench_mod.BenchError as exc:
        print(f"bench aborted: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (aiohttp.ClientError, OSError) as exc:
        print(f"cannot reach server at {args.url}: {exc}", file=sys.stderr)
        return EXIT_ENV
    sys.stdout.write(bench_mod.report_to_json(report))
    if report.lost_items > 0 or report.order_violations > 0:
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# export


def _fetch_snapshot(url: str, code: str) -> dict:
    import aiohttp

    async def fetch() -> dict:
        async with aiohttp.ClientSession() as http:
            async with http.get(
                f"{url.rstrip('/')}/v1/sessions/{code}/snapshot"
            ) as resp:
                if resp.status == 404:
                    raise LookupError(f"unknown session {code!r}")
                resp.raise_for_status()
                return await resp.json()

    return asyncio.run(fetch())


def render_markdown(doc: dict) -> str:
    """Deterministic markdown rendering of a snapshot document."""
    names = {p["participant_id"]: p["display_name"] for p in doc["participants"]}
    lines = [f"# Board {doc['code']}", "", f"Phase: {doc['phase']}", ""]

    def render_item(item: dict) -> str:
        body = item["body"] if item["kind"] == "text" else f"image:{item['body']}"
        line = f"- [{item['seq']}] {body} — {names.get(item['author_id'], item['author_id'])}"
        extras = []
        if item["tags"]:
            extras.append("tags: " + ", ".join(item["tags"]))
        if item["votes"]:
            extras.append(f"votes: {len(item['votes'])}")
        if extras:
            line += " (" + "; ".join(extras) + ")"
        return line

    items = doc["items"]
    clustered = any(i["cluster_id"] for i in items)
    if clustered:
        by_cluster: dict[str | None, list[dict]] = {}
        for item in items:
            by_cluster.setdefault(item["cluster_id"], []).append(item)
        known = sorted(k for k in by_cluster if k is not None)
        for cluster_id in known:
            lines.append(f"## {cluster_id}")
            lines.append("")
            lines.extend(render_item(i) for i in by_cluster[cluster_id])
            lines.append("")
        if None in by_cluster:
            lines.append("## unclustered")
            lines.append("")
            lines.extend(render_item(i) for i in by_cluster[None])
            lines.append("")
    elif items:
        lines.extend(render_item(i) for i in items)
        lines.append("")
    return "\n".join(lines)


def cmd_export(args: argparse.Namespace) -> int:
    import aiohttp

    if args.snapshot:
        try:
            doc = json.loads(Path(args.snapshot).read_text("utf-8"))
        except OSError as exc:
            print(f"cannot read {args.snapshot}: {exc}", file=sys.stderr)
            return EXIT_ENV
        except json.JSONDecodeError as exc:
            print(f"{args.snapshot}: invalid document: {exc.msg}", file=sys.stderr)
            return EXIT_FAIL
    else:
        try:
            doc = _fetch_snapshot(args.url, args.code)
        except LookupError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_FAIL
        except (aiohttp.ClientError, OSError) as exc:
            print(f"cannot reach server at {args.url}: {exc}", file=sys.stderr)
            return EXIT_ENV
    try:
        session.restore(session.snapshot_from_doc(doc))  # integrity gate
    except session.IntegrityError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    if args.format == "markdown":
        sys.stdout.write(render_markdown(doc))
    else:
        sys.stdout.write(
            json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
            + "\n"
        )
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "serve": cmd_serve,
        "validate": cmd_validate,
        "bench": cmd_bench,
        "export": cmd_export,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
