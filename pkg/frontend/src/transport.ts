/**
 * One stream connection with automatic resume.
 *
 * Lifecycle per (re)connection: open socket, send hello (with our pid after
 * the first join, so the server keeps our identity), receive welcome, send
 * resume(lastSeenSeq), receive resume_batch — only then is the connection
 * live. After resume_batch every still-pending contribute is resent with its
 * ORIGINAL client_msg_id: the server's idempotency turns lost acks into
 * duplicates, never into double items.
 */

import * as protocol from "./protocol.js";
import type { BoardOp, ItemKind, Role, ServerFrame } from "./protocol.js";
import {
  type Action,
  type ClientState,
  initialState,
  reduce,
} from "./state.js";

/** The subset of the WebSocket API the transport needs; injectable in tests. */
export interface SocketLike {
  addEventListener(type: "open" | "close", listener: () => void): void;
  addEventListener(
    type: "message",
    listener: (event: { data: unknown }) => void,
  ): void;
  send(data: string): void;
  close(): void;
}

export type SocketFactory = (url: string) => SocketLike;

export interface TransportOptions {
  baseUrl: string;
  code: string;
  name: string;
  role?: Role;
  socketFactory?: SocketFactory;
  /** Initial reconnect delay; doubles up to the max. */
  reconnectDelayMs?: number;
  maxReconnectDelayMs?: number;
}

export type Listener = (state: ClientState) => void;

function defaultFactory(url: string): SocketLike {
  const ctor = (globalThis as Record<string, unknown>)["WebSocket"] as
    | (new (url: string) => SocketLike)
    | undefined;
  if (!ctor) {
    throw new Error("no WebSocket implementation; pass socketFactory");
  }
  return new ctor(url);
}

export function streamUrl(baseUrl: string, code: string): string {
  return `${baseUrl.replace(/\/$/, "").replace(/^http/, "ws")}/v1/sessions/${code}/stream`;
}

export class BoardTransport {
  private readonly options: Required<
    Pick<TransportOptions, "baseUrl" | "code" | "name">
  > &
    TransportOptions;
  private readonly factory: SocketFactory;
  private socket: SocketLike | null = null;
  private listeners = new Set<Listener>();
  private backoffMs: number;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private retryTimers = new Set<ReturnType<typeof setTimeout>>();
  private cmidCounter = 0;
  private readonly cmidBase: string;
  private intentionalClose = false;

  state: ClientState;

  constructor(options: TransportOptions) {
    this.options = options;
    this.factory = options.socketFactory ?? defaultFactory;
    this.backoffMs = options.reconnectDelayMs ?? 400;
    this.state = initialState(options.code, options.name, options.role ?? "contributor");
    this.cmidBase = Math.random().toString(36).slice(2, 10);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private dispatch(action: Action): void {
    this.state = reduce(this.state, action);
    if (this.state.desync && this.socket) {
      // mirror integrity beats connection uptime: drop and resume
      this.socket.close();
    }
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  connect(): void {
    this.intentionalClose = false;
    this.dispatch({ kind: "connecting" });
    const socket = this.factory(streamUrl(this.options.baseUrl, this.options.code));
    this.socket = socket;

    socket.addEventListener("open", () => {
      const { code, name, pid, role } = this.state;
      socket.send(
        protocol.encode(protocol.hello(code, name, role, pid ?? undefined)),
      );
    });

    socket.addEventListener("message", (event) => {
      let frame: ServerFrame;
      try {
        frame = protocol.decode(String(event.data)) as ServerFrame;
      } catch {
        return; // not a server frame; ignore rather than crash the mirror
      }
      const before = this.state.status;
      this.dispatch({ kind: "frame", frame });
      if (frame.type === "welcome") {
        socket.send(protocol.encode(protocol.resume(this.state.lastSeenSeq)));
      } else if (frame.type === "resume_batch" && before !== "live") {
        this.resendPending();
      } else if (
        frame.type === "error" &&
        frame.err === "rate-limited" &&
        frame.cmid
      ) {
        this.scheduleRetry(frame.cmid, frame.retry_ms ?? 200);
      }
    });

    socket.addEventListener("close", () => {
      if (this.socket !== socket) {
        return; // superseded by a newer connection
      }
      this.socket = null;
      if (this.intentionalClose) {
        this.dispatch({ kind: "closed" });
        return;
      }
      this.dispatch({ kind: "socket-closed" });
      this.reconnectTimer = setTimeout(() => {
        this.reconnectTimer = null;
        this.connect();
      }, this.backoffMs);
      this.backoffMs = Math.min(
        this.backoffMs * 2,
        this.options.maxReconnectDelayMs ?? 10_000,
      );
    });
  }

  close(): void {
    this.intentionalClose = true;
    if (this.reconnectTimer) {
      clearTimeout(this.reconnectTimer);
      this.reconnectTimer = null;
    }
    for (const timer of this.retryTimers) {
      clearTimeout(timer);
    }
    this.retryTimers.clear();
    if (this.socket) {
      this.socket.close();
    } else {
      this.dispatch({ kind: "closed" });
    }
  }

  /** Queue one contribution; returns its client_msg_id. */
  contribute(kind: ItemKind, body: string): string {
    const cmid = `${this.cmidBase}-${++this.cmidCounter}`;
    this.dispatch({ kind: "compose", item: { cmid, kind, body } });
    if (this.state.status === "live" && this.socket) {
      this.socket.send(protocol.encode(protocol.contribute(cmid, kind, body)));
    }
    return cmid;
  }

  /** Send one board op; confirmation arrives as op_broadcast. */
  sendOp(op: BoardOp): void {
    if (this.state.status === "live" && this.socket) {
      const cmid = `${this.cmidBase}-${++this.cmidCounter}`;
      this.socket.send(protocol.encode(protocol.boardOp(cmid, op)));
    }
  }

  drawStimulus(deck: string, seed?: number): void {
    if (this.state.status === "live" && this.socket) {
      this.socket.send(protocol.encode(protocol.drawStimulus(deck, seed)));
    }
  }

  dismissStimulus(): void {
    this.dispatch({ kind: "dismiss-stimulus" });
  }

  dismissError(): void {
    this.dispatch({ kind: "dismiss-error" });
  }

  private resendPending(): void {
    if (!this.socket) {
      return;
    }
    for (const item of this.state.pending) {
      this.socket.send(
        protocol.encode(protocol.contribute(item.cmid, item.kind, item.body)),
      );
    }
    this.backoffMs = this.options.reconnectDelayMs ?? 400;
  }

  private scheduleRetry(cmid: string, delayMs: number): void {
    const timer = setTimeout(() => {
      this.retryTimers.delete(timer);
      const item = this.state.pending.find((p) => p.cmid === cmid);
      if (item && this.state.status === "live" && this.socket) {
        this.socket.send(
          protocol.encode(protocol.contribute(item.cmid, item.kind, item.body)),
        );
      }
    }, delayMs);
    this.retryTimers.add(timer);
  }
}
