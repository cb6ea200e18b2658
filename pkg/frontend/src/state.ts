/**
 * Client state as a pure reducer over incoming frames and user events.
 *
 * Invariants the reducer maintains by construction:
 *  - `items` is strictly ascending by seq with no gaps up to `lastSeenSeq`;
 *    a broadcast from the future sets `desync` instead of punching a hole,
 *    and the transport answers desync by reconnecting and resuming.
 *  - pending (sent-but-unacked) entries never reorder placed items: they
 *    live in a separate FIFO and an item leaves it only via its own ack or
 *    its own broadcast/resume echo.
 *  - a pending entry keeps its client_msg_id forever, so a resend after
 *    reconnect can only ever land as a duplicate, never as a second item.
 */

import type {
  BoardOp,
  ItemKind,
  Phase,
  ResumeItem,
  Role,
  ServerFrame,
} from "./protocol.js";
import { PHASES } from "./protocol.js";

export type Status =
  | "idle"
  | "connecting"
  | "joined"
  | "live"
  | "reconnecting"
  | "closed";

export interface PlacedItem {
  seq: number;
  pid: string;
  cmid: string;
  kind: ItemKind;
  body: string;
  tags: string[];
  votes: Record<string, number>;
  cluster: string | null;
  pos: { x: number; y: number } | null;
}

export interface PendingItem {
  cmid: string;
  kind: ItemKind;
  body: string;
}

export interface StimulusView {
  deck: string;
  entry: string;
  prompt: string;
}

export interface ErrorView {
  err: string;
  detail?: string;
  retryMs?: number;
  cmid?: string;
}

export interface ClientState {
  status: Status;
  code: string;
  name: string;
  role: Role;
  pid: string | null;
  phase: Phase;
  items: PlacedItem[];
  lastSeenSeq: number;
  pending: PendingItem[];
  ackedSeqs: Record<string, number>;
  stimulus: StimulusView | null;
  desync: boolean;
  lastError: ErrorView | null;
}

export type Action =
  | { kind: "connecting" }
  | { kind: "socket-closed" }
  | { kind: "closed" }
  | { kind: "frame"; frame: ServerFrame }
  | { kind: "compose"; item: PendingItem }
  | { kind: "dismiss-stimulus" }
  | { kind: "dismiss-error" };

export function initialState(code: string, name: string, role: Role): ClientState {
  return {
    status: "idle",
    code,
    name,
    role,
    pid: null,
    phase: "collect",
    items: [],
    lastSeenSeq: 0,
    pending: [],
    ackedSeqs: {},
    stimulus: null,
    desync: false,
    lastError: null,
  };
}

function placeItem(
  state: ClientState,
  item: ResumeItem | { seq: number; pid: string; cmid: string; kind: ItemKind; body: string },
): ClientState {
  if (item.seq <= state.lastSeenSeq) {
    return state; // already mirrored; duplicate delivery is harmless
  }
  if (item.seq > state.lastSeenSeq + 1) {
    return { ...state, desync: true }; // gap: force a resume, never render a hole
  }
  const placed: PlacedItem = {
    seq: item.seq,
    pid: item.pid,
    cmid: item.cmid,
    kind: item.kind,
    body: item.body,
    tags: [],
    votes: {},
    cluster: null,
    pos: null,
  };
  const next: ClientState = {
    ...state,
    items: [...state.items, placed],
    lastSeenSeq: item.seq,
  };
  // our own item coming back (echo or resume after a lost ack) settles the
  // matching pending entry even if the ack frame never arrived
  if (item.pid === state.pid && state.pending.some((p) => p.cmid === item.cmid)) {
    next.pending = state.pending.filter((p) => p.cmid !== item.cmid);
    next.ackedSeqs = { ...state.ackedSeqs, [item.cmid]: item.seq };
  }
  return next;
}

function applyOp(state: ClientState, pid: string, op: BoardOp): ClientState {
  if (op.kind === "set-phase") {
    return { ...state, phase: op.phase };
  }
  const idx = state.items.findIndex((i) => i.seq === op.target);
  if (idx < 0) {
    return state; // op for an item we have not mirrored yet; resume will align
  }
  const item = { ...state.items[idx]! };
  switch (op.kind) {
    case "tag":
      if (!item.tags.includes(op.tag)) {
        item.tags = [...item.tags, op.tag].sort();
      }
      break;
    case "untag":
      item.tags = item.tags.filter((t) => t !== op.tag);
      break;
    case "vote":
      item.votes = { ...item.votes, [pid]: op.value ?? 1 };
      break;
    case "unvote": {
      const { [pid]: _, ...rest } = item.votes;
      item.votes = rest;
      break;
    }
    case "move":
      item.pos = { x: op.x, y: op.y };
      break;
    case "assign-cluster":
      item.cluster = op.cluster;
      break;
  }
  const items = [...state.items];
  items[idx] = item;
  return { ...state, items };
}

function applyFrame(state: ClientState, frame: ServerFrame): ClientState {
  switch (frame.type) {
    case "welcome":
      return {
        ...state,
        status: "joined",
        code: frame.code,
        pid: frame.pid,
        phase: frame.phase,
      };
    case "resume_batch": {
      let next: ClientState = {
        ...state,
        status: "live",
        phase: frame.phase,
        desync: false,
      };
      for (const item of frame.items) {
        next = placeItem(next, item);
      }
      return next;
    }
    case "item_broadcast":
      return placeItem(state, frame);
    case "ack": {
      const next: ClientState = {
        ...state,
        ackedSeqs: { ...state.ackedSeqs, [frame.cmid]: frame.seq },
        pending: state.pending.filter((p) => p.cmid !== frame.cmid),
      };
      return next;
    }
    case "op_broadcast":
      return applyOp(state, frame.pid, frame.op);
    case "stimulus_card":
      return {
        ...state,
        stimulus: { deck: frame.deck, entry: frame.entry, prompt: frame.prompt },
      };
    case "error":
      return {
        ...state,
        lastError: {
          err: frame.err,
          ...(frame.detail !== undefined ? { detail: frame.detail } : {}),
          ...(frame.retry_ms !== undefined ? { retryMs: frame.retry_ms } : {}),
          ...(frame.cmid !== undefined ? { cmid: frame.cmid } : {}),
        },
      };
  }
}

export function reduce(state: ClientState, action: Action): ClientState {
  switch (action.kind) {
    case "connecting":
      // the resume on this fresh connection realigns the mirror, so the
      // desync flag has done its job once a reconnect starts
      return {
        ...state,
        status: state.pid ? "reconnecting" : "connecting",
        desync: false,
      };
    case "socket-closed":
      return state.status === "closed" ? state : { ...state, status: "reconnecting" };
    case "closed":
      return { ...state, status: "closed" };
    case "frame":
      return applyFrame(state, action.frame);
    case "compose":
      return { ...state, pending: [...state.pending, action.item] };
    case "dismiss-stimulus":
      return { ...state, stimulus: null };
    case "dismiss-error":
      return { ...state, lastError: null };
  }
}

// ---------------------------------------------------------------------------
// selectors (the render layer and tests share these rules)

/** The composer accepts input only on a live connection outside evaluate. */
export function composerDisabled(state: ClientState): boolean {
  return state.status !== "live" || state.phase === "evaluate";
}

export function composerDisabledReason(state: ClientState): string | null {
  if (state.phase === "evaluate") {
    return "the evaluate phase does not accept new items";
  }
  if (state.status !== "live") {
    return "not connected";
  }
  return null;
}

/** Forward-only phase moves, facilitator only; mirrors the server rule. */
export function canSetPhase(state: ClientState, next: Phase): boolean {
  return (
    state.role === "facilitator" &&
    PHASES.indexOf(next) > PHASES.indexOf(state.phase)
  );
}

/** Vote controls appear once organizing starts; never during collect. */
export function votingEnabled(state: ClientState): boolean {
  return state.phase !== "collect";
}

/** Placed items in seq order followed by dimmed pending echoes. */
export function wallEntries(
  state: ClientState,
): Array<{ placed: PlacedItem } | { pending: PendingItem }> {
  return [
    ...state.items.map((placed) => ({ placed })),
    ...state.pending.map((pending) => ({ pending })),
  ];
}

/** Total votes on one item. */
export function voteCount(item: PlacedItem): number {
  return Object.values(item.votes).reduce((a, b) => a + b, 0);
}

/** Items grouped by assigned cluster id; unclustered items under `null`. */
export function groupedItems(
  state: ClientState,
): Array<{ cluster: string | null; items: PlacedItem[] }> {
  const groups = new Map<string | null, PlacedItem[]>();
  for (const item of state.items) {
    const key = item.cluster;
    const bucket = groups.get(key);
    if (bucket) {
      bucket.push(item);
    } else {
      groups.set(key, [item]);
    }
  }
  const named = [...groups.entries()]
    .filter(([k]) => k !== null)
    .sort(([a], [b]) => (a! < b! ? -1 : 1))
    .map(([cluster, items]) => ({ cluster, items }));
  const rest = groups.get(null);
  return rest ? [...named, { cluster: null, items: rest }] : named;
}
