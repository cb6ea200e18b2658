/**
 * Wire protocol: canonical JSON frames over a WebSocket stream.
 *
 * Every frame is one JSON object with `type` and `v` (version). Encoding is
 * canonical — keys sorted at every depth, no whitespace, non-ASCII kept
 * readable — so equal messages always serialize to identical bytes.
 * Decoding is strict: unknown types, unknown fields, missing fields, and
 * out-of-domain values are all rejected, and the version is checked before
 * anything else.
 */

export const PROTOCOL_VERSION = 1;

export const PHASES = ["collect", "organize", "evaluate"] as const;
export type Phase = (typeof PHASES)[number];

export const ROLES = ["facilitator", "contributor"] as const;
export type Role = (typeof ROLES)[number];

export const ITEM_KINDS = ["text", "image"] as const;
export type ItemKind = (typeof ITEM_KINDS)[number];

export const CODE_ALPHABET = "ABCDEFGHJKMNPQRSTUVWXYZ23456789";
export const CODE_LENGTH = 6;
export const MAX_BODY_CHARS = 2000;
export const MAX_NAME_CHARS = 64;

const CODE_RE = new RegExp(`^[${CODE_ALPHABET}]{${CODE_LENGTH}}$`);

/** Error codes carried by `error` frames and thrown by `decode`. */
export const MALFORMED = "malformed";
export const UNKNOWN_TYPE = "unknown-type";
export const UNKNOWN_FIELD = "unknown-field";
export const VERSION_MISMATCH = "version-mismatch";
export const MISSING_FIELD = "missing-field";
export const BAD_VALUE = "bad-value";

export class ProtocolError extends Error {
  readonly code: string;

  constructor(code: string, detail: string) {
    super(`${code}: ${detail}`);
    this.code = code;
  }
}

// ---------------------------------------------------------------------------
// frame shapes

export type BoardOp =
  | { kind: "move"; target: number; x: number; y: number }
  | { kind: "assign-cluster"; target: number; cluster: string | null }
  | { kind: "tag"; target: number; tag: string }
  | { kind: "untag"; target: number; tag: string }
  | { kind: "vote"; target: number; value?: number }
  | { kind: "unvote"; target: number }
  | { kind: "set-phase"; phase: Phase };

export interface ResumeItem {
  seq: number;
  pid: string;
  cmid: string;
  kind: ItemKind;
  body: string;
}

interface Base {
  v: typeof PROTOCOL_VERSION;
}

export interface HelloFrame extends Base {
  type: "hello";
  code: string;
  name: string;
  role?: Role;
  pid?: string;
}

export interface WelcomeFrame extends Base {
  type: "welcome";
  code: string;
  pid: string;
  phase: Phase;
}

export interface ContributeFrame extends Base {
  type: "contribute";
  cmid: string;
  kind: ItemKind;
  body: string;
}

export interface AckFrame extends Base {
  type: "ack";
  cmid: string;
  seq: number;
  duplicate: boolean;
}

export interface ItemBroadcastFrame extends Base {
  type: "item_broadcast";
  seq: number;
  pid: string;
  cmid: string;
  kind: ItemKind;
  body: string;
}

export interface BoardOpFrame extends Base {
  type: "board_op";
  cmid: string;
  op: BoardOp;
}

export interface OpBroadcastFrame extends Base {
  type: "op_broadcast";
  seq: number;
  pid: string;
  op: BoardOp;
}

export interface ResumeFrame extends Base {
  type: "resume";
  last_seen: number;
}

export interface ResumeBatchFrame extends Base {
  type: "resume_batch";
  phase: Phase;
  items: ResumeItem[];
}

export interface DrawStimulusFrame extends Base {
  type: "draw_stimulus";
  deck: string;
  seed?: number;
}

export interface StimulusCardFrame extends Base {
  type: "stimulus_card";
  deck: string;
  entry: string;
  prompt: string;
}

export interface ErrorFrame extends Base {
  type: "error";
  err: string;
  detail?: string;
  retry_ms?: number;
  cmid?: string;
}

export type Frame =
  | HelloFrame
  | WelcomeFrame
  | ContributeFrame
  | AckFrame
  | ItemBroadcastFrame
  | BoardOpFrame
  | OpBroadcastFrame
  | ResumeFrame
  | ResumeBatchFrame
  | DrawStimulusFrame
  | StimulusCardFrame
  | ErrorFrame;

/** Frames a client may receive from the server. */
export type ServerFrame =
  | WelcomeFrame
  | AckFrame
  | ItemBroadcastFrame
  | OpBroadcastFrame
  | ResumeBatchFrame
  | StimulusCardFrame
  | ErrorFrame;

// ---------------------------------------------------------------------------
// validation tables (mirrors the server's schema exactly)

type Check = (v: unknown) => boolean;

const isNonEmptyStr: Check = (v) => typeof v === "string" && v.length > 0;
const isStr: Check = (v) => typeof v === "string";
const isBool: Check = (v) => typeof v === "boolean";
const isSeq: Check = (v) => Number.isInteger(v) && (v as number) >= 1;
const isIndex: Check = (v) => Number.isInteger(v) && (v as number) >= 0;
const isU64: Check = (v) =>
  Number.isInteger(v) && (v as number) >= 0 && (v as number) < 2 ** 64;
const isNumber: Check = (v) => typeof v === "number" && Number.isFinite(v);
const isCode: Check = (v) => typeof v === "string" && CODE_RE.test(v);
const isKind: Check = (v) => (ITEM_KINDS as readonly string[]).includes(v as string);
const isPhase: Check = (v) => (PHASES as readonly string[]).includes(v as string);
const isRole: Check = (v) => (ROLES as readonly string[]).includes(v as string);

const FIELD_CHECKS: Record<string, Check> = {
  code: isCode,
  pid: isNonEmptyStr,
  cmid: isNonEmptyStr,
  seq: isSeq,
  kind: isKind,
  body: isStr,
  phase: isPhase,
  name: isNonEmptyStr,
  role: isRole,
  duplicate: isBool,
  deck: isNonEmptyStr,
  seed: isU64,
  entry: isNonEmptyStr,
  prompt: isNonEmptyStr,
  err: isNonEmptyStr,
  detail: isStr,
  retry_ms: isIndex,
};

const SCHEMAS: Record<string, { required: string[]; optional: string[] }> = {
  hello: { required: ["code", "name"], optional: ["role", "pid"] },
  welcome: { required: ["code", "pid", "phase"], optional: [] },
  contribute: { required: ["cmid", "kind", "body"], optional: [] },
  ack: { required: ["cmid", "seq", "duplicate"], optional: [] },
  item_broadcast: {
    required: ["seq", "pid", "cmid", "kind", "body"],
    optional: [],
  },
  board_op: { required: ["cmid", "op"], optional: [] },
  op_broadcast: { required: ["seq", "pid", "op"], optional: [] },
  resume: { required: ["last_seen"], optional: [] },
  resume_batch: { required: ["phase", "items"], optional: [] },
  draw_stimulus: { required: ["deck"], optional: ["seed"] },
  stimulus_card: { required: ["deck", "entry", "prompt"], optional: [] },
  error: { required: ["err"], optional: ["detail", "retry_ms", "cmid"] },
};

export const MESSAGE_TYPES = Object.keys(SCHEMAS).sort();

const OP_REQUIRED: Record<string, string[]> = {
  move: ["target", "x", "y"],
  "assign-cluster": ["target", "cluster"],
  tag: ["target", "tag"],
  untag: ["target", "tag"],
  vote: ["target"],
  unvote: ["target"],
  "set-phase": ["phase"],
};

const OP_OPTIONAL: Record<string, string[]> = {
  move: [],
  "assign-cluster": [],
  tag: [],
  untag: [],
  vote: ["value"],
  unvote: [],
  "set-phase": [],
};

const OP_CHECKS: Record<string, Check> = {
  target: isSeq,
  x: isNumber,
  y: isNumber,
  cluster: (v) => v === null || isNonEmptyStr(v),
  tag: isNonEmptyStr,
  value: (v) => Number.isInteger(v),
  phase: isPhase,
};

const ITEM_FIELDS = ["seq", "pid", "cmid", "kind", "body"];

function isPlainObject(v: unknown): v is Record<string, unknown> {
  return typeof v === "object" && v !== null && !Array.isArray(v);
}

function checkOp(op: unknown, where: string): void {
  if (!isPlainObject(op)) {
    throw new ProtocolError(BAD_VALUE, `${where} must be an object`);
  }
  const kind = op["kind"];
  if (typeof kind !== "string" || !(kind in OP_REQUIRED)) {
    throw new ProtocolError(BAD_VALUE, `${where}.kind ${JSON.stringify(kind)} is not a board op kind`);
  }
  const required = OP_REQUIRED[kind]!;
  const optional = OP_OPTIONAL[kind]!;
  const present = Object.keys(op).filter((k) => k !== "kind");
  for (const extra of present.filter((k) => !required.includes(k) && !optional.includes(k)).sort()) {
    throw new ProtocolError(UNKNOWN_FIELD, `${where}.${extra} not allowed for ${kind}`);
  }
  for (const missing of required.filter((k) => !present.includes(k)).sort()) {
    throw new ProtocolError(MISSING_FIELD, `${where}.${missing} required for ${kind}`);
  }
  for (const key of present.sort()) {
    if (!OP_CHECKS[key]!(op[key])) {
      throw new ProtocolError(BAD_VALUE, `${where}.${key} has invalid value ${JSON.stringify(op[key])}`);
    }
  }
}

function checkItems(items: unknown, where: string): void {
  if (!Array.isArray(items)) {
    throw new ProtocolError(BAD_VALUE, `${where} must be an array`);
  }
  items.forEach((item, i) => {
    if (!isPlainObject(item)) {
      throw new ProtocolError(BAD_VALUE, `${where}[${i}] must be an object`);
    }
    for (const extra of Object.keys(item).filter((k) => !ITEM_FIELDS.includes(k)).sort()) {
      throw new ProtocolError(UNKNOWN_FIELD, `${where}[${i}].${extra}`);
    }
    for (const field of ITEM_FIELDS) {
      if (!(field in item)) {
        throw new ProtocolError(MISSING_FIELD, `${where}[${i}].${field}`);
      }
      if (!FIELD_CHECKS[field]!(item[field])) {
        throw new ProtocolError(BAD_VALUE, `${where}[${i}].${field} = ${JSON.stringify(item[field])}`);
      }
    }
  });
}

/** Validate a parsed message object; throws ProtocolError on any violation. */
export function validate(message: unknown): asserts message is Frame {
  if (!isPlainObject(message)) {
    throw new ProtocolError(MALFORMED, "frame is not a JSON object");
  }
  // version comes first: a client from the future should hear
  // version-mismatch, not unknown-type
  if (!("v" in message)) {
    throw new ProtocolError(MISSING_FIELD, "v");
  }
  if (message["v"] !== PROTOCOL_VERSION) {
    throw new ProtocolError(VERSION_MISMATCH, `v = ${JSON.stringify(message["v"])}`);
  }
  const mtype = message["type"];
  if (typeof mtype !== "string" || !(mtype in SCHEMAS)) {
    throw new ProtocolError(UNKNOWN_TYPE, JSON.stringify(mtype));
  }
  const { required, optional } = SCHEMAS[mtype]!;
  const present = Object.keys(message).filter((k) => k !== "type" && k !== "v");
  for (const extra of present.filter((k) => !required.includes(k) && !optional.includes(k)).sort()) {
    throw new ProtocolError(UNKNOWN_FIELD, `${extra} in ${mtype}`);
  }
  for (const missing of required.filter((k) => !present.includes(k)).sort()) {
    throw new ProtocolError(MISSING_FIELD, `${missing} in ${mtype}`);
  }
  for (const name of present.sort()) {
    const value = message[name];
    if (name === "op") {
      checkOp(value, "op");
    } else if (name === "items") {
      checkItems(value, "items");
    } else if (name === "last_seen") {
      if (!isIndex(value)) {
        throw new ProtocolError(BAD_VALUE, `last_seen = ${JSON.stringify(value)}`);
      }
    } else if (!FIELD_CHECKS[name]!(value)) {
      throw new ProtocolError(BAD_VALUE, `${name} = ${JSON.stringify(value)} in ${mtype}`);
    }
  }
}

// ---------------------------------------------------------------------------
// canonical encoding

function sortDeep(value: unknown): unknown {
  if (Array.isArray(value)) {
    return value.map(sortDeep);
  }
  if (isPlainObject(value)) {
    const out: Record<string, unknown> = {};
    for (const key of Object.keys(value).sort()) {
      out[key] = sortDeep(value[key]);
    }
    return out;
  }
  return value;
}

/** Serialize with sorted keys and no whitespace: equal values, equal bytes. */
export function canonicalJson(value: unknown): string {
  return JSON.stringify(sortDeep(value));
}

/** Encode one frame to its canonical wire text; validates first. */
export function encode(frame: Frame): string {
  validate(frame);
  return canonicalJson(frame);
}

/** Decode one wire frame; throws ProtocolError with a specific code. */
export function decode(text: string): Frame {
  let parsed: unknown;
  try {
    parsed = JSON.parse(text);
  } catch (exc) {
    throw new ProtocolError(MALFORMED, String(exc));
  }
  validate(parsed);
  return parsed;
}

// ---------------------------------------------------------------------------
// constructors

const V = { v: PROTOCOL_VERSION } as const;

export function hello(code: string, name: string, role?: Role, pid?: string): HelloFrame {
  return { type: "hello", ...V, code, name, ...(role ? { role } : {}), ...(pid ? { pid } : {}) };
}

export function contribute(cmid: string, kind: ItemKind, body: string): ContributeFrame {
  return { type: "contribute", ...V, cmid, kind, body };
}

export function boardOp(cmid: string, op: BoardOp): BoardOpFrame {
  return { type: "board_op", ...V, cmid, op };
}

export function resume(lastSeen: number): ResumeFrame {
  return { type: "resume", ...V, last_seen: lastSeen };
}

export function drawStimulus(deck: string, seed?: number): DrawStimulusFrame {
  return { type: "draw_stimulus", ...V, deck, ...(seed !== undefined ? { seed } : {}) };
}

/** True iff `input` is a well-formed session code (client-side pre-check). */
export function isValidCode(input: string): boolean {
  return CODE_RE.test(input);
}

/** Trim and check an item body; returns the reason it is unusable, or null. */
export function bodyProblem(body: string): string | null {
  const text = body.trim();
  if (text.length === 0) {
    return "empty";
  }
  if (text.length > MAX_BODY_CHARS) {
    return `over the ${MAX_BODY_CHARS}-character cap by ${text.length - MAX_BODY_CHARS}`;
  }
  return null;
}
