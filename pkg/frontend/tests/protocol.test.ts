/** Wire-format fidelity: golden frames, canonical bytes, strict rejection. */

import { readdirSync, readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import {
  MESSAGE_TYPES,
  ProtocolError,
  bodyProblem,
  canonicalJson,
  boardOp,
  contribute,
  decode,
  drawStimulus,
  encode,
  hello,
  isValidCode,
  resume,
} from "../src/protocol.js";

const GOLDEN_DIR = join(
  dirname(fileURLToPath(import.meta.url)),
  "..",
  "..",
  "protocol",
  "golden",
);

function errCode(fn: () => unknown): string {
  try {
    fn();
  } catch (exc) {
    if (exc instanceof ProtocolError) {
      return exc.code;
    }
    throw exc;
  }
  throw new Error("expected ProtocolError");
}

describe("golden frames", () => {
  const files = readdirSync(GOLDEN_DIR).filter((f) => f.endsWith(".frame"));

  it("covers every message type", () => {
    expect(files.map((f) => f.replace(/\.frame$/, "")).sort()).toEqual(
      MESSAGE_TYPES,
    );
  });

  for (const file of files) {
    it(`round-trips ${file} byte-for-byte`, () => {
      const text = readFileSync(join(GOLDEN_DIR, file), "utf-8").trimEnd();
      const frame = decode(text);
      expect(frame.type).toBe(file.replace(/\.frame$/, ""));
      expect(encode(frame)).toBe(text);
    });
  }
});

describe("canonical encoding", () => {
  it("sorts keys at every depth and never inserts whitespace", () => {
    const text = canonicalJson({
      z: 1,
      a: { c: [3, { b: 2, a: 1 }], a: null },
    });
    expect(text).toBe('{"a":{"a":null,"c":[3,{"a":1,"b":2}]},"z":1}');
  });

  it("keeps non-ASCII readable", () => {
    const frame = contribute("c-1", "text", "солнечные киоски ☀");
    expect(encode(frame)).toContain("солнечные киоски ☀");
  });

  it("field order never changes the bytes", () => {
    const a = { type: "resume", v: 1, last_seen: 3 } as const;
    const b = { last_seen: 3, v: 1, type: "resume" } as const;
    expect(canonicalJson(a)).toBe(canonicalJson(b));
  });
});

describe("strict decoding", () => {
  it("rejects non-JSON as malformed", () => {
    expect(errCode(() => decode("{nope"))).toBe("malformed");
    expect(errCode(() => decode('"just a string"'))).toBe("malformed");
    expect(errCode(() => decode("[1,2]"))).toBe("malformed");
  });

  it("rejects unknown types", () => {
    expect(errCode(() => decode('{"type":"shout","v":1}'))).toBe(
      "unknown-type",
    );
  });

  it("checks the version before the type", () => {
    expect(errCode(() => decode('{"type":"shout","v":2}'))).toBe(
      "version-mismatch",
    );
    expect(errCode(() => decode('{"type":"resume","v":"1","last_seen":0}'))).toBe(
      "version-mismatch",
    );
  });

  it("rejects unknown fields", () => {
    expect(
      errCode(() => decode('{"type":"resume","v":1,"last_seen":0,"x":1}')),
    ).toBe("unknown-field");
  });

  it("rejects missing fields", () => {
    expect(errCode(() => decode('{"type":"resume","v":1}'))).toBe(
      "missing-field",
    );
    expect(errCode(() => decode('{"type":"hello","v":1,"code":"AB2CD3"}'))).toBe(
      "missing-field",
    );
  });

  it("rejects out-of-domain values", () => {
    expect(
      errCode(() => decode('{"type":"resume","v":1,"last_seen":-1}')),
    ).toBe("bad-value");
    expect(
      errCode(() => decode('{"type":"resume","v":1,"last_seen":true}')),
    ).toBe("bad-value");
    expect(
      errCode(() =>
        decode('{"type":"hello","v":1,"code":"ab2cd3","name":"Ada"}'),
      ),
    ).toBe("bad-value");
    expect(
      errCode(() =>
        decode('{"type":"hello","v":1,"code":"AB2CD3","name":"Ada","role":"boss"}'),
      ),
    ).toBe("bad-value");
  });

  it("validates board ops strictly", () => {
    const op = (body: string): string =>
      `{"type":"board_op","v":1,"cmid":"c-1","op":${body}}`;
    expect(errCode(() => decode(op('{"kind":"grow","target":1}')))).toBe(
      "bad-value",
    );
    expect(errCode(() => decode(op('{"kind":"move","target":1,"x":1}')))).toBe(
      "missing-field",
    );
    expect(
      errCode(() => decode(op('{"kind":"move","target":1,"x":1,"y":2,"z":3}'))),
    ).toBe("unknown-field");
    expect(errCode(() => decode(op('{"kind":"tag","target":1,"tag":""}')))).toBe(
      "bad-value",
    );
    expect(
      decode(op('{"kind":"assign-cluster","target":2,"cluster":null}')).type,
    ).toBe("board_op");
  });
});

describe("constructors and client-side checks", () => {
  it("omits absent optional fields entirely", () => {
    expect(encode(hello("AB2CD3", "Ada"))).toBe(
      '{"code":"AB2CD3","name":"Ada","type":"hello","v":1}',
    );
    expect(encode(drawStimulus("words"))).toBe(
      '{"deck":"words","type":"draw_stimulus","v":1}',
    );
    expect(encode(drawStimulus("words", 42))).toContain('"seed":42');
  });

  it("builds valid frames", () => {
    expect(decode(encode(resume(0))).type).toBe("resume");
    expect(
      decode(encode(boardOp("c-9", { kind: "set-phase", phase: "organize" })))
        .type,
    ).toBe("board_op");
  });

  it("validates session codes against the join alphabet", () => {
    expect(isValidCode("AB2CD3")).toBe(true);
    expect(isValidCode("0O0O0O")).toBe(false); // excluded confusables
    expect(isValidCode("AB2CD")).toBe(false); // too short
    expect(isValidCode("ab2cd3")).toBe(false); // lowercase
  });

  it("blocks empty and over-cap bodies client-side", () => {
    expect(bodyProblem("an idea")).toBeNull();
    expect(bodyProblem("   ")).toBe("empty");
    expect(bodyProblem("x".repeat(2000))).toBeNull();
    expect(bodyProblem("x".repeat(2001))).toContain("over the 2000-character cap");
  });
});
