/**
 * End-to-end mirror fidelity against the real server: three scripted
 * clients contribute interleaved items, every mirror converges to the HTTP
 * snapshot, a forced mid-session disconnect resumes without gaps or
 * duplicates, the composer locks in the evaluate phase, and an impulse
 * draw renders a persona prompt.
 */

import { type ChildProcess, spawn } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { WebSocket as WsWebSocket } from "ws";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createSession, fetchSnapshot, uploadAsset, assetUrl } from "../src/api.js";
import { composerDisabled } from "../src/state.js";
import type { SocketFactory, SocketLike } from "../src/transport.js";
import { BoardTransport } from "../src/transport.js";

const REPO_ROOT = join(dirname(fileURLToPath(import.meta.url)), "..", "..");

let server: ChildProcess;
let baseUrl = "";
let dataDir = "";

function trackingFactory(bucket: WsWebSocket[]): SocketFactory {
  return (url: string): SocketLike => {
    const socket = new WsWebSocket(url);
    bucket.push(socket);
    return socket as unknown as SocketLike;
  };
}

async function waitFor(
  what: string,
  predicate: () => boolean,
  timeoutMs = 15_000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!predicate()) {
    if (Date.now() > deadline) {
      throw new Error(`timed out waiting for ${what}`);
    }
    await new Promise((r) => setTimeout(r, 20));
  }
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "xcboard-ui-test-"));
  server = spawn(
    "python3",
    ["-m", "xcboard.cli", "serve", "--bind", "127.0.0.1:0", "--data", dataDir],
    { cwd: REPO_ROOT, stdio: ["ignore", "pipe", "inherit"] },
  );
  baseUrl = await new Promise<string>((resolve, reject) => {
    let buffer = "";
    server.stdout!.on("data", (chunk: Buffer) => {
      buffer += chunk.toString();
      const match = buffer.match(/listening on (http:\/\/\S+)/);
      if (match) {
        resolve(match[1]!);
      }
    });
    server.on("exit", (code) => reject(new Error(`server exited: ${code}`)));
    setTimeout(() => reject(new Error("server did not start")), 15_000);
  });
});

afterAll(() => {
  server.kill("SIGTERM");
  rmSync(dataDir, { recursive: true, force: true });
});

describe("ui mirror fidelity", () => {
  it("three interleaved mirrors equal the snapshot; disconnect resumes cleanly; composer locks in evaluate; impulse shows a persona prompt", async () => {
    const code = await createSession(baseUrl);
    const socketsB: WsWebSocket[] = [];

    const alice = new BoardTransport({
      baseUrl,
      code,
      name: "Alice",
      role: "facilitator",
      socketFactory: trackingFactory([]),
      reconnectDelayMs: 50,
    });
    const bob = new BoardTransport({
      baseUrl,
      code,
      name: "Bob",
      socketFactory: trackingFactory(socketsB),
      reconnectDelayMs: 50,
    });
    const cleo = new BoardTransport({
      baseUrl,
      code,
      name: "Cleo",
      socketFactory: trackingFactory([]),
      reconnectDelayMs: 50,
    });
    const clients = [alice, bob, cleo];

    try {
      for (const client of clients) {
        client.connect();
      }
      await waitFor("all live", () =>
        clients.every((c) => c.state.status === "live"),
      );

      // interleaved contribution: ten items per client, round-robin
      for (let k = 0; k < 10; k++) {
        alice.contribute("text", `solar kiosk plan ${k}`);
        bob.contribute("text", `rooftop garden swap ${k}`);
        cleo.contribute("text", `night market shuttle ${k}`);
        await new Promise((r) => setTimeout(r, 5));
      }
      await waitFor(
        "30 items mirrored everywhere",
        () =>
          clients.every(
            (c) => c.state.lastSeenSeq === 30 && c.state.pending.length === 0,
          ),
      );

      // every mirror equals a fresh HTTP snapshot: same order, same bytes
      const snapshot = await fetchSnapshot(baseUrl, code);
      const fromSnapshot = snapshot.items.map((i) => [i.seq, i.body]);
      expect(fromSnapshot).toHaveLength(30);
      for (const client of clients) {
        expect(client.state.items.map((i) => [i.seq, i.body])).toEqual(
          fromSnapshot,
        );
      }

      // forced mid-session disconnect: Bob's socket dies abruptly while
      // the other two keep contributing
      socketsB[socketsB.length - 1]!.terminate();
      for (let k = 0; k < 5; k++) {
        alice.contribute("text", `while bob was away a${k}`);
        cleo.contribute("text", `while bob was away c${k}`);
      }
      await waitFor(
        "bob resumed to 40 items",
        () => clients.every((c) => c.state.lastSeenSeq === 40),
      );
      const bobSeqs = bob.state.items.map((i) => i.seq);
      expect(bobSeqs).toEqual(
        Array.from({ length: 40 }, (_, i) => i + 1),
      ); // gap-free, duplicate-free
      expect(bob.state.items.map((i) => [i.seq, i.body])).toEqual(
        alice.state.items.map((i) => [i.seq, i.body]),
      );

      // facilitator advances to evaluate: the composer locks everywhere
      alice.sendOp({ kind: "set-phase", phase: "organize" });
      await waitFor("organize everywhere", () =>
        clients.every((c) => c.state.phase === "organize"),
      );
      alice.sendOp({ kind: "set-phase", phase: "evaluate" });
      await waitFor("evaluate everywhere", () =>
        clients.every((c) => c.state.phase === "evaluate"),
      );
      for (const client of clients) {
        expect(composerDisabled(client.state)).toBe(true);
      }

      // impulse card: a persona draw renders a "What would X do?" prompt
      alice.drawStimulus("personas", 7);
      await waitFor("stimulus card", () => alice.state.stimulus !== null);
      expect(alice.state.stimulus!.deck).toBe("personas");
      expect(alice.state.stimulus!.prompt).toMatch(/^What would .+ do\?$/);
    } finally {
      for (const client of clients) {
        client.close();
      }
    }
  });

  it("uploads image bytes and contributes them by content address", async () => {
    const code = await createSession(baseUrl);
    const transport = new BoardTransport({
      baseUrl,
      code,
      name: "Ada",
      socketFactory: trackingFactory([]),
    });
    try {
      transport.connect();
      await waitFor("live", () => transport.state.status === "live");

      const bytes = new TextEncoder().encode("png-ish test bytes");
      const ref = await uploadAsset(baseUrl, code, bytes);
      expect(ref).toMatch(/^[0-9a-f]{64}$/);

      const fetched = await fetch(assetUrl(baseUrl, ref));
      expect(fetched.ok).toBe(true);
      expect(new Uint8Array(await fetched.arrayBuffer())).toEqual(bytes);

      transport.contribute("image", ref);
      await waitFor("image placed", () => transport.state.items.length === 1);
      expect(transport.state.items[0]!.kind).toBe("image");
      expect(transport.state.items[0]!.body).toBe(ref);
    } finally {
      transport.close();
    }
  });
});
