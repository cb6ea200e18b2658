/** Entry point: join screen -> transport -> board, all on one reducer. */

import { sessionExists } from "./api.js";
import { BoardTransport } from "./transport.js";
import {
  type BoardContext,
  type JoinRequest,
  renderBoard,
  renderJoin,
  renderJoinError,
} from "./ui.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app element");
}

const baseUrl = window.location.origin;

function showJoin(): void {
  const fromHash = window.location.hash.replace(/^#/, "").toUpperCase();
  renderJoin(root!, fromHash, (request) => {
    void startSession(request);
  });
}

async function startSession(request: JoinRequest): Promise<void> {
  try {
    if (!(await sessionExists(baseUrl, request.code))) {
      renderJoinError(
        root!,
        `No session ${request.code} on this server.`,
        showJoin,
      );
      return;
    }
  } catch {
    renderJoinError(
      root!,
      "The server is unreachable — check the address and try again.",
      showJoin,
    );
    return;
  }

  window.location.hash = request.code;
  const transport = new BoardTransport({
    baseUrl,
    code: request.code,
    name: request.name,
    role: request.facilitator ? "facilitator" : "contributor",
  });
  const ctx: BoardContext = {
    baseUrl,
    transport,
    wizard: null,
    wizardExpanded: false,
    clusterNotice: null,
  };
  const rerender = (): void =>
    renderBoard(root!, transport.state, ctx, rerender);
  transport.subscribe(rerender);
  transport.connect();
  rerender();
}

showJoin();
