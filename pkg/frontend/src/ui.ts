/**
 * DOM rendering: one render(root, ...) pass per state change.
 *
 * Two screens share one client: the join form, and the board (wall +
 * composer, plus the facilitator panel when the joined role allows it).
 * Rendering is a full rebuild of dynamic regions — board sizes here are
 * hundreds of cards, well inside what a naive rebuild handles smoothly.
 */

import { assetUrl, fetchClusters } from "./api.js";
import type { PlacedItem } from "./state.js";
import {
  type ClientState,
  canSetPhase,
  composerDisabled,
  composerDisabledReason,
  groupedItems,
  voteCount,
  votingEnabled,
  wallEntries,
} from "./state.js";
import type { BoardTransport } from "./transport.js";
import { MAX_BODY_CHARS, PHASES, isValidCode, bodyProblem } from "./protocol.js";
import type { Phase } from "./protocol.js";
import {
  type WizardState,
  getPattern,
  patternIds,
  wizardAdvance,
  wizardCard,
  wizardFinished,
  wizardStart,
} from "./wizard.js";

const DECKS = ["words", "personas", "attributes"];

export interface JoinRequest {
  code: string;
  name: string;
  facilitator: boolean;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

// ---------------------------------------------------------------------------
// join screen

export function renderJoin(
  root: HTMLElement,
  initialCode: string,
  onJoin: (request: JoinRequest) => void,
): void {
  root.replaceChildren();
  const card = el("div", "join-card");
  card.append(el("h1", "", "xcboard"));
  card.append(el("p", "join-hint", "Join a session by its 6-character code."));

  const codeInput = el("input", "join-code");
  codeInput.placeholder = "CODE";
  codeInput.maxLength = 6;
  codeInput.value = initialCode;
  const nameInput = el("input", "join-name");
  nameInput.placeholder = "Your name";
  nameInput.maxLength = 64;
  const facLabel = el("label", "join-fac");
  const facBox = el("input");
  facBox.type = "checkbox";
  facLabel.append(facBox, document.createTextNode(" join as facilitator"));
  const error = el("p", "join-error");
  const button = el("button", "join-button", "Join");

  function submit(): void {
    const code = codeInput.value.trim().toUpperCase();
    const name = nameInput.value.trim();
    if (!isValidCode(code)) {
      error.textContent =
        "Codes are 6 characters from A-Z/2-9 (no 0, O, 1, I, or L).";
      return;
    }
    if (!name) {
      error.textContent = "A display name is required.";
      return;
    }
    error.textContent = "";
    onJoin({ code, name, facilitator: facBox.checked });
  }

  button.addEventListener("click", submit);
  for (const input of [codeInput, nameInput]) {
    input.addEventListener("keydown", (e) => {
      if (e.key === "Enter") {
        submit();
      }
    });
  }

  card.append(codeInput, nameInput, facLabel, button, error);
  root.append(card);
}

/** Shown instead of the board when the join was rejected or the host is down. */
export function renderJoinError(
  root: HTMLElement,
  message: string,
  onRetry: () => void,
): void {
  root.replaceChildren();
  const card = el("div", "join-card");
  card.append(el("h1", "", "xcboard"));
  card.append(el("p", "join-error", message));
  const retry = el("button", "join-button", "Back to join");
  retry.addEventListener("click", onRetry);
  card.append(retry);
  root.append(card);
}

// ---------------------------------------------------------------------------
// board screen

interface BoardContext {
  baseUrl: string;
  transport: BoardTransport;
  wizard: WizardState | null;
  wizardExpanded: boolean;
  clusterNotice: string | null;
}

function renderHeader(state: ClientState): HTMLElement {
  const header = el("header", "board-header");
  header.append(el("span", "board-code", state.code));
  const phases = el("span", "phase-pills");
  for (const phase of PHASES) {
    const pill = el(
      "span",
      phase === state.phase ? "phase-pill active" : "phase-pill",
      phase,
    );
    phases.append(pill);
  }
  header.append(phases);
  header.append(el("span", `conn-status ${state.status}`, state.status));
  return header;
}

function renderItemCard(
  state: ClientState,
  item: PlacedItem,
  baseUrl: string,
  transport: BoardTransport,
): HTMLElement {
  const card = el("div", "item-card");
  card.dataset["seq"] = String(item.seq);
  if (item.kind === "image") {
    const img = el("img", "item-image");
    img.src = assetUrl(baseUrl, item.body);
    img.alt = `image item ${item.seq}`;
    card.append(img);
  } else {
    card.append(el("p", "item-body", item.body));
  }
  const meta = el("div", "item-meta");
  meta.append(el("span", "item-seq", `#${item.seq}`));
  for (const tag of item.tags) {
    meta.append(el("span", "item-tag", tag));
  }
  const votes = voteCount(item);
  if (votes > 0) {
    meta.append(el("span", "item-votes", `▲ ${votes}`));
  }
  card.append(meta);

  if (votingEnabled(state)) {
    const voteBtn = el("button", "vote-button", "vote");
    voteBtn.addEventListener("click", () => {
      transport.sendOp({ kind: "vote", target: item.seq, value: 1 });
    });
    card.append(voteBtn);
  }
  return card;
}

function renderWall(state: ClientState, ctx: BoardContext): HTMLElement {
  const wall = el("div", "wall");
  if (state.phase !== "collect") {
    // organize/evaluate: show cluster groups when assignments exist
    const groups = groupedItems(state);
    const hasClusters = groups.some((g) => g.cluster !== null);
    if (hasClusters) {
      for (const group of groups) {
        const section = el("section", "cluster-group");
        section.append(
          el("h3", "cluster-title", group.cluster ?? "unclustered"),
        );
        const grid = el("div", "wall-grid");
        for (const item of group.items) {
          grid.append(renderItemCard(state, item, ctx.baseUrl, ctx.transport));
        }
        section.append(grid);
        wall.append(section);
      }
      return wall;
    }
  }
  // collect phase: arrival order only — no sorting, no filtering
  const grid = el("div", "wall-grid");
  for (const entry of wallEntries(state)) {
    if ("placed" in entry) {
      grid.append(renderItemCard(state, entry.placed, ctx.baseUrl, ctx.transport));
    } else {
      const card = el("div", "item-card pending");
      card.append(el("p", "item-body", entry.pending.body));
      card.append(el("div", "item-meta", "sending…"));
      grid.append(card);
    }
  }
  wall.append(grid);
  return wall;
}

function renderComposer(state: ClientState, transport: BoardTransport): HTMLElement {
  const composer = el("div", "composer");
  const input = el("textarea", "composer-input");
  input.placeholder = "Add an idea…";
  input.maxLength = MAX_BODY_CHARS + 1; // let the counter show the overflow
  const counter = el("span", "composer-counter", `0/${MAX_BODY_CHARS}`);
  const send = el("button", "composer-send", "Send");

  const disabled = composerDisabled(state);
  input.disabled = disabled;
  send.disabled = disabled;
  if (disabled) {
    composer.classList.add("disabled");
    composer.append(
      el("p", "composer-reason", composerDisabledReason(state) ?? ""),
    );
  }

  input.addEventListener("input", () => {
    counter.textContent = `${input.value.trim().length}/${MAX_BODY_CHARS}`;
    send.disabled = disabled || bodyProblem(input.value) !== null;
  });

  function submit(): void {
    if (bodyProblem(input.value) !== null) {
      return; // blocked client-side: empty or over the cap
    }
    transport.contribute("text", input.value.trim());
    input.value = "";
    counter.textContent = `0/${MAX_BODY_CHARS}`;
  }

  send.addEventListener("click", submit);
  input.addEventListener("keydown", (e) => {
    if (e.key === "Enter" && !e.shiftKey) {
      e.preventDefault();
      submit();
    }
  });

  composer.append(input, counter, send);
  return composer;
}

function renderFacilitatorPanel(
  state: ClientState,
  ctx: BoardContext,
  rerender: () => void,
): HTMLElement {
  const panel = el("aside", "facilitator-panel");
  panel.append(el("h2", "", "Facilitate"));

  // phase controls: forward-only, mirroring the server rule
  const phaseRow = el("div", "panel-row");
  for (const phase of PHASES) {
    const btn = el("button", "phase-button", `→ ${phase}`);
    btn.disabled = !canSetPhase(state, phase as Phase);
    btn.addEventListener("click", () => {
      ctx.transport.sendOp({ kind: "set-phase", phase: phase as Phase });
    });
    phaseRow.append(btn);
  }
  panel.append(el("h3", "", "Phase"), phaseRow);

  // stimulus draws
  const drawRow = el("div", "panel-row");
  const deckSelect = el("select", "deck-select");
  for (const deck of DECKS) {
    const option = el("option", "", deck);
    option.value = deck;
    deckSelect.append(option);
  }
  const drawBtn = el("button", "draw-button", "Draw impulse");
  drawBtn.addEventListener("click", () => {
    ctx.transport.drawStimulus(deckSelect.value);
  });
  drawRow.append(deckSelect, drawBtn);
  panel.append(el("h3", "", "Impulse"), drawRow);

  // technique wizard
  const wizardBox = el("div", "wizard-box");
  const patternSelect = el("select", "pattern-select");
  for (const id of patternIds()) {
    const option = el("option", "", getPattern(id).name);
    option.value = id;
    patternSelect.append(option);
  }
  const startBtn = el("button", "wizard-start", "Start wizard");
  startBtn.addEventListener("click", () => {
    ctx.wizard = wizardStart(patternSelect.value);
    ctx.wizardExpanded = false;
    rerender();
  });
  wizardBox.append(patternSelect, startBtn);

  if (ctx.wizard && !wizardFinished(ctx.wizard)) {
    const view = wizardCard(ctx.wizard);
    const card = el("div", "wizard-card");
    card.append(el("h4", "", view.name));
    card.append(el("p", "wizard-cardtext", view.cardText));
    card.append(
      el(
        "p",
        "wizard-step",
        `Step ${view.stepIndex + 1}/${view.totalSteps}: ${view.step}`,
      ),
    );
    const controls = el("div", "panel-row");
    const nextBtn = el("button", "wizard-next", "Next step");
    nextBtn.addEventListener("click", () => {
      ctx.wizard = wizardAdvance(ctx.wizard!);
      rerender();
    });
    const moreBtn = el(
      "button",
      "wizard-more",
      ctx.wizardExpanded ? "Less details" : "More details",
    );
    moreBtn.addEventListener("click", () => {
      ctx.wizardExpanded = !ctx.wizardExpanded;
      rerender();
    });
    controls.append(nextBtn, moreBtn);
    card.append(controls);
    if (ctx.wizardExpanded) {
      const pattern = getPattern(view.patternId);
      const details = el("div", "wizard-details");
      details.append(el("p", "", `Context: ${pattern.context}`));
      details.append(el("p", "", `Problem: ${pattern.problem}`));
      details.append(el("p", "", `Solution: ${pattern.solution}`));
      if (pattern.detail.stimulating_questions.length) {
        const list = el("ul", "wizard-questions");
        for (const q of pattern.detail.stimulating_questions) {
          list.append(el("li", "", q));
        }
        details.append(el("p", "", "Stimulating questions:"), list);
      }
      card.append(details);
    }
    wizardBox.append(card);
  } else if (ctx.wizard) {
    wizardBox.append(el("p", "wizard-done", "Wizard finished."));
  }
  panel.append(el("h3", "", "Technique wizard"), wizardBox);

  // clustering
  const clusterRow = el("div", "panel-row");
  const thresholdInput = el("input", "threshold-input");
  thresholdInput.type = "number";
  thresholdInput.step = "0.05";
  thresholdInput.min = "0.05";
  thresholdInput.max = "1";
  thresholdInput.value = "0.5";
  const clusterBtn = el("button", "cluster-button", "Cluster now");
  clusterBtn.addEventListener("click", () => {
    if (state.items.length === 0) {
      ctx.clusterNotice = "Nothing to cluster yet — the board is empty.";
      rerender();
      return;
    }
    void fetchClusters(ctx.baseUrl, state.code, Number(thresholdInput.value))
      .then((clusters) => {
        // regroup visually by assigning cluster ids through board ops, so
        // every mirror (not just this one) sees the grouping
        for (const group of clusters) {
          if (group.member_seqs.length < 2) {
            continue;
          }
          for (const seq of group.member_seqs) {
            ctx.transport.sendOp({
              kind: "assign-cluster",
              target: seq,
              cluster: group.cluster_id,
            });
          }
        }
        ctx.clusterNotice = `Grouped into ${clusters.length} clusters.`;
        rerender();
      })
      .catch((exc: unknown) => {
        ctx.clusterNotice = `Clustering failed: ${String(exc)}`;
        rerender();
      });
  });
  clusterRow.append(thresholdInput, clusterBtn);
  panel.append(el("h3", "", "Clusters"), clusterRow);
  if (ctx.clusterNotice) {
    panel.append(el("p", "cluster-notice", ctx.clusterNotice));
  }

  return panel;
}

function renderStimulusOverlay(
  state: ClientState,
  transport: BoardTransport,
): HTMLElement | null {
  if (!state.stimulus) {
    return null;
  }
  const overlay = el("div", "stimulus-overlay");
  const card = el("div", "stimulus-card");
  card.append(el("p", "stimulus-deck", state.stimulus.deck));
  card.append(el("h2", "stimulus-prompt", state.stimulus.prompt));
  const dismiss = el("button", "stimulus-dismiss", "Close");
  dismiss.addEventListener("click", () => transport.dismissStimulus());
  card.append(dismiss);
  overlay.append(card);
  return overlay;
}

export function renderBoard(
  root: HTMLElement,
  state: ClientState,
  ctx: BoardContext,
  rerender: () => void,
): void {
  root.replaceChildren();
  root.append(renderHeader(state));

  const main = el("div", "board-main");
  main.append(renderWall(state, ctx));
  if (state.role === "facilitator") {
    main.append(renderFacilitatorPanel(state, ctx, rerender));
  }
  root.append(main);
  root.append(renderComposer(state, ctx.transport));

  const overlay = renderStimulusOverlay(state, ctx.transport);
  if (overlay) {
    root.append(overlay);
  }
  if (state.lastError) {
    const toast = el("div", "error-toast");
    const text =
      state.lastError.err === "rate-limited"
        ? "Slow down a moment — your idea will be resent automatically."
        : `${state.lastError.err}${state.lastError.detail ? `: ${state.lastError.detail}` : ""}`;
    toast.append(el("span", "", text));
    const dismiss = el("button", "toast-dismiss", "×");
    dismiss.addEventListener("click", () => ctx.transport.dismissError());
    toast.append(dismiss);
    root.append(toast);
  }
}

export type { BoardContext };
