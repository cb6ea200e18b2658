/**
 * Step-by-step technique wizard over the bundled pattern catalog.
 *
 * Card view shows just enough to act on (name, card text, current step);
 * the "more details" expander reveals the full pattern: context, problem,
 * forces, solution, consequences, examples, and stimulating questions.
 */

import { CATALOG_PATTERNS, type CatalogPattern } from "./catalog.js";

export interface WizardState {
  patternId: string;
  stepIndex: number;
}

export interface WizardCardView {
  patternId: string;
  name: string;
  cardText: string;
  step: string;
  stepIndex: number;
  totalSteps: number;
}

const byId = new Map<string, CatalogPattern>(
  CATALOG_PATTERNS.map((p) => [p.id, p]),
);

export function patternIds(): string[] {
  return CATALOG_PATTERNS.map((p) => p.id);
}

export function getPattern(patternId: string): CatalogPattern {
  const pattern = byId.get(patternId);
  if (!pattern) {
    throw new Error(`unknown pattern ${patternId}`);
  }
  return pattern;
}

export function wizardStart(patternId: string): WizardState {
  getPattern(patternId);
  return { patternId, stepIndex: 0 };
}

export function wizardFinished(state: WizardState): boolean {
  return state.stepIndex >= getPattern(state.patternId).detail.steps.length;
}

export function wizardAdvance(state: WizardState): WizardState {
  if (wizardFinished(state)) {
    throw new Error("wizard already finished");
  }
  return { patternId: state.patternId, stepIndex: state.stepIndex + 1 };
}

export function wizardCard(state: WizardState): WizardCardView {
  const pattern = getPattern(state.patternId);
  const steps = pattern.detail.steps;
  if (state.stepIndex >= steps.length) {
    throw new Error("wizard already finished");
  }
  return {
    patternId: pattern.id,
    name: pattern.name,
    cardText: pattern.card_text,
    step: steps[state.stepIndex]!,
    stepIndex: state.stepIndex,
    totalSteps: steps.length,
  };
}
