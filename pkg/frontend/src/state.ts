// Pure form state and transitions. The shape mirrors the service's request
// invariants: a no-assistance card excludes every other selection, and a
// usage card needs steps, at least one resolved model, and an ordered
// access window. Keeping these rules here lets the UI disable and clear
// controls before the service would reject the request.

import type { WireModelSelection, WireRequest } from "./api.js";

export interface CustomFields {
  provider: string;
  url: string;
  terms: string;
  version: string;
}

export type RowResolution =
  | { kind: "idle" }
  | { kind: "pending" }
  | { kind: "exact"; model: string }
  | { kind: "fuzzy"; model: string; score: number; accepted: boolean | null }
  | { kind: "none" }
  | { kind: "error"; message: string };

export interface ModelRow {
  typed: string;
  resolution: RowResolution;
  custom: CustomFields;
}

export interface Disclaimers {
  d1: boolean;
  d2: boolean;
  d3: boolean;
}

export type FormatToken = "plain" | "markdown" | "latex";

export interface FormState {
  noAi: boolean;
  steps: string[];
  models: ModelRow[];
  disclaimers: Disclaimers;
  fromDate: string;
  toDate: string;
  format: FormatToken;
}

export function emptyCustom(): CustomFields {
  return { provider: "", url: "", terms: "", version: "" };
}

export function emptyRow(): ModelRow {
  return { typed: "", resolution: { kind: "idle" }, custom: emptyCustom() };
}

export function emptyState(): FormState {
  return {
    noAi: false,
    steps: [],
    models: [],
    disclaimers: { d1: false, d2: false, d3: false },
    fromDate: "",
    toDate: "",
    format: "plain",
  };
}

// Turning the no-assistance toggle on clears everything it excludes, so the
// form can never hold a contradictory selection.
export function toggleNoAi(state: FormState, on: boolean): FormState {
  if (!on) return { ...state, noAi: false };
  return {
    ...state,
    noAi: true,
    steps: [],
    models: [],
    disclaimers: { d1: false, d2: false, d3: false },
    fromDate: "",
    toDate: "",
  };
}

// Checking a step appends it; selection order is the order sentences list
// the categories, so it is preserved rather than sorted.
export function toggleStep(state: FormState, id: string, on: boolean): FormState {
  const steps = state.steps.filter((s) => s !== id);
  if (on) steps.push(id);
  return { ...state, steps };
}

// The wire selection a row contributes, or null while it is unresolved.
// An accepted suggestion and an exact match both send the registry name;
// a declined suggestion or a miss sends the typed text as a custom model.
export function rowSelection(row: ModelRow): WireModelSelection | null {
  const typed = row.typed.trim();
  if (typed === "") return null;
  const r = row.resolution;
  if (r.kind === "exact") return { name: r.model };
  if (r.kind === "fuzzy" && r.accepted === true) return { name: r.model };
  if (r.kind === "none" || (r.kind === "fuzzy" && r.accepted === false)) {
    const custom: { model: string; provider?: string; url?: string; terms?: string; version?: string } = {
      model: typed,
    };
    if (row.custom.provider.trim() !== "") custom.provider = row.custom.provider.trim();
    if (row.custom.url.trim() !== "") custom.url = row.custom.url.trim();
    if (row.custom.terms.trim() !== "") custom.terms = row.custom.terms.trim();
    if (row.custom.version.trim() !== "") custom.version = row.custom.version.trim();
    return { custom };
  }
  return null;
}

export interface Issue {
  field: "steps" | "models" | "window";
  message: string;
}

// Client-side mirror of the service's completeness checks. The service is
// still the authority; these only decide when a preview request is worth
// sending and which panels to hint at.
export function validationIssues(state: FormState): Issue[] {
  if (state.noAi) return [];
  const issues: Issue[] = [];
  if (state.steps.length === 0) {
    issues.push({ field: "steps", message: "select at least one writing step" });
  }
  const selections = state.models.map(rowSelection).filter((s) => s !== null);
  if (selections.length === 0) {
    issues.push({ field: "models", message: "add at least one model" });
  }
  if (state.fromDate === "" || state.toDate === "") {
    issues.push({ field: "window", message: "set both access dates" });
  } else if (state.fromDate > state.toDate) {
    issues.push({ field: "window", message: "the access window ends before it starts" });
  }
  return issues;
}

export function toWireRequest(state: FormState): WireRequest {
  if (state.noAi) return { no_ai: true };
  const request: WireRequest = {};
  if (state.steps.length > 0) request.steps = [...state.steps];
  const models: WireModelSelection[] = [];
  for (const row of state.models) {
    const selection = rowSelection(row);
    if (selection !== null) models.push(selection);
  }
  if (models.length > 0) request.models = models;
  request.disclaimers = { ...state.disclaimers };
  if (state.fromDate !== "" && state.toDate !== "") {
    request.window = { from: state.fromDate, to: state.toDate };
  }
  return request;
}
