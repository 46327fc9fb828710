// DOM wiring for the card builder. The page is a single form whose state
// lives in a FormState value; every interaction updates the state, refreshes
// the affected panels, and schedules a debounced preview request. The
// preview pane only ever shows text returned by the service.

import type { Api, CategoryRecord, GenerateResponse, ModelRecord } from "./api.js";
import { ServiceError } from "./api.js";
import type { Debounced } from "./debounce.js";
import { debounce } from "./debounce.js";
import type { FormState, ModelRow } from "./state.js";
import {
  emptyRow,
  emptyState,
  toggleNoAi,
  toggleStep,
  toWireRequest,
  validationIssues,
} from "./state.js";

export interface Clipboard {
  writeText(text: string): Promise<void>;
}

export interface AppOptions {
  api: Api;
  clipboard?: Clipboard;
  debounceMs?: number;
}

export interface AppHandle {
  getState(): FormState;
  lastCard(): GenerateResponse | null;
  // Resolves once no debounce timer is pending and no request is in flight.
  whenIdle(): Promise<void>;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const SHELL_HTML = `
  <div id="load-error" class="banner error" hidden>
    <span id="load-error-text"></span>
    <button id="retry-load" type="button">Retry</button>
  </div>
  <main id="app-main" hidden>
    <section id="no-ai-section">
      <label>
        <input type="checkbox" id="no-ai-toggle">
        No generative AI was used in writing this manuscript
      </label>
    </section>
    <fieldset id="steps-section">
      <legend>Writing steps</legend>
      <div id="step-list"></div>
    </fieldset>
    <fieldset id="models-section">
      <legend>Models</legend>
      <div id="model-rows"></div>
      <button id="add-model" type="button">Add model</button>
    </fieldset>
    <fieldset id="disclaimers-section">
      <legend>Disclaimers</legend>
      <label><input type="checkbox" id="d1-toggle"> Rights and accountability</label>
      <label><input type="checkbox" id="d2-toggle"> No ethical issues</label>
      <label><input type="checkbox" id="d3-toggle"> Checked for accuracy and plagiarism</label>
    </fieldset>
    <fieldset id="window-section">
      <legend>Access window</legend>
      <label>From <input type="date" id="from-date"></label>
      <label>To <input type="date" id="to-date"></label>
    </fieldset>
    <section id="preview-section">
      <div class="preview-controls">
        <label>Format
          <select id="format-select">
            <option value="plain">plain</option>
            <option value="markdown">markdown</option>
            <option value="latex">latex</option>
          </select>
        </label>
        <button id="copy-button" type="button" disabled>Copy</button>
        <span id="copy-status"></span>
      </div>
      <ul id="warning-list"></ul>
      <ul id="issue-list"></ul>
      <div id="preview-error" class="banner error" hidden>
        <span id="preview-error-text"></span>
        <button id="retry-preview" type="button" hidden>Retry</button>
      </div>
      <pre id="card-preview"></pre>
    </section>
  </main>
  <datalist id="model-names"></datalist>
`;

function rowHtml(index: number): string {
  return `
    <div class="model-row" data-index="${index}">
      <div class="picker-line">
        <input class="model-name" list="model-names" placeholder="Model name">
        <span class="match-badge"></span>
        <button class="remove-model" type="button">Remove</button>
      </div>
      <div class="suggestion" hidden>
        Did you mean <strong class="suggestion-name"></strong>?
        <button class="accept-suggestion" type="button">Yes, use it</button>
        <button class="decline-suggestion" type="button">No, keep mine</button>
      </div>
      <div class="row-error banner error" hidden>
        <span class="row-error-text"></span>
        <button class="retry-match" type="button">Retry</button>
      </div>
      <div class="custom-fields" hidden>
        <input class="custom-provider" placeholder="Provider">
        <input class="custom-url" placeholder="URL (https://...)">
        <input class="custom-terms" placeholder="Terms URL (https://...)">
        <input class="custom-version" placeholder="Version (YYYY.MM.DD)">
      </div>
    </div>
  `;
}

export function buildApp(root: HTMLElement, options: AppOptions): AppHandle {
  const api = options.api;
  const clipboard: Clipboard | undefined = options.clipboard ?? globalThis.navigator?.clipboard;
  const delayMs = options.debounceMs ?? 300;

  let state: FormState = emptyState();
  let categories: CategoryRecord[] = [];
  let registry: ModelRecord[] = [];
  let lastResponse: GenerateResponse | null = null;
  // Latest-wins guards: a stale response never overwrites a newer one.
  let generateSeq = 0;
  const matchSeq: number[] = [];

  let inFlight = 0;
  const waiters: Array<() => void> = [];
  const rowDebouncers: Array<Debounced<[]>> = [];

  function isIdle(): boolean {
    if (inFlight > 0) return false;
    if (previewDebounce.pending()) return false;
    return rowDebouncers.every((d) => !d.pending());
  }

  function maybeSettle(): void {
    if (!isIdle()) return;
    while (waiters.length > 0) waiters.shift()?.();
  }

  function track<T>(work: Promise<T>): Promise<T> {
    inFlight += 1;
    return work.finally(() => {
      inFlight -= 1;
      // The caller's continuation (DOM updates, follow-up scheduling) is
      // still queued; check for idleness only after it has run.
      setTimeout(maybeSettle, 0);
    });
  }

  root.innerHTML = SHELL_HTML;

  function el<T extends HTMLElement>(selector: string): T {
    const found = root.querySelector<T>(selector);
    if (found === null) throw new Error(`missing element: ${selector}`);
    return found;
  }

  const loadError = el<HTMLDivElement>("#load-error");
  const loadErrorText = el<HTMLSpanElement>("#load-error-text");
  const appMain = el<HTMLElement>("#app-main");
  const noAiToggle = el<HTMLInputElement>("#no-ai-toggle");
  const stepsSection = el<HTMLFieldSetElement>("#steps-section");
  const stepList = el<HTMLDivElement>("#step-list");
  const modelsSection = el<HTMLFieldSetElement>("#models-section");
  const modelRows = el<HTMLDivElement>("#model-rows");
  const disclaimersSection = el<HTMLFieldSetElement>("#disclaimers-section");
  const windowSection = el<HTMLFieldSetElement>("#window-section");
  const fromDate = el<HTMLInputElement>("#from-date");
  const toDate = el<HTMLInputElement>("#to-date");
  const formatSelect = el<HTMLSelectElement>("#format-select");
  const copyButton = el<HTMLButtonElement>("#copy-button");
  const copyStatus = el<HTMLSpanElement>("#copy-status");
  const warningList = el<HTMLUListElement>("#warning-list");
  const issueList = el<HTMLUListElement>("#issue-list");
  const previewError = el<HTMLDivElement>("#preview-error");
  const previewErrorText = el<HTMLSpanElement>("#preview-error-text");
  const retryPreview = el<HTMLButtonElement>("#retry-preview");
  const cardPreview = el<HTMLPreElement>("#card-preview");
  const modelNamesList = el<HTMLDataListElement>("#model-names");

  const previewDebounce = debounce(() => {
    void runGenerate();
    maybeSettle();
  }, delayMs);

  // --- initial data -------------------------------------------------------

  function loadCatalogs(): Promise<void> {
    return track(
      Promise.all([api.categories(), api.models()]).then(
        ([cats, models]) => {
          categories = cats;
          registry = models;
          loadError.hidden = true;
          renderStepList();
          renderModelNames();
          appMain.hidden = false;
          schedulePreview();
        },
        (err: unknown) => {
          loadErrorText.textContent = `could not load the form data: ${describe(err)}`;
          loadError.hidden = false;
        },
      ),
    );
  }

  function describe(err: unknown): string {
    if (err instanceof ServiceError) return err.message;
    if (err instanceof Error) return err.message;
    return String(err);
  }

  function renderStepList(): void {
    stepList.innerHTML = categories
      .map(
        (c) => `
          <label title="${escapeHtml(c.description)}">
            <input type="checkbox" class="step-toggle" value="${escapeHtml(c.id)}">
            ${escapeHtml(c.label)}
          </label>
        `,
      )
      .join("");
    for (const box of stepList.querySelectorAll<HTMLInputElement>(".step-toggle")) {
      box.addEventListener("change", () => {
        state = toggleStep(state, box.value, box.checked);
        schedulePreview();
      });
    }
  }

  function renderModelNames(): void {
    modelNamesList.innerHTML = registry
      .map((m) => `<option value="${escapeHtml(m.model)}"></option>`)
      .join("");
  }

  // --- model rows ---------------------------------------------------------

  function addModelRow(): void {
    state = { ...state, models: [...state.models, emptyRow()] };
    matchSeq.push(0);
    const index = state.models.length - 1;
    const holder = document.createElement("div");
    holder.innerHTML = rowHtml(index);
    const rowEl = holder.firstElementChild as HTMLElement;
    modelRows.appendChild(rowEl);
    wireRow(rowEl);
    rowDebouncers.push(
      debounce(() => {
        void runMatch(rowEl);
        maybeSettle();
      }, delayMs),
    );
    schedulePreview();
  }

  function rowIndex(rowEl: HTMLElement): number {
    return Number(rowEl.dataset["index"] ?? "-1");
  }

  function rowState(rowEl: HTMLElement): ModelRow {
    const row = state.models[rowIndex(rowEl)];
    if (row === undefined) throw new Error("model row out of sync");
    return row;
  }

  function patchRow(rowEl: HTMLElement, patch: Partial<ModelRow>): void {
    const index = rowIndex(rowEl);
    const models = state.models.map((row, i) => (i === index ? { ...row, ...patch } : row));
    state = { ...state, models };
  }

  function wireRow(rowEl: HTMLElement): void {
    const sel = <T extends HTMLElement>(s: string): T => {
      const found = rowEl.querySelector<T>(s);
      if (found === null) throw new Error(`missing row element: ${s}`);
      return found;
    };
    const nameInput = sel<HTMLInputElement>(".model-name");
    nameInput.addEventListener("input", () => {
      patchRow(rowEl, { typed: nameInput.value, resolution: { kind: "pending" } });
      updateRowView(rowEl);
      const bounce = rowDebouncers[rowIndex(rowEl)];
      if (nameInput.value.trim() === "") {
        bounce?.cancel();
        patchRow(rowEl, { resolution: { kind: "idle" } });
        updateRowView(rowEl);
        maybeSettle();
      } else {
        bounce?.();
      }
      schedulePreview();
    });
    sel<HTMLButtonElement>(".remove-model").addEventListener("click", () => {
      removeModelRow(rowEl);
    });
    sel<HTMLButtonElement>(".accept-suggestion").addEventListener("click", () => {
      const row = rowState(rowEl);
      if (row.resolution.kind !== "fuzzy") return;
      patchRow(rowEl, { resolution: { ...row.resolution, accepted: true } });
      updateRowView(rowEl);
      schedulePreview();
    });
    sel<HTMLButtonElement>(".decline-suggestion").addEventListener("click", () => {
      const row = rowState(rowEl);
      if (row.resolution.kind !== "fuzzy") return;
      patchRow(rowEl, { resolution: { ...row.resolution, accepted: false } });
      updateRowView(rowEl);
      schedulePreview();
    });
    sel<HTMLButtonElement>(".retry-match").addEventListener("click", () => {
      void runMatch(rowEl);
    });
    const customMap: Array<[string, keyof ModelRow["custom"]]> = [
      [".custom-provider", "provider"],
      [".custom-url", "url"],
      [".custom-terms", "terms"],
      [".custom-version", "version"],
    ];
    for (const [selector, field] of customMap) {
      const input = sel<HTMLInputElement>(selector);
      input.addEventListener("input", () => {
        const row = rowState(rowEl);
        patchRow(rowEl, { custom: { ...row.custom, [field]: input.value } });
        schedulePreview();
      });
    }
  }

  function removeModelRow(rowEl: HTMLElement): void {
    const index = rowIndex(rowEl);
    rowDebouncers[index]?.cancel();
    rowDebouncers.splice(index, 1);
    matchSeq.splice(index, 1);
    const models = state.models.filter((_, i) => i !== index);
    state = { ...state, models };
    rowEl.remove();
    // Reindex the remaining rows so data-index keeps matching state.models.
    const remaining = modelRows.querySelectorAll<HTMLElement>(".model-row");
    remaining.forEach((remainingEl, i) => {
      remainingEl.dataset["index"] = String(i);
    });
    maybeSettle();
    schedulePreview();
  }

  async function runMatch(rowEl: HTMLElement): Promise<void> {
    const index = rowIndex(rowEl);
    const row = state.models[index];
    if (row === undefined) return;
    const query = row.typed.trim();
    if (query === "") return;
    const seq = (matchSeq[index] ?? 0) + 1;
    matchSeq[index] = seq;
    try {
      const result = await track(api.match(query));
      if (!rowEl.isConnected || matchSeq[rowIndex(rowEl)] !== seq) return;
      if (result.kind === "exact") {
        patchRow(rowEl, { resolution: { kind: "exact", model: result.model } });
      } else if (result.kind === "fuzzy") {
        patchRow(rowEl, {
          resolution: { kind: "fuzzy", model: result.model, score: result.score, accepted: null },
        });
      } else {
        patchRow(rowEl, { resolution: { kind: "none" } });
      }
    } catch (err) {
      if (!rowEl.isConnected || matchSeq[rowIndex(rowEl)] !== seq) return;
      patchRow(rowEl, { resolution: { kind: "error", message: describe(err) } });
    }
    updateRowView(rowEl);
    schedulePreview();
  }

  function updateRowView(rowEl: HTMLElement): void {
    const row = rowState(rowEl);
    const badge = rowEl.querySelector<HTMLSpanElement>(".match-badge");
    const suggestion = rowEl.querySelector<HTMLDivElement>(".suggestion");
    const suggestionName = rowEl.querySelector<HTMLElement>(".suggestion-name");
    const rowError = rowEl.querySelector<HTMLDivElement>(".row-error");
    const rowErrorText = rowEl.querySelector<HTMLSpanElement>(".row-error-text");
    const customFields = rowEl.querySelector<HTMLDivElement>(".custom-fields");
    if (!badge || !suggestion || !suggestionName || !rowError || !rowErrorText || !customFields) {
      return;
    }
    const r = row.resolution;
    suggestion.hidden = !(r.kind === "fuzzy" && r.accepted === null);
    rowError.hidden = r.kind !== "error";
    customFields.hidden = !(r.kind === "none" || (r.kind === "fuzzy" && r.accepted === false));
    if (r.kind === "exact") {
      badge.textContent = `in registry: ${r.model}`;
    } else if (r.kind === "fuzzy" && r.accepted === true) {
      badge.textContent = `using ${r.model}`;
    } else if (r.kind === "fuzzy" && r.accepted === false) {
      badge.textContent = "custom model";
    } else if (r.kind === "none") {
      badge.textContent = "not in registry: describe it below";
    } else if (r.kind === "pending") {
      badge.textContent = "checking...";
    } else {
      badge.textContent = "";
    }
    if (r.kind === "fuzzy") suggestionName.textContent = r.model;
    if (r.kind === "error") rowErrorText.textContent = `lookup failed: ${r.message}`;
  }

  // --- preview ------------------------------------------------------------

  function schedulePreview(): void {
    copyStatus.textContent = "";
    previewDebounce();
  }

  function setHighlights(fields: Array<"steps" | "models" | "window">): void {
    stepsSection.classList.toggle("invalid", fields.includes("steps"));
    modelsSection.classList.toggle("invalid", fields.includes("models"));
    windowSection.classList.toggle("invalid", fields.includes("window"));
  }

  function clearPreview(): void {
    lastResponse = null;
    cardPreview.textContent = "";
    warningList.innerHTML = "";
    copyButton.disabled = true;
  }

  async function runGenerate(): Promise<void> {
    const issues = validationIssues(state);
    issueList.innerHTML = issues
      .map((issue) => `<li class="issue">${escapeHtml(issue.message)}</li>`)
      .join("");
    setHighlights(issues.map((issue) => issue.field));
    if (issues.length > 0) {
      previewError.hidden = true;
      clearPreview();
      return;
    }
    const seq = generateSeq + 1;
    generateSeq = seq;
    try {
      const response = await track(api.generate(toWireRequest(state), state.format));
      if (generateSeq !== seq) return;
      lastResponse = response;
      previewError.hidden = true;
      cardPreview.textContent = response.card;
      warningList.innerHTML = response.warnings
        .map((w) => `<li class="warning">${escapeHtml(w)}</li>`)
        .join("");
      copyButton.disabled = false;
    } catch (err) {
      if (generateSeq !== seq) return;
      clearPreview();
      if (err instanceof ServiceError && err.status === 422) {
        previewErrorText.textContent = err.message;
        retryPreview.hidden = true;
        previewError.hidden = false;
        setHighlights(highlightsFor(err.code));
      } else {
        previewErrorText.textContent = `preview failed: ${describe(err)}`;
        retryPreview.hidden = false;
        previewError.hidden = false;
      }
    }
  }

  function highlightsFor(code: string): Array<"steps" | "models" | "window"> {
    switch (code) {
      case "unknown_step":
        return ["steps"];
      case "invalid_custom_model":
      case "unresolved_model":
        return ["models"];
      case "window_order":
        return ["window"];
      default:
        return ["steps", "models", "window"];
    }
  }

  // --- top-level wiring ----------------------------------------------------

  noAiToggle.addEventListener("change", () => {
    state = toggleNoAi(state, noAiToggle.checked);
    const off = state.noAi;
    stepsSection.disabled = off;
    modelsSection.disabled = off;
    disclaimersSection.disabled = off;
    windowSection.disabled = off;
    if (off) {
      for (const box of stepList.querySelectorAll<HTMLInputElement>(".step-toggle")) {
        box.checked = false;
      }
      modelRows.innerHTML = "";
      rowDebouncers.forEach((d) => d.cancel());
      rowDebouncers.length = 0;
      matchSeq.length = 0;
      for (const id of ["#d1-toggle", "#d2-toggle", "#d3-toggle"]) {
        el<HTMLInputElement>(id).checked = false;
      }
      fromDate.value = "";
      toDate.value = "";
    }
    schedulePreview();
  });

  for (const [id, key] of [
    ["#d1-toggle", "d1"],
    ["#d2-toggle", "d2"],
    ["#d3-toggle", "d3"],
  ] as const) {
    const box = el<HTMLInputElement>(id);
    box.addEventListener("change", () => {
      state = { ...state, disclaimers: { ...state.disclaimers, [key]: box.checked } };
      schedulePreview();
    });
  }

  fromDate.addEventListener("input", () => {
    state = { ...state, fromDate: fromDate.value };
    schedulePreview();
  });
  toDate.addEventListener("input", () => {
    state = { ...state, toDate: toDate.value };
    schedulePreview();
  });

  formatSelect.addEventListener("change", () => {
    const token = formatSelect.value;
    if (token === "plain" || token === "markdown" || token === "latex") {
      state = { ...state, format: token };
    }
    schedulePreview();
  });

  el<HTMLButtonElement>("#add-model").addEventListener("click", () => {
    addModelRow();
  });

  copyButton.addEventListener("click", () => {
    if (lastResponse === null || clipboard === undefined) return;
    const text = lastResponse.card;
    void track(
      clipboard.writeText(text).then(
        () => {
          copyStatus.textContent = "copied";
        },
        () => {
          copyStatus.textContent = "copy failed";
        },
      ),
    );
  });

  el<HTMLButtonElement>("#retry-load").addEventListener("click", () => {
    void loadCatalogs();
  });
  retryPreview.addEventListener("click", () => {
    void runGenerate();
  });

  void loadCatalogs();

  return {
    getState: () => state,
    lastCard: () => lastResponse,
    whenIdle: () =>
      new Promise<void>((resolve) => {
        if (isIdle()) {
          resolve();
          return;
        }
        waiters.push(resolve);
      }),
  };
}
