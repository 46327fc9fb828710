// @vitest-environment jsdom

// End-to-end: the real UI (in a simulated DOM) driving the real HTTP
// service as a subprocess. Everything the preview shows and the copy
// button writes must come back byte-identical from the service.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createApi } from "../src/api.js";
import type { AppHandle } from "../src/ui.js";
import { buildApp } from "../src/ui.js";

const NO_AI_CARD =
  "PaperCard\n\nThe authors did not use any assistance from generative AI in writing this manuscript.\n";

let child: ChildProcess | null = null;
let base = "";

async function startService(): Promise<void> {
  for (let attempt = 0; attempt < 3; attempt += 1) {
    const port = 21000 + Math.floor(Math.random() * 20000);
    base = `http://127.0.0.1:${port}`;
    const proc = spawn("python3", ["-m", "cardwriter.service", "--addr", `127.0.0.1:${port}`], {
      stdio: "ignore",
    });
    child = proc;
    const deadline = Date.now() + 15000;
    while (Date.now() < deadline) {
      if (proc.exitCode !== null) break; // port taken or startup failure; next attempt
      try {
        const res = await fetch(`${base}/api/health`);
        if (res.ok) return;
      } catch {
        // not listening yet
      }
      await new Promise((resolve) => setTimeout(resolve, 100));
    }
    proc.kill();
  }
  throw new Error("service did not start");
}

beforeAll(async () => {
  await startService();
}, 60000);

afterAll(() => {
  child?.kill();
});

function q<T extends HTMLElement>(root: HTMLElement, selector: string): T {
  const found = root.querySelector<T>(selector);
  if (found === null) throw new Error(`not found: ${selector}`);
  return found;
}

function typeInto(root: HTMLElement, selector: string, value: string): void {
  const input = q<HTMLInputElement>(root, selector);
  input.value = value;
  input.dispatchEvent(new Event("input", { bubbles: true }));
}

interface Page {
  root: HTMLElement;
  handle: AppHandle;
  written: string[];
}

// A short debounce keeps the suite fast; the 300ms default is covered by
// the unit tests.
async function openPage(): Promise<Page> {
  document.body.innerHTML = '<div id="root"></div>';
  const root = document.getElementById("root") as HTMLElement;
  const written: string[] = [];
  const handle = buildApp(root, {
    api: createApi(base),
    clipboard: {
      writeText: async (text: string) => {
        written.push(text);
      },
    },
    debounceMs: 20,
  });
  await handle.whenIdle();
  return { root, handle, written };
}

async function postGenerate(request: unknown, format: string): Promise<{ card: string }> {
  const res = await fetch(`${base}/api/generate`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ request, format }),
  });
  if (!res.ok) throw new Error(`generate failed: ${res.status}`);
  return (await res.json()) as { card: string };
}

describe("against the live service", () => {
  it("renders the service's own step catalog", async () => {
    const { root } = await openPage();
    const boxes = [...root.querySelectorAll<HTMLInputElement>(".step-toggle")];
    expect(boxes.length).toBe(7);
    expect(boxes.map((b) => b.value)).toContain("editing-and-proofreading");
    for (const label of root.querySelectorAll<HTMLLabelElement>("#step-list label")) {
      expect(label.title.length).toBeGreaterThan(0);
    }
  });

  it("the no-assistance preview is byte-identical to the service card", async () => {
    const { root, handle } = await openPage();
    q<HTMLInputElement>(root, "#no-ai-toggle").click();
    await handle.whenIdle();
    const preview = q<HTMLElement>(root, "#card-preview").textContent;
    expect(preview).toBe(NO_AI_CARD);
    const direct = await postGenerate({ no_ai: true }, "plain");
    expect(preview).toBe(direct.card);
  });

  it("a near-miss surfaces the registry suggestion and accepting resolves it", async () => {
    const { root, handle } = await openPage();
    q<HTMLButtonElement>(root, "#add-model").click();
    typeInto(root, ".model-name", "Claud 3 Opus");
    await handle.whenIdle();

    const suggestion = q<HTMLElement>(root, ".suggestion");
    expect(suggestion.hidden).toBe(false);
    expect(q<HTMLElement>(root, ".suggestion-name").textContent).toBe("Claude 3 Opus");

    q<HTMLButtonElement>(root, ".accept-suggestion").click();
    const drafting = root.querySelector<HTMLInputElement>('.step-toggle[value="drafting"]');
    drafting?.click();
    typeInto(root, "#from-date", "2024-02-13");
    typeInto(root, "#to-date", "2024-02-20");
    q<HTMLInputElement>(root, "#d1-toggle").click();
    await handle.whenIdle();

    const preview = q<HTMLElement>(root, "#card-preview").textContent ?? "";
    expect(preview).toContain("We adopted Claude 3 Opus");
    expect(preview).toContain("accessed from 13/02/2024 to 20/02/2024");
    // Resolving to the registry name leaves nothing to warn about.
    expect(root.querySelectorAll("#warning-list li").length).toBe(0);

    const direct = await postGenerate(
      {
        steps: ["drafting"],
        models: [{ name: "Claude 3 Opus" }],
        disclaimers: { d1: true, d2: false, d3: false },
        window: { from: "2024-02-13", to: "2024-02-20" },
      },
      "plain",
    );
    expect(preview).toBe(direct.card);
  });

  it("copying as LaTeX writes the exact service rendering", async () => {
    const { root, handle, written } = await openPage();
    q<HTMLButtonElement>(root, "#add-model").click();
    typeInto(root, ".model-name", "GPT-4");
    await handle.whenIdle();
    expect(q<HTMLElement>(root, ".match-badge").textContent).toBe("in registry: GPT-4");

    const paraphrasing = root.querySelector<HTMLInputElement>('.step-toggle[value="paraphrasing"]');
    paraphrasing?.click();
    typeInto(root, "#from-date", "2024-02-13");
    typeInto(root, "#to-date", "2024-02-20");
    q<HTMLInputElement>(root, "#d1-toggle").click();
    q<HTMLInputElement>(root, "#d2-toggle").click();
    q<HTMLInputElement>(root, "#d3-toggle").click();

    const select = q<HTMLSelectElement>(root, "#format-select");
    select.value = "latex";
    select.dispatchEvent(new Event("change", { bubbles: true }));
    await handle.whenIdle();

    q<HTMLButtonElement>(root, "#copy-button").click();
    await handle.whenIdle();

    const direct = await postGenerate(
      {
        steps: ["paraphrasing"],
        models: [{ name: "GPT-4" }],
        disclaimers: { d1: true, d2: true, d3: true },
        window: { from: "2024-02-13", to: "2024-02-20" },
      },
      "latex",
    );
    expect(written).toEqual([direct.card]);
    expect(written[0]).toContain("\\subsection*{PaperCard}");
    expect(written[0]).toContain("\\url{https://chat.openai.com/}");
  });

  it("missing disclaimers surface the service warning above the preview", async () => {
    const { root, handle } = await openPage();
    q<HTMLButtonElement>(root, "#add-model").click();
    typeInto(root, ".model-name", "GPT-4");
    await handle.whenIdle();
    const drafting = root.querySelector<HTMLInputElement>('.step-toggle[value="drafting"]');
    drafting?.click();
    typeInto(root, "#from-date", "2024-02-13");
    typeInto(root, "#to-date", "2024-02-20");
    await handle.whenIdle();

    const warnings = [...root.querySelectorAll<HTMLElement>("#warning-list li")];
    expect(warnings.map((w) => w.textContent)).toEqual([
      "no disclaimers selected; the card will not include a Step 3 section",
    ]);
    expect(q<HTMLElement>(root, "#card-preview").textContent).toContain("We adopted GPT-4");
  });
});
