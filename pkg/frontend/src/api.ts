// Typed client for the card-generation service. All card text comes from
// the service; the UI never synthesizes card sentences itself.

export interface ModelRecord {
  model: string;
  provider: string;
  url: string;
  terms: string;
  version: string;
}

export interface CategoryRecord {
  id: string;
  label: string;
  description: string;
}

export type MatchResponse =
  | { kind: "exact" | "fuzzy"; query: string; model: string; score: number; entry: ModelRecord }
  | { kind: "none"; query: string };

export interface SectionRecord {
  kind: "step1" | "step2" | "step3" | "no_ai";
  text: string;
}

export interface GenerateResponse {
  card: string;
  sections: SectionRecord[];
  warnings: string[];
}

export interface WireCustomModel {
  model: string;
  provider?: string;
  url?: string;
  terms?: string;
  version?: string;
}

export type WireModelSelection = { name: string } | { custom: WireCustomModel };

export interface WireRequest {
  no_ai?: boolean;
  steps?: string[];
  models?: WireModelSelection[];
  disclaimers?: { d1: boolean; d2: boolean; d3: boolean };
  window?: { from: string; to: string };
}

export type FormatToken = "plain" | "markdown" | "latex";

// Error responses carry {code, message}; the code is stable and drives
// field-level highlighting in the form.
export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

async function throwServiceError(response: Response): Promise<never> {
  let code = "unknown";
  let message = `HTTP ${response.status}`;
  try {
    const data = (await response.json()) as { code?: string; message?: string };
    if (typeof data.code === "string") code = data.code;
    if (typeof data.message === "string") message = data.message;
  } catch {
    // Non-JSON error body; keep the HTTP fallback message.
  }
  throw new ServiceError(response.status, code, message);
}

export interface Api {
  health(): Promise<{ status: string }>;
  models(): Promise<ModelRecord[]>;
  categories(): Promise<CategoryRecord[]>;
  match(query: string): Promise<MatchResponse>;
  generate(request: WireRequest, format: FormatToken): Promise<GenerateResponse>;
}

export function createApi(base = ""): Api {
  const root = base.endsWith("/") ? base.slice(0, -1) : base;

  async function getJSON<T>(path: string): Promise<T> {
    const response = await fetch(`${root}${path}`, {
      headers: { Accept: "application/json" },
    });
    if (!response.ok) await throwServiceError(response);
    return (await response.json()) as T;
  }

  async function postJSON<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(`${root}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json", Accept: "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) await throwServiceError(response);
    return (await response.json()) as T;
  }

  return {
    health: () => getJSON<{ status: string }>("/api/health"),
    models: () => getJSON<ModelRecord[]>("/api/models"),
    categories: () => getJSON<CategoryRecord[]>("/api/categories"),
    match: (query) => postJSON<MatchResponse>("/api/match", { query }),
    generate: (request, format) =>
      postJSON<GenerateResponse>("/api/generate", { request, format }),
  };
}
