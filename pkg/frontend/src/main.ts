// Browser entry point. The service origin defaults to the page's own origin
// and can be overridden by an optional config.json next to index.html, so a
// deployed copy can point at a service on another host without rebuilding.

import { createApi } from "./api.js";
import { buildApp } from "./ui.js";

interface RuntimeConfig {
  apiBase?: string;
}

async function readConfig(): Promise<RuntimeConfig> {
  try {
    const response = await fetch("./config.json", { headers: { Accept: "application/json" } });
    if (!response.ok) return {};
    return (await response.json()) as RuntimeConfig;
  } catch {
    return {};
  }
}

async function start(): Promise<void> {
  const root = document.getElementById("app");
  if (root === null) throw new Error("missing #app element");
  const config = await readConfig();
  buildApp(root, { api: createApi(config.apiBase ?? "") });
}

void start();
