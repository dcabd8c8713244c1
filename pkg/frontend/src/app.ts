// Application state and the label-submission queue. All transitions are
// plain functions over AppState so they can run headless in tests; the
// bottom of the file wires them to the DOM.

import { CurationApi, httpApi } from "./api.js";
import { labelForKey } from "./labels.js";
import { SchemaError, buildViewModel } from "./model.js";
import {
  renderError,
  renderPair,
  renderPairList,
  renderRetry,
  renderShortcutHelp,
  renderStats,
} from "./render.js";
import type { LabelStats, PairSummary } from "./types.js";

const PAGE_SIZE = 200;

export interface PendingLabel {
  id: string;
  label: string;
}

export interface AppState {
  pairs: PairSummary[];
  current: number;
  // labels that failed to POST; kept until a retry succeeds
  pending: PendingLabel[];
  stats: LabelStats | null;
  error: string | null;
}

export function initialState(): AppState {
  return { pairs: [], current: 0, pending: [], stats: null, error: null };
}

export async function loadPairs(api: CurationApi, state: AppState): Promise<void> {
  const listing = await api.listPairs(0, PAGE_SIZE);
  state.pairs = listing.pairs;
  state.current = Math.min(state.current, Math.max(0, state.pairs.length - 1));
}

export function nextUnlabeled(state: AppState): number {
  const n = state.pairs.length;
  for (let step = 1; step <= n; step++) {
    const k = (state.current + step) % n;
    if (!state.pairs[k].label) {
      return k;
    }
  }
  return state.current;
}

export async function submitLabel(
  api: CurationApi,
  state: AppState,
  label: string,
): Promise<boolean> {
  const pair = state.pairs[state.current];
  if (!pair) {
    return false;
  }
  try {
    await api.postLabel(pair.id, label);
  } catch (err) {
    // keep the label queued rather than dropping it
    state.pending.push({ id: pair.id, label });
    state.error = `could not save label for ${pair.id}`;
    return false;
  }
  pair.label = label;
  state.error = null;
  state.current = nextUnlabeled(state);
  return true;
}

export async function retryPending(
  api: CurationApi,
  state: AppState,
): Promise<boolean> {
  const queue = state.pending;
  state.pending = [];
  for (const item of queue) {
    try {
      await api.postLabel(item.id, item.label);
      const pair = state.pairs.find((p) => p.id === item.id);
      if (pair) {
        pair.label = item.label;
      }
    } catch (err) {
      state.pending.push(item);
    }
  }
  if (state.pending.length === 0) {
    state.error = null;
    return true;
  }
  return false;
}

export async function refreshStats(api: CurationApi, state: AppState): Promise<void> {
  try {
    state.stats = await api.getStats();
  } catch (err) {
    state.stats = null; // dashboard shows a stale badge
  }
}

export async function renderCurrent(
  api: CurationApi,
  state: AppState,
): Promise<string> {
  const pair = state.pairs[state.current];
  if (!pair) {
    return renderError("no pairs to review");
  }
  let payload: unknown;
  try {
    payload = await api.getPair(pair.id);
  } catch (err) {
    return renderRetry(`could not load ${pair.id}`);
  }
  try {
    return renderPair(buildViewModel(payload));
  } catch (err) {
    if (err instanceof SchemaError) {
      return renderError(`malformed payload for ${pair.id}: ${err.message}`);
    }
    throw err;
  }
}

async function redraw(api: CurationApi, state: AppState): Promise<void> {
  const main = document.getElementById("pair")!;
  main.innerHTML = await renderCurrent(api, state);
  document.getElementById("list")!.innerHTML = renderPairList(
    state.pairs,
    state.pairs[state.current]?.id ?? "",
  );
  document.getElementById("stats")!.innerHTML = renderStats(state.stats);
  const banner = document.getElementById("banner")!;
  banner.innerHTML = state.error === null ? "" : renderRetry(state.error);
  const retry = document.getElementById("retry");
  if (retry) {
    retry.addEventListener("click", async () => {
      await retryPending(api, state);
      await refreshStats(api, state);
      await redraw(api, state);
    });
  }
}

export async function main(): Promise<void> {
  const api = httpApi();
  const state = initialState();
  document.getElementById("help")!.innerHTML = renderShortcutHelp();
  try {
    await loadPairs(api, state);
  } catch (err) {
    document.getElementById("pair")!.innerHTML =
      renderError("curation service unreachable");
    return;
  }
  await refreshStats(api, state);
  await redraw(api, state);

  document.addEventListener("keydown", async (event) => {
    const label = labelForKey(event.key);
    if (label !== null) {
      event.preventDefault();
      await submitLabel(api, state, label);
      await refreshStats(api, state);
      await redraw(api, state);
    } else if (event.key === "ArrowRight" || event.key === "ArrowLeft") {
      const delta = event.key === "ArrowRight" ? 1 : -1;
      const n = state.pairs.length;
      state.current = (state.current + delta + n) % n;
      await redraw(api, state);
    }
  });

  document.getElementById("list")!.addEventListener("click", async (event) => {
    const item = (event.target as HTMLElement).closest("li[data-id]");
    if (item) {
      state.current = state.pairs.findIndex(
        (p) => p.id === item.getAttribute("data-id"),
      );
      await redraw(api, state);
    }
  });
}

if (typeof document !== "undefined" && document.getElementById("pair")) {
  void main();
}
