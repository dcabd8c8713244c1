import { describe, expect, it } from "vitest";

import type { CurationApi } from "../src/api.js";
import {
  initialState,
  loadPairs,
  nextUnlabeled,
  refreshStats,
  renderCurrent,
  retryPending,
  submitLabel,
} from "../src/app.js";
import { commercePair } from "./fixture.js";
import type { PairSummary } from "../src/types.js";

function summaries(n: number): PairSummary[] {
  return Array.from({ length: n }, (_, k) => ({
    id: `pair-${k}`,
    source_text: "src",
    target_text: "tgt",
    score: 0.9,
    label: null,
  }));
}

function fakeApi(overrides: Partial<CurationApi> = {}): CurationApi {
  return {
    listPairs: async () => ({ total: 3, offset: 0, pairs: summaries(3) }),
    getPair: async () => commercePair(),
    postLabel: async () => undefined,
    getStats: async () => ({ total: 3, labeled: 0, distribution: {} }),
    ...overrides,
  };
}

describe("label submission", () => {
  it("records the label and advances to the next unlabeled pair", async () => {
    const state = initialState();
    await loadPairs(fakeApi(), state);
    const posted: string[] = [];
    const api = fakeApi({
      postLabel: async (id, label) => {
        posted.push(`${id}:${label}`);
      },
    });
    expect(await submitLabel(api, state, "Good")).toBe(true);
    expect(posted).toEqual(["pair-0:Good"]);
    expect(state.pairs[0].label).toBe("Good");
    expect(state.current).toBe(1);
  });

  it("skips already-labeled pairs when advancing", async () => {
    const state = initialState();
    await loadPairs(fakeApi(), state);
    state.pairs[1].label = "Good";
    state.current = 0;
    expect(nextUnlabeled(state)).toBe(2);
  });

  it("queues the label on network failure instead of dropping it", async () => {
    const state = initialState();
    await loadPairs(fakeApi(), state);
    const failing = fakeApi({
      postLabel: async () => {
        throw new Error("boom");
      },
    });
    expect(await submitLabel(failing, state, "Good")).toBe(false);
    expect(state.pending).toEqual([{ id: "pair-0", label: "Good" }]);
    expect(state.error).toContain("pair-0");
    expect(state.pairs[0].label).toBeNull();
    expect(state.current).toBe(0); // no silent advance
  });

  it("flushes the queue on retry", async () => {
    const state = initialState();
    await loadPairs(fakeApi(), state);
    state.pending = [{ id: "pair-0", label: "Good" }];
    state.error = "could not save label for pair-0";
    expect(await retryPending(fakeApi(), state)).toBe(true);
    expect(state.pending).toEqual([]);
    expect(state.error).toBeNull();
    expect(state.pairs[0].label).toBe("Good");
  });

  it("keeps still-failing labels queued", async () => {
    const state = initialState();
    await loadPairs(fakeApi(), state);
    state.pending = [{ id: "pair-0", label: "Good" }];
    const failing = fakeApi({
      postLabel: async () => {
        throw new Error("still down");
      },
    });
    expect(await retryPending(failing, state)).toBe(false);
    expect(state.pending).toHaveLength(1);
  });
});

describe("rendering the current pair", () => {
  it("renders the fixture", async () => {
    const state = initialState();
    await loadPairs(fakeApi(), state);
    const html = await renderCurrent(fakeApi(), state);
    expect(html).toContain('data-id="pair-1"');
    expect(html).toContain("Commerce_buy");
  });

  it("shows an error panel for a malformed payload", async () => {
    const state = initialState();
    await loadPairs(fakeApi(), state);
    const api = fakeApi({ getPair: async () => ({ id: 7 }) });
    const html = await renderCurrent(api, state);
    expect(html).toContain("error-panel");
    expect(html).toContain("malformed payload");
  });

  it("offers a retry when the fetch itself fails", async () => {
    const state = initialState();
    await loadPairs(fakeApi(), state);
    const api = fakeApi({
      getPair: async () => {
        throw new Error("down");
      },
    });
    expect(await renderCurrent(api, state)).toContain("Retry");
  });
});

describe("stats", () => {
  it("goes stale when the endpoint is down", async () => {
    const state = initialState();
    const api = fakeApi({
      getStats: async () => {
        throw new Error("down");
      },
    });
    await refreshStats(api, state);
    expect(state.stats).toBeNull();
  });

  it("reflects the served distribution", async () => {
    const state = initialState();
    await refreshStats(
      fakeApi({
        getStats: async () => ({
          total: 20,
          labeled: 2,
          distribution: { Good: 2 },
        }),
      }),
      state,
    );
    expect(state.stats).toEqual({
      total: 20,
      labeled: 2,
      distribution: { Good: 2 },
    });
  });
});
