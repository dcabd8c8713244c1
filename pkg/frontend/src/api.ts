// Thin typed client over the curation HTTP API.

import type { LabelStats, PairDetail, PairListing } from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    public status: number,
  ) {
    super(message);
  }
}

export interface CurationApi {
  listPairs(offset: number, limit: number): Promise<PairListing>;
  getPair(id: string): Promise<unknown>;
  postLabel(id: string, label: string): Promise<void>;
  getStats(): Promise<LabelStats>;
}

async function asJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    throw new ApiError(`request failed: ${resp.status}`, resp.status);
  }
  return (await resp.json()) as T;
}

export function httpApi(base = ""): CurationApi {
  return {
    async listPairs(offset: number, limit: number): Promise<PairListing> {
      return asJson(await fetch(`${base}/api/pairs?offset=${offset}&limit=${limit}`));
    },
    async getPair(id: string): Promise<unknown> {
      return asJson<PairDetail>(
        await fetch(`${base}/api/pairs/${encodeURIComponent(id)}`),
      );
    },
    async postLabel(id: string, label: string): Promise<void> {
      await asJson(
        await fetch(`${base}/api/pairs/${encodeURIComponent(id)}/label`, {
          method: "POST",
          headers: { "Content-Type": "application/json" },
          body: JSON.stringify({ label }),
        }),
      );
    },
    async getStats(): Promise<LabelStats> {
      return asJson(await fetch(`${base}/api/stats`));
    },
  };
}
