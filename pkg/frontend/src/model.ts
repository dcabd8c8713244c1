// Payload validation and the view model: everything the renderer needs,
// derived purely from one /api/pairs/{id} response.

import type {
  FramePayload,
  PairDetail,
  SentencePayload,
  TokenPayload,
} from "./types.js";

export class SchemaError extends Error {}

const RTL_LANGS = new Set(["he", "ar", "fa", "ur", "yi"]);

export interface SpanHighlight {
  frame: string;
  name: string; // frame name for the target span, FE name otherwise
  kind: "target" | "element";
  start: number;
  end: number;
  core: boolean;
}

export interface Arc {
  head: number;
  dep: number;
  deprel: string;
}

export interface RowModel {
  lang: string;
  rtl: boolean;
  tokens: TokenPayload[];
  arcs: Arc[];
  spans: SpanHighlight[];
}

export interface PairViewModel {
  id: string;
  source: RowModel;
  target: RowModel;
  alignment: [number, number][];
  features: Record<string, number>;
  score: number | null;
  label: string | null;
}

function fail(message: string): never {
  throw new SchemaError(message);
}

function checkSpan(start: unknown, end: unknown, n: number, what: string): void {
  if (typeof start !== "number" || typeof end !== "number") {
    fail(`${what}: span endpoints must be numbers`);
  }
  if (start < 0 || end >= n || start > end) {
    fail(`${what}: span ${start}-${end} out of range for ${n} tokens`);
  }
}

function validateSentence(raw: unknown, side: string): SentencePayload {
  if (typeof raw !== "object" || raw === null) {
    fail(`${side} sentence missing`);
  }
  const sent = raw as SentencePayload;
  if (!Array.isArray(sent.tokens)) {
    fail(`${side}: tokens must be an array`);
  }
  sent.tokens.forEach((tok, i) => {
    if (typeof tok.form !== "string") fail(`${side} token ${i}: missing form`);
    if (tok.index !== i) fail(`${side} token ${i}: index mismatch (${tok.index})`);
    if (tok.head !== null) {
      if (typeof tok.head !== "number" || tok.head < 0 ||
          tok.head >= sent.tokens.length || tok.head === i) {
        fail(`${side} token ${i}: bad head ${tok.head}`);
      }
    }
  });
  if (!Array.isArray(sent.frames)) {
    fail(`${side}: frames must be an array`);
  }
  for (const frame of sent.frames as FramePayload[]) {
    if (typeof frame.frame !== "string") fail(`${side}: frame without a name`);
    checkSpan(frame.target?.start, frame.target?.end, sent.tokens.length,
      `${side} frame ${frame.frame}`);
    for (const fe of frame.elements ?? []) {
      checkSpan(fe.start, fe.end, sent.tokens.length,
        `${side} FE ${fe.name} of ${frame.frame}`);
    }
  }
  return sent;
}

export function validatePair(raw: unknown): PairDetail {
  if (typeof raw !== "object" || raw === null) {
    fail("payload is not an object");
  }
  const pair = raw as PairDetail;
  if (typeof pair.id !== "string") fail("payload has no pair id");
  const source = validateSentence(pair.source, "source");
  const target = validateSentence(pair.target, "target");
  if (!Array.isArray(pair.alignment)) fail("alignment must be an array");
  for (const link of pair.alignment) {
    if (!Array.isArray(link) || link.length !== 2) {
      fail(`malformed alignment link ${JSON.stringify(link)}`);
    }
    const [i, j] = link;
    if (i < 0 || i >= source.tokens.length || j < 0 || j >= target.tokens.length) {
      fail(`alignment link ${i}-${j} out of range`);
    }
  }
  return pair;
}

function rowModel(sent: SentencePayload): RowModel {
  const arcs: Arc[] = [];
  for (const tok of sent.tokens) {
    if (tok.head !== null) {
      arcs.push({ head: tok.head, dep: tok.index, deprel: tok.deprel });
    }
  }
  const spans: SpanHighlight[] = [];
  for (const frame of sent.frames) {
    spans.push({
      frame: frame.frame,
      name: frame.frame,
      kind: "target",
      start: frame.target.start,
      end: frame.target.end,
      core: true,
    });
    for (const fe of frame.elements) {
      spans.push({
        frame: frame.frame,
        name: fe.name,
        kind: "element",
        start: fe.start,
        end: fe.end,
        core: fe.core,
      });
    }
  }
  return {
    lang: sent.lang,
    rtl: RTL_LANGS.has(sent.lang),
    tokens: sent.tokens,
    arcs,
    spans,
  };
}

export function buildViewModel(raw: unknown): PairViewModel {
  const pair = validatePair(raw);
  return {
    id: pair.id,
    source: rowModel(pair.source),
    target: rowModel(pair.target),
    alignment: pair.alignment,
    features: pair.features ?? {},
    score: pair.score ?? null,
    label: pair.label ?? null,
  };
}

// Display slot of a token within its row: RTL rows flip the order on
// screen while the underlying indices stay logical.
export function displaySlot(row: RowModel, index: number): number {
  return row.rtl ? row.tokens.length - 1 - index : index;
}
