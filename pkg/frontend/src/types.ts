// Shapes of the curation API payloads. Spans are 0-based inclusive token
// indices; `head` is null on the root token.

export interface TokenPayload {
  index: number;
  form: string;
  lemma: string;
  upos: string;
  head: number | null;
  deprel: string;
}

export interface ElementPayload {
  name: string;
  start: number;
  end: number;
  core: boolean;
}

export interface FramePayload {
  frame: string;
  target: { start: number; end: number };
  lu: string;
  elements: ElementPayload[];
}

export interface SentencePayload {
  id: string;
  lang: string;
  tokens: TokenPayload[];
  frames: FramePayload[];
}

export interface PairDetail {
  id: string;
  source: SentencePayload;
  target: SentencePayload;
  alignment: [number, number][];
  features: Record<string, number>;
  score: number | null;
  label: string | null;
}

export interface PairSummary {
  id: string;
  source_text: string;
  target_text: string;
  score: number | null;
  label: string | null;
}

export interface PairListing {
  total: number;
  offset: number;
  pairs: PairSummary[];
}

export interface LabelStats {
  total: number;
  labeled: number;
  distribution: Record<string, number>;
}
