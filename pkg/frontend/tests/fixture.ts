// The buy-sentence pair as served by GET /api/pairs/{id}.

import type { PairDetail } from "../src/types.js";

function token(
  index: number,
  form: string,
  lemma: string,
  upos: string,
  head: number | null,
  deprel: string,
) {
  return { index, form, lemma, upos, head, deprel };
}

export function commercePair(): PairDetail {
  return {
    id: "pair-1",
    source: {
      id: "pair-1",
      lang: "en",
      tokens: [
        token(0, "Abby", "Abby", "PROPN", 1, "nsubj"),
        token(1, "bought", "buy", "VERB", null, "root"),
        token(2, "a", "a", "DET", 3, "det"),
        token(3, "car", "car", "NOUN", 1, "obj"),
        token(4, "from", "from", "ADP", 5, "case"),
        token(5, "Robin", "Robin", "PROPN", 1, "obl"),
      ],
      frames: [
        {
          frame: "Commerce_buy",
          target: { start: 1, end: 1 },
          lu: "buy.v",
          elements: [
            { name: "Buyer", start: 0, end: 0, core: true },
            { name: "Goods", start: 2, end: 3, core: true },
          ],
        },
      ],
    },
    target: {
      id: "pair-1",
      lang: "he",
      tokens: [
        token(0, "אבי", "אבי", "PROPN", 1, "nsubj"),
        token(1, "קנה", "קנה", "VERB", null, "root"),
        token(2, "את", "את", "DET", 3, "det"),
        token(3, "מכונית", "מכונית", "NOUN", 1, "obj"),
        token(4, "מ", "מ", "ADP", 5, "case"),
        token(5, "רובין", "רובין", "PROPN", 1, "obl"),
      ],
      frames: [
        {
          frame: "Commerce_buy",
          target: { start: 1, end: 1 },
          lu: "buy.v",
          elements: [
            { name: "Buyer", start: 0, end: 0, core: true },
            { name: "Goods", start: 2, end: 3, core: true },
          ],
        },
      ],
    },
    alignment: [
      [0, 0],
      [1, 1],
      [2, 2],
      [3, 3],
      [4, 4],
      [5, 5],
    ],
    features: { len_src: 6, len_tgt: 6 },
    score: 0.91,
    label: null,
  };
}
