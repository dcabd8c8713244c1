// The six quality labels, in their canonical listed order. Keyboard keys
// "1".."6" map positionally, so "6" is "Good".

export const QUALITY_LABELS = [
  "Error in sentence alignment",
  "Poor translation",
  "Error in word alignment",
  "Poor syntactic parsing",
  "Poor frame parsing",
  "Good",
] as const;

export type QualityLabel = (typeof QUALITY_LABELS)[number];

export function labelForKey(key: string): QualityLabel | null {
  const n = Number(key);
  if (!Number.isInteger(n) || n < 1 || n > QUALITY_LABELS.length) {
    return null;
  }
  return QUALITY_LABELS[n - 1];
}
