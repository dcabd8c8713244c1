"""Dependency-tree algorithms shared by projection, quality features and I/O."""

from __future__ import annotations

from .corpus_io import ROOT, AnnotatedSentence, Span


class HeadAmbiguityError(Exception):
    """A span has more than one token whose head lies outside it."""


class NonContiguousYieldError(Exception):
    """A subtree's yield is not a contiguous token range (non-projective)."""


def children_map(sentence: AnnotatedSentence) -> dict[int, list[int]]:
    kids: dict[int, list[int]] = {tok.index: [] for tok in sentence.tokens}
    for tok in sentence.tokens:
        if tok.head != ROOT:
            kids[tok.head].append(tok.index)
    return kids


def span_head(sentence: AnnotatedSentence, span: Span) -> int:
    """The unique token in the span whose head falls outside it (or ROOT)."""
    start, end = span
    if not (0 <= start <= end < len(sentence.tokens)):
        raise ValueError(f"span ({start},{end}) out of range in {sentence.id}")
    external = [tok.index for tok in sentence.tokens[start:end + 1]
                if tok.head == ROOT or not (start <= tok.head <= end)]
    if len(external) != 1:
        raise HeadAmbiguityError(
            f"span ({start},{end}) in {sentence.id} has {len(external)} external heads")
    return external[0]


def subtree_yield(sentence: AnnotatedSentence, index: int) -> Span:
    """Yield of the subtree rooted at `index`, as an inclusive span.

    Raises NonContiguousYieldError when the yield has gaps.
    """
    if not (0 <= index < len(sentence.tokens)):
        raise ValueError(f"token index {index} out of range in {sentence.id}")
    kids = children_map(sentence)
    reached = set()
    stack = [index]
    while stack:
        cur = stack.pop()
        if cur in reached:
            continue
        reached.add(cur)
        stack.extend(kids[cur])
    lo, hi = min(reached), max(reached)
    if len(reached) != hi - lo + 1:
        raise NonContiguousYieldError(
            f"subtree of token {index} in {sentence.id} is non-contiguous")
    return (lo, hi)


def tree_depth(sentence: AnnotatedSentence) -> int:
    """Maximum root-to-leaf edge count; 0 for a single-token sentence."""
    if not sentence.tokens:
        return 0
    depth: dict[int, int] = {}

    def depth_of(idx: int) -> int:
        if idx in depth:
            return depth[idx]
        head = sentence.tokens[idx].head
        d = 0 if head == ROOT else depth_of(head) + 1
        depth[idx] = d
        return d

    return max(depth_of(tok.index) for tok in sentence.tokens)
