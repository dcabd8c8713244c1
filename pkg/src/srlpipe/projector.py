"""Project source-side frame annotations onto the target sentence.

Head-then-subtree projection: find the head of each annotated source span,
follow its alignment link, and take the aligned token's dependency yield
on the target side. Any ambiguity along the way skips the frame.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .corpus_io import FrameAnnotation, FrameElement, SentencePair, Span
from .trees import (HeadAmbiguityError, NonContiguousYieldError, span_head,
                    subtree_yield)

VERBAL_LU_SUFFIX = ".v"


class SkipReason(Enum):
    NonVerbalLU = "NonVerbalLU"
    HeadUnaligned = "HeadUnaligned"
    HeadMultiAligned = "HeadMultiAligned"
    SubtreeConflict = "SubtreeConflict"
    EmptyProjection = "EmptyProjection"


@dataclass(frozen=True)
class ProjectedFrame:
    frame_name: str
    target_span: Span
    elements: tuple[FrameElement, ...]
    lu: str
    provenance: str  # source frame name + target span, for traceability

    def as_annotation(self) -> FrameAnnotation:
        return FrameAnnotation(frame_name=self.frame_name, target=self.target_span,
                               lu=self.lu, elements=self.elements)


def _is_verbal(pair: SentencePair, frame: FrameAnnotation) -> bool:
    if frame.lu.endswith(VERBAL_LU_SUFFIX):
        return True
    try:
        head = span_head(pair.source, frame.target)
    except HeadAmbiguityError:
        return False
    return pair.source.tokens[head].upos == "VERB"


def _trim(span: Span, predicate_span: Span) -> Span | SkipReason:
    """Shrink a role span past predicate tokens sitting on its edges.

    A predicate strictly inside the span cannot be trimmed away without
    splitting it, which counts as a projection conflict.
    """
    ps, pe = predicate_span
    start, end = span
    while start <= end and ps <= start <= pe:
        start += 1
    while end >= start and ps <= end <= pe:
        end -= 1
    if start > end:
        return SkipReason.EmptyProjection
    if start <= ps and pe <= end:
        return SkipReason.SubtreeConflict
    return (start, end)


def project_frame(pair: SentencePair, frame: FrameAnnotation,
                  ) -> ProjectedFrame | SkipReason:
    """Project one frame; returns the skip reason on any failed step.

    The predicate target maps to its single aligned token (the verb itself,
    whose full subtree would usually be the whole clause); role spans map
    head-then-subtree.
    """
    if not _is_verbal(pair, frame):
        return SkipReason.NonVerbalLU

    # heads of the target span and every role span on the source side
    heads: list[int] = []
    for span in [frame.target] + [fe.span for fe in frame.elements]:
        try:
            heads.append(span_head(pair.source, span))
        except HeadAmbiguityError:
            return SkipReason.SubtreeConflict

    # each head must be aligned to exactly one target token
    anchors: list[int] = []
    for head in heads:
        aligned = sorted(j for (i, j) in pair.alignment if i == head)
        if not aligned:
            return SkipReason.HeadUnaligned
        if len(aligned) > 1:
            return SkipReason.HeadMultiAligned
        anchors.append(aligned[0])

    target_span: Span = (anchors[0], anchors[0])
    projected: list[FrameElement] = []
    for fe, anchor in zip(frame.elements, anchors[1:]):
        try:
            span = subtree_yield(pair.target, anchor)
        except NonContiguousYieldError:
            return SkipReason.SubtreeConflict
        span = _trim(span, target_span)
        if isinstance(span, SkipReason):
            return span
        projected.append(FrameElement(name=fe.name, span=span, core=fe.core))

    spans = [target_span] + [fe.span for fe in projected]
    for a in range(len(spans)):
        for b in range(a + 1, len(spans)):
            if spans[a][0] <= spans[b][1] and spans[b][0] <= spans[a][1]:
                return SkipReason.SubtreeConflict
    return ProjectedFrame(frame_name=frame.frame_name, target_span=target_span,
                          elements=tuple(projected), lu=frame.lu,
                          provenance=f"{pair.source.id}:{frame.frame_name}"
                                     f"@{frame.target[0]}-{frame.target[1]}")


def project_pair(pair: SentencePair,
                 ) -> tuple[list[ProjectedFrame], list[tuple[str, SkipReason]]]:
    """Project every frame of a pair; (kept frames, per-frame skip log).

    The pair is retained downstream iff at least one frame projected fully;
    a frameless pair is logged as a single EmptyProjection skip.
    """
    if not pair.source.frames:
        return [], [("", SkipReason.EmptyProjection)]
    kept: list[ProjectedFrame] = []
    skips: list[tuple[str, SkipReason]] = []
    for frame in pair.source.frames:
        result = project_frame(pair, frame)
        if isinstance(result, SkipReason):
            skips.append((frame.frame_name, result))
        else:
            kept.append(result)
    return kept, skips


def skip_histogram(skips: list[tuple[str, SkipReason]]) -> Counter:
    return Counter(reason for _, reason in skips)
