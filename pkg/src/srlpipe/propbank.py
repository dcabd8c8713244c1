"""FrameNet-to-PropBank mapping, core-only filtering, dataset split,
unsegmentation and corpus statistics."""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .corpus_io import AnnotatedSentence, PropBankInstance
from .projector import ProjectedFrame
from .trees import span_head

FrameIndex = dict[str, list[str]]  # frame name -> core FE names in definition order

MAX_ARGS = 6  # ARG0..ARG5


class MapRejection(Enum):
    UnknownFrame = "UnknownFrame"
    HasPeripheral = "HasPeripheral"
    NoCoreArgs = "NoCoreArgs"
    ArgOverflow = "ArgOverflow"


class MappingError(Exception):
    pass


def load_frame_index(text: str) -> FrameIndex:
    index = json.loads(text)
    for frame, fes in index.items():
        if len(fes) != len(set(fes)):
            raise MappingError(f"duplicate core FE names in frame {frame}")
    return index


def map_to_propbank(sentence: AnnotatedSentence, frame: ProjectedFrame,
                    index: FrameIndex, dense: bool = True,
                    ) -> PropBankInstance | MapRejection:
    """Assign ARGk labels to core FEs by their frame-definition order.

    With dense numbering (default) absent core FEs shift later ones down;
    otherwise each FE keeps its positional index in the definition order.
    """
    order = index.get(frame.frame_name)
    if order is None:
        return MapRejection.UnknownFrame
    if any(not fe.core for fe in frame.elements):
        return MapRejection.HasPeripheral
    by_name = {fe.name: fe for fe in frame.elements}
    realized = [(rank, by_name[name]) for rank, name in enumerate(order)
                if name in by_name]
    if not realized:
        return MapRejection.NoCoreArgs
    args = []
    for k, (rank, fe) in enumerate(realized):
        label_idx = k if dense else rank
        if label_idx >= MAX_ARGS:
            return MapRejection.ArgOverflow
        args.append((f"ARG{label_idx}", fe.span))
    predicate = span_head(sentence, frame.target_span)
    sense = f"{sentence.tokens[predicate].lemma}.01"
    return PropBankInstance(predicate=predicate, sense=sense, args=tuple(args))


@dataclass
class MappedSentence:
    sentence: AnnotatedSentence
    instances: list[PropBankInstance]
    rejections: list[tuple[str, MapRejection]]  # (frame name, reason)


def map_sentence(sentence: AnnotatedSentence, frames: list[ProjectedFrame],
                 index: FrameIndex, dense: bool = True) -> MappedSentence:
    instances: list[PropBankInstance] = []
    rejections: list[tuple[str, MapRejection]] = []
    for frame in frames:
        result = map_to_propbank(sentence, frame, index, dense=dense)
        if isinstance(result, MapRejection):
            rejections.append((frame.frame_name, result))
        else:
            instances.append(result)
    return MappedSentence(sentence=sentence, instances=instances,
                          rejections=rejections)


def core_only_filter(mapped: list[MappedSentence]) -> list[MappedSentence]:
    """Keep a sentence iff every frame on it mapped successfully."""
    return [m for m in mapped if m.instances and not m.rejections]


def split(sentences: list, ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
          seed: int = 0) -> tuple[list, list, list]:
    """Seeded shuffle into (train, dev, test); floor sizes, remainder to train."""
    if any(r <= 0 for r in ratios) or sum(ratios) > 1.0 + 1e-9:
        raise MappingError(f"bad split ratios {ratios}")
    n = len(sentences)
    if n < 3:
        raise MappingError(f"need at least 3 sentences to split, got {n}")
    order = list(sentences)
    random.Random(seed).shuffle(order)
    n_dev = int(ratios[1] * n)
    n_test = int(ratios[2] * n)
    n_train = n - n_dev - n_test
    return (order[:n_train], order[n_train:n_train + n_dev],
            order[n_train + n_dev:])


def unsegment(sentence: AnnotatedSentence) -> list[str]:
    """Join tokens covered by a multiword span back into its surface form."""
    spans = sorted(sentence.mwt, key=lambda s: s.start)
    prev_end = -1
    for span in spans:
        if span.start <= prev_end:
            raise MappingError(f"overlapping mwt spans in {sentence.id}")
        prev_end = span.end
    by_start = {s.start: s for s in spans}
    covered = {i for s in spans for i in range(s.start, s.end + 1)}
    out: list[str] = []
    for tok in sentence.tokens:
        if tok.index in by_start:
            out.append(by_start[tok.index].surface)
        elif tok.index not in covered:
            out.append(tok.form)
    return out


@dataclass(frozen=True)
class CorpusStats:
    n_sentences: int
    n_tokens_seg: int
    n_types_seg: int
    asl_seg: float
    n_tokens_unseg: int
    n_types_unseg: int
    asl_unseg: float


def corpus_stats(sentences: list[AnnotatedSentence]) -> CorpusStats:
    """Token/type counts and average sentence length, segmented and unsegmented."""
    n = len(sentences)
    seg_tokens = 0
    unseg_tokens = 0
    seg_types: set[str] = set()
    unseg_types: set[str] = set()
    for sent in sentences:
        forms = [tok.form for tok in sent.tokens]
        surface = unsegment(sent)
        seg_tokens += len(forms)
        unseg_tokens += len(surface)
        seg_types.update(forms)
        unseg_types.update(surface)
    return CorpusStats(
        n_sentences=n,
        n_tokens_seg=seg_tokens,
        n_types_seg=len(seg_types),
        asl_seg=seg_tokens / n if n else 0.0,
        n_tokens_unseg=unseg_tokens,
        n_types_unseg=len(unseg_types),
        asl_unseg=unseg_tokens / n if n else 0.0,
    )


def frame_stats(frames: list[ProjectedFrame]) -> tuple[Counter, Counter]:
    """Descending-frequency tables of frame names and FE names."""
    frame_counts: Counter = Counter()
    fe_counts: Counter = Counter()
    for frame in frames:
        frame_counts[frame.frame_name] += 1
        for fe in frame.elements:
            fe_counts[fe.name] += 1
    return frame_counts, fe_counts
