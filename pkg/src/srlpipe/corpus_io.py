"""Data model and (de)serialization for every external format the pipeline touches.

Internally token indices are 0-based everywhere; 1-based conventions of
CoNLL-U and CoNLL-2009 are confined to the parse/write functions here.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

ROOT = -1

Span = tuple[int, int]  # (start, end), inclusive token indices


class ParseError(Exception):
    """Malformed input; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Token:
    index: int
    form: str
    lemma: str = "_"
    upos: str = "_"
    head: int = ROOT
    deprel: str = "_"


@dataclass(frozen=True)
class MultiWordSpan:
    start: int
    end: int  # inclusive
    surface: str


@dataclass(frozen=True)
class FrameElement:
    name: str
    span: Span
    core: bool


@dataclass(frozen=True)
class FrameAnnotation:
    frame_name: str
    target: Span
    lu: str
    elements: tuple[FrameElement, ...] = ()


@dataclass
class AnnotatedSentence:
    id: str
    lang: str
    tokens: list[Token]
    mwt: list[MultiWordSpan] = field(default_factory=list)
    frames: list[FrameAnnotation] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass
class SentencePair:
    id: str
    source: AnnotatedSentence
    target: AnnotatedSentence
    alignment: set[tuple[int, int]] = field(default_factory=set)
    score: float | None = None
    status: str = "raw"


@dataclass(frozen=True)
class PropBankInstance:
    predicate: int
    sense: str
    args: tuple[tuple[str, Span], ...]


def validate_tree(tokens: list[Token], line: int | None = None) -> None:
    """Check indices are 0..n-1 and heads form a single tree under one root."""
    n = len(tokens)
    roots = 0
    for pos, tok in enumerate(tokens):
        if tok.index != pos:
            raise ParseError(f"non-contiguous token index {tok.index}", line)
        if tok.head == ROOT:
            roots += 1
        elif not (0 <= tok.head < n) or tok.head == tok.index:
            raise ParseError(f"invalid head {tok.head} for token {tok.index}", line)
    if n and roots != 1:
        raise ParseError(f"expected exactly one root, found {roots}", line)
    # cycle check: walk to root from every token
    for tok in tokens:
        seen = set()
        cur = tok.index
        while cur != ROOT:
            if cur in seen:
                raise ParseError(f"cycle through token {tok.index}", line)
            seen.add(cur)
            cur = tokens[cur].head


def validate_sentence(sent: AnnotatedSentence) -> None:
    validate_tree(sent.tokens)
    n = len(sent.tokens)
    prev_end = -1
    for span in sorted(sent.mwt, key=lambda s: s.start):
        if not (0 <= span.start <= span.end < n):
            raise ParseError(f"mwt span {span.start}-{span.end} out of range in {sent.id}")
        if span.start <= prev_end:
            raise ParseError(f"overlapping mwt spans in {sent.id}")
        prev_end = span.end
    for frame in sent.frames:
        _validate_frame(frame, n, sent.id)


def _validate_frame(frame: FrameAnnotation, n: int, sent_id: str) -> None:
    for start, end in [frame.target] + [fe.span for fe in frame.elements]:
        if start > end:
            raise ParseError(f"empty span ({start},{end}) in {sent_id}")
        if not (0 <= start and end < n):
            raise ParseError(f"span ({start},{end}) out of range in {sent_id}")
    names = [fe.name for fe in frame.elements]
    if len(names) != len(set(names)):
        raise ParseError(f"duplicate FE name in frame {frame.frame_name} of {sent_id}")


# ---------------------------------------------------------------------------
# CoNLL-U

def _iter_lines(text) -> Iterator[str]:
    if isinstance(text, str):
        return iter(io.StringIO(text))
    if isinstance(text, io.TextIOBase):
        return iter(text)
    return iter(text)


def parse_conllu(text, lang: str = "") -> list[AnnotatedSentence]:
    """Parse CoNLL-U into sentences; `a-b` range lines become MultiWordSpans."""
    sentences: list[AnnotatedSentence] = []
    tokens: list[Token] = []
    mwt: list[MultiWordSpan] = []
    sent_id: str | None = None
    start_line = 1

    def flush(line_no: int) -> None:
        nonlocal tokens, mwt, sent_id
        if not tokens:
            return
        validate_tree(tokens, line_no)
        sid = sent_id if sent_id is not None else f"s{len(sentences) + 1}"
        sent = AnnotatedSentence(id=sid, lang=lang, tokens=tokens, mwt=mwt)
        validate_sentence(sent)
        sentences.append(sent)
        tokens, mwt, sent_id = [], [], None

    line_no = 0
    for line_no, raw in enumerate(_iter_lines(text), start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if line == "":
            flush(line_no)
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("sent_id"):
                _, _, value = body.partition("=")
                sent_id = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(f"expected 10 columns, got {len(cols)}", line_no)
        tid = cols[0]
        if "-" in tid:
            lo_s, _, hi_s = tid.partition("-")
            try:
                lo, hi = int(lo_s), int(hi_s)
            except ValueError:
                raise ParseError(f"bad range id {tid!r}", line_no)
            mwt.append(MultiWordSpan(start=lo - 1, end=hi - 1, surface=cols[1]))
            continue
        if "." in tid:  # empty nodes of enhanced UD are ignored
            continue
        try:
            index = int(tid) - 1
        except ValueError:
            raise ParseError(f"bad token id {tid!r}", line_no)
        try:
            head = int(cols[6]) - 1
        except ValueError:
            raise ParseError(f"non-numeric head {cols[6]!r}", line_no)
        if index != len(tokens):
            raise ParseError(f"token id {tid} out of order", line_no)
        tokens.append(Token(index=index, form=cols[1], lemma=cols[2], upos=cols[3],
                            head=head if head >= 0 else ROOT, deprel=cols[7]))
    flush(line_no + 1)
    return sentences


def write_conllu(sentences: Iterable[AnnotatedSentence]) -> str:
    out = []
    for sent in sentences:
        out.append(f"# sent_id = {sent.id}")
        ranges = {s.start: s for s in sent.mwt}
        for tok in sent.tokens:
            if tok.index in ranges:
                span = ranges[tok.index]
                out.append("\t".join([f"{span.start + 1}-{span.end + 1}", span.surface]
                                     + ["_"] * 8))
            head = tok.head + 1 if tok.head != ROOT else 0
            out.append("\t".join([str(tok.index + 1), tok.form, tok.lemma, tok.upos, "_",
                                  "_", str(head), tok.deprel, "_", "_"]))
        out.append("")
    return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------------------
# Frames JSONL

def parse_frames_jsonl(text, strict: bool = False,
                       sentence_lengths: dict[str, int] | None = None,
                       ) -> tuple[dict[str, list[FrameAnnotation]], list[str]]:
    """Parse one-record-per-line frame annotations keyed by sentence id.

    Returns (frames_by_id, errors); in strict mode the first bad record
    raises, in lenient mode bad records are dropped and reported.
    """
    by_id: dict[str, list[FrameAnnotation]] = {}
    errors: list[str] = []

    def bad(msg: str, line: int) -> None:
        if strict:
            raise ParseError(msg, line)
        errors.append(f"line {line}: {msg}")

    for line_no, raw in enumerate(_iter_lines(text), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
            sid = rec["id"]
            frames = []
            for fr in rec.get("frames", []):
                elements = tuple(
                    FrameElement(name=el["name"], span=(el["start"], el["end"]),
                                 core=bool(el["core"]))
                    for el in fr.get("elements", [])
                )
                frames.append(FrameAnnotation(
                    frame_name=fr["frame"],
                    target=(fr["target"]["start"], fr["target"]["end"]),
                    lu=fr["lu"],
                    elements=elements,
                ))
        except (KeyError, TypeError, ValueError) as exc:
            bad(f"malformed record: {exc}", line_no)
            continue
        n = sentence_lengths.get(sid) if sentence_lengths else None
        try:
            for frame in frames:
                _validate_frame(frame, n if n is not None else 1 << 30, sid)
        except ParseError as exc:
            bad(f"record {sid}: {exc}", line_no)
            continue
        by_id[sid] = frames
    return by_id, errors


def write_frames_jsonl(by_id: dict[str, list[FrameAnnotation]]) -> str:
    out = []
    for sid, frames in by_id.items():
        rec = {"id": sid, "frames": [
            {"frame": fr.frame_name,
             "target": {"start": fr.target[0], "end": fr.target[1]},
             "lu": fr.lu,
             "elements": [{"name": fe.name, "start": fe.span[0], "end": fe.span[1],
                           "core": fe.core} for fe in fr.elements]}
            for fr in frames]}
        out.append(json.dumps(rec, ensure_ascii=False))
    return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------------------
# Pharaoh alignments

def parse_pharaoh(line: str, src_len: int, tgt_len: int) -> set[tuple[int, int]]:
    """Parse whitespace-separated `i-j` links; duplicates collapse into a set."""
    links: set[tuple[int, int]] = set()
    for chunk in line.split():
        i_s, sep, j_s = chunk.partition("-")
        if not sep:
            raise ParseError(f"bad alignment pair {chunk!r}")
        try:
            i, j = int(i_s), int(j_s)
        except ValueError:
            raise ParseError(f"bad alignment pair {chunk!r}")
        if not (0 <= i < src_len and 0 <= j < tgt_len):
            raise ParseError(f"alignment pair {chunk!r} out of range "
                             f"({src_len}x{tgt_len})")
        links.add((i, j))
    return links


def write_pharaoh(links: set[tuple[int, int]]) -> str:
    return " ".join(f"{i}-{j}" for i, j in sorted(links))


# ---------------------------------------------------------------------------
# Pair TSV

def read_pairs_tsv(data) -> tuple[list[tuple[str, str, str]], int]:
    """Read 2-column UTF-8 TSV into (id, source, target) triples.

    Ids are synthesized as pair-<n> over the raw line numbers. Lines with
    the wrong column count or undecodable bytes are skipped and counted.
    """
    if isinstance(data, bytes):
        raw_lines = data.split(b"\n")
        lines: list[str | None] = []
        for bline in raw_lines:
            try:
                lines.append(bline.decode("utf-8"))
            except UnicodeDecodeError:
                lines.append(None)
    else:
        lines = [ln for ln in _iter_lines(data)]
        lines = [ln.rstrip("\n") for ln in lines]

    pairs: list[tuple[str, str, str]] = []
    skipped = 0
    for n, line in enumerate(lines, start=1):
        if line is None:
            skipped += 1
            continue
        line = line.rstrip("\r")
        if line == "":
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            skipped += 1
            continue
        pairs.append((f"pair-{n}", cols[0], cols[1]))
    return pairs, skipped


# ---------------------------------------------------------------------------
# CoNLL-2009

_N_FIXED = 14  # ID FORM LEMMA PLEMMA POS PPOS FEAT PFEAT HEAD PHEAD DEPREL PDEPREL FILLPRED PRED


def write_conll2009(items: Iterable[tuple[AnnotatedSentence, list[PropBankInstance]]]) -> str:
    """Serialize sentences with predicate-argument structures.

    Each argument label is written on the row of its span's head token
    (the unique token whose parent lies outside the span).
    """
    from .trees import span_head  # local import: trees has no deps on this module

    out = []
    for sent, instances in items:
        n = len(sent.tokens)
        apred = [["_"] * len(instances) for _ in range(n)]
        fillpred = ["_"] * n
        pred = ["_"] * n
        for k, inst in enumerate(instances):
            if not (0 <= inst.predicate < n):
                raise ParseError(f"predicate index {inst.predicate} out of range in {sent.id}")
            fillpred[inst.predicate] = "Y"
            pred[inst.predicate] = inst.sense
            occupied: set[int] = set()
            for label, (start, end) in inst.args:
                if not (0 <= start <= end < n):
                    raise ParseError(f"arg span ({start},{end}) out of range in {sent.id}")
                cells = set(range(start, end + 1))
                if cells & occupied or inst.predicate in cells:
                    raise ParseError(f"overlapping argument spans in {sent.id}")
                occupied |= cells
                head = span_head(sent, (start, end))
                apred[head][k] = label
        for tok in sent.tokens:
            head = str(tok.head + 1 if tok.head != ROOT else 0)
            row = [str(tok.index + 1), tok.form, tok.lemma, tok.lemma, tok.upos, tok.upos,
                   "_", "_", head, head, tok.deprel, tok.deprel,
                   fillpred[tok.index], pred[tok.index]] + apred[tok.index]
            out.append("\t".join(row))
        out.append("")
    return "\n".join(out) + ("\n" if out else "")


def parse_conll2009(text, lang: str = "") -> list[tuple[AnnotatedSentence, list[PropBankInstance]]]:
    """Inverse of write_conll2009 for spans that are subtree yields.

    Argument spans are reconstructed as the dependency yield of the labeled
    row, trimmed of the predicate token at span edges.
    """
    from .trees import subtree_yield

    items: list[tuple[AnnotatedSentence, list[PropBankInstance]]] = []
    rows: list[list[str]] = []

    def flush(line_no: int) -> None:
        nonlocal rows
        if not rows:
            return
        tokens = []
        for cols in rows:
            try:
                head = int(cols[8]) - 1
                index = int(cols[0]) - 1
            except ValueError:
                raise ParseError(f"non-numeric id/head {cols[0]!r}/{cols[8]!r}",
                                 line_no)
            tokens.append(Token(index=index, form=cols[1], lemma=cols[2],
                                upos=cols[4], head=head if head >= 0 else ROOT,
                                deprel=cols[10]))
        validate_tree(tokens, line_no)
        sent = AnnotatedSentence(id=f"s{len(items) + 1}", lang=lang, tokens=tokens)
        n_apred = len(rows[0]) - _N_FIXED
        pred_rows = [i for i, cols in enumerate(rows) if cols[12] == "Y"]
        if len(pred_rows) != n_apred:
            raise ParseError(f"{len(pred_rows)} predicates but {n_apred} APRED columns",
                             line_no)
        instances = []
        for k, pi in enumerate(pred_rows):
            args = []
            for i, cols in enumerate(rows):
                label = cols[_N_FIXED + k]
                if label == "_":
                    continue
                try:
                    start, end = subtree_yield(sent, i)
                except Exception as exc:
                    raise ParseError(f"cannot recover span for {label}: {exc}",
                                     line_no)
                if start == pi:
                    start = pi + 1
                if end == pi:
                    end = pi - 1
                args.append((label, (start, end)))
            instances.append(PropBankInstance(predicate=pi, sense=rows[pi][13],
                                              args=tuple(args)))
        items.append((sent, instances))
        rows = []

    line_no = 0
    for line_no, raw in enumerate(_iter_lines(text), start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if line == "":
            flush(line_no)
            continue
        cols = line.split("\t")
        if len(cols) < _N_FIXED:
            raise ParseError(f"expected >= {_N_FIXED} columns, got {len(cols)}", line_no)
        rows.append(cols)
    flush(line_no + 1)
    return items
