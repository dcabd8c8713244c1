"""Deterministic synthetic parallel corpora for demos and end-to-end tests.

Builds a small English / Hebrew-script bilingual world: a 50-entry
dictionary, word-for-word parallel sentences with mirrored dependency
trees, frame annotations on the English side, and controlled noise
(wrong-language targets, too-short targets, padded poor translations).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from . import langid
from .corpus_io import (AnnotatedSentence, FrameAnnotation, FrameElement,
                        MultiWordSpan, Token, write_conllu, write_frames_jsonl)
from .quality import QualityLabel

_HE_LETTERS = "אבגדהוזחטיכלמנסעפצקרשת"

VERBS = ["saw", "bought", "sold", "took", "gave", "found", "loved", "heard",
         "chased", "ate"]
NOUNS = ["dog", "cat", "man", "woman", "car", "house", "book", "child", "bird",
         "fish", "teacher", "student", "king", "queen", "horse", "apple",
         "tree", "city", "boat", "song", "door", "road", "friend", "letter",
         "table", "garden", "river", "stone", "cloud", "ship"]
DETS = ["the", "a"]
ADJS = ["big", "small", "old", "new", "red"]
ADVS = ["yesterday", "today", "quickly"]

FRAME_OF_VERB = {verb: f"Event_{verb}" for verb in VERBS}


def build_dictionary(seed: int = 13) -> dict[str, str]:
    """50-entry English -> Hebrew-script dictionary with unique targets."""
    rng = random.Random(seed)
    words = VERBS + NOUNS[:30] + DETS + ADJS + ADVS
    assert len(set(words)) == 50
    used: set[str] = set()
    table: dict[str, str] = {}
    for word in words:
        while True:
            he = "".join(rng.choice(_HE_LETTERS) for _ in range(rng.randint(3, 6)))
            if he not in used:
                used.add(he)
                table[word] = he
                break
    return table


@dataclass
class SynthPair:
    pid: str
    category: str  # good | peripheral | wrong-lang | short | padded
    src: AnnotatedSentence
    tgt: AnnotatedSentence
    src_text: str
    tgt_text: str


def _sentence(pid: str, lang: str, words: list[str], heads: list[int],
              upos: list[str], mwt: list[MultiWordSpan] | None = None,
              frames: list[FrameAnnotation] | None = None) -> AnnotatedSentence:
    tokens = [Token(index=k, form=w, lemma=w, upos=u, head=h, deprel="dep")
              for k, (w, h, u) in enumerate(zip(words, heads, upos))]
    return AnnotatedSentence(id=pid, lang=lang, tokens=tokens, mwt=mwt or [],
                             frames=frames or [])


def _translate(table: dict[str, str], words: list[str]) -> list[str]:
    return [table[w] for w in words]


def _np(det: str, adjs: list[str], noun: str, offset: int,
        ) -> tuple[list[str], list[int], list[str], tuple[int, int], int]:
    """Noun phrase: (words, heads, upos, span, head index) at a token offset."""
    words = [det] + adjs + [noun]
    noun_idx = offset + len(words) - 1
    heads = [noun_idx] * (len(words) - 1) + [-2]  # -2: filled in by the caller
    upos = ["DET"] + ["ADJ"] * len(adjs) + ["NOUN"]
    return words, heads, upos, (offset, noun_idx), noun_idx


def make_pair(pid: str, category: str, table: dict[str, str],
              rng: random.Random) -> SynthPair:
    verb = rng.choice(VERBS)
    n1, n2, n3, n4 = rng.sample(NOUNS[:30], 4)
    frame = FRAME_OF_VERB[verb]

    if category == "short":
        # 4-token pair: fails the structural prefilter (min_tokens 5)
        words = ["the", n1, verb, n2]
        heads = [1, 2, -1, 2]
        upos = ["DET", "NOUN", "VERB", "NOUN"]
        frames = [FrameAnnotation(frame_name=frame, target=(2, 2), lu=f"{verb}.v",
                                  elements=(FrameElement("Actor", (0, 1), True),
                                            FrameElement("Undergoer", (3, 3), True)))]
        he_words = _translate(table, words)
        src = _sentence(pid, "en", words, heads, upos, frames=frames)
        tgt = _sentence(pid, "he", he_words, heads, upos)
        return SynthPair(pid, category, src, tgt, " ".join(words), " ".join(he_words))

    # subject NP + verb, with 0-2 adjectives per NP for length variety
    words, heads, upos, subj_span, subj_head = _np(
        "the", rng.sample(ADJS, rng.randint(0, 1)), n1, 0)
    verb_idx = len(words)
    words.append(verb)
    heads = [h if h != -2 else verb_idx for h in heads] + [-1]
    upos.append("VERB")

    frames = []
    complex_clause = category == "good" and rng.random() < 0.3
    if complex_clause:
        # object is itself a small clause: NP3 V2 NP4
        w3, h3, u3, span3, head3 = _np("the", [], n3, len(words))
        v2_idx = len(words) + len(w3)
        w4, h4, u4, span4, head4 = _np("a", [], n4, v2_idx + 1)
        verb2 = rng.choice([v for v in VERBS if v != verb])
        words += w3 + [verb2] + w4
        heads += [h if h != -2 else v2_idx for h in h3] + [verb_idx] \
            + [h if h != -2 else v2_idx for h in h4]
        upos += u3 + ["VERB"] + u4
        clause_span = (span3[0], span4[1])
        frames.append(FrameAnnotation(
            frame_name=frame, target=(verb_idx, verb_idx), lu=f"{verb}.v",
            elements=(FrameElement("Actor", subj_span, True),
                      FrameElement("Undergoer", clause_span, True))))
        frames.append(FrameAnnotation(
            frame_name=FRAME_OF_VERB[verb2], target=(v2_idx, v2_idx),
            lu=f"{verb2}.v",
            elements=(FrameElement("Actor", span3, True),
                      FrameElement("Undergoer", span4, True))))
    else:
        w2, h2, u2, obj_span, obj_head = _np(
            "a", rng.sample(ADJS, rng.randint(0, 2)), n2, len(words))
        words += w2
        heads += [h if h != -2 else verb_idx for h in h2]
        upos += u2
        elements = [FrameElement("Actor", subj_span, True),
                    FrameElement("Undergoer", obj_span, True)]
        if category == "peripheral":
            adv = rng.choice(ADVS)
            words.append(adv)
            heads.append(verb_idx)
            upos.append("ADV")
            elements.append(FrameElement("When", (len(words) - 1, len(words) - 1),
                                         False))
        frames.append(FrameAnnotation(frame_name=frame,
                                      target=(verb_idx, verb_idx), lu=f"{verb}.v",
                                      elements=tuple(elements)))
    src = _sentence(pid, "en", words, heads, upos, frames=frames)

    he_words = _translate(table, words)
    he_heads = list(heads)
    he_upos = list(upos)
    if category == "padded":
        # junk tail: plausible Hebrew-looking noise hanging off the root
        for _ in range(4):
            he_words.append("".join(rng.choice(_HE_LETTERS) for _ in range(4)))
            he_heads.append(verb_idx)
            he_upos.append("X")
    # one multiword span joining the object determiner with the next token
    det2 = verb_idx + 1
    mwt = [MultiWordSpan(start=det2, end=det2 + 1,
                         surface=he_words[det2] + he_words[det2 + 1])]
    tgt = _sentence(pid, "he", he_words, he_heads, he_upos, mwt=mwt)

    if category == "wrong-lang":
        # target side left untranslated: language filter must reject it
        return SynthPair(pid, category, src, tgt, " ".join(words), " ".join(words))
    return SynthPair(pid, category, src, tgt, " ".join(words), " ".join(he_words))


def make_corpus(n_pairs: int = 500, seed: int = 7) -> list[SynthPair]:
    """Mixed corpus: 56% clean, 10% peripheral-FE, 6% wrong-language,
    6% too-short, 8% padded poor translations (ratios scale with n_pairs)."""
    rng = random.Random(seed)
    categories = (["good"] * 70 + ["peripheral"] * 10 + ["wrong-lang"] * 6 +
                  ["short"] * 6 + ["padded"] * 8)
    table = build_dictionary()
    pairs = []
    for k in range(1, n_pairs + 1):
        category = categories[(k - 1) % len(categories)]
        pairs.append(make_pair(f"pair-{k}", category, table, rng))
    return pairs


def make_labels(pairs: list[SynthPair], n_good: int = 60, n_bad: int = 30,
                ) -> list[tuple[str, str]]:
    """Curation labels: clean pairs are Good, padded ones PoorTranslation."""
    labels = []
    good = [p for p in pairs if p.category in ("good", "peripheral")][:n_good]
    bad = [p for p in pairs if p.category == "padded"][:n_bad]
    labels += [(p.pid, QualityLabel.Good.value) for p in good]
    labels += [(p.pid, QualityLabel.PoorTranslation.value) for p in bad]
    return labels


def make_langid_model(seed: int = 5) -> langid.LangIdModel:
    rng = random.Random(seed)
    table = build_dictionary()
    en_vocab = list(table)
    he_vocab = list(table.values())
    en_lines = [" ".join(rng.choice(en_vocab) for _ in range(rng.randint(4, 9)))
                for _ in range(200)]
    he_lines = [" ".join(rng.choice(he_vocab) for _ in range(rng.randint(4, 9)))
                for _ in range(200)]
    return langid.train_langid({"en": en_lines, "he": he_lines})


def frame_index() -> dict[str, list[str]]:
    return {FRAME_OF_VERB[verb]: ["Actor", "Undergoer"] for verb in VERBS}


def write_corpus(outdir: str | Path, n_pairs: int = 500, seed: int = 7) -> Path:
    """Materialize all pipeline inputs plus a ready-to-run config file."""
    import json

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    pairs = make_corpus(n_pairs=n_pairs, seed=seed)

    (outdir / "pairs.tsv").write_text(
        "".join(f"{p.src_text}\t{p.tgt_text}\n" for p in pairs))
    (outdir / "src.conllu").write_text(write_conllu([p.src for p in pairs]))
    (outdir / "tgt.conllu").write_text(write_conllu([p.tgt for p in pairs]))
    (outdir / "frames.jsonl").write_text(
        write_frames_jsonl({p.pid: p.src.frames for p in pairs if p.src.frames}))
    (outdir / "frame_index.json").write_text(json.dumps(frame_index(), indent=2))
    (outdir / "train_labels.tsv").write_text(
        "".join(f"{pid}\t{label}\n" for pid, label in make_labels(pairs)))
    (outdir / "langid_model.json").write_text(make_langid_model().to_json())
    config = outdir / "pipeline.cfg"
    config.write_text(
        f"pairs = {outdir / 'pairs.tsv'}\n"
        f"src_conllu = {outdir / 'src.conllu'}\n"
        f"tgt_conllu = {outdir / 'tgt.conllu'}\n"
        f"frames = {outdir / 'frames.jsonl'}\n"
        f"frame_index = {outdir / 'frame_index.json'}\n"
        f"langid_model = {outdir / 'langid_model.json'}\n"
        f"labels = {outdir / 'train_labels.tsv'}\n"
        f"outdir = {outdir / 'out'}\n"
        "seed = 0\n")
    return config
