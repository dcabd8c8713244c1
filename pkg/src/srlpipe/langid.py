"""Subtitle noise cleanup and character n-gram language identification.

A small multinomial naive-Bayes model over character n-grams stands in for
an external pretrained detector, so the pipeline is self-contained. The
model interface is pluggable: anything with a detect(s) method works.
"""

from __future__ import annotations

import json
import math
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field

BOUNDARY = "\x02"  # padding symbol around each line

_MUSIC = re.compile(r"[♪♫♬♩]")
_TAGS = re.compile(r"<[^<>]*>")
_WS = re.compile(r"\s+")


class LangIdError(Exception):
    pass


def clean_text(s: str) -> str:
    """Strip musical notes, control chars and <...> subtitle tags; squeeze whitespace."""
    s = _MUSIC.sub(" ", s)
    s = _TAGS.sub(" ", s)
    s = "".join(" " if unicodedata.category(ch) == "Cc" else ch for ch in s)
    return _WS.sub(" ", s).strip()


def _ngrams(s: str, order: int):
    padded = BOUNDARY * (order - 1) + s + BOUNDARY * (order - 1)
    for k in range(len(padded) - order + 1):
        yield padded[k:k + order]


@dataclass
class LangIdModel:
    ngram_order: int
    class_logpriors: dict[str, float]
    ngram_loglik: dict[str, dict[str, float]] = field(repr=False)

    def detect(self, s: str) -> tuple[str, float]:
        return detect(self, s)

    def to_json(self) -> str:
        return json.dumps({
            "ngram_order": self.ngram_order,
            "class_logpriors": self.class_logpriors,
            "ngram_loglik": self.ngram_loglik,
        }, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "LangIdModel":
        obj = json.loads(text)
        return cls(ngram_order=obj["ngram_order"],
                   class_logpriors=obj["class_logpriors"],
                   ngram_loglik=obj["ngram_loglik"])


def train_langid(corpora: dict[str, list[str]], ngram_order: int = 3,
                 min_lines: int = 100) -> LangIdModel:
    """Fit add-one-smoothed n-gram likelihoods from per-language line corpora."""
    if len(corpora) < 2:
        raise LangIdError(f"need at least 2 languages, got {len(corpora)}")
    for lang, lines in corpora.items():
        if len(lines) < min_lines:
            raise LangIdError(f"language {lang!r} has {len(lines)} lines, "
                              f"need >= {min_lines}")

    counts = {lang: Counter() for lang in corpora}
    for lang, lines in corpora.items():
        for line in lines:
            counts[lang].update(_ngrams(clean_text(line), ngram_order))

    vocab = sorted(set().union(*counts.values()))
    total_lines = sum(len(lines) for lines in corpora.values())
    logpriors = {lang: math.log(len(lines) / total_lines)
                 for lang, lines in sorted(corpora.items())}
    loglik: dict[str, dict[str, float]] = {}
    for lang in sorted(corpora):
        total = sum(counts[lang].values()) + len(vocab)
        loglik[lang] = {g: math.log((counts[lang][g] + 1) / total) for g in vocab}
    return LangIdModel(ngram_order=ngram_order, class_logpriors=logpriors,
                       ngram_loglik=loglik)


def detect(model: LangIdModel, s: str) -> tuple[str, float]:
    """Argmax-posterior language with its normalized posterior.

    N-grams unseen in every training language carry no evidence and are
    skipped, so fully out-of-vocabulary strings fall back to the priors.
    """
    if not s:
        raise LangIdError("cannot detect language of an empty string")
    logpost = dict(model.class_logpriors)
    any_table = next(iter(model.ngram_loglik.values()))
    for gram in _ngrams(s, model.ngram_order):
        if gram not in any_table:
            continue
        for lang in logpost:
            logpost[lang] += model.ngram_loglik[lang][gram]
    m = max(logpost.values())
    z = sum(math.exp(v - m) for v in logpost.values())
    post = {lang: math.exp(v - m) / z for lang, v in logpost.items()}
    best = max(sorted(post), key=lambda lang: post[lang])
    return best, post[best]


@dataclass
class Rejection:
    pair_id: str
    reason: str  # source-not-<lang> | target-not-<lang> | empty-source | empty-target


def filter_pairs(model: LangIdModel, pairs: list[tuple[str, str, str]],
                 lang_src: str = "en", lang_tgt: str = "he",
                 tau_lang: float = 0.5,
                 ) -> tuple[list[tuple[str, str, str]], list[Rejection]]:
    """Keep (id, src, tgt) triples whose sides detect as the expected languages."""
    kept: list[tuple[str, str, str]] = []
    rejected: list[Rejection] = []
    for pid, src, tgt in pairs:
        csrc, ctgt = clean_text(src), clean_text(tgt)
        if not csrc:
            rejected.append(Rejection(pid, "empty-source"))
            continue
        if not ctgt:
            rejected.append(Rejection(pid, "empty-target"))
            continue
        lang, p = detect(model, csrc)
        if lang != lang_src or p < tau_lang:
            rejected.append(Rejection(pid, f"source-not-{lang_src}"))
            continue
        lang, p = detect(model, ctgt)
        if lang != lang_tgt or p < tau_lang:
            rejected.append(Rejection(pid, f"target-not-{lang_tgt}"))
            continue
        kept.append((pid, src, tgt))
    return kept, rejected
