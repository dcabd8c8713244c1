import random

import pytest

from srlpipe.corpus_io import (ROOT, AnnotatedSentence, FrameAnnotation,
                               FrameElement, SentencePair, Token)


def make_sentence(sid, forms, heads, upos=None, lemmas=None, deprels=None,
                  lang="xx", mwt=None, frames=None):
    upos = upos or ["_"] * len(forms)
    lemmas = lemmas or forms
    deprels = deprels or ["dep"] * len(forms)
    tokens = [Token(index=k, form=f, lemma=l, upos=u, head=h, deprel=d)
              for k, (f, l, u, h, d) in enumerate(zip(forms, lemmas, upos,
                                                      heads, deprels))]
    return AnnotatedSentence(id=sid, lang=lang, tokens=tokens, mwt=mwt or [],
                             frames=frames or [])


def identity_pair(sent, frames):
    """A sentence self-paired under the identity alignment."""
    src = AnnotatedSentence(id=sent.id, lang="en", tokens=sent.tokens,
                            mwt=sent.mwt, frames=frames)
    alignment = {(i, i) for i in range(len(sent.tokens))}
    return SentencePair(id=sent.id, source=src, target=sent, alignment=alignment)


def random_projective_tree(rng, n):
    """Random projective heads (ROOT sentinel for the root)."""
    heads = [ROOT] * n

    def attach(lo, hi, head):
        if lo > hi:
            return
        r = rng.randint(lo, hi)
        heads[r] = head
        attach(lo, r - 1, r)
        attach(r + 1, hi, r)

    root = rng.randint(0, n - 1)
    attach(0, root - 1, root)
    attach(root + 1, n - 1, root)
    return heads


def subtree_span(heads, root):
    reached = {root}
    changed = True
    while changed:
        changed = False
        for idx, head in enumerate(heads):
            if head in reached and idx not in reached:
                reached.add(idx)
                changed = True
    return (min(reached), max(reached))


@pytest.fixture
def commerce_pair():
    """The buy-sentence fixture: English frame projected onto a parallel side."""
    forms_en = ["Abby", "bought", "a", "car", "from", "Robin"]
    heads = [1, ROOT, 3, 1, 5, 1]
    upos = ["PROPN", "VERB", "DET", "NOUN", "ADP", "PROPN"]
    lemmas = ["Abby", "buy", "a", "car", "from", "Robin"]
    frame = FrameAnnotation(
        frame_name="Commerce_buy", target=(1, 1), lu="buy.v",
        elements=(FrameElement("Buyer", (0, 0), True),
                  FrameElement("Goods", (2, 3), True)))
    src = make_sentence("pair-1", forms_en, heads, upos, lemmas, lang="en",
                        frames=[frame])
    forms_he = ["אבי", "קנה", "את", "מכונית", "מ", "רובין"]
    tgt = make_sentence("pair-1", forms_he, heads, upos, lang="he")
    alignment = {(i, i) for i in range(6)}
    return SentencePair(id="pair-1", source=src, target=tgt, alignment=alignment)


@pytest.fixture(scope="session")
def mini_corpus(tmp_path_factory):
    """Materialized 500-pair synthetic corpus with a ready config."""
    from srlpipe.synth import write_corpus

    outdir = tmp_path_factory.mktemp("mini")
    config = write_corpus(outdir, n_pairs=500, seed=7)
    return config


@pytest.fixture(scope="session")
def pipeline_run(mini_corpus):
    """The mini corpus pushed through every stage once per test session."""
    from srlpipe.pipeline import load_config, run_all

    cfg = load_config(str(mini_corpus))
    manifest = run_all(cfg)
    return cfg, manifest


@pytest.fixture
def rng():
    return random.Random(12345)
