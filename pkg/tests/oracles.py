"""Independent brute-force oracles used to cross-check the pipeline.

Everything here is deliberately naive and shares no code with srlpipe
internals: enumeration instead of dynamic programming, rescans instead of
indices. Slow is fine; these run on tiny fixtures.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict

NULL = "<NULL>"


# ---------------------------------------------------------------------------
# alignment

def brute_force_em(pairs, iterations, lam, p_null):
    """EM for the diagonal model by enumerating every joint alignment vector.

    Returns (ttable, per-iteration log-likelihoods). Source token i may pick
    null or a target position; positions weighted exp(-lam*|i/m - j/n|)
    normalized to mass (1 - p_null).
    """
    support = defaultdict(set)
    for src, tgt in pairs:
        for sw in src:
            support[sw].update(tgt)
            if p_null > 0:
                support[sw].add(NULL)
    t = {sw: {tw: 1.0 / len(tws) for tw in tws} for sw, tws in support.items()}

    logliks = []
    for _ in range(iterations):
        counts = defaultdict(lambda: defaultdict(float))
        loglik = 0.0
        for src, tgt in pairs:
            m, n = len(src), len(tgt)
            options = list(range(n)) + [None]
            total = 0.0
            weights = {}
            for assign in itertools.product(options, repeat=m):
                p = 1.0
                for i, j in enumerate(assign, start=1):
                    if j is None:
                        p *= p_null * t[src[i - 1]].get(NULL, 0.0)
                    else:
                        w = [math.exp(-lam * abs(i / m - (k + 1) / n))
                             for k in range(n)]
                        p *= (1 - p_null) * w[j] / sum(w) * t[src[i - 1]].get(tgt[j], 0.0)
                weights[assign] = p
                total += p
            loglik += math.log(total)
            for assign, p in weights.items():
                for i, j in enumerate(assign):
                    word = NULL if j is None else tgt[j]
                    counts[src[i]][word] += p / total
        logliks.append(loglik)
        t = {}
        for sw, row in counts.items():
            z = sum(row.values())
            t[sw] = {tw: c / z for tw, c in row.items()}
    return t, logliks


def model1_posteriors(pairs, iterations, src, tgt):
    """Plain IBM Model 1 (uniform position prior, no null) posteriors.

    Trains t by standard Model 1 EM on `pairs`, then returns, for each
    source token of (src, tgt), the posterior over target positions.
    """
    support = defaultdict(set)
    for s, g in pairs:
        for sw in s:
            support[sw].update(g)
    t = {sw: {tw: 1.0 / len(tws) for tw in tws} for sw, tws in support.items()}
    for _ in range(iterations):
        counts = defaultdict(lambda: defaultdict(float))
        for s, g in pairs:
            for sw in s:
                z = sum(t[sw][gw] for gw in g)
                for gw in g:
                    counts[sw][gw] += t[sw][gw] / z
        t = {sw: {tw: c / sum(row.values()) for tw, c in row.items()}
             for sw, row in counts.items()}
    rows = []
    for sw in src:
        z = sum(t[sw].get(gw, 0.0) for gw in tgt)
        rows.append([t[sw].get(gw, 0.0) / z for gw in tgt])
    return rows


def recount_alignment_stats(pairs):
    """(total, one_to_one, one_to_many, many_covered, distinct word pairs)."""
    total = 0
    one_to_one = 0
    one_to_many = 0
    many_covered = 0
    words = set()
    for src, tgt, links in pairs:
        total += len(links)
        for i in {i for i, _ in links}:
            targets = [j for (a, j) in links if a == i]
            if len(targets) == 1:
                one_to_one += 1
            else:
                one_to_many += 1
                many_covered += len(targets)
        for i, j in links:
            words.add((src[i], tgt[j]))
    return total, one_to_one, one_to_many, many_covered, len(words)


# ---------------------------------------------------------------------------
# language id

def naive_posterior(model_json, s):
    """Recompute naive-Bayes posteriors straight from the serialized model."""
    import json

    obj = json.loads(model_json)
    order = obj["ngram_order"]
    pad = "\x02" * (order - 1)
    padded = pad + s + pad
    grams = [padded[k:k + order] for k in range(len(padded) - order + 1)]
    vocab = set(next(iter(obj["ngram_loglik"].values())))
    logp = dict(obj["class_logpriors"])
    for lang in logp:
        for g in grams:
            if g in vocab:
                logp[lang] += obj["ngram_loglik"][lang][g]
    m = max(logp.values())
    z = sum(math.exp(v - m) for v in logp.values())
    return {lang: math.exp(v - m) / z for lang, v in logp.items()}


# ---------------------------------------------------------------------------
# projection

def descendants(heads, root):
    """Token indices reachable from root by child edges, by repeated scanning."""
    reached = {root}
    changed = True
    while changed:
        changed = False
        for idx, head in enumerate(heads):
            if head in reached and idx not in reached:
                reached.add(idx)
                changed = True
    return reached


def project_frame_oracle(src_heads, src_upos, tgt_heads, links, frame):
    """Re-derive the projection outcome for one frame.

    frame: dict with target (span), lu, elements [(name, span, core)].
    Returns ("ok", target_span, [(name, span, core)]) or ("skip", reason).
    """
    lu_verbal = frame["lu"].endswith(".v")
    if not lu_verbal:
        ts, te = frame["target"]
        ext = [i for i in range(ts, te + 1)
               if src_heads[i] is None or not (ts <= src_heads[i] <= te)]
        if len(ext) != 1 or src_upos[ext[0]] != "VERB":
            return ("skip", "NonVerbalLU")

    spans = [frame["target"]] + [span for _, span, _ in frame["elements"]]
    heads = []
    for start, end in spans:
        ext = [i for i in range(start, end + 1)
               if src_heads[i] is None or not (start <= src_heads[i] <= end)]
        if len(ext) != 1:
            return ("skip", "SubtreeConflict")
        heads.append(ext[0])

    anchors = []
    for head in heads:
        targets = sorted(j for (i, j) in links if i == head)
        if len(targets) == 0:
            return ("skip", "HeadUnaligned")
        if len(targets) > 1:
            return ("skip", "HeadMultiAligned")
        anchors.append(targets[0])

    pred_span = (anchors[0], anchors[0])
    out = []
    for (name, _, core), anchor in zip(frame["elements"], anchors[1:]):
        reach = descendants(tgt_heads, anchor)
        lo, hi = min(reach), max(reach)
        if len(reach) != hi - lo + 1:
            return ("skip", "SubtreeConflict")
        while lo <= hi and pred_span[0] <= lo <= pred_span[1]:
            lo += 1
        while hi >= lo and pred_span[0] <= hi <= pred_span[1]:
            hi -= 1
        if lo > hi:
            return ("skip", "EmptyProjection")
        if lo <= pred_span[0] and pred_span[1] <= hi:
            return ("skip", "SubtreeConflict")
        out.append((name, (lo, hi), core))
    all_spans = [pred_span] + [span for _, span, _ in out]
    for a in range(len(all_spans)):
        for b in range(a + 1, len(all_spans)):
            (s1, e1), (s2, e2) = all_spans[a], all_spans[b]
            if s1 <= e2 and s2 <= e1:
                return ("skip", "SubtreeConflict")
    return ("ok", pred_span, out)


# ---------------------------------------------------------------------------
# corpus statistics

def recount_corpus_stats(sentences):
    """(n_sent, seg tokens, seg types, seg ASL, unseg tokens, unseg types, unseg ASL)

    sentences: list of (forms, mwt) with mwt = [(start, end, surface)].
    """
    n = len(sentences)
    seg_tok = sum(len(forms) for forms, _ in sentences)
    seg_types = len({w for forms, _ in sentences for w in forms})
    unseg_all = []
    for forms, mwt in sentences:
        surface = []
        k = 0
        while k < len(forms):
            hit = [s for s in mwt if s[0] == k]
            if hit:
                surface.append(hit[0][2])
                k = hit[0][1] + 1
            else:
                surface.append(forms[k])
                k += 1
        unseg_all.append(surface)
    unseg_tok = sum(len(s) for s in unseg_all)
    unseg_types = len({w for s in unseg_all for w in s})
    return (n, seg_tok, seg_types, seg_tok / n if n else 0.0,
            unseg_tok, unseg_types, unseg_tok / n if n else 0.0)


def recount_histogram(scored, width):
    """Bin counts plus per-edge (count, mean length) of pairs scoring >= edge."""
    n_bins = round(1 / width)
    rows = []
    for k in range(n_bins):
        lo = k * width
        in_bin = sum(1 for s, _ in scored
                     if lo <= s < lo + width or (k == n_bins - 1 and s == 1.0))
        above = [(s, l) for s, l in scored if s >= lo]
        mean = sum(l for _, l in above) / len(above) if above else 0.0
        rows.append((in_bin, len(above), mean))
    return rows


def recount_frames(frames):
    """frames: list of (frame_name, [fe names]) -> (frame counter, fe counter)."""
    fc = Counter(name for name, _ in frames)
    ec = Counter(fe for _, fes in frames for fe in fes)
    return fc, ec
