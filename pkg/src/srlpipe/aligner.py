"""Directional word aligner: a diagonal-reparameterized Model 2 trained with EM.

Each source token independently picks a null option or a target position;
positions are weighted by exp(-lambda * |i/m - j/n|) and the chosen target
word is emitted from a per-source-word translation table. Lambda = 0 with
p_null = 0 degenerates to IBM Model 1.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field

NULL_WORD = "<NULL>"

TokenPair = tuple[list[str], list[str]]

MODEL_FORMAT = "srlpipe-aligner-v1"


class AlignerError(Exception):
    pass


@dataclass
class AlignmentModel:
    ttable: dict[str, dict[str, float]]  # source word -> target word -> prob
    lam: float
    p_null: float
    loglik_per_iter: list[float] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps({"format": MODEL_FORMAT, "lambda": self.lam,
                           "p_null": self.p_null,
                           "loglik_per_iter": self.loglik_per_iter,
                           "ttable": self.ttable}, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "AlignmentModel":
        obj = json.loads(text)
        if obj.get("format") != MODEL_FORMAT:
            raise AlignerError(f"unknown model format {obj.get('format')!r}")
        return cls(ttable=obj["ttable"], lam=obj["lambda"], p_null=obj["p_null"],
                   loglik_per_iter=obj.get("loglik_per_iter", []))


def diagonal_prior(i: int, j: int, m: int, n: int, lam: float) -> float:
    """Unnormalized weight exp(-lambda * |i/m - j/n|) for 1-based positions."""
    if not (1 <= i <= m and 1 <= j <= n):
        raise AlignerError(f"positions ({i},{j}) out of range ({m},{n})")
    if lam < 0:
        raise AlignerError(f"lambda must be >= 0, got {lam}")
    return math.exp(-lam * abs(i / m - j / n))


def _position_priors(i: int, m: int, n: int, lam: float, p_null: float) -> list[float]:
    """P(a_i = j) for j in 1..n; the remaining p_null mass goes to null."""
    weights = [diagonal_prior(i, j, m, n, lam) for j in range(1, n + 1)]
    z = sum(weights)
    return [(1.0 - p_null) * w / z for w in weights]


def em_train(pairs: list[TokenPair], iterations: int = 5, lam: float = 4.0,
             p_null: float = 0.08, prune: float = 1e-7) -> AlignmentModel:
    """Train the translation table by EM at fixed lambda.

    Per-iteration corpus log-likelihood is recorded on the model; with
    prune=0 the sequence is non-decreasing (standard EM guarantee).
    """
    if not pairs:
        raise AlignerError("empty training corpus")
    if iterations < 1:
        raise AlignerError("iterations must be >= 1")

    # uniform init over co-occurring target words (plus null when enabled)
    support: dict[str, set[str]] = defaultdict(set)
    for src, tgt in pairs:
        for sw in src:
            support[sw].update(tgt)
            if p_null > 0:
                support[sw].add(NULL_WORD)
    ttable: dict[str, dict[str, float]] = {
        sw: {tw: 1.0 / len(tws) for tw in sorted(tws)} for sw, tws in support.items()}

    logliks = []
    for _ in range(iterations):
        counts: dict[str, dict[str, float]] = defaultdict(lambda: defaultdict(float))
        loglik = 0.0
        for src, tgt in pairs:
            m, n = len(src), len(tgt)
            if m == 0 or n == 0:
                continue
            for i, sw in enumerate(src, start=1):
                row = ttable[sw]
                priors = _position_priors(i, m, n, lam, p_null)
                scores = [priors[j] * row.get(tgt[j], 0.0) for j in range(n)]
                s_null = p_null * row.get(NULL_WORD, 0.0)
                denom = sum(scores) + s_null
                if denom <= 0.0:
                    continue
                loglik += math.log(denom)
                crow = counts[sw]
                for j in range(n):
                    if scores[j]:
                        crow[tgt[j]] += scores[j] / denom
                if s_null:
                    crow[NULL_WORD] += s_null / denom
        logliks.append(loglik)
        ttable = {}
        for sw, crow in counts.items():
            total = sum(crow.values())
            row = {tw: c / total for tw, c in crow.items()}
            if prune > 0:
                row = {tw: p for tw, p in row.items() if p >= prune}
                kept = sum(row.values())
                row = {tw: p / kept for tw, p in row.items()}
            ttable[sw] = row
    return AlignmentModel(ttable=ttable, lam=lam, p_null=p_null,
                          loglik_per_iter=logliks)


def link_posteriors(model: AlignmentModel, src: list[str], tgt: list[str],
                    ) -> list[list[float]]:
    """P(a_i = j) per source token; one row per source token, last entry null."""
    m, n = len(src), len(tgt)
    rows = []
    for i, sw in enumerate(src, start=1):
        trow = model.ttable.get(sw, {})
        priors = _position_priors(i, m, n, model.lam, model.p_null)
        scores = [priors[j] * trow.get(tgt[j], 0.0) for j in range(n)]
        scores.append(model.p_null * trow.get(NULL_WORD, 0.0))
        z = sum(scores)
        rows.append([s / z for s in scores] if z > 0 else scores)
    return rows


def viterbi_decode(model: AlignmentModel, src: list[str], tgt: list[str],
                   ) -> set[tuple[int, int]]:
    """Per-source-token argmax link; ties break toward smaller j, null links omitted."""
    m, n = len(src), len(tgt)
    links: set[tuple[int, int]] = set()
    if m == 0 or n == 0:
        return links
    for i, sw in enumerate(src, start=1):
        row = model.ttable.get(sw, {})
        priors = _position_priors(i, m, n, model.lam, model.p_null)
        best_j = None
        best = model.p_null * row.get(NULL_WORD, 0.0)
        for j in range(n):
            score = priors[j] * row.get(tgt[j], 0.0)
            if score > best:
                best, best_j = score, j
        if best_j is not None and best > 0.0:
            links.add((i - 1, best_j))
    return links


@dataclass
class AlignmentStats:
    total_links: int = 0
    one_to_one: int = 0
    one_to_many: int = 0  # source tokens with >= 2 links
    many_covered_links: int = 0
    distinct_pairs: int = 0
    mean_targets_per_aligned_source: float = 0.0


def alignment_stats(pairs: list[tuple[list[str], list[str], set[tuple[int, int]]]],
                    ) -> AlignmentStats:
    """Exact link-fanout statistics over decoded pairs."""
    stats = AlignmentStats()
    word_pairs: set[tuple[str, str]] = set()
    aligned_sources = 0
    for src, tgt, links in pairs:
        fanout: dict[int, int] = defaultdict(int)
        for i, j in links:
            fanout[i] += 1
            word_pairs.add((src[i], tgt[j]))
        stats.total_links += len(links)
        aligned_sources += len(fanout)
        for count in fanout.values():
            if count == 1:
                stats.one_to_one += 1
            else:
                stats.one_to_many += 1
                stats.many_covered_links += count
    stats.distinct_pairs = len(word_pairs)
    stats.mean_targets_per_aligned_source = (
        stats.total_links / aligned_sources if aligned_sources else 0.0)
    return stats


def alignment_error_rate(predicted: set[tuple[int, int]],
                         gold: set[tuple[int, int]]) -> float:
    """AER with all gold links treated as sure: 1 - 2|A∩G| / (|A| + |G|)."""
    if not predicted and not gold:
        return 0.0
    return 1.0 - 2.0 * len(predicted & gold) / (len(predicted) + len(gold))
