"""Sentence-pair quality scoring: structural prefilter, 8 features,
a from-scratch logistic classifier over standardized features, probability
thresholding and the score/length histogram."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .corpus_io import SentencePair
from .trees import tree_depth


class QualityLabel(Enum):
    SentAlignError = "Error in sentence alignment"
    PoorTranslation = "Poor translation"
    WordAlignError = "Error in word alignment"
    PoorSyntax = "Poor syntactic parsing"
    PoorFrameParse = "Poor frame parsing"
    Good = "Good"


# labels describing flaws of the dataset itself rather than of the tools
DATASET_INHERENT = {QualityLabel.SentAlignError, QualityLabel.PoorTranslation}

FEATURE_NAMES = ("len_src", "len_tgt", "len_ratio", "n_frames",
                 "n_one_to_one", "n_one_to_many", "depth_src", "depth_tgt")


class QualityError(Exception):
    pass


@dataclass(frozen=True)
class FeatureVector:
    len_src: int
    len_tgt: int
    len_ratio: float
    n_frames: int
    n_one_to_one: int
    n_one_to_many: int
    depth_src: int
    depth_tgt: int

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in FEATURE_NAMES], dtype=float)


def structural_prefilter(pair: SentencePair, min_tokens: int = 5,
                         min_depth: int = 2) -> bool:
    """True iff the target side is long and deep enough to be worth keeping."""
    if len(pair.target.tokens) < min_tokens:
        return False
    return tree_depth(pair.target) >= min_depth


def extract_features(pair: SentencePair) -> FeatureVector:
    len_src = len(pair.source.tokens)
    len_tgt = len(pair.target.tokens)
    if len_tgt == 0:
        raise QualityError(f"pair {pair.id} has an empty target sentence")
    fanout: dict[int, int] = defaultdict(int)
    for i, _ in pair.alignment:
        fanout[i] += 1
    one_to_one = sum(1 for c in fanout.values() if c == 1)
    one_to_many = sum(1 for c in fanout.values() if c >= 2)
    return FeatureVector(
        len_src=len_src,
        len_tgt=len_tgt,
        len_ratio=len_src / len_tgt,
        n_frames=len(pair.source.frames),
        n_one_to_one=one_to_one,
        n_one_to_many=one_to_many,
        depth_src=tree_depth(pair.source),
        depth_tgt=tree_depth(pair.target),
    )


@dataclass
class LinearClassifier:
    weights: np.ndarray
    bias: float
    means: np.ndarray
    stds: np.ndarray
    seed: int = 0

    def to_json(self) -> str:
        return json.dumps({"weights": self.weights.tolist(), "bias": self.bias,
                           "means": self.means.tolist(), "stds": self.stds.tolist(),
                           "seed": self.seed, "features": list(FEATURE_NAMES)})

    @classmethod
    def from_json(cls, text: str) -> "LinearClassifier":
        obj = json.loads(text)
        return cls(weights=np.array(obj["weights"], dtype=float), bias=obj["bias"],
                   means=np.array(obj["means"], dtype=float),
                   stds=np.array(obj["stds"], dtype=float), seed=obj.get("seed", 0))

    @classmethod
    def trivial(cls) -> "LinearClassifier":
        k = len(FEATURE_NAMES)
        return cls(weights=np.zeros(k), bias=0.0, means=np.zeros(k), stds=np.ones(k))


def fit(labeled: list[tuple[FeatureVector, QualityLabel]], resample: bool = True,
        seed: int = 0, learning_rate: float = 0.1, epochs: int = 500,
        l2: float = 1e-4) -> LinearClassifier:
    """Logistic regression for Good vs not-Good by full-batch gradient descent.

    Features are standardized with the training means/stds; with resample on,
    the minority class is bootstrap-oversampled to parity (seeded).
    """
    if not labeled:
        raise QualityError("no training examples")
    y = np.array([1.0 if label == QualityLabel.Good else 0.0 for _, label in labeled])
    if y.min() == y.max():
        raise QualityError("training data contains a single class")
    x = np.stack([fv.as_array() for fv, _ in labeled])

    means = x.mean(axis=0)
    stds = x.std(axis=0)
    # constant features carry no signal: drop them (zero weight, unit std)
    active = stds > 0.0
    stds = np.where(active, stds, 1.0)
    xs = (x - means) / stds * active

    if resample:
        rng = np.random.RandomState(seed)
        pos = np.nonzero(y == 1.0)[0]
        neg = np.nonzero(y == 0.0)[0]
        minority, majority = (pos, neg) if len(pos) < len(neg) else (neg, pos)
        extra = rng.choice(minority, size=len(majority) - len(minority), replace=True)
        order = np.concatenate([pos, neg, extra])
        xs, y = xs[order], y[order]

    n, k = xs.shape
    w = np.zeros(k)
    b = 0.0
    for _ in range(epochs):
        p = 1.0 / (1.0 + np.exp(-(xs @ w + b)))
        err = p - y
        w -= learning_rate * (xs.T @ err / n + l2 * w)
        b -= learning_rate * err.mean()
    return LinearClassifier(weights=w, bias=b, means=means, stds=stds, seed=seed)


def score(classifier: LinearClassifier, features: FeatureVector) -> float:
    """Sigmoid of the standardized affine form; strictly inside (0,1)."""
    z = (features.as_array() - classifier.means) / classifier.stds
    return float(1.0 / (1.0 + np.exp(-(z @ classifier.weights + classifier.bias))))


def threshold_filter(scored: list[SentencePair], tau: float = 0.80,
                     ) -> list[SentencePair]:
    """Keep pairs with score strictly above tau."""
    for pair in scored:
        if pair.score is None:
            raise QualityError(f"pair {pair.id} is unscored")
    return [pair for pair in scored if pair.score > tau]


@dataclass(frozen=True)
class HistogramRow:
    bin_lo: float
    count: int                 # pairs whose score falls in [bin_lo, bin_lo + width)
    n_above: int               # pairs with score >= bin_lo
    mean_len_above: float      # mean target length of those pairs


def score_histogram(scored: list[tuple[float, int]], bin_width: float = 0.1,
                    ) -> list[HistogramRow]:
    """Bin (score, target_length) pairs and annotate each bin edge with the
    count and mean target length of pairs scoring at or above it."""
    n_bins = round(1.0 / bin_width)
    if abs(n_bins * bin_width - 1.0) > 1e-9:
        raise QualityError(f"bin width {bin_width} does not divide 1.0")
    rows = []
    for k in range(n_bins):
        lo = k * bin_width
        hi = lo + bin_width
        in_bin = [s for s, _ in scored if lo <= s < hi or (k == n_bins - 1 and s == 1.0)]
        above = [(s, length) for s, length in scored if s >= lo]
        mean_len = sum(length for _, length in above) / len(above) if above else 0.0
        rows.append(HistogramRow(bin_lo=round(lo, 10), count=len(in_bin),
                                 n_above=len(above), mean_len_above=mean_len))
    return rows
