"""Designer-intent model: a small gain-ratio decision tree over map features.

Every human round labels the two picked maps Preferred and the other seven
Rejected. The tree is rebuilt from scratch each time: with at most a few
hundred samples, exact retraining is cheaper than being clever. Splits are
binary thresholds at midpoints between consecutive distinct feature values,
scored by information gain over split info. Tie-breaks (lowest feature
index, then lowest threshold) make training order-free and deterministic.
A node with zero-gain splits is still split when impure: plateau patterns
such as XOR only separate below such splits, and there is no pruning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .evolution import Generation
from .features import FEATURE_NAMES, FeatureVector

MAX_DEPTH = 8
SAMPLES_PER_ROUND = 9


class TrainingError(ValueError):
    pass


class Label(str, Enum):
    PREFERRED = "preferred"
    REJECTED = "rejected"


@dataclass(frozen=True)
class TrainingSample:
    features: FeatureVector
    label: Label
    generation: int

    def to_dict(self) -> dict:
        return {"features": self.features.to_dict(), "label": self.label.value, "generation": self.generation}

    @classmethod
    def from_dict(cls, doc: dict) -> "TrainingSample":
        return cls(FeatureVector.from_dict(doc["features"]), Label(doc["label"]), doc["generation"])


@dataclass(frozen=True)
class Leaf:
    label: Label
    confidence: float  # fraction of Preferred samples that reached this leaf
    n: int


@dataclass(frozen=True)
class Split:
    feature: int
    threshold: float
    left: "Split | Leaf"  # feature value <= threshold
    right: "Split | Leaf"


@dataclass(frozen=True)
class DecisionTree:
    root: Split | Leaf


def _entropy(pos: float, n: float) -> float:
    if n == 0 or pos == 0 or pos == n:
        return 0.0
    p = pos / n
    return -(p * math.log2(p) + (1 - p) * math.log2(1 - p))


def gain_ratio(values: np.ndarray, labels: np.ndarray, threshold: float) -> float:
    """Information gain over split info for the binary split value <= threshold."""
    left = values <= threshold
    nl = int(left.sum())
    n = len(values)
    nr = n - nl
    if nl == 0 or nr == 0:
        return 0.0
    pos = int(labels.sum())
    pos_l = int(labels[left].sum())
    gain = _entropy(pos, n) - (nl / n) * _entropy(pos_l, nl) - (nr / n) * _entropy(pos - pos_l, nr)
    split_info = _entropy(nl, n)
    return gain / split_info


def _best_split(x: np.ndarray, y: np.ndarray) -> tuple[int, float] | None:
    """Highest gain-ratio (feature, threshold); ties to lowest feature then threshold."""
    n = len(y)
    pos = int(y.sum())
    parent = _entropy(pos, n)
    best = None  # (-ratio, feature, threshold)
    for f in range(x.shape[1]):
        order = np.argsort(x[:, f], kind="stable")
        vals = x[order, f]
        pos_prefix = np.cumsum(y[order])
        for i in range(n - 1):
            if vals[i] == vals[i + 1]:
                continue
            threshold = (vals[i] + vals[i + 1]) / 2.0
            nl = i + 1
            pos_l = int(pos_prefix[i])
            gain = parent - (nl / n) * _entropy(pos_l, nl) - ((n - nl) / n) * _entropy(pos - pos_l, n - nl)
            ratio = gain / _entropy(nl, n)
            key = (-ratio, f, threshold)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    return best[1], best[2]


def _grow(x: np.ndarray, y: np.ndarray, depth: int) -> Split | Leaf:
    n = len(y)
    pos = int(y.sum())
    if n < 2 or pos == 0 or pos == n or depth >= MAX_DEPTH:
        return _leaf(pos, n)
    found = _best_split(x, y)
    if found is None:  # conflicting duplicates: nothing left to split on
        return _leaf(pos, n)
    feature, threshold = found
    left = x[:, feature] <= threshold
    return Split(
        feature,
        float(threshold),
        _grow(x[left], y[left], depth + 1),
        _grow(x[~left], y[~left], depth + 1),
    )


def _leaf(pos: int, n: int) -> Leaf:
    label = Label.PREFERRED if pos * 2 > n else Label.REJECTED
    return Leaf(label, pos / n if n else 0.0, n)


def train(samples: list[TrainingSample]) -> DecisionTree:
    if not samples:
        raise TrainingError("cannot train on an empty corpus")
    x = np.array([s.features.as_tuple() for s in samples])
    y = np.array([s.label is Label.PREFERRED for s in samples], dtype=np.int64)
    return DecisionTree(_grow(x, y, 0))


def classify(tree: DecisionTree, features: FeatureVector) -> tuple[Label, float]:
    """Walk the tree; returns (label, Preferred confidence of the leaf)."""
    node = tree.root
    vec = features.as_tuple()
    while isinstance(node, Split):
        node = node.left if vec[node.feature] <= node.threshold else node.right
    return node.label, node.confidence


def preferred_centroid(samples: list[TrainingSample]) -> np.ndarray | None:
    chosen = [s.features.as_array() for s in samples if s.label is Label.PREFERRED]
    if not chosen:
        return None
    return np.mean(chosen, axis=0)


def agent_select(
    tree: DecisionTree, gen: Generation, centroid: np.ndarray | None = None
) -> tuple[int, int]:
    """Two distinct candidate ids the intent model likes best.

    Ranking: Preferred confidence descending, then Euclidean distance to the
    Preferred centroid (when one exists), then lower id.
    """
    ranked = []
    for cand in gen.candidates:
        _, confidence = classify(tree, cand.features)
        if centroid is not None:
            dist = float(np.linalg.norm(cand.features.as_array() - centroid))
        else:
            dist = 0.0
        ranked.append((-confidence, dist, cand.id))
    ranked.sort()
    return ranked[0][2], ranked[1][2]


@dataclass(frozen=True)
class AgentPolicy:
    warmup_generations: int = 3
    assist_ratio: float = 0.5

    def __post_init__(self):
        if self.warmup_generations < 1:
            raise ValueError("warmup_generations must be >= 1")
        if not 0.0 <= self.assist_ratio <= 1.0:
            raise ValueError("assist_ratio must lie in [0, 1]")

    def to_dict(self) -> dict:
        return {"warmup_generations": self.warmup_generations, "assist_ratio": self.assist_ratio}

    @classmethod
    def from_dict(cls, doc: dict) -> "AgentPolicy":
        return cls(**doc)


def should_agent_act(policy: AgentPolicy, generation_index: int, sample_count: int) -> bool:
    """Deterministic assist schedule.

    Never before the warmup rounds have banked 9 samples each. Afterwards an
    error accumulator spreads agent rounds evenly at assist_ratio: ratio 0.5
    alternates agent/human starting with the agent, 1.0 is always the agent.
    """
    if generation_index < policy.warmup_generations:
        return False
    if sample_count < SAMPLES_PER_ROUND * policy.warmup_generations:
        return False
    k = generation_index - policy.warmup_generations
    return math.ceil((k + 1) * policy.assist_ratio) > math.ceil(k * policy.assist_ratio)


# ---------------------------------------------------------------------------
# serialization


def tree_to_json(tree: DecisionTree) -> dict:
    def walk(node):
        if isinstance(node, Leaf):
            return {"label": node.label.value, "confidence": node.confidence, "n": node.n}
        return {
            "feature": node.feature,
            "name": FEATURE_NAMES[node.feature],
            "threshold": node.threshold,
            "left": walk(node.left),
            "right": walk(node.right),
        }

    return walk(tree.root)


def tree_from_json(doc: dict) -> DecisionTree:
    def walk(node):
        if "label" in node:
            return Leaf(Label(node["label"]), node["confidence"], node["n"])
        return Split(node["feature"], node["threshold"], walk(node["left"]), walk(node["right"]))

    return DecisionTree(walk(doc))
