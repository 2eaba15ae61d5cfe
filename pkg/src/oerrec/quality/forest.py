"""Random-forest classifier built from scratch on binary-label CART trees.

Trees split on Gini impurity via the kernel in oerrec.quality.kernels; the
forest's probability output is the mean over trees of the reached leaf's
positive-class proportion (pure leaves degrade to plain vote fractions).

Determinism contract: per-tree RNG is seeded `seed + tree_index`, so the same
seed and dataset yield an identical model regardless of kernel choice or of
how many worker threads trained the trees.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from oerrec.errors import TrainingError, ValidationError
from oerrec.quality import kernels


@dataclass
class TreeNode:
    # split node: feature/threshold/left/right set; leaf: counts set
    feature: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    counts: tuple[int, int] | None = None  # (negatives, positives)

    @property
    def is_leaf(self) -> bool:
        return self.counts is not None

    def leaf_proportion(self, row: np.ndarray) -> float:
        node = self
        while not node.is_leaf:
            node = node.left if row[node.feature] <= node.threshold else node.right
        neg, pos = node.counts
        return pos / (neg + pos)

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"counts": list(self.counts)}
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TreeNode":
        if "counts" in data:
            neg, pos = data["counts"]
            return cls(counts=(int(neg), int(pos)))
        return cls(
            feature=int(data["feature"]),
            threshold=float(data["threshold"]),
            left=cls.from_dict(data["left"]),
            right=cls.from_dict(data["right"]),
        )


@dataclass
class ForestModel:
    feature_set: list[str]
    trees: list[TreeNode]
    seed: int
    params: dict = field(default_factory=dict)
    training_metrics: dict = field(default_factory=dict)

    @property
    def validation_f1(self) -> float:
        return self.training_metrics.get("f1", 0.0)

    def to_dict(self) -> dict:
        return {
            "feature_set": list(self.feature_set),
            "seed": self.seed,
            "params": self.params,
            "training_metrics": self.training_metrics,
            "trees": [t.to_dict() for t in self.trees],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ForestModel":
        return cls(
            feature_set=list(data["feature_set"]),
            trees=[TreeNode.from_dict(t) for t in data["trees"]],
            seed=int(data["seed"]),
            params=dict(data.get("params", {})),
            training_metrics=dict(data.get("training_metrics", {})),
        )

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), sort_keys=True), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "ForestModel":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _leaf(y: np.ndarray) -> TreeNode:
    pos = int(y.sum())
    return TreeNode(counts=(len(y) - pos, pos))


def _grow(X, y, depth, max_depth, min_leaf, features_per_split, rng, split_fn) -> TreeNode:
    n, d = X.shape
    if (max_depth is not None and depth >= max_depth) or n < 2 * min_leaf:
        return _leaf(y)
    total = int(y.sum())
    if total == 0 or total == n:
        return _leaf(y)

    if features_per_split >= d:
        candidates = np.arange(d, dtype=np.int64)
    else:
        candidates = np.sort(rng.choice(d, size=features_per_split, replace=False)).astype(np.int64)

    found = split_fn(X, y, candidates, min_leaf)
    if found is None:
        return _leaf(y)
    feature, threshold, _ = found
    mask = X[:, feature] <= threshold
    node = TreeNode(feature=feature, threshold=threshold)
    node.left = _grow(X[mask], y[mask], depth + 1, max_depth, min_leaf, features_per_split, rng, split_fn)
    node.right = _grow(X[~mask], y[~mask], depth + 1, max_depth, min_leaf, features_per_split, rng, split_fn)
    return node


def _train_one_tree(X, y, tree_index, seed, max_depth, min_leaf, features_per_split,
                    bootstrap, split_fn) -> TreeNode:
    rng = np.random.default_rng(seed + tree_index)
    if bootstrap:
        idx = rng.choice(len(X), size=len(X), replace=True)
        Xb = np.ascontiguousarray(X[idx])
        yb = np.ascontiguousarray(y[idx])
    else:
        Xb, yb = X, y
    return _grow(Xb, yb, 0, max_depth, min_leaf, features_per_split, rng, split_fn)


def train_forest(
    X,
    y,
    feature_set: list[str],
    n_trees: int = 100,
    max_depth: int | None = 8,
    min_leaf: int = 2,
    features_per_split: int | None = None,
    seed: int = 0,
    bootstrap: bool = True,
    holdout_fraction: float = 0.2,
    n_jobs: int = 1,
    kernel: str | None = None,
) -> ForestModel:
    """Train a forest on binary-labeled rows; metrics come from a held-out split.

    features_per_split=None means ceil(sqrt(d)). Raises ValidationError on an
    empty dataset and TrainingError when only one class is present.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.int64)
    if X.ndim != 2 or X.shape[1] != len(feature_set):
        raise ValidationError(f"feature matrix shape {X.shape} does not match {len(feature_set)} names")
    if len(X) == 0:
        raise ValidationError("empty training dataset")
    if len(np.unique(y)) < 2:
        raise TrainingError("training data contains a single class")
    if np.isnan(X).any():
        raise ValidationError("feature matrix contains NaN; drop incomplete rows first")
    if n_trees < 1:
        raise ValidationError(f"n_trees must be positive, got {n_trees}")

    d = X.shape[1]
    if features_per_split is None:
        features_per_split = math.ceil(math.sqrt(d))
    split_fn = kernels.get_kernel(kernel)

    rng_split = np.random.default_rng(seed)
    perm = rng_split.permutation(len(X))
    n_holdout = int(round(len(X) * holdout_fraction))
    holdout_idx, train_idx = perm[:n_holdout], perm[n_holdout:]
    X_train = np.ascontiguousarray(X[train_idx])
    y_train = np.ascontiguousarray(y[train_idx])

    def build(i):
        return _train_one_tree(X_train, y_train, i, seed, max_depth, min_leaf,
                               features_per_split, bootstrap, split_fn)

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            trees = list(pool.map(build, range(n_trees)))
    else:
        trees = [build(i) for i in range(n_trees)]

    model = ForestModel(
        feature_set=list(feature_set),
        trees=trees,
        seed=seed,
        params={
            "n_trees": n_trees,
            "max_depth": max_depth,
            "min_leaf": min_leaf,
            "features_per_split": features_per_split,
            "bootstrap": bootstrap,
            "holdout_fraction": holdout_fraction,
        },
    )
    eval_X, eval_y = (X[holdout_idx], y[holdout_idx]) if n_holdout else (X_train, y_train)
    probas = _predict_matrix(model, eval_X)
    predictions = probas >= 0.5
    actual = eval_y.astype(bool)
    tp = int(np.sum(predictions & actual))
    fp = int(np.sum(predictions & ~actual))
    fn = int(np.sum(~predictions & actual))
    f1 = 2 * tp / (2 * tp + fp + fn) if (2 * tp + fp + fn) else 0.0
    model.training_metrics = {
        "f1": f1,
        "accuracy": float(np.mean(predictions == actual)),
        "holdout_size": int(n_holdout),
    }
    return model


def _predict_matrix(model: ForestModel, X: np.ndarray) -> np.ndarray:
    out = np.empty(len(X), dtype=np.float64)
    for i, row in enumerate(X):
        out[i] = _predict_row(model, row)
    return out


def _predict_row(model: ForestModel, row: np.ndarray) -> float:
    total = 0.0
    for tree in model.trees:
        total += tree.leaf_proportion(row)
    return total / len(model.trees)


def predict_proba(model: ForestModel, features: Mapping[str, float]) -> float:
    """Positive-class probability: mean leaf positive proportion across trees.

    Every feature in model.feature_set must be present; otherwise the caller
    should have picked a compatible model from the registry.
    """
    if not model.trees:
        raise ValidationError("model has no trees")
    row = np.empty(len(model.feature_set), dtype=np.float64)
    for j, name in enumerate(model.feature_set):
        value = features.get(name)
        if value is None:
            raise ValidationError(f"missing required feature {name!r}", field=name)
        row[j] = float(value)
    return _predict_row(model, row)
