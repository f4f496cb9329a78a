"""Binary CART classifier built from scratch: Gini impurity, exhaustive
midpoint threshold search, constrained recursive growth, deterministic
prediction, and a JSON-serializable tree document.

Determinism contract: candidate splits are scored by size-weighted child Gini
but compared in exact integer arithmetic (cross-multiplied class-count sums),
so equal-impurity candidates tie exactly and the tie-break - lowest feature
index, then lowest threshold - never depends on float rounding or row order.
Leaf predictions break count ties toward the smallest class label.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from .journal import FEATURE_NAMES

CLASSES = (0, 1, 2)

# A training row: (feature vector, class label).
Row = tuple[Sequence[float], int]


@dataclass(frozen=True)
class Hyperparams:
    """Tree growth constraints. max_depth=None means unlimited.

    min_samples_split >= 2 * min_samples_leaf is deliberately not required;
    the search grid includes combinations violating it.
    """

    max_depth: Optional[int] = None
    min_samples_split: int = 2
    min_samples_leaf: int = 1

    def __post_init__(self):
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be >= 1 or None")
        if self.min_samples_split < 2:
            raise ValueError("min_samples_split must be >= 2")
        if self.min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be >= 1")


@dataclass(frozen=True)
class Leaf:
    class_counts: Mapping[int, int]
    predicted: int


@dataclass(frozen=True)
class Internal:
    feature_index: int
    threshold: float
    left: "TreeNode"
    right: "TreeNode"
    class_counts: Mapping[int, int]


TreeNode = Union[Leaf, Internal]


def gini(class_counts: Mapping[int, int]) -> float:
    """Gini impurity 1 - sum(p_k^2) of a node's class counts."""
    total = sum(class_counts.values())
    if total <= 0:
        raise ValueError("empty node: no samples to score")
    return 1.0 - sum((class_counts[k] / total) ** 2 for k in sorted(class_counts))


def _count_classes(labels) -> dict[int, int]:
    counts: dict[int, int] = {}
    for label in labels:
        counts[label] = counts.get(label, 0) + 1
    return counts


def _majority_class(counts: Mapping[int, int]) -> int:
    # max() keeps the first maximal key; sorted keys make that the smallest label.
    return max(sorted(counts), key=lambda k: counts[k])


def best_split(
    rows: Sequence[Row], min_samples_leaf: int = 1
) -> Optional[tuple[int, float]]:
    """The (feature_index, threshold) minimizing size-weighted child Gini.

    Candidate thresholds are midpoints between consecutive distinct sorted
    values per feature; a candidate is valid only if both children hold at
    least min_samples_leaf rows. Returns None for a pure node or when no
    candidate is valid.

    Minimizing the weighted Gini (n_L*g_L + n_R*g_R)/n is equivalent to
    maximizing Q = S_L/n_L + S_R/n_R, where S is the sum of squared class
    counts on each side. Q is compared as an exact integer fraction.
    """
    n = len(rows)
    if n < 2:
        return None
    total_counts = _count_classes(label for _, label in rows)
    if len(total_counts) <= 1:
        return None
    n_features = len(rows[0][0])
    total_square_sum = sum(c * c for c in total_counts.values())

    best: Optional[tuple[int, int, int, float]] = None  # (num, den, feature, threshold)
    for feature in range(n_features):
        pairs = sorted((row[0][feature], row[1]) for row in rows)
        left_counts: dict[int, int] = {}
        right_counts = dict(total_counts)
        s_left = 0
        s_right = total_square_sum
        for pos in range(n - 1):
            value, label = pairs[pos]
            s_left += 2 * left_counts.get(label, 0) + 1
            left_counts[label] = left_counts.get(label, 0) + 1
            s_right -= 2 * right_counts[label] - 1
            right_counts[label] -= 1
            if pairs[pos + 1][0] == value:
                continue
            n_left = pos + 1
            n_right = n - n_left
            if n_left < min_samples_leaf or n_right < min_samples_leaf:
                continue
            num = s_left * n_right + s_right * n_left
            den = n_left * n_right
            # Strict improvement only: the scan order (feature ascending,
            # threshold ascending) then realizes the tie-break.
            if best is None or num * best[1] > best[0] * den:
                best = (num, den, feature, (value + pairs[pos + 1][0]) / 2)

    if best is None:
        return None
    return best[2], best[3]


def fit(rows: Sequence[Row], hp: Hyperparams) -> TreeNode:
    """Grow a tree. A node becomes a leaf when it is pure, holds fewer than
    min_samples_split rows, sits at max_depth, or no valid split exists."""
    if not rows:
        raise ValueError("empty dataset")
    return _grow(list(rows), hp, depth=0)


def _grow(rows: list[Row], hp: Hyperparams, depth: int) -> TreeNode:
    counts = _count_classes(label for _, label in rows)
    at_depth_limit = hp.max_depth is not None and depth >= hp.max_depth
    if len(counts) == 1 or len(rows) < hp.min_samples_split or at_depth_limit:
        return Leaf(counts, _majority_class(counts))
    split = best_split(rows, hp.min_samples_leaf)
    if split is None:
        return Leaf(counts, _majority_class(counts))
    feature, threshold = split
    left_rows = [row for row in rows if row[0][feature] <= threshold]
    right_rows = [row for row in rows if row[0][feature] > threshold]
    return Internal(
        feature_index=feature,
        threshold=threshold,
        left=_grow(left_rows, hp, depth + 1),
        right=_grow(right_rows, hp, depth + 1),
        class_counts=counts,
    )


def predict(tree: TreeNode, x: Sequence[float]) -> int:
    node = tree
    while isinstance(node, Internal):
        node = node.left if x[node.feature_index] <= node.threshold else node.right
    return node.predicted


def predict_distribution(
    tree: TreeNode, x: Sequence[float], classes: Sequence[int] = CLASSES
) -> tuple[float, ...]:
    """Leaf class counts normalized to probabilities over `classes`."""
    node = tree
    while isinstance(node, Internal):
        node = node.left if x[node.feature_index] <= node.threshold else node.right
    total = sum(node.class_counts.values())
    return tuple(node.class_counts.get(k, 0) / total for k in classes)


def count_nodes(tree: TreeNode) -> int:
    if isinstance(tree, Leaf):
        return 1
    return 1 + count_nodes(tree.left) + count_nodes(tree.right)


def export_tree(
    tree: TreeNode, feature_names: Sequence[str] = FEATURE_NAMES
) -> dict:
    """Hierarchical JSON document for rendering and round-tripping.

    Every node carries kind, counts, gini and depth; internal nodes add the
    feature name, threshold and two children; leaves add the predicted class.
    """

    def node_doc(node: TreeNode, depth: int) -> dict:
        doc = {
            "kind": "leaf" if isinstance(node, Leaf) else "internal",
            "counts": {str(k): node.class_counts[k] for k in sorted(node.class_counts)},
            "gini": gini(node.class_counts),
            "depth": depth,
        }
        if isinstance(node, Leaf):
            doc["predicted"] = node.predicted
        else:
            doc["feature"] = feature_names[node.feature_index]
            doc["threshold"] = node.threshold
            doc["children"] = [
                node_doc(node.left, depth + 1),
                node_doc(node.right, depth + 1),
            ]
        return doc

    return node_doc(tree, 0)


def import_tree(
    doc: Mapping, feature_names: Sequence[str] = FEATURE_NAMES
) -> TreeNode:
    """Rebuild a tree from its exported document."""
    counts = {int(k): v for k, v in doc["counts"].items()}
    if doc["kind"] == "leaf":
        return Leaf(counts, int(doc["predicted"]))
    children = doc["children"]
    return Internal(
        feature_index=list(feature_names).index(doc["feature"]),
        threshold=float(doc["threshold"]),
        left=import_tree(children[0], feature_names),
        right=import_tree(children[1], feature_names),
        class_counts=counts,
    )
