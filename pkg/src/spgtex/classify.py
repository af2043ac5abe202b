"""1-nearest-neighbor evaluation: leave-one-out and repeated stratified holdout.

Distances are Euclidean; ties go to the smallest training index, which is
what ``argmin`` over the training order returns. The holdout protocol
takes ceil(2k/3) of each k-sample class for training (uniform without
replacement from a seeded generator), repeats, and reports the mean
accuracy; the confusion counts are summed over repetitions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .colorspace import RgbImage

TRAIN_FRACTION_NUM = 2  # 2/3 of each class trains, the rest tests
TRAIN_FRACTION_DEN = 3


@dataclass(frozen=True)
class LabeledFeature:
    id: str
    label: str
    vector: np.ndarray


@dataclass
class EvalReport:
    protocol: str  # "loocv" or "holdout"
    overall_accuracy: float  # percent
    per_class_accuracy: dict[str, float]
    repetitions: int
    seed: int | None
    classes: list[str]
    n_samples: int
    confusion: dict[str, dict[str, int]]  # true label -> predicted label -> count
    per_repetition_accuracy: list[float] = field(default_factory=list)
    method: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "protocol": self.protocol,
            "method": self.method,
            "overall_accuracy": self.overall_accuracy,
            "per_class_accuracy": self.per_class_accuracy,
            "per_repetition_accuracy": self.per_repetition_accuracy,
            "repetitions": self.repetitions,
            "seed": self.seed,
            "classes": self.classes,
            "n_samples": self.n_samples,
            "confusion": self.confusion,
        }


def _stack_vectors(samples: Sequence[LabeledFeature]) -> np.ndarray:
    lengths = {len(s.vector) for s in samples}
    if len(lengths) > 1:
        raise ValueError(f"feature vectors have mixed lengths: {sorted(lengths)}")
    return np.stack([np.asarray(s.vector, dtype=np.float64) for s in samples])


def _squared_distances(queries: np.ndarray, train: np.ndarray) -> np.ndarray:
    """(q, n) matrix of squared Euclidean distances."""
    q_sq = np.einsum("ij,ij->i", queries, queries)[:, None]
    t_sq = np.einsum("ij,ij->i", train, train)[None, :]
    return q_sq + t_sq - 2.0 * (queries @ train.T)


def nn_predict(train: Sequence[LabeledFeature], query: np.ndarray) -> str:
    """Label of the nearest training sample (ties: smallest training index)."""
    if not train:
        raise ValueError("training set is empty")
    matrix = _stack_vectors(train)
    q = np.asarray(query, dtype=np.float64)
    if q.shape != (matrix.shape[1],):
        raise ValueError(
            f"query length {q.shape} does not match training vectors of length {matrix.shape[1]}"
        )
    dists = _squared_distances(q[None, :], matrix)[0]
    return train[int(np.argmin(dists))].label


def _confusion_and_accuracy(
    truths: list[str], predictions: list[str], classes: list[str]
) -> tuple[dict[str, dict[str, int]], dict[str, float]]:
    confusion = {t: {p: 0 for p in classes} for t in classes}
    for t, p in zip(truths, predictions):
        confusion[t][p] += 1
    per_class = {}
    for c in classes:
        row_total = sum(confusion[c].values())
        per_class[c] = 100.0 * confusion[c][c] / row_total if row_total else 0.0
    return confusion, per_class


def eval_loocv(samples: Sequence[LabeledFeature]) -> EvalReport:
    """Each sample classified against all the others."""
    if len(samples) < 2:
        raise ValueError("leave-one-out needs at least 2 samples")
    classes = sorted({s.label for s in samples})
    if len(classes) < 2:
        raise ValueError("leave-one-out needs at least 2 classes")

    matrix = _stack_vectors(samples)
    dists = _squared_distances(matrix, matrix)
    np.fill_diagonal(dists, np.inf)
    nearest = np.argmin(dists, axis=1)  # first minimum = smallest training index

    truths = [s.label for s in samples]
    predictions = [samples[j].label for j in nearest]
    correct = sum(t == p for t, p in zip(truths, predictions))
    confusion, per_class = _confusion_and_accuracy(truths, predictions, classes)
    accuracy = 100.0 * correct / len(samples)
    return EvalReport(
        protocol="loocv",
        overall_accuracy=accuracy,
        per_class_accuracy=per_class,
        repetitions=1,
        seed=None,
        classes=classes,
        n_samples=len(samples),
        confusion=confusion,
        per_repetition_accuracy=[accuracy],
    )


def train_size(class_size: int) -> int:
    """Training samples drawn from a class of the given size (ceil of 2/3)."""
    return math.ceil(TRAIN_FRACTION_NUM * class_size / TRAIN_FRACTION_DEN)


def eval_holdout(
    samples: Sequence[LabeledFeature], repetitions: int = 10, seed: int = 42
) -> EvalReport:
    """Repeated stratified 2/3-1/3 holdout, mean accuracy over repetitions."""
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    classes = sorted({s.label for s in samples})
    if len(classes) < 2:
        raise ValueError("holdout needs at least 2 classes")

    by_class: dict[str, list[int]] = {c: [] for c in classes}
    for idx, s in enumerate(samples):
        by_class[s.label].append(idx)
    for c, members in by_class.items():
        if len(members) < TRAIN_FRACTION_DEN:
            raise ValueError(
                f"class {c!r} has {len(members)} samples; "
                f"holdout needs at least {TRAIN_FRACTION_DEN} per class"
            )

    matrix = _stack_vectors(samples)
    labels = [s.label for s in samples]
    rng = np.random.default_rng(seed)

    rep_accuracies = []
    all_truths: list[str] = []
    all_predictions: list[str] = []
    for _ in range(repetitions):
        train_idx: list[int] = []
        test_idx: list[int] = []
        for c in classes:
            members = by_class[c]
            perm = rng.permutation(len(members))
            cut = train_size(len(members))
            train_idx.extend(members[k] for k in perm[:cut])
            test_idx.extend(members[k] for k in perm[cut:])
        train_idx.sort()  # training order = original sample order
        test_idx.sort()

        dists = _squared_distances(matrix[test_idx], matrix[train_idx])
        nearest = np.argmin(dists, axis=1)
        truths = [labels[i] for i in test_idx]
        predictions = [labels[train_idx[j]] for j in nearest]
        correct = sum(t == p for t, p in zip(truths, predictions))
        rep_accuracies.append(100.0 * correct / len(test_idx))
        all_truths.extend(truths)
        all_predictions.extend(predictions)

    confusion, per_class = _confusion_and_accuracy(all_truths, all_predictions, classes)
    return EvalReport(
        protocol="holdout",
        overall_accuracy=float(np.mean(rep_accuracies)),
        per_class_accuracy=per_class,
        repetitions=repetitions,
        seed=seed,
        classes=classes,
        n_samples=len(samples),
        confusion=confusion,
        per_repetition_accuracy=rep_accuracies,
    )


def average_rgb_features(img: RgbImage) -> np.ndarray:
    """Baseline descriptor: the mean of each RGB channel."""
    return img.pixels.reshape(-1, 3).mean(axis=0)
