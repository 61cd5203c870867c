"""Where batch-hard mining picks its positives and negatives, by resolution class."""
from typing import List, Sequence, Tuple

import numpy as np

from ..metric_core.cosine import cosine_matrix
from ..metric_core.trihard import select_hardest
from ..models.records import PartitionLabel
from ..models.reports import SelectionHistogram
from ..trainer.training import TrainResult

BIN_ORDER = (PartitionLabel.HR, PartitionLabel.LR)

Triplet = Tuple[int, int, int]


def select_triplets(features: np.ndarray, labels: Sequence[int]) -> List[Triplet]:
    """Hardest (anchor, positive, negative) for every anchor that has both."""
    features = np.asarray(features, dtype=np.float64)
    distances = 1.0 - cosine_matrix(features, features)
    anchors, pos_idx, neg_idx = select_hardest(distances, np.asarray(labels))
    return [(int(a), int(p), int(n)) for a, p, n in zip(anchors, pos_idx, neg_idx)]


def _normalize(counts: np.ndarray) -> List[List[float]]:
    totals = counts.sum(axis=1, keepdims=True)
    normalized = np.divide(counts, totals, out=np.zeros(counts.shape), where=totals > 0)
    return normalized.tolist()


def triplet_histogram(selected: Sequence[Triplet], bins: Sequence[PartitionLabel]) -> SelectionHistogram:
    """Count selections per (anchor bin, chosen bin) and normalize along the chosen axis."""
    if not selected:
        raise ValueError("selection log is empty")
    index = [BIN_ORDER.index(PartitionLabel(b)) for b in bins]
    positives = np.zeros((2, 2), dtype=np.int64)
    negatives = np.zeros((2, 2), dtype=np.int64)
    for anchor, positive, negative in selected:
        positives[index[anchor], index[positive]] += 1
        negatives[index[anchor], index[negative]] += 1
    return SelectionHistogram(
        bins=[b.value for b in BIN_ORDER],
        positive_counts=positives.tolist(),
        negative_counts=negatives.tolist(),
        positive_normalized=_normalize(positives),
        negative_normalized=_normalize(negatives),
    )


def training_selection_histogram(result: TrainResult) -> SelectionHistogram:
    """Histogram of the triplets mined while training, over the pool's HR/LR bins.

    Raises:
        ValueError: If nothing was mined or the pool was never partitioned
    """
    if any(label is None for label in result.pool_bins):
        raise ValueError("training pool has unpartitioned records")
    return triplet_histogram(result.selected_triplets, result.pool_bins)
