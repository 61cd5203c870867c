"""Batch-hard triplet loss (trihard) on 1 - cos distances.

Per anchor the farthest same-identity sample and the nearest other-identity
sample are selected, ties resolved by the lowest index. Every valid anchor's
selection is reported, active or not, so selection tendencies can be
analysed.
"""
import numpy as np

from ..exceptions import NoValidAnchorError
from ..models.configs import LossWeights
from ..models.metric import EmbeddingBatch, LossOutput
from .cosine import cosine_matrix, cosine_rows


def triplet_hinge(d_ap: float, d_an: float, margin: float) -> float:
    return max(0.0, margin + d_ap - d_an)


def select_hardest(distances: np.ndarray, labels: np.ndarray):
    """Hardest positive/negative per anchor, restricted to valid anchors."""
    n = labels.size
    same = labels[:, None] == labels[None, :]
    positive = same & ~np.eye(n, dtype=bool)
    negative = ~same
    valid = positive.any(axis=1) & negative.any(axis=1)
    anchors = np.flatnonzero(valid)
    pos_idx = np.argmax(np.where(positive, distances, -np.inf), axis=1)[anchors]
    neg_idx = np.argmin(np.where(negative, distances, np.inf), axis=1)[anchors]
    return anchors, pos_idx, neg_idx


def trihard(batch: EmbeddingBatch, w: LossWeights) -> LossOutput:
    """Mean over valid anchors of max(0, margin + d_ap - d_an).

    Raises:
        NoValidAnchorError: If no anchor has both a positive and a negative
    """
    features = batch.features
    distances = 1.0 - cosine_matrix(features, features)
    anchors, pos_idx, neg_idx = select_hardest(distances, batch.labels)
    if anchors.size == 0:
        raise NoValidAnchorError()
    count = anchors.size
    d_ap = distances[anchors, pos_idx]
    d_an = distances[anchors, neg_idx]
    hinge = w.margin + d_ap - d_an
    active = hinge > 0
    value = float(np.sum(np.where(active, hinge, 0.0)) / count)

    grad = np.zeros_like(features)
    a, p, q = anchors[active], pos_idx[active], neg_idx[active]
    if a.size:
        _, g_ap_a, g_ap_p = cosine_rows(features[a], features[p])
        _, g_an_a, g_an_n = cosine_rows(features[a], features[q])
        # d = 1 - cos, so d_ap pulls with -grad(cos) and d_an pushes with +grad(cos)
        np.add.at(grad, a, (g_an_a - g_ap_a) / count)
        np.add.at(grad, p, -g_ap_p / count)
        np.add.at(grad, q, g_an_n / count)

    triplets = [(int(x), int(y), int(z)) for x, y, z in zip(anchors, pos_idx, neg_idx)]
    return LossOutput(value=value, grad_features=grad, selected_triplets=triplets,
                      components={"trihard": value})
