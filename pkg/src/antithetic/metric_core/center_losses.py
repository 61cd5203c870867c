"""Contrastive Center Loss: cosine attraction to identity centers plus
absolute-cosine repulsion between the centers present in a batch."""
import logging
from typing import Literal

import numpy as np

from ..exceptions import LabelRangeError
from ..models.configs import LossWeights
from ..models.metric import CenterBank, EmbeddingBatch, LossOutput
from .cosine import cosine_rows

logger = logging.getLogger(__name__)


def check_labels(labels: np.ndarray, size: int) -> None:
    for label in np.asarray(labels).tolist():
        if label < 0 or label >= size:
            raise LabelRangeError(label, size)


def intra_loss(batch: EmbeddingBatch, bank: CenterBank) -> LossOutput:
    """(1/N) sum_i (1 - cos(f_i, C_{y_i}))."""
    check_labels(batch.labels, bank.num_identities)
    if batch.features.shape[1] != bank.centers.shape[1]:
        raise ValueError("feature and center dimensions differ")
    n = batch.size
    cos, grad_f, grad_c = cosine_rows(batch.features, bank.centers[batch.labels])
    value = float(np.mean(1.0 - cos))
    grad_centers = np.zeros_like(bank.centers)
    np.add.at(grad_centers, batch.labels, -grad_c / n)
    return LossOutput(
        value=value,
        grad_features=-grad_f / n,
        grad_centers=grad_centers,
        components={"intra": value},
    )


def inter_loss(
    labels: np.ndarray,
    bank: CenterBank,
    normalization: Literal["pairs", "literal"] = "pairs",
) -> LossOutput:
    """Mean |cos(C_{y_i}, C_{y_j})| over ordered batch pairs with y_i != y_j.

    With ``normalization="literal"`` the sum runs over all N x N pairs
    (same-identity pairs contribute 1 each) and is divided by N instead.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if labels.size < 1:
        raise ValueError("inter_loss needs at least one label")
    check_labels(labels, bank.num_identities)
    n = labels.size
    dim = bank.centers.shape[1]
    ids, counts = np.unique(labels, return_counts=True)
    grad_centers = np.zeros_like(bank.centers)

    centers = bank.centers[ids]
    norms = np.linalg.norm(centers, axis=1)
    unit = centers / norms[:, None]
    cos = np.clip(unit @ unit.T, -1.0, 1.0)
    weights = np.outer(counts, counts).astype(np.float64)
    np.fill_diagonal(weights, 0.0)
    cross_sum = float(np.sum(weights * np.abs(cos)))

    if normalization == "literal":
        denom = float(n)
        value = (float(np.sum(counts.astype(np.float64) ** 2)) + cross_sum) / denom
    else:
        denom = float(np.sum(weights))
        if denom == 0.0:
            return LossOutput(value=0.0, grad_features=np.zeros((n, dim)), grad_centers=grad_centers,
                              components={"inter": 0.0})
        value = cross_sum / denom

    signed = weights * np.sign(cos)
    grad_unique = 2.0 / denom * (
        (signed @ unit) / norms[:, None]
        - np.sum(signed * cos, axis=1)[:, None] * centers / (norms ** 2)[:, None]
    )
    grad_centers[ids] = grad_unique
    return LossOutput(value=value, grad_features=np.zeros((n, dim)), grad_centers=grad_centers,
                      components={"inter": value})


def ccl(batch: EmbeddingBatch, bank: CenterBank, w: LossWeights) -> LossOutput:
    """alpha * L_intra + beta * L_inter."""
    intra = intra_loss(batch, bank)
    inter = inter_loss(batch.labels, bank, w.inter_normalization)
    return LossOutput(
        value=w.alpha * intra.value + w.beta * inter.value,
        grad_features=w.alpha * intra.grad_features + w.beta * inter.grad_features,
        grad_centers=w.alpha * intra.grad_centers + w.beta * inter.grad_centers,
        components={"intra": intra.value, "inter": inter.value},
    )
