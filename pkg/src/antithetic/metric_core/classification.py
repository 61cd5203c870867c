"""Softmax cross-entropy for ID classification."""
import numpy as np

from ..exceptions import LabelRangeError
from ..models.metric import LossOutput


def softmax_ce(logits: np.ndarray, truth: np.ndarray) -> LossOutput:
    """Mean -log p_g with a max-subtracted softmax; gradient (p - onehot) / N."""
    logits = np.asarray(logits, dtype=np.float64)
    truth = np.asarray(truth, dtype=np.int64)
    if logits.ndim != 2 or logits.shape[1] < 2:
        raise ValueError(f"logits must be N x K with K >= 2, got {logits.shape}")
    n, k = logits.shape
    if truth.shape != (n,):
        raise ValueError("one ground-truth index per logit row is required")
    for label in truth.tolist():
        if label < 0 or label >= k:
            raise LabelRangeError(label, k)
    shifted = logits - logits.max(axis=1, keepdims=True)
    log_norm = np.log(np.sum(np.exp(shifted), axis=1))
    rows = np.arange(n)
    losses = log_norm - shifted[rows, truth]
    probs = np.exp(shifted - log_norm[:, None])
    grad = probs
    grad[rows, truth] -= 1.0
    value = float(np.mean(losses))
    return LossOutput(value=value, grad_features=grad / n, components={"ce": value})
