"""Central finite-difference verification of analytic gradients."""
import logging
from typing import Callable, Dict, Tuple

import numpy as np

from ..constants import FD_MAX_COORDS, FD_STEP
from ..exceptions import NonFiniteLossError
from ..models.configs import LossWeights
from ..models.metric import CenterBank, EmbeddingBatch
from .center_losses import ccl, inter_loss, intra_loss
from .classification import softmax_ce
from .trihard import trihard

logger = logging.getLogger(__name__)

LossFn = Callable[[np.ndarray], Tuple[float, np.ndarray]]


def finite_diff_check(
    loss: LossFn,
    params: np.ndarray,
    step: float = FD_STEP,
    max_coords: int = FD_MAX_COORDS,
    seed: int = 0,
) -> float:
    """Max over sampled coordinates of |g_analytic - g_numeric| / max(1, |g_numeric|).

    ``loss`` maps a flat parameter vector to (value, flat analytic gradient).

    Raises:
        NonFiniteLossError: If the loss is NaN/inf at any evaluated point
    """
    params = np.asarray(params, dtype=np.float64).ravel()
    value, analytic = loss(params.copy())
    if not np.isfinite(value):
        raise NonFiniteLossError("finite_diff_check", value)
    analytic = np.asarray(analytic, dtype=np.float64).ravel()
    if params.size <= max_coords:
        coords = np.arange(params.size)
    else:
        coords = np.random.default_rng(seed).choice(params.size, size=max_coords, replace=False)
    worst = 0.0
    for i in coords:
        shifted = params.copy()
        shifted[i] += step
        plus, _ = loss(shifted)
        shifted[i] -= 2 * step
        minus, _ = loss(shifted)
        if not (np.isfinite(plus) and np.isfinite(minus)):
            raise NonFiniteLossError("finite_diff_check", plus if not np.isfinite(plus) else minus)
        numeric = (plus - minus) / (2 * step)
        worst = max(worst, abs(analytic[i] - numeric) / max(1.0, abs(numeric)))
    return worst


def _features_and_centers(flat: np.ndarray, n: int, k: int, d: int) -> Tuple[np.ndarray, np.ndarray]:
    return flat[: n * d].reshape(n, d), flat[n * d:].reshape(k, d)


def loss_gradchecks(seed: int = 0) -> Dict[str, float]:
    """Run the finite-difference check for every loss at a random generic point."""
    rng = np.random.default_rng(seed)
    n, k, d = 8, 4, 5
    labels = np.array([0, 0, 1, 1, 2, 2, 3, 3])
    features = rng.normal(size=(n, d))
    centers = rng.normal(size=(k, d))
    weights = LossWeights(alpha=0.7, beta=0.4, margin=1.0)
    point = np.concatenate([features.ravel(), centers.ravel()])

    def _center_loss(fn):
        def _loss(flat):
            f, c = _features_and_centers(flat, n, k, d)
            out = fn(EmbeddingBatch(features=f, labels=labels), CenterBank(centers=c))
            return out.value, np.concatenate([out.grad_features.ravel(), out.grad_centers.ravel()])
        return _loss

    def _softmax(flat):
        out = softmax_ce(flat.reshape(n, k), labels)
        return out.value, out.grad_features.ravel()

    def _trihard(flat):
        out = trihard(EmbeddingBatch(features=flat.reshape(n, d), labels=labels), weights)
        return out.value, out.grad_features.ravel()

    results = {
        "intra_loss": finite_diff_check(_center_loss(intra_loss), point, seed=seed),
        "inter_loss": finite_diff_check(
            _center_loss(lambda b, c: inter_loss(b.labels, c)), point, seed=seed),
        "ccl": finite_diff_check(_center_loss(lambda b, c: ccl(b, c, weights)), point, seed=seed),
        "softmax_ce": finite_diff_check(_softmax, rng.normal(size=n * k), seed=seed),
        "trihard": finite_diff_check(_trihard, features.ravel(), seed=seed),
    }
    for name, error in results.items():
        logger.debug(f"gradcheck {name}: {error:.3e}")
    return results
