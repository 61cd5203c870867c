"""One optimisation step: forward, loss per mode, backpropagation, SGD update."""
import logging
from typing import Dict, NamedTuple, Optional

import numpy as np

from ..constants import LossMode
from ..exceptions import NonFiniteLossError
from ..metric_core.center_losses import ccl, intra_loss
from ..metric_core.classification import softmax_ce
from ..metric_core.gradcheck import finite_diff_check
from ..metric_core.objective import total_loss
from ..metric_core.trihard import trihard
from ..models.configs import LossWeights, ModelConfig, TrainConfig
from ..models.metric import CenterBank, EmbeddingBatch, LossOutput
from .network import EmbeddingNet, backward, forward_with_cache, init_model, project_centers

logger = logging.getLogger(__name__)


class ObjectiveResult(NamedTuple):
    loss: LossOutput
    grads: Dict[str, np.ndarray]


def _metric_term(
    embeddings: np.ndarray,
    labels: np.ndarray,
    centers: np.ndarray,
    mode: LossMode,
    weights: LossWeights,
) -> LossOutput:
    if mode == "softmax":
        return LossOutput(value=0.0, grad_features=np.zeros_like(embeddings))
    batch = EmbeddingBatch(features=embeddings, labels=labels)
    if mode == "softmax+trihard":
        return trihard(batch, weights)
    bank = CenterBank(centers=centers)
    if mode == "softmax+center":
        intra = intra_loss(batch, bank)
        return LossOutput(
            value=weights.alpha * intra.value,
            grad_features=weights.alpha * intra.grad_features,
            grad_centers=weights.alpha * intra.grad_centers,
            components=intra.components,
        )
    return ccl(batch, bank, weights)


def objective_and_gradients(
    model: EmbeddingNet,
    inputs: np.ndarray,
    labels: np.ndarray,
    mode: LossMode,
    weights: LossWeights,
) -> ObjectiveResult:
    """Evaluate the combined objective and the gradient of every parameter."""
    labels = np.asarray(labels, dtype=np.int64)
    embeddings, logits, cache = forward_with_cache(model, inputs)
    ce = softmax_ce(logits, labels)
    ce_at_embedding = LossOutput(
        value=ce.value,
        grad_features=ce.grad_features @ model.head_weight.T,
        components=ce.components,
    )
    metric = _metric_term(embeddings, labels, model.centers, mode, weights)
    combined = total_loss(ce_at_embedding, metric)
    if not np.isfinite(combined.value):
        raise NonFiniteLossError(mode, combined.value)
    grads = backward(model, cache, ce.grad_features, combined.grad_features)
    grads["centers"] = (
        combined.grad_centers if combined.grad_centers is not None else np.zeros_like(model.centers)
    )
    return ObjectiveResult(combined, grads)


class SGD:
    """p <- p - lr * (g + weight_decay * p), with an optional momentum buffer."""

    def __init__(self, weight_decay: float = 0.0, momentum: float = 0.0):
        self.weight_decay = weight_decay
        self.momentum = momentum
        self.velocity: Dict[str, np.ndarray] = {}

    def step(self, params: Dict[str, np.ndarray], grads: Dict[str, np.ndarray], lr: float) -> None:
        for name, param in params.items():
            update = grads[name] + self.weight_decay * param
            if self.momentum > 0.0:
                buffer = self.velocity.get(name)
                buffer = update if buffer is None else self.momentum * buffer + update
                self.velocity[name] = buffer
                update = buffer
            param -= lr * update


def train_step(
    model: EmbeddingNet,
    inputs: np.ndarray,
    labels: np.ndarray,
    cfg: TrainConfig,
    lr: float,
    optimizer: Optional[SGD] = None,
) -> LossOutput:
    """Update ``model`` in place and return the loss evaluated before the update.

    Raises:
        NonFiniteLossError: If the objective is NaN or infinite
    """
    if len(labels) == 0:
        raise ValueError("batch must not be empty")
    optimizer = optimizer or SGD(cfg.weight_decay, cfg.momentum)
    result = objective_and_gradients(model, inputs, labels, cfg.loss_mode, cfg.weights)
    optimizer.step(model.parameters(), result.grads, lr)
    project_centers(model.centers)
    return result.loss


def network_gradcheck(seed: int = 0, mode: LossMode = "softmax+ccl") -> float:
    """Finite-difference check of the full objective on a tiny network."""
    rng = np.random.default_rng(seed)
    model = init_model(ModelConfig(input_dims=(2, 2), hidden=[3], num_identities=2, seed=seed))
    inputs = rng.uniform(0.0, 1.0, size=(4, 4))
    labels = np.array([0, 0, 1, 1])
    # non-negative weights and positive biases keep every hidden unit off the rectifier kink
    for w, b in zip(model.weights, model.biases):
        np.abs(w, out=w)
        b += 0.5
    weights = LossWeights(alpha=0.5, beta=0.5, margin=1.0)

    def _loss(flat: np.ndarray):
        perturbed = model.copy()
        perturbed.load_flat(flat)
        result = objective_and_gradients(perturbed, inputs, labels, mode, weights)
        grads = np.concatenate([result.grads[name].ravel() for name in perturbed.parameters()])
        return result.loss.value, grads

    error = finite_diff_check(_loss, model.flat_parameters(), seed=seed)
    logger.debug(f"network gradcheck ({mode}): {error:.3e}")
    return error
