"""Feed-forward embedding network with a classification head.

Hidden layers are affine maps followed by a rectifier; the last rectified
activation is the embedding that the center losses and ranking read. The
classification head is an affine map of the embedding. Identity centers are
part of the parameter set.
"""
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from ..constants import CENTER_INIT_HIGH, CENTER_INIT_LOW, CENTER_NORM_FLOOR
from ..models.configs import ModelConfig


class ForwardCache(NamedTuple):
    activations: List[np.ndarray]  # input followed by each rectified hidden output
    pre_activations: List[np.ndarray]


class EmbeddingNet:
    """Network parameters, stored as float64 arrays.

    Attributes:
        config: Shape of the network
        weights, biases: Hidden layer parameters, weights shaped (fan_in, fan_out)
        head_weight, head_bias: Classification head (embedding_dim -> K)
        centers: Identity centers (K x embedding_dim)
    """

    def __init__(
        self,
        config: ModelConfig,
        weights: List[np.ndarray],
        biases: List[np.ndarray],
        head_weight: np.ndarray,
        head_bias: np.ndarray,
        centers: np.ndarray,
    ):
        self.config = config
        self.weights = weights
        self.biases = biases
        self.head_weight = head_weight
        self.head_bias = head_bias
        self.centers = centers

    def parameters(self) -> Dict[str, np.ndarray]:
        """Named parameter arrays in a fixed order; arrays are shared, not copied."""
        params: Dict[str, np.ndarray] = {}
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            params[f"layer{i}.weight"] = w
            params[f"layer{i}.bias"] = b
        params["head.weight"] = self.head_weight
        params["head.bias"] = self.head_bias
        params["centers"] = self.centers
        return params

    def copy(self) -> "EmbeddingNet":
        return EmbeddingNet(
            self.config,
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
            self.head_weight.copy(),
            self.head_bias.copy(),
            self.centers.copy(),
        )

    def flat_parameters(self) -> np.ndarray:
        return np.concatenate([p.ravel() for p in self.parameters().values()])

    def load_flat(self, flat: np.ndarray) -> None:
        offset = 0
        for param in self.parameters().values():
            param[...] = flat[offset:offset + param.size].reshape(param.shape)
            offset += param.size


def _glorot(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


def init_model(cfg: ModelConfig) -> EmbeddingNet:
    """Glorot-uniform weights, zero biases, centers ~ U(0.01, 0.1) per coordinate."""
    rng = np.random.default_rng(cfg.seed)
    widths = [cfg.input_size] + list(cfg.hidden)
    weights = [_glorot(rng, fan_in, fan_out) for fan_in, fan_out in zip(widths, widths[1:])]
    biases = [np.zeros(fan_out) for fan_out in widths[1:]]
    head_weight = _glorot(rng, cfg.embedding_dim, cfg.num_identities)
    head_bias = np.zeros(cfg.num_identities)
    centers = rng.uniform(CENTER_INIT_LOW, CENTER_INIT_HIGH, size=(cfg.num_identities, cfg.embedding_dim))
    return EmbeddingNet(cfg, weights, biases, head_weight, head_bias, centers)


def forward_with_cache(model: EmbeddingNet, inputs: np.ndarray) -> Tuple[np.ndarray, np.ndarray, ForwardCache]:
    inputs = np.asarray(inputs, dtype=np.float64)
    if inputs.ndim != 2 or inputs.shape[1] != model.config.input_size:
        raise ValueError(
            f"expected inputs of shape (B, {model.config.input_size}), got {inputs.shape}"
        )
    activations = [inputs]
    pre_activations = []
    current = inputs
    for w, b in zip(model.weights, model.biases):
        z = current @ w + b
        current = np.maximum(z, 0.0)
        pre_activations.append(z)
        activations.append(current)
    logits = current @ model.head_weight + model.head_bias
    return current, logits, ForwardCache(activations, pre_activations)


def forward(model: EmbeddingNet, inputs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Return (embeddings B x d_e, logits B x K)."""
    embeddings, logits, _ = forward_with_cache(model, inputs)
    return embeddings, logits


def backward(
    model: EmbeddingNet,
    cache: ForwardCache,
    d_logits: np.ndarray,
    d_embeddings: Optional[np.ndarray] = None,
) -> Dict[str, np.ndarray]:
    """Gradients of every network parameter except the centers.

    ``d_logits`` drives the head; ``d_embeddings`` is the full gradient at the
    embedding (head contribution included) and drives the hidden layers. When
    it is omitted the head contribution alone is propagated.
    """
    embeddings = cache.activations[-1]
    grads: Dict[str, np.ndarray] = {
        "head.weight": embeddings.T @ d_logits,
        "head.bias": d_logits.sum(axis=0),
    }
    delta = d_logits @ model.head_weight.T if d_embeddings is None else d_embeddings
    for i in reversed(range(len(model.weights))):
        dz = delta * (cache.pre_activations[i] > 0)
        grads[f"layer{i}.weight"] = cache.activations[i].T @ dz
        grads[f"layer{i}.bias"] = dz.sum(axis=0)
        delta = dz @ model.weights[i].T
    return grads


def project_centers(centers: np.ndarray, floor: float = CENTER_NORM_FLOOR) -> None:
    """Rescale, in place, any center whose norm fell below ``floor``."""
    norms = np.linalg.norm(centers, axis=1)
    small = norms < floor
    if not np.any(small):
        return
    for i in np.flatnonzero(small):
        if norms[i] == 0.0:
            centers[i] = floor / np.sqrt(centers.shape[1])
        else:
            centers[i] *= floor / norms[i]
