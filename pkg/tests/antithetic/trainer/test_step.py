import numpy as np
import pytest

from src.antithetic.exceptions import NonFiniteLossError
from src.antithetic.models.configs import LossWeights, ModelConfig, TrainConfig
from src.antithetic.trainer.network import init_model
from src.antithetic.trainer.step import SGD, network_gradcheck, objective_and_gradients, train_step


@pytest.fixture
def model():
    return init_model(ModelConfig(input_dims=(3, 2), hidden=[8, 5], num_identities=3, seed=2))


@pytest.fixture
def batch(rng):
    return rng.uniform(size=(6, 6)), np.array([0, 0, 1, 1, 2, 2])


def test_zero_learning_rate_is_a_null_step(model, batch):
    before = model.flat_parameters()
    train_step(model, *batch, TrainConfig(), lr=0.0)
    assert np.array_equal(model.flat_parameters(), before)


@pytest.mark.parametrize("mode", ["softmax", "softmax+center", "softmax+ccl"])
def test_small_step_descends(model, batch, mode):
    cfg = TrainConfig(loss_mode=mode, weight_decay=0.0, weights=LossWeights(alpha=0.5, beta=0.5))
    first = train_step(model, *batch, cfg, lr=1e-4).value
    second = objective_and_gradients(model, *batch, mode, cfg.weights).loss.value
    assert second < first


def test_trihard_step_descends(model, batch):
    cfg = TrainConfig(loss_mode="softmax+trihard", weight_decay=0.0, weights=LossWeights(margin=1.0))
    first = train_step(model, *batch, cfg, lr=1e-4)
    assert first.selected_triplets is not None
    second = objective_and_gradients(model, *batch, cfg.loss_mode, cfg.weights).loss.value
    assert second < first.value


@pytest.mark.parametrize("mode", ["softmax", "softmax+center", "softmax+ccl", "softmax+trihard"])
def test_network_gradients(mode):
    assert network_gradcheck(seed=0, mode=mode) < 1e-5


def test_center_terms_never_reach_the_head(model, batch):
    weights = LossWeights(alpha=0.7, beta=0.9)
    plain = objective_and_gradients(model, *batch, "softmax", weights).grads
    with_ccl = objective_and_gradients(model, *batch, "softmax+ccl", weights).grads
    assert np.array_equal(plain["head.weight"], with_ccl["head.weight"])
    assert np.array_equal(plain["head.bias"], with_ccl["head.bias"])
    assert not np.any(plain["centers"])
    assert np.any(with_ccl["centers"])


def test_loss_components_per_mode(model, batch):
    weights = LossWeights()
    center = objective_and_gradients(model, *batch, "softmax+center", weights).loss
    assert set(center.components) == {"ce", "intra", "total"}
    full = objective_and_gradients(model, *batch, "softmax+ccl", weights).loss
    assert set(full.components) == {"ce", "intra", "inter", "total"}
    assert full.value == pytest.approx(
        full.components["ce"] + weights.alpha * full.components["intra"] + weights.beta * full.components["inter"]
    )


def test_weight_decay_shrinks_parameters():
    params = {"w": np.array([1.0, -2.0]), "b": np.array([0.5])}
    grads = {name: np.zeros_like(p) for name, p in params.items()}
    optimizer = SGD(weight_decay=0.1)
    norms = []
    for _ in range(3):
        optimizer.step(params, grads, lr=0.5)
        norms.append(np.linalg.norm(params["w"]))
    assert norms[0] < np.sqrt(5.0)
    assert norms[2] < norms[1] < norms[0]


def test_momentum_accumulates():
    params = {"w": np.array([0.0])}
    grads = {"w": np.array([1.0])}
    optimizer = SGD(momentum=0.9)
    optimizer.step(params, grads, lr=1.0)
    optimizer.step(params, grads, lr=1.0)
    assert params["w"][0] == pytest.approx(-(1.0 + 1.9))


def test_non_finite_loss(model, batch):
    model.weights[0][0, 0] = np.nan
    with pytest.raises(NonFiniteLossError):
        train_step(model, *batch, TrainConfig(loss_mode="softmax"), lr=0.01)


def test_empty_batch(model):
    with pytest.raises(ValueError):
        train_step(model, np.zeros((0, 6)), np.array([], dtype=np.int64), TrainConfig(), lr=0.01)
