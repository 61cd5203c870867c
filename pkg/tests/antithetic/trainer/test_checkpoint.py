import numpy as np
import pytest

from src.antithetic.exceptions import CheckpointError
from src.antithetic.models.configs import ModelConfig
from src.antithetic.trainer.checkpoint import load_model, save_model
from src.antithetic.trainer.network import forward, init_model


@pytest.fixture
def model():
    return init_model(ModelConfig(input_dims=(3, 2), hidden=[5, 4], num_identities=3, seed=9))


def test_round_trip_is_exact(model, tmp_path, rng):
    model.weights[0] += rng.normal(scale=1e-3, size=model.weights[0].shape)
    save_model(model, tmp_path / "m.ckpt")
    loaded = load_model(tmp_path / "m.ckpt")
    assert loaded.config == model.config
    assert np.array_equal(loaded.flat_parameters(), model.flat_parameters())
    inputs = rng.uniform(size=(4, 6))
    for a, b in zip(forward(model, inputs), forward(loaded, inputs)):
        assert np.array_equal(a, b)


def test_deterministic_bytes(model, tmp_path):
    save_model(model, tmp_path / "a.ckpt")
    save_model(model.copy(), tmp_path / "b.ckpt")
    assert (tmp_path / "a.ckpt").read_bytes() == (tmp_path / "b.ckpt").read_bytes()


def test_truncated(model, tmp_path):
    save_model(model, tmp_path / "m.ckpt")
    lines = (tmp_path / "m.ckpt").read_text().splitlines()
    (tmp_path / "m.ckpt").write_text("\n".join(lines[: len(lines) // 2]) + "\n")
    with pytest.raises(CheckpointError):
        load_model(tmp_path / "m.ckpt")


def test_missing_end_marker(model, tmp_path):
    save_model(model, tmp_path / "m.ckpt")
    text = (tmp_path / "m.ckpt").read_text()
    (tmp_path / "m.ckpt").write_text(text.replace("end\n", ""))
    with pytest.raises(CheckpointError):
        load_model(tmp_path / "m.ckpt")


def test_expected_config_mismatch(model, tmp_path):
    save_model(model, tmp_path / "m.ckpt")
    with pytest.raises(CheckpointError):
        load_model(tmp_path / "m.ckpt", expected=ModelConfig(input_dims=(3, 2), hidden=[5, 4], num_identities=4))
    assert load_model(tmp_path / "m.ckpt", expected=model.config).config == model.config


@pytest.mark.parametrize("first_line", ["antithetic-checkpoint 2", "something else"])
def test_bad_header(model, tmp_path, first_line):
    save_model(model, tmp_path / "m.ckpt")
    lines = (tmp_path / "m.ckpt").read_text().splitlines()
    (tmp_path / "m.ckpt").write_text("\n".join([first_line] + lines[1:]) + "\n")
    with pytest.raises(CheckpointError):
        load_model(tmp_path / "m.ckpt")


def test_missing_file(tmp_path):
    with pytest.raises(CheckpointError):
        load_model(tmp_path / "absent.ckpt")
