import numpy as np
import pytest
from pydantic import ValidationError

from src.antithetic.models.configs import AugmentConfig, LossWeights, ModelConfig, TrainConfig
from src.antithetic.models.image import Image, MagnitudeGrid
from src.antithetic.models.metric import CenterBank, EmbeddingBatch
from src.antithetic.models.records import Manifest, Origin, PartitionLabel, SampleRecord
from src.antithetic.models.reports import EvalReport, SelectionHistogram


def test_image_from_flat():
    """Row-major intensities are reshaped per channel count."""
    img = Image.from_flat(2, 2, 1, [1, 2, 3, 4])
    assert img.height == 2 and img.width == 2 and img.channels == 1
    assert img.flat == [1, 2, 3, 4]
    colour = Image.from_flat(1, 1, 3, [10, 20, 30])
    assert colour.channels == 3
    assert colour.flat == [10, 20, 30]


def test_image_rejects_bad_pixels():
    with pytest.raises(ValidationError):
        Image(pixels=np.array([[256, 0]]))
    with pytest.raises(ValidationError):
        Image(pixels=np.array([[1.5, 0.0]]))
    with pytest.raises(ValidationError):
        Image(pixels=np.zeros((2, 2, 2)))
    with pytest.raises(ValueError):
        Image.from_flat(2, 2, 1, [1, 2, 3])


def test_image_equality_is_pixel_equality():
    assert Image(pixels=[[1, 2]]) == Image(pixels=np.array([[1, 2]], dtype=np.uint8))
    assert Image(pixels=[[1, 2]]) != Image(pixels=[[2, 1]])


def test_magnitude_grid_non_negative():
    with pytest.raises(ValidationError):
        MagnitudeGrid(values=[[1.0, -0.5]])


def test_antithetical_record_needs_counterpart():
    with pytest.raises(ValidationError):
        SampleRecord(path="a_anti.pgm", identity=0, camera=0, origin=Origin.ANTITHETICAL)
    record = SampleRecord(path="a_anti.pgm", identity=0, camera=0, origin=Origin.ANTITHETICAL, counterpart="a.pgm")
    assert record.counterpart == "a.pgm"


def test_manifest_paths_unique():
    with pytest.raises(ValidationError):
        Manifest(records=[SampleRecord(path="a.pgm", identity=0, camera=0)] * 2)


def test_manifest_partition_views():
    manifest = Manifest(records=[
        SampleRecord(path="a.pgm", identity=3, camera=0, partition=PartitionLabel.HR),
        SampleRecord(path="b.pgm", identity=1, camera=1, partition=PartitionLabel.LR),
    ])
    assert manifest.identities() == [1, 3]
    assert [r.path for r in manifest.by_partition(PartitionLabel.LR).records] == ["b.pgm"]
    assert PartitionLabel.HR.opposite is PartitionLabel.LR


def test_augment_config_factor_order():
    with pytest.raises(ValidationError):
        AugmentConfig(factor_low=0.8, factor_high=0.5, seed=1)
    with pytest.raises(ValidationError):
        AugmentConfig(factor_low=0.5, factor_high=1.0, seed=1)
    assert AugmentConfig(seed=1, enhancer="external:/bin/sr").external_program == "/bin/sr"
    assert AugmentConfig(seed=1).external_program is None
    with pytest.raises(ValidationError):
        AugmentConfig(seed=1, enhancer="srgan")


def test_train_config_defaults_and_sampling():
    cfg = TrainConfig()
    assert (cfg.epochs, cfg.batch_size, cfg.lr0, cfg.weight_decay) == (60, 60, 0.01, 5e-4)
    assert cfg.sampling() is None
    assert TrainConfig(loss_mode="softmax+trihard").sampling() == (15, 4)
    assert TrainConfig(pk=(2, 3)).sampling() == (2, 3)
    with pytest.raises(ValidationError):
        TrainConfig(batch_size=1)
    with pytest.raises(ValidationError):
        TrainConfig(epochs=0)


def test_trihard_layout_capped_by_pool():
    cfg = TrainConfig(loss_mode="softmax+trihard")
    assert cfg.sampling(40) == (15, 4)
    assert cfg.sampling(6) == (6, 4)
    assert cfg.sampling(1) == (1, 4)
    assert TrainConfig(pk=(8, 2)).sampling(3) == (8, 2)


def test_model_config_widths():
    cfg = ModelConfig(num_identities=5)
    assert cfg.input_size == 512
    assert cfg.embedding_dim == 128
    with pytest.raises(ValidationError):
        ModelConfig(num_identities=5, hidden=[4, 0])
    assert LossWeights().alpha == 0.1


def test_metric_models_validate_shapes():
    with pytest.raises(ValidationError):
        EmbeddingBatch(features=np.ones((2, 1)), labels=[0, 1])
    with pytest.raises(ValidationError):
        EmbeddingBatch(features=np.ones((2, 3)), labels=[0])
    with pytest.raises(ValidationError):
        CenterBank(centers=[[0.0, 0.0], [1.0, 0.0]])


def test_eval_report_cmc_must_be_monotone():
    with pytest.raises(ValidationError):
        EvalReport(cmc=[0.5, 0.4])
    with pytest.raises(ValidationError):
        EvalReport(cmc=[1.5])
    assert EvalReport(cmc=[0.5, 1.0]).rank1 == 0.5


def test_off_diagonal_mass_skips_empty_rows():
    histogram = SelectionHistogram(
        positive_counts=[[0, 4], [0, 0]],
        negative_counts=[[4, 0], [0, 0]],
        positive_normalized=[[0.0, 1.0], [0.0, 0.0]],
        negative_normalized=[[1.0, 0.0], [0.0, 0.0]],
    )
    assert histogram.off_diagonal_mass("positive") == 1.0
    assert histogram.off_diagonal_mass("negative") == 0.0
