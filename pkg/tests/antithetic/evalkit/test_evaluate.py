import pytest

from src.antithetic.evalkit.evaluate import evaluate_model
from src.antithetic.iqa.partition import partition, split_threshold
from src.antithetic.iqa.sharpness import score_manifest
from src.antithetic.models.configs import ModelConfig, TrainConfig
from src.antithetic.models.records import Manifest
from src.antithetic.trainer.training import train

SMALL = ModelConfig(input_dims=(8, 4), hidden=[12, 6], num_identities=1)


@pytest.fixture
def trained(image_dir):
    return train(TrainConfig(epochs=2, batch_size=3, seed=5), image_dir, model_cfg=SMALL).model


def test_report_fields(trained, image_dir):
    report = evaluate_model(trained, image_dir, image_dir)
    assert report.num_queries == 6
    assert report.skipped_queries == 0
    assert len(report.cmc) == 6
    assert report.cmc[-1] == 1.0
    assert 0.0 < report.map <= 1.0
    assert report.d_intra is not None and report.d_inter is not None and report.d_centers is not None
    assert report.probe_breakdown is None


def test_probe_breakdown_when_partitioned(trained, image_dir):
    scored = score_manifest(image_dir)
    split = partition(scored, split_threshold([r.sharpness for r in scored.records]))
    report = evaluate_model(trained, split, image_dir, threads=2)
    assert report.probe_breakdown
    assert "ALL" not in report.probe_breakdown
    assert set(report.probe_breakdown) <= {"HR", "LR"}
    counted = sum(sub.num_queries for sub in report.probe_breakdown.values())
    assert counted == report.num_queries


def test_threads_do_not_change_the_report(trained, image_dir):
    assert evaluate_model(trained, image_dir, image_dir, threads=1) == \
        evaluate_model(trained, image_dir, image_dir, threads=3)


def test_empty_split_rejected(trained, image_dir):
    with pytest.raises(ValueError):
        evaluate_model(trained, Manifest(records=[], root=image_dir.root), image_dir)
