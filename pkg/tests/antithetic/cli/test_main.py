import json

import pandas as pd
import pytest

from src.antithetic.cli.main import build_parser, main
from src.antithetic.constants import THREADS_ENV_VAR
from src.antithetic.dataset.manifest_io import load_manifest, save_manifest
from src.antithetic.evalkit.writers import HISTOGRAM_COLUMNS, RESOLUTION_COLUMNS, read_report
from src.antithetic.models.records import Manifest, SampleRecord
from src.antithetic.trainer.checkpoint import load_model

TINY_NET = ["--input-dims", "8", "4", "--hidden", "12", "6", "--epochs", "1", "--batch-size", "4"]


def _synth(out_dir, seed="7"):
    return main(["synth", "--identities", "4", "--per-id", "4", "--height", "16", "--width", "8",
                 "--seed", seed, "--out-dir", str(out_dir)])


def _tree(directory):
    return {p.relative_to(directory).as_posix(): p.read_bytes() for p in sorted(directory.rglob("*")) if p.is_file()}


def test_gradcheck_passes(capsys):
    assert main(["gradcheck"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert any(line.startswith("network ") for line in lines)


def test_synth_is_reproducible(tmp_path, capsys):
    assert _synth(tmp_path / "a") == 0
    assert _synth(tmp_path / "b") == 0
    assert "16 images, 8 blurred" in capsys.readouterr().out
    assert _tree(tmp_path / "a") == _tree(tmp_path / "b")


def test_unreadable_image_exits_2(tmp_path, capsys):
    manifest = Manifest(records=[SampleRecord(path="missing.pgm", identity=0, camera=0)], root=tmp_path)
    save_manifest(manifest, tmp_path / "m.jsonl")
    code = main(["score", "--manifest", str(tmp_path / "m.jsonl"), "--out", str(tmp_path / "s.jsonl")])
    assert code == 2
    assert "missing.pgm" in capsys.readouterr().err


def test_missing_required_flag_exits_1(capsys):
    assert main(["train", "--manifest", "m.jsonl", "--out", "model.txt"]) == 1
    assert "--seed" in capsys.readouterr().err


def test_unknown_command_exits_1():
    assert main(["sharpen"]) == 1
    assert main([]) == 1


def test_help_exits_0():
    assert main(["--help"]) == 0


def test_threads_from_environment(tmp_path, monkeypatch):
    _synth(tmp_path / "corpus")
    monkeypatch.setenv(THREADS_ENV_VAR, "3")
    out = tmp_path / "scores.jsonl"
    assert main(["score", "--manifest", str(tmp_path / "corpus" / "manifest.jsonl"), "--out", str(out)]) == 0
    monkeypatch.setenv(THREADS_ENV_VAR, "many")
    assert main(["score", "--manifest", str(tmp_path / "corpus" / "manifest.jsonl"), "--out", str(out)]) == 1
    monkeypatch.setenv(THREADS_ENV_VAR, "0")
    assert main(["score", "--manifest", str(tmp_path / "corpus" / "manifest.jsonl"), "--out", str(out)]) == 1


def test_threads_flag_wins(tmp_path, monkeypatch):
    monkeypatch.setenv(THREADS_ENV_VAR, "many")
    args = build_parser().parse_args(["score", "--manifest", "m", "--out", "o", "--threads", "2"])
    assert args.threads == 2


def test_split_requires_scores(tmp_path):
    _synth(tmp_path / "corpus")
    code = main(["split", "--scores", str(tmp_path / "corpus" / "manifest.jsonl"), "--out", str(tmp_path / "p.jsonl")])
    assert code == 2


@pytest.mark.integration
def test_pipeline(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    scores, split, aug = tmp_path / "work" / "scores.jsonl", tmp_path / "work" / "split.jsonl", tmp_path / "aug"
    model, report, hist = tmp_path / "model.txt", tmp_path / "report.json", tmp_path / "hist.csv"

    assert _synth(corpus) == 0
    assert main(["score", "--manifest", str(corpus / "manifest.jsonl"), "--out", str(scores)]) == 0
    assert all(r.sharpness is not None for r in load_manifest(scores).records)

    assert main(["split", "--scores", str(scores), "--out", str(split)]) == 0
    assert "threshold " in capsys.readouterr().out
    partitioned = load_manifest(split)
    assert all(r.partition is not None for r in partitioned.records)
    assert all(partitioned.resolve(r).exists() for r in partitioned.records)

    assert main(["augment", "--manifest", str(split), "--out-dir", str(aug), "--seed", "1"]) == 0
    counterparts = load_manifest(aug / "manifest.jsonl")
    assert len(counterparts) == len(partitioned)
    assert all(counterparts.resolve(r).exists() for r in counterparts.records)

    assert main(["train", "--manifest", str(split), "--antithetical", str(aug / "manifest.jsonl"),
                 "--out", str(model), "--seed", "3"] + TINY_NET) == 0
    assert load_model(model).config.num_identities == 4
    history = pd.read_csv(tmp_path / "model.txt.history.csv")
    assert len(history) == 1

    assert main(["eval", "--model", str(model), "--query", str(split), "--gallery", str(split),
                 "--report", str(report)]) == 0
    result = read_report(report)
    assert result.num_queries == 16
    assert set(json.loads(report.read_text())) >= {"cmc", "map", "num_queries"}

    assert main(["analyze-triplets", "--model", str(model), "--manifest", str(split), "--out", str(hist)]) == 0
    assert list(pd.read_csv(hist).columns) == HISTOGRAM_COLUMNS
    assert list(pd.read_csv(tmp_path / "hist_resolution.csv").columns) == RESOLUTION_COLUMNS


@pytest.mark.integration
def test_train_and_augment_are_deterministic(tmp_path):
    _synth(tmp_path / "corpus")
    manifest = str(tmp_path / "corpus" / "manifest.jsonl")
    main(["score", "--manifest", manifest, "--out", str(tmp_path / "s.jsonl")])
    main(["split", "--scores", str(tmp_path / "s.jsonl"), "--out", str(tmp_path / "p.jsonl")])
    for name in ("a", "b"):
        assert main(["augment", "--manifest", str(tmp_path / "p.jsonl"), "--out-dir", str(tmp_path / f"aug_{name}"),
                     "--seed", "5", "--threads", "2"]) == 0
        assert main(["train", "--manifest", manifest, "--out", str(tmp_path / f"{name}.txt"),
                     "--seed", "2"] + TINY_NET) == 0
    assert _tree(tmp_path / "aug_a") == _tree(tmp_path / "aug_b")
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()


def test_triplets_need_trihard(tmp_path, capsys):
    code = main(["train", "--manifest", str(tmp_path / "m.jsonl"), "--out", str(tmp_path / "model.txt"),
                 "--seed", "1", "--triplets", str(tmp_path / "t.csv")])
    assert code == 1
    assert "trihard" in capsys.readouterr().err


@pytest.mark.integration
def test_train_writes_mined_triplets(tmp_path):
    _synth(tmp_path / "corpus")
    corpus = str(tmp_path / "corpus" / "manifest.jsonl")
    split = str(tmp_path / "p.jsonl")
    assert main(["score", "--manifest", corpus, "--out", str(tmp_path / "s.jsonl")]) == 0
    assert main(["split", "--scores", str(tmp_path / "s.jsonl"), "--out", split]) == 0

    triplets = tmp_path / "triplets.csv"
    assert main(["train", "--manifest", split, "--out", str(tmp_path / "model.txt"), "--seed", "3",
                 "--loss", "softmax+trihard", "--triplets", str(triplets)] + TINY_NET) == 0
    frame = pd.read_csv(triplets)
    assert list(frame.columns) == HISTOGRAM_COLUMNS
    assert frame[["count_HR", "count_LR"]].to_numpy().sum() > 0

    # unpartitioned pool
    assert main(["train", "--manifest", corpus, "--out", str(tmp_path / "raw.txt"), "--seed", "3",
                 "--loss", "softmax+trihard", "--triplets", str(tmp_path / "raw.csv")] + TINY_NET) == 2
