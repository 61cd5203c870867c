"""Comparison tables: loss functions, training-data fusion and CCL weights.

Each experiment trains one model per setting with the same TrainConfig seed
and evaluates it on the same query/gallery split.
"""
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

import pandas as pd

from ..constants import LOSS_MODES
from ..dataset.antithetical import generate_antithetical, select_partition
from ..models.configs import AugmentConfig, FusionStrategy, ModelConfig, TrainConfig
from ..models.records import Manifest, PartitionLabel
from ..trainer.training import train
from .evaluate import evaluate_model

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ["setting", "rank1", "map", "d_intra", "d_inter", "d_centers"]


def _run(
    setting: str,
    cfg: TrainConfig,
    original: Manifest,
    antithetical: Optional[Manifest],
    query: Manifest,
    gallery: Manifest,
    model_cfg: Optional[ModelConfig],
    threads: Optional[int],
) -> Dict[str, object]:
    result = train(cfg, original, antithetical, model_cfg=model_cfg, threads=threads)
    report = evaluate_model(result.model, query, gallery, threads)
    logger.info(f"{setting}: rank-1 {report.rank1:.4f}, mAP {report.map:.4f}")
    return {
        "setting": setting,
        "rank1": report.rank1,
        "map": report.map,
        "d_intra": report.d_intra,
        "d_inter": report.d_inter,
        "d_centers": report.d_centers,
    }


def compare_losses(
    original: Manifest,
    query: Manifest,
    gallery: Manifest,
    cfg: TrainConfig,
    antithetical: Optional[Manifest] = None,
    modes: Optional[Sequence[str]] = None,
    model_cfg: Optional[ModelConfig] = None,
    threads: Optional[int] = 1,
) -> pd.DataFrame:
    """One row per loss mode (softmax, +center, +CCL, +trihard)."""
    rows = []
    for mode in modes or LOSS_MODES:
        mode_cfg = cfg.model_copy(update={"loss_mode": mode, "checkpoint": None})
        rows.append(_run(mode, mode_cfg, original, antithetical, query, gallery, model_cfg, threads))
    return pd.DataFrame(rows, columns=RESULT_COLUMNS)


def compare_fusion(
    original: Manifest,
    query: Manifest,
    gallery: Manifest,
    cfg: TrainConfig,
    work_dir: Union[str, Path],
    augment_seed: int,
    model_cfg: Optional[ModelConfig] = None,
    threads: Optional[int] = 1,
) -> pd.DataFrame:
    """Training-data rows D_o, D_o + D_a(LR), D_o + D_a(HR), D_o + D_a and the
    two single-transform fusion alternatives.

    ``original`` must be partitioned. Companion sets are written below
    ``work_dir``, one directory per fusion strategy.
    """
    work_dir = Path(work_dir)
    cfg = cfg.model_copy(update={"checkpoint": None})
    companions = {
        strategy: generate_antithetical(
            original,
            AugmentConfig(seed=augment_seed, fusion=strategy),
            work_dir / strategy.value,
            threads,
        )
        for strategy in FusionStrategy
    }
    anti = companions[FusionStrategy.ANTITHETICAL]
    settings = [
        ("D_o", None),
        ("D_o + D_a(LR)", select_partition(anti, PartitionLabel.LR)),
        ("D_o + D_a(HR)", select_partition(anti, PartitionLabel.HR)),
        ("D_o + D_a", anti),
        ("D_o + enhance_all", companions[FusionStrategy.ENHANCE_ALL]),
        ("D_o + downsample_all", companions[FusionStrategy.DOWNSAMPLE_ALL]),
    ]
    rows = [_run(name, cfg, original, companion, query, gallery, model_cfg, threads) for name, companion in settings]
    return pd.DataFrame(rows, columns=RESULT_COLUMNS)


def sweep_weights(
    original: Manifest,
    query: Manifest,
    gallery: Manifest,
    cfg: TrainConfig,
    alphas: Iterable[float],
    betas: Iterable[float],
    antithetical: Optional[Manifest] = None,
    model_cfg: Optional[ModelConfig] = None,
    threads: Optional[int] = 1,
) -> pd.DataFrame:
    """softmax+ccl over an (alpha, beta) grid."""
    betas = list(betas)
    rows: List[Dict[str, object]] = []
    for alpha in alphas:
        for beta in betas:
            weights = cfg.weights.model_copy(update={"alpha": alpha, "beta": beta})
            grid_cfg = cfg.model_copy(update={"loss_mode": "softmax+ccl", "weights": weights, "checkpoint": None})
            row = _run(f"alpha={alpha:g},beta={beta:g}", grid_cfg, original, antithetical,
                       query, gallery, model_cfg, threads)
            rows.append({"alpha": alpha, "beta": beta, **row})
    return pd.DataFrame(rows, columns=["alpha", "beta"] + RESULT_COLUMNS)
