"""Mean-threshold HR/LR split and per-subset sharpness statistics."""
import logging
from typing import Optional, Sequence

import numpy as np

from ..exceptions import UnscoredRecordError
from ..models.records import Manifest, PartitionLabel
from ..models.reports import SharpnessSummary

logger = logging.getLogger(__name__)


def split_threshold(scores: Sequence[float]) -> float:
    """Arithmetic mean of the scores."""
    if len(scores) == 0:
        raise ValueError("cannot compute a threshold from an empty score sequence")
    return float(np.mean(np.asarray(scores, dtype=np.float64)))


def partition(manifest: Manifest, threshold: float) -> Manifest:
    """Label records HR when their score exceeds the threshold, LR otherwise.

    Ties go to LR.
    """
    records = []
    for record in manifest.records:
        if record.sharpness is None:
            raise UnscoredRecordError(record.path)
        label = PartitionLabel.HR if record.sharpness > threshold else PartitionLabel.LR
        records.append(record.model_copy(update={"partition": label}))
    result = manifest.with_records(records)
    hr = sum(1 for r in records if r.partition is PartitionLabel.HR)
    logger.info(f"Partitioned {len(records)} records at {threshold:.6f}: {hr} HR, {len(records) - hr} LR")
    return result


def sharpness_summary(manifest: Manifest, label: Optional[PartitionLabel] = None) -> SharpnessSummary:
    """Count, mean and median of the scores, optionally for one partition."""
    records = manifest.records if label is None else [r for r in manifest.records if r.partition == label]
    scores = []
    for record in records:
        if record.sharpness is None:
            raise UnscoredRecordError(record.path)
        scores.append(record.sharpness)
    if not scores:
        return SharpnessSummary(num=0)
    values = np.asarray(scores, dtype=np.float64)
    return SharpnessSummary(num=len(scores), mean=float(values.mean()), median=float(np.median(values)))
