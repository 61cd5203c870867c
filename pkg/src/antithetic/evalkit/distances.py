"""Mean pairwise distances within identities, across identities and between centers."""
from typing import Optional, Sequence, Tuple

import numpy as np

from ..exceptions import InsufficientPairsError
from ..metric_core.cosine import cosine_matrix
from ..models.metric import CenterBank
from ..models.records import PartitionLabel
from ..models.reports import DistanceCell, ResolutionDistanceRow, ResolutionDistanceTable

RESOLUTION_CATEGORIES = ("HR-HR", "LR-LR", "cross")


def _pairwise(features: np.ndarray) -> np.ndarray:
    features = np.asarray(features, dtype=np.float64)
    return 1.0 - cosine_matrix(features, features)


def _mean_or_raise(values: np.ndarray, statistic: str) -> float:
    if values.size == 0:
        raise InsufficientPairsError(statistic)
    return float(np.mean(values))


def distance_stats(
    features: np.ndarray,
    labels: Sequence[int],
    centers: Optional[CenterBank] = None,
) -> Tuple[float, float, Optional[float]]:
    """(d_intra, d_inter, d_centers) as means of 1 - cos over unordered pairs.

    ``d_centers`` is None when no center bank is given.

    Raises:
        InsufficientPairsError: Naming the statistic that has no pairs
    """
    labels = np.asarray(labels)
    distances = _pairwise(features)
    upper = np.triu(np.ones(distances.shape, dtype=bool), k=1)
    same = labels[:, None] == labels[None, :]
    d_intra = _mean_or_raise(distances[upper & same], "d_intra")
    d_inter = _mean_or_raise(distances[upper & ~same], "d_inter")
    d_centers = None
    if centers is not None:
        center_distances = _pairwise(centers.centers)
        k = center_distances.shape[0]
        d_centers = _mean_or_raise(center_distances[np.triu_indices(k, 1)], "d_centers")
    return d_intra, d_inter, d_centers


def _cell(values: np.ndarray) -> DistanceCell:
    if values.size == 0:
        return DistanceCell()
    return DistanceCell(mean=float(np.mean(values)), pairs=int(values.size))


def distance_by_resolution(
    features: np.ndarray,
    labels: Sequence[int],
    bins: Sequence[PartitionLabel],
) -> ResolutionDistanceTable:
    """Intra/inter-identity mean distances for HR-HR, LR-LR and cross-resolution pairs.

    Cells without pairs have no mean.
    """
    labels = np.asarray(labels)
    is_hr = np.asarray([PartitionLabel(b) is PartitionLabel.HR for b in bins])
    distances = _pairwise(features)
    upper = np.triu(np.ones(distances.shape, dtype=bool), k=1)
    same = labels[:, None] == labels[None, :]
    categories = {
        "HR-HR": is_hr[:, None] & is_hr[None, :],
        "LR-LR": ~is_hr[:, None] & ~is_hr[None, :],
        "cross": is_hr[:, None] != is_hr[None, :],
    }
    rows = []
    for name in RESOLUTION_CATEGORIES:
        mask = upper & categories[name]
        rows.append(ResolutionDistanceRow(
            category=name,
            intra=_cell(distances[mask & same]),
            inter=_cell(distances[mask & ~same]),
        ))
    return ResolutionDistanceTable(rows=rows)
