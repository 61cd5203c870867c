"""Single-query ranking metrics (CMC and mAP) with junk exclusion."""
import logging
from typing import Dict, Optional, Sequence

import numpy as np

from ..metric_core.cosine import cosine_matrix
from ..models.records import PartitionLabel
from ..models.reports import EvalReport

logger = logging.getLogger(__name__)


def distance_matrix(queries: np.ndarray, gallery: np.ndarray) -> np.ndarray:
    """d(i, j) = 1 - cos(q_i, g_j), values in [0, 2]."""
    queries = np.asarray(queries, dtype=np.float64)
    gallery = np.asarray(gallery, dtype=np.float64)
    if queries.ndim != 2 or gallery.ndim != 2 or queries.shape[1] != gallery.shape[1]:
        raise ValueError(f"feature widths differ: {queries.shape} vs {gallery.shape}")
    return 1.0 - cosine_matrix(queries, gallery)


def average_precision(matches: np.ndarray) -> float:
    """Mean precision at each relevant rank position; ``matches`` must hold a hit."""
    hits = 0
    total = 0.0
    for position, hit in enumerate(matches):
        if hit:
            hits += 1
            total += hits / (position + 1)
    return total / hits


def cmc_map(
    dm: np.ndarray,
    q_ids: Sequence[int],
    g_ids: Sequence[int],
    q_cams: Sequence[int],
    g_cams: Sequence[int],
    max_rank: Optional[int] = None,
) -> EvalReport:
    """CMC curve and mAP of a Q x G distance matrix.

    Gallery entries sharing both identity and camera with the query are
    dropped; the rest are ranked by ascending distance with ties broken by
    gallery index. Queries left without a correct match are counted in
    ``skipped_queries`` and excluded from the averages.
    """
    dm = np.asarray(dm, dtype=np.float64)
    q_ids, g_ids = np.asarray(q_ids), np.asarray(g_ids)
    q_cams, g_cams = np.asarray(q_cams), np.asarray(g_cams)
    num_q, num_g = dm.shape
    if len(q_ids) != num_q or len(q_cams) != num_q or len(g_ids) != num_g or len(g_cams) != num_g:
        raise ValueError("identity and camera vectors must match the distance matrix")
    max_rank = num_g if max_rank is None else max_rank
    hits_at = np.zeros(max_rank, dtype=np.int64)
    ap_total = 0.0
    valid = 0
    for i in range(num_q):
        order = np.argsort(dm[i], kind="stable")
        junk = (g_ids[order] == q_ids[i]) & (g_cams[order] == q_cams[i])
        matches = g_ids[order][~junk] == q_ids[i]
        if not matches.any():
            continue
        first = int(np.argmax(matches))
        if first < max_rank:
            hits_at[first:] += 1
        ap_total += average_precision(matches)
        valid += 1
    skipped = num_q - valid
    if skipped:
        logger.warning(f"{skipped} of {num_q} queries have no valid gallery match")
    if valid == 0:
        return EvalReport(cmc=[0.0] * max_rank, map=0.0, num_queries=num_q, skipped_queries=skipped)
    return EvalReport(
        cmc=[int(count) / valid for count in hits_at],
        map=ap_total / valid,
        num_queries=num_q,
        skipped_queries=skipped,
    )


def probe_breakdown(
    dm: np.ndarray,
    q_ids: Sequence[int],
    g_ids: Sequence[int],
    q_cams: Sequence[int],
    g_cams: Sequence[int],
    q_bins: Sequence[PartitionLabel],
    max_rank: Optional[int] = None,
) -> Dict[str, EvalReport]:
    """Reports for the LR probes, the HR probes and all probes against the full gallery.

    A bin without queries has no entry.
    """
    dm = np.asarray(dm, dtype=np.float64)
    q_ids, q_cams = np.asarray(q_ids), np.asarray(q_cams)
    bins = np.asarray([PartitionLabel(b).value for b in q_bins])
    reports: Dict[str, EvalReport] = {}
    for label in (PartitionLabel.LR, PartitionLabel.HR):
        rows = np.flatnonzero(bins == label.value)
        if rows.size == 0:
            logger.warning(f"No {label.value} probes in the query set")
            continue
        reports[label.value] = cmc_map(dm[rows], q_ids[rows], g_ids, q_cams[rows], g_cams, max_rank)
    reports["ALL"] = cmc_map(dm, q_ids, g_ids, q_cams, g_cams, max_rank)
    return reports
