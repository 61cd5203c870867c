"""End-to-end evaluation of a trained model on query/gallery manifests."""
import logging
from typing import Optional

from ..exceptions import InsufficientPairsError
from ..models.metric import CenterBank
from ..models.records import Manifest
from ..models.reports import EvalReport
from ..trainer.network import EmbeddingNet
from ..trainer.training import embed_manifest
from .distances import distance_stats
from .ranking import cmc_map, distance_matrix, probe_breakdown

logger = logging.getLogger(__name__)


def evaluate_model(
    model: EmbeddingNet,
    query: Manifest,
    gallery: Manifest,
    threads: Optional[int] = 1,
) -> EvalReport:
    """Rank the gallery for every query and attach the distance statistics.

    The probe breakdown is included when every query record carries a
    partition. Distance statistics are computed on the gallery embeddings and
    left empty when a statistic has no pairs.
    """
    if len(query) == 0 or len(gallery) == 0:
        raise ValueError("query and gallery must both be non-empty")
    q_features = embed_manifest(model, query, threads)
    g_features = embed_manifest(model, gallery, threads)
    q_ids = [r.identity for r in query.records]
    g_ids = [r.identity for r in gallery.records]
    q_cams = [r.camera for r in query.records]
    g_cams = [r.camera for r in gallery.records]
    dm = distance_matrix(q_features, g_features)

    if all(r.partition is not None for r in query.records):
        breakdown = probe_breakdown(dm, q_ids, g_ids, q_cams, g_cams, [r.partition for r in query.records])
        report = breakdown["ALL"]
        report.probe_breakdown = {k: v for k, v in breakdown.items() if k != "ALL"}
    else:
        report = cmc_map(dm, q_ids, g_ids, q_cams, g_cams)

    try:
        report.d_intra, report.d_inter, report.d_centers = distance_stats(
            g_features, g_ids, CenterBank(centers=model.centers)
        )
    except InsufficientPairsError as e:
        logger.warning(f"Distance statistics unavailable: {e}")
    logger.info(f"rank-1 {report.rank1:.4f}, mAP {report.map:.4f} over {report.num_queries} queries")
    return report
