"""Ranking metrics, distance analyses, selection histograms and comparison experiments."""
from .distances import RESOLUTION_CATEGORIES, distance_by_resolution, distance_stats
from .evaluate import evaluate_model
from .experiments import compare_fusion, compare_losses, sweep_weights
from .ranking import average_precision, cmc_map, distance_matrix, probe_breakdown
from .triplets import select_triplets, training_selection_histogram, triplet_histogram
from .writers import histogram_frame, read_report, resolution_frame, write_frame, write_report

__all__ = [
    'RESOLUTION_CATEGORIES', 'distance_by_resolution', 'distance_stats', 'evaluate_model',
    'compare_fusion', 'compare_losses', 'sweep_weights', 'average_precision', 'cmc_map',
    'distance_matrix', 'probe_breakdown', 'select_triplets', 'training_selection_histogram',
    'triplet_histogram',
    'histogram_frame', 'read_report', 'resolution_frame', 'write_frame', 'write_report',
]
