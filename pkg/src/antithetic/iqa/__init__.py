"""No-reference sharpness metric and HR/LR partitioning."""
from .partition import partition, sharpness_summary, split_threshold
from .sharpness import score_manifest, sharpness, sharpness_of_plane

__all__ = ['partition', 'sharpness_summary', 'split_threshold', 'score_manifest', 'sharpness', 'sharpness_of_plane']
