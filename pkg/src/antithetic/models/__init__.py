"""Antithetical ReID data models."""
from .configs import AugmentConfig, FusionStrategy, LossWeights, ModelConfig, SynthConfig, TrainConfig
from .image import Image, MagnitudeGrid, ResampleFilter
from .metric import CenterBank, EmbeddingBatch, LossOutput
from .records import Manifest, Origin, PartitionLabel, SampleRecord
from .reports import (
    EpochRecord,
    EvalReport,
    ResolutionDistanceTable,
    SelectionHistogram,
    SharpnessSummary,
    TrainHistory,
)

__all__ = [
    'AugmentConfig', 'FusionStrategy', 'LossWeights', 'ModelConfig', 'SynthConfig', 'TrainConfig',
    'Image', 'MagnitudeGrid', 'ResampleFilter',
    'CenterBank', 'EmbeddingBatch', 'LossOutput',
    'Manifest', 'Origin', 'PartitionLabel', 'SampleRecord',
    'EpochRecord', 'EvalReport', 'ResolutionDistanceTable', 'SelectionHistogram',
    'SharpnessSummary', 'TrainHistory',
]
