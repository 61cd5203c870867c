"""Cross-resolution person re-identification toolkit."""
from .antithetic.dataset import generate_antithetical, load_manifest
from .antithetic.evalkit import evaluate_model
from .antithetic.iqa import score_manifest, sharpness
from .antithetic.models import Manifest, SampleRecord, TrainConfig
from .antithetic.trainer import train

__all__ = [
    'generate_antithetical', 'load_manifest', 'evaluate_model', 'score_manifest', 'sharpness',
    'Manifest', 'SampleRecord', 'TrainConfig', 'train',
]
