"""Manifests, antithetical set generation, enhancers and the synthetic corpus."""
from .antithetical import downsample_counterpart, draw_downsample_factor, generate_antithetical, select_partition
from .enhancers import enhance_classical, enhance_external, enhance_external_async, enhance_external_many
from .manifest_io import load_manifest, save_manifest
from .synthetic import MANIFEST_NAME, SyntheticCorpus, synth_corpus

__all__ = [
    'downsample_counterpart', 'draw_downsample_factor', 'generate_antithetical', 'select_partition',
    'enhance_classical', 'enhance_external', 'enhance_external_async', 'enhance_external_many',
    'load_manifest', 'save_manifest', 'MANIFEST_NAME', 'SyntheticCorpus', 'synth_corpus',
]
