"""Embedding network, SGD schedule, batch sampling and training."""
from .checkpoint import load_model, save_model
from .network import EmbeddingNet, backward, forward, init_model, project_centers
from .sampler import pk_sample, pk_sample_labels, shuffled_batches
from .schedule import lr_at
from .step import SGD, network_gradcheck, objective_and_gradients, train_step
from .training import (
    TrainResult,
    embed,
    embed_manifest,
    history_frame,
    prepare_image,
    save_history,
    to_inputs,
    train,
)

__all__ = [
    'load_model', 'save_model', 'EmbeddingNet', 'backward', 'forward', 'init_model', 'project_centers',
    'pk_sample', 'pk_sample_labels', 'shuffled_batches', 'lr_at', 'SGD', 'network_gradcheck',
    'objective_and_gradients', 'train_step', 'TrainResult', 'embed', 'embed_manifest',
    'history_frame', 'prepare_image', 'save_history', 'to_inputs', 'train',
]
