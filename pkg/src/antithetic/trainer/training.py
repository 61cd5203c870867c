"""Training orchestration over the original set and an optional antithetical set."""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..exceptions import IdentitySpaceError, ImageFormatError, UnreadableImageError
from ..imaging.augment import random_erase
from ..imaging.pnm import load_image
from ..imaging.transforms import hflip, resize, to_grayscale
from ..models.configs import ModelConfig, TrainConfig
from ..models.image import Image, ResampleFilter
from ..models.records import Manifest, PartitionLabel
from ..models.reports import EpochRecord, TrainHistory
from .checkpoint import save_model
from .network import EmbeddingNet, forward, init_model
from .sampler import pk_sample_labels, shuffled_batches
from .schedule import lr_at
from .step import SGD, train_step

logger = logging.getLogger(__name__)

HISTORY_COLUMNS = ["epoch", "lr", "ce", "intra", "inter", "trihard", "total", "seconds"]


Triplet = Tuple[int, int, int]


class TrainResult(NamedTuple):
    """Trained model and what happened on the way.

    ``selected_triplets`` holds every (anchor, positive, negative) picked by
    batch-hard mining over all epochs, as indices into the training pool
    (original records first, then antithetical ones); ``pool_bins`` gives the
    partition label of each pool entry, None when unpartitioned.
    """
    model: EmbeddingNet
    history: TrainHistory
    identities: List[int]
    selected_triplets: List[Triplet] = []
    pool_bins: List[Optional[PartitionLabel]] = []


def prepare_image(img: Image, input_dims: Tuple[int, int]) -> Image:
    """Grayscale, then bilinear resize to the network input size."""
    gray = to_grayscale(img)
    if (gray.height, gray.width) == tuple(input_dims):
        return gray
    return resize(gray, input_dims[0], input_dims[1], ResampleFilter.BILINEAR)


def to_inputs(images: Sequence[Image]) -> np.ndarray:
    """Stack prepared images into a (B, h*w) float64 grid scaled to [0, 1]."""
    return np.stack([img.pixels.astype(np.float64).ravel() / 255.0 for img in images])


def embed(model: EmbeddingNet, images: Sequence[Image]) -> np.ndarray:
    """Embeddings (last rectified layer) of raw images."""
    if not images:
        return np.zeros((0, model.config.embedding_dim))
    prepared = [prepare_image(img, model.config.input_dims) for img in images]
    embeddings, _ = forward(model, to_inputs(prepared))
    return embeddings


def load_prepared(manifest: Manifest, input_dims: Tuple[int, int], threads: Optional[int] = 1) -> List[Image]:
    def _one(record) -> Image:
        path = manifest.resolve(record)
        try:
            return prepare_image(load_image(path), input_dims)
        except (OSError, ImageFormatError) as e:
            raise UnreadableImageError(path, e)

    with ThreadPoolExecutor(max_workers=max(1, threads or 1)) as pool:
        return list(pool.map(_one, manifest.records))


def embed_manifest(model: EmbeddingNet, manifest: Manifest, threads: Optional[int] = 1) -> np.ndarray:
    """Embeddings of every record of ``manifest``, in manifest order."""
    prepared = load_prepared(manifest, model.config.input_dims, threads)
    if not prepared:
        return np.zeros((0, model.config.embedding_dim))
    embeddings, _ = forward(model, to_inputs(prepared))
    return embeddings


def _augment(img: Image, cfg: TrainConfig, rng: np.random.Generator) -> Image:
    if cfg.hflip and rng.random() < 0.5:
        img = hflip(img)
    if cfg.random_erase:
        img = random_erase(img, rng)
    return img


def _epoch_batches(labels: np.ndarray, cfg: TrainConfig, rng: np.random.Generator) -> List[List[int]]:
    layout = cfg.sampling(int(np.unique(labels).size))
    if layout is None:
        return shuffled_batches(len(labels), cfg.batch_size, rng)
    p, k = layout
    count = max(1, len(labels) // (p * k))
    return [pk_sample_labels(labels, p, k, rng) for _ in range(count)]


def _check_identity_space(original: Manifest, antithetical: Optional[Manifest]) -> List[int]:
    identities = original.identities()
    if antithetical is not None:
        unknown = set(antithetical.identities()) - set(identities)
        if unknown:
            raise IdentitySpaceError(unknown)
    return identities


def train(
    cfg: TrainConfig,
    original: Manifest,
    antithetical: Optional[Manifest] = None,
    model_cfg: Optional[ModelConfig] = None,
    threads: Optional[int] = 1,
) -> TrainResult:
    """Train an embedding network on D_o, or on D_o merged with D_a.

    Identities are mapped to class indices in ascending order. Images are
    decoded and resized once; augmentation is drawn per batch from the
    seeded stream, so the result only depends on (cfg, model_cfg, manifests).

    Raises:
        ValueError: If the training pool is empty
        IdentitySpaceError: If D_a names identities absent from D_o
        NonFiniteLossError: If the objective diverges
    """
    if len(original) == 0:
        raise ValueError("training pool is empty")
    identities = _check_identity_space(original, antithetical)
    class_of: Dict[int, int] = {identity: index for index, identity in enumerate(identities)}
    if model_cfg is None:
        model_cfg = ModelConfig(num_identities=len(identities), seed=cfg.seed)
    elif model_cfg.num_identities != len(identities):
        model_cfg = model_cfg.model_copy(update={"num_identities": len(identities)})

    sources = [original] if antithetical is None else [original, antithetical]
    images: List[Image] = []
    labels_list: List[int] = []
    pool_bins: List[Optional[PartitionLabel]] = []
    for manifest in sources:
        images.extend(load_prepared(manifest, model_cfg.input_dims, threads))
        labels_list.extend(class_of[record.identity] for record in manifest.records)
        pool_bins.extend(record.partition for record in manifest.records)
    labels = np.asarray(labels_list, dtype=np.int64)
    logger.info(
        f"Training {cfg.loss_mode} on {len(images)} images, {len(identities)} identities, {cfg.epochs} epochs"
    )

    model = init_model(model_cfg)
    optimizer = SGD(cfg.weight_decay, cfg.momentum)
    rng = np.random.default_rng(cfg.seed)
    history = TrainHistory()
    selected: List[Triplet] = []
    for epoch in range(cfg.epochs):
        started = time.perf_counter()
        lr = lr_at(epoch, cfg)
        totals = {name: 0.0 for name in HISTORY_COLUMNS[2:-1]}
        batches = _epoch_batches(labels, cfg, rng)
        for batch in batches:
            inputs = to_inputs([_augment(images[i], cfg, rng) for i in batch])
            loss = train_step(model, inputs, labels[batch], cfg, lr, optimizer)
            if loss.selected_triplets:
                selected.extend((batch[a], batch[p], batch[n]) for a, p, n in loss.selected_triplets)
            for name in totals:
                totals[name] += loss.components.get(name, 0.0)
        record = EpochRecord(
            epoch=epoch,
            lr=lr,
            seconds=time.perf_counter() - started,
            **{name: value / len(batches) for name, value in totals.items()},
        )
        history.records.append(record)
        logger.info(f"Epoch {epoch + 1}/{cfg.epochs}: lr={lr:.6g} total={record.total:.6f}")

    if cfg.checkpoint is not None:
        save_model(model, cfg.checkpoint)
    if selected:
        logger.info(f"Tracked {len(selected)} mined triplets")
    return TrainResult(model, history, identities, selected, pool_bins)


def history_frame(history: TrainHistory) -> pd.DataFrame:
    return pd.DataFrame([record.model_dump() for record in history.records], columns=HISTORY_COLUMNS)


def save_history(history: TrainHistory, path: Union[str, Path]) -> None:
    """Write the per-epoch history as CSV."""
    history_frame(history).to_csv(path, index=False, float_format="%.17g")
