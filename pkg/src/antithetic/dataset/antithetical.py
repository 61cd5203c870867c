"""Antithetical training-set generation.

Every original record yields exactly one counterpart of the opposite
resolution class: HR images are randomly downsampled and rescaled to their
original size, LR images are enhanced. Each record gets its own random
stream seeded by (seed, index), so output does not depend on scheduling.
"""
import asyncio
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple, Union

import numpy as np

from ..exceptions import UnscoredRecordError
from ..imaging.pnm import load_image, save_image
from ..imaging.transforms import resize
from ..models.configs import AugmentConfig, FusionStrategy
from ..models.image import Image, ResampleFilter
from ..models.records import Manifest, Origin, PartitionLabel, SampleRecord
from .enhancers import enhance_classical, enhance_external_many

logger = logging.getLogger(__name__)


def draw_downsample_factor(rng: np.random.Generator, cfg: AugmentConfig) -> float:
    return float(rng.uniform(cfg.factor_low, cfg.factor_high))


def downsample_counterpart(img: Image, rng: np.random.Generator, cfg: AugmentConfig) -> Image:
    """Shrink by u ~ U(factor_low, factor_high), then rescale to the original size."""
    if img.height < 2 or img.width < 2:
        raise ValueError(f"image must be at least 2x2, got {img.height}x{img.width}")
    u = draw_downsample_factor(rng, cfg)
    small_h = max(1, int(math.floor(img.height * u + 0.5)))
    small_w = max(1, int(math.floor(img.width * u + 0.5)))
    small = resize(img, small_h, small_w, ResampleFilter.BILINEAR)
    return resize(small, img.height, img.width, ResampleFilter.BILINEAR)


def _counterpart_paths(records: List[SampleRecord]) -> List[Path]:
    """Distinct output paths relative to the output directory, one per record.

    Relative paths keep their directories minus parent references; absolute
    paths keep only their file name. A name already taken gets the record
    index appended.
    """
    taken: Set[Path] = set()
    paths: List[Path] = []
    for index, record in enumerate(records):
        original = Path(record.path)
        suffix = original.suffix or ".pgm"
        kept: Tuple[str, ...] = ()
        if not original.is_absolute():
            kept = tuple(part for part in original.parent.parts if part not in ("..", "."))
        relative = Path(*kept, f"{original.stem}_anti{suffix}")
        if relative in taken:
            relative = Path(*kept, f"{original.stem}_anti_{index}{suffix}")
        taken.add(relative)
        paths.append(relative)
    return paths


def _transform_for(record: SampleRecord, fusion: FusionStrategy) -> PartitionLabel:
    """Resolution class of the counterpart, which also decides the transformation."""
    if fusion is FusionStrategy.ENHANCE_ALL:
        return PartitionLabel.HR
    if fusion is FusionStrategy.DOWNSAMPLE_ALL:
        return PartitionLabel.LR
    if record.partition is None:
        raise UnscoredRecordError(record.path, missing="partition")
    return record.partition.opposite


def generate_antithetical(
    manifest: Manifest,
    cfg: AugmentConfig,
    out_dir: Union[str, Path],
    threads: Optional[int] = 1,
) -> Manifest:
    """Write one counterpart image per original record and return their manifest.

    Raises:
        UnscoredRecordError: A record lacks its partition under the antithetical strategy
        OSError: If ``out_dir`` is not writable
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    targets = [_transform_for(record, cfg.fusion) for record in manifest.records]
    relatives = _counterpart_paths(manifest.records)
    workers = max(1, threads or 1)
    enhanced: Dict[int, Image] = {}
    if cfg.external_program is not None:
        wanted = [index for index, target in enumerate(targets) if target is PartitionLabel.HR]
        sources = [manifest.resolve(manifest.records[index]) for index in wanted]
        logger.info(f"Enhancing {len(sources)} images with {cfg.external_program} ({workers} at a time)")
        results = asyncio.run(enhance_external_many(sources, cfg.external_program, limit=workers))
        enhanced = dict(zip(wanted, results))

    def _one(index: int) -> SampleRecord:
        record = manifest.records[index]
        target = targets[index]
        source = manifest.resolve(record)
        if target is PartitionLabel.LR:
            rng = np.random.default_rng([cfg.seed, index])
            result = downsample_counterpart(load_image(source), rng, cfg)
        elif index in enhanced:
            result = enhanced[index]
        else:
            result = enhance_classical(load_image(source))
        relative = relatives[index]
        destination = out_dir / relative
        destination.parent.mkdir(parents=True, exist_ok=True)
        save_image(result, destination)
        return SampleRecord(
            path=relative.as_posix(),
            identity=record.identity,
            camera=record.camera,
            partition=target,
            origin=Origin.ANTITHETICAL,
            counterpart=record.path,
        )

    with ThreadPoolExecutor(max_workers=workers) as pool:
        records = list(pool.map(_one, range(len(manifest.records))))
    hr = sum(1 for r in records if r.partition is PartitionLabel.HR)
    logger.info(
        f"Generated {len(records)} counterparts in {out_dir} ({cfg.fusion.value}): "
        f"{hr} enhanced, {len(records) - hr} downsampled"
    )
    return Manifest(records=records, root=out_dir)


def select_partition(manifest: Manifest, label: Optional[PartitionLabel]) -> Manifest:
    """Restrict a manifest to one resolution class; None keeps everything."""
    if label is None:
        return manifest
    return manifest.by_partition(label)
