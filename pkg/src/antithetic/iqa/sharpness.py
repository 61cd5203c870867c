"""Frequency-domain no-reference sharpness metric.

The score of an image is the fraction of DFT magnitudes that reach one
thousandth of the largest magnitude. Counting over the centered spectrum or
the raw one gives the same result since centering only permutes entries.
Colour images are scored on their quantized 8-bit grayscale; the float
entry point ``sharpness_of_plane`` skips quantization.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional

import numpy as np

from ..constants import SHARPNESS_DIVISOR
from ..exceptions import BlackImageError, ImageFormatError, UnreadableImageError
from ..imaging.fourier import dft2d_magnitude_plane
from ..imaging.pnm import load_image
from ..imaging.transforms import to_grayscale
from ..models.image import Image
from ..models.records import Manifest, SampleRecord

logger = logging.getLogger(__name__)


def sharpness_of_plane(plane: np.ndarray) -> float:
    """Sharpness of a grayscale float plane.

    Raises:
        BlackImageError: If every magnitude is zero
    """
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2 or plane.size == 0:
        raise ValueError(f"expected a non-empty 2-D plane, got shape {plane.shape}")
    magnitudes = dft2d_magnitude_plane(plane)
    tau = magnitudes.max()
    if tau == 0:
        raise BlackImageError()
    count = np.count_nonzero(magnitudes >= tau / SHARPNESS_DIVISOR)
    return count / plane.size


def sharpness(img: Image) -> float:
    """Sharpness of an image; colour images are scored on their 8-bit grayscale."""
    return sharpness_of_plane(to_grayscale(img).pixels)


def _score_record(manifest: Manifest, record: SampleRecord) -> SampleRecord:
    path = manifest.resolve(record)
    try:
        img = load_image(path)
    except (OSError, ImageFormatError) as e:
        raise UnreadableImageError(path, e)
    try:
        value = sharpness(img)
    except BlackImageError:
        raise BlackImageError(path)
    return record.model_copy(update={"sharpness": value})


def score_manifest(manifest: Manifest, threads: Optional[int] = 1) -> Manifest:
    """Attach a sharpness score to every record, preserving order.

    Raises:
        UnreadableImageError: Naming the first image that cannot be loaded
        BlackImageError: Naming an all-zero image
    """
    workers = max(1, threads or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        scored = list(pool.map(lambda r: _score_record(manifest, r), manifest.records))
    logger.info(f"Scored {len(scored)} images under {manifest.root}")
    return manifest.with_records(scored)
