"""Training-time augmentation: RandomErasing."""
import math

import numpy as np

from ..constants import (
    ERASE_AREA_HIGH,
    ERASE_AREA_LOW,
    ERASE_ASPECT_HIGH,
    ERASE_ASPECT_LOW,
    ERASE_MAX_ATTEMPTS,
    ERASE_PROBABILITY,
)
from ..models.image import Image


def random_erase(
    img: Image,
    rng: np.random.Generator,
    probability: float = ERASE_PROBABILITY,
    area_low: float = ERASE_AREA_LOW,
    area_high: float = ERASE_AREA_HIGH,
    aspect_low: float = ERASE_ASPECT_LOW,
    aspect_high: float = ERASE_ASPECT_HIGH,
) -> Image:
    """Fill a random rectangle with uniform noise with the given probability.

    The rectangle's area ratio is drawn from U(area_low, area_high) and its
    aspect ratio from U(aspect_low, aspect_high); draws that do not fit are
    retried up to ERASE_MAX_ATTEMPTS times, after which the image is returned
    unchanged.
    """
    if rng.random() >= probability:
        return img
    area = img.height * img.width
    for _ in range(ERASE_MAX_ATTEMPTS):
        target_area = rng.uniform(area_low, area_high) * area
        aspect = rng.uniform(aspect_low, aspect_high)
        h = int(round(math.sqrt(target_area * aspect)))
        w = int(round(math.sqrt(target_area / aspect)))
        if 1 <= h < img.height and 1 <= w < img.width:
            top = int(rng.integers(0, img.height - h + 1))
            left = int(rng.integers(0, img.width - w + 1))
            pixels = img.pixels.copy()
            pixels[top:top + h, left:left + w] = rng.integers(
                0, 256, size=pixels[top:top + h, left:left + w].shape, dtype=np.uint8
            )
            return Image(pixels=pixels)
    return img
