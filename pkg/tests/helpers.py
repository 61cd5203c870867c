import numpy as np

from src.antithetic.models.image import Image


def textured_image(rng: np.random.Generator, height: int = 24, width: int = 16, channels: int = 1) -> Image:
    """Two-pixel 60/190 checkerboard with uniform noise of +-40."""
    rows, cols = np.indices((height, width))
    board = np.where(((rows // 2) + (cols // 2)) % 2 == 0, 60.0, 190.0)
    shape = (height, width) if channels == 1 else (height, width, channels)
    if channels != 1:
        board = np.repeat(board[:, :, None], channels, axis=2)
    noisy = board + rng.uniform(-40.0, 40.0, size=shape)
    return Image(pixels=np.clip(np.floor(noisy + 0.5), 0, 255).astype(np.uint8))
