"""2-D DFT magnitudes and the centering shift consumed by the sharpness metric."""
import numpy as np

from ..models.image import Image, MagnitudeGrid


def dft2d_magnitude_plane(plane: np.ndarray) -> np.ndarray:
    """|F(u, v)| of a float plane, via numpy's FFT."""
    return np.abs(np.fft.fft2(np.asarray(plane, dtype=np.float64)))


def dft2d_magnitude(img: Image) -> MagnitudeGrid:
    if img.channels != 1:
        raise ValueError("dft2d_magnitude expects a single-channel image; convert with to_grayscale")
    return MagnitudeGrid(values=dft2d_magnitude_plane(img.pixels))


def center_shift(grid: MagnitudeGrid) -> MagnitudeGrid:
    """Move (u, v) to ((u + h//2) mod h, (v + w//2) mod w)."""
    return MagnitudeGrid(values=np.fft.fftshift(grid.values))
