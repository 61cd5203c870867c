"""Pixel-domain transforms: grayscale, resampling, Gaussian blur, flipping.

All intermediate arithmetic is float64; results are clamped to [0, 255] and
rounded half-up back to 8 bits.
"""
import math
from typing import Tuple

import numpy as np

from ..constants import LUMA_WEIGHTS
from ..models.image import Image, ResampleFilter


def quantize(values: np.ndarray) -> np.ndarray:
    """Clamp to [0, 255] and round half-up to uint8."""
    return np.floor(np.clip(values, 0.0, 255.0) + 0.5).astype(np.uint8)


def to_float_plane(img: Image) -> np.ndarray:
    """Grayscale intensities as a float64 (h, w) array, without quantizing."""
    if img.channels == 1:
        return img.pixels.astype(np.float64)
    rgb = img.pixels.astype(np.float64)
    return LUMA_WEIGHTS[0] * rgb[:, :, 0] + LUMA_WEIGHTS[1] * rgb[:, :, 1] + LUMA_WEIGHTS[2] * rgb[:, :, 2]


def to_grayscale(img: Image) -> Image:
    if img.channels == 1:
        return img
    return Image(pixels=quantize(to_float_plane(img)))


def _cubic_weights(t: np.ndarray, a: float = -0.5) -> np.ndarray:
    """Keys cubic convolution weights for taps at offsets -1, 0, 1, 2."""
    distances = np.stack([1.0 + t, t, 1.0 - t, 2.0 - t], axis=-1)
    d = np.abs(distances)
    near = (a + 2.0) * d ** 3 - (a + 3.0) * d ** 2 + 1.0
    far = a * d ** 3 - 5.0 * a * d ** 2 + 8.0 * a * d - 4.0 * a
    return np.where(d <= 1.0, near, np.where(d < 2.0, far, 0.0))


def _axis_taps(in_size: int, out_size: int, kind: ResampleFilter) -> Tuple[np.ndarray, np.ndarray]:
    """Source indices and weights, each shaped (out_size, taps)."""
    scale = in_size / out_size
    centers = (np.arange(out_size) + 0.5) * scale
    if kind is ResampleFilter.NEAREST:
        idx = np.minimum(np.floor(centers).astype(np.int64), in_size - 1)
        return idx[:, None], np.ones((out_size, 1))
    x = centers - 0.5
    if kind is ResampleFilter.BILINEAR:
        x = np.clip(x, 0.0, in_size - 1)
        x0 = np.floor(x).astype(np.int64)
        x1 = np.minimum(x0 + 1, in_size - 1)
        frac = x - x0
        return np.stack([x0, x1], axis=1), np.stack([1.0 - frac, frac], axis=1)
    x0 = np.floor(x).astype(np.int64)
    idx = np.clip(x0[:, None] + np.arange(-1, 3)[None, :], 0, in_size - 1)
    return idx, _cubic_weights(x - x0)


def _resample_axis(values: np.ndarray, axis: int, out_size: int, kind: ResampleFilter) -> np.ndarray:
    idx, weights = _axis_taps(values.shape[axis], out_size, kind)
    moved = np.moveaxis(values, axis, 0)
    gathered = moved[idx]
    shape = weights.shape + (1,) * (gathered.ndim - 2)
    result = (gathered * weights.reshape(shape)).sum(axis=1)
    return np.moveaxis(result, 0, axis)


def resize(img: Image, out_h: int, out_w: int, filter: ResampleFilter = ResampleFilter.BILINEAR) -> Image:
    """Resample with half-pixel centers and edge clamping.

    Source coordinate for output index i is (i + 0.5) * in / out - 0.5.
    """
    if out_h < 1 or out_w < 1:
        raise ValueError(f"target size must be positive, got {out_h}x{out_w}")
    kind = ResampleFilter(filter)
    values = img.pixels.astype(np.float64)
    values = _resample_axis(values, 0, out_h, kind)
    values = _resample_axis(values, 1, out_w, kind)
    return Image(pixels=quantize(values))


def gaussian_kernel(sigma: float) -> np.ndarray:
    """Normalized 1-D Gaussian of radius ceil(3 sigma)."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    radius = int(math.ceil(3.0 * sigma))
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-(x ** 2) / (2.0 * sigma ** 2))
    return kernel / kernel.sum()


def _convolve_axis(values: np.ndarray, kernel: np.ndarray, axis: int, boundary: str = "edge") -> np.ndarray:
    radius = len(kernel) // 2
    pad = [(0, 0)] * values.ndim
    pad[axis] = (radius, radius)
    padded = np.pad(values, pad, mode=boundary)
    n = values.shape[axis]
    out = np.zeros_like(values)
    for offset, weight in enumerate(kernel):
        out += weight * np.take(padded, np.arange(offset, offset + n), axis=axis)
    return out


BOUNDARIES = ("edge", "wrap")


def gaussian_blur_float(values: np.ndarray, sigma: float, boundary: str = "edge") -> np.ndarray:
    """Separable Gaussian blur, float in and out.

    ``boundary`` is ``edge`` (replicate padding) or ``wrap`` (periodic, so the
    blur is a circular convolution and scales every DFT coefficient by at
    most 1 in magnitude).
    """
    if boundary not in BOUNDARIES:
        raise ValueError(f"boundary must be one of {BOUNDARIES}, got {boundary!r}")
    kernel = gaussian_kernel(sigma)
    return _convolve_axis(_convolve_axis(values, kernel, 0, boundary), kernel, 1, boundary)


def gaussian_blur(img: Image, sigma: float, boundary: str = "edge") -> Image:
    return Image(pixels=quantize(gaussian_blur_float(img.pixels.astype(np.float64), sigma, boundary)))


def hflip(img: Image) -> Image:
    return Image(pixels=img.pixels[:, ::-1].copy())
