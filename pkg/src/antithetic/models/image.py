"""Image and frequency-domain grid models.

Images stay 8-bit at rest: ``pixels`` is a uint8 array shaped ``(h, w)`` for
single-channel images or ``(h, w, 3)`` for colour ones. Frequency-domain
grids hold 64-bit float magnitudes.
"""
from enum import Enum
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator


class ResampleFilter(str, Enum):
    """Interpolation kernel used by ``resize``."""
    NEAREST = "nearest"
    BILINEAR = "bilinear"
    BICUBIC = "bicubic"


class Image(BaseModel):
    """8-bit image with 1 or 3 channels."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    pixels: np.ndarray

    @field_validator("pixels", mode="before")
    @classmethod
    def validate_pixels(cls, value):
        arr = np.asarray(value)
        if arr.ndim == 3 and arr.shape[2] == 1:
            arr = arr[:, :, 0]
        if arr.ndim not in (2, 3) or (arr.ndim == 3 and arr.shape[2] != 3):
            raise ValueError(f"pixels must be (h, w) or (h, w, 3), got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image dimensions must be positive, got {arr.shape[:2]}")
        if arr.dtype != np.uint8:
            if arr.size and (not np.all(np.isfinite(arr)) or arr.min() < 0 or arr.max() > 255):
                raise ValueError("intensities must lie in [0, 255]")
            if arr.size and not np.all(np.equal(np.mod(arr, 1), 0)):
                raise ValueError("intensities must be integers")
            arr = arr.astype(np.uint8)
        return np.ascontiguousarray(arr)

    @classmethod
    def from_flat(cls, height: int, width: int, channels: int, pixels: Sequence[int]) -> "Image":
        """Build an image from a row-major intensity sequence."""
        if channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {channels}")
        flat = np.asarray(pixels)
        if flat.size != height * width * channels:
            raise ValueError(
                f"expected {height * width * channels} intensities, got {flat.size}"
            )
        shape = (height, width) if channels == 1 else (height, width, channels)
        return cls(pixels=flat.reshape(shape))

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def channels(self) -> int:
        return 1 if self.pixels.ndim == 2 else int(self.pixels.shape[2])

    @property
    def flat(self) -> list:
        """Row-major intensities, channel-interleaved."""
        return self.pixels.reshape(-1).tolist()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(np.array_equal(self.pixels, other.pixels))

    def __repr__(self) -> str:
        return f"Image(height={self.height}, width={self.width}, channels={self.channels})"


class MagnitudeGrid(BaseModel):
    """Non-negative DFT magnitudes |F(u, v)| in row-major (u, v) layout."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def validate_values(cls, value):
        arr = np.asarray(value, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"magnitude grid must be a non-empty 2-D array, got shape {arr.shape}")
        if np.any(arr < 0):
            raise ValueError("magnitudes must be non-negative")
        return arr

    @property
    def height(self) -> int:
        return int(self.values.shape[0])

    @property
    def width(self) -> int:
        return int(self.values.shape[1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, MagnitudeGrid):
            return NotImplemented
        return self.values.shape == other.values.shape and bool(np.array_equal(self.values, other.values))
