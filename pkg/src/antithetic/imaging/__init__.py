"""Image representation, PGM/PPM I/O, resampling, filtering and the 2-D DFT."""
from .augment import random_erase
from .fourier import center_shift, dft2d_magnitude, dft2d_magnitude_plane
from .pnm import load_image, save_image
from .transforms import gaussian_blur, gaussian_kernel, hflip, quantize, resize, to_float_plane, to_grayscale

__all__ = [
    'random_erase', 'center_shift', 'dft2d_magnitude', 'dft2d_magnitude_plane',
    'load_image', 'save_image', 'gaussian_blur', 'gaussian_kernel', 'hflip',
    'quantize', 'resize', 'to_float_plane', 'to_grayscale',
]
