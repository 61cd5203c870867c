"""Resolution enhancers for the LR half of the original set.

The in-process enhancer is unsharp masking. Any external program honouring
the two-argument contract (input path, output path, exit status 0) can be
plugged in instead, for example a super-resolution network.
"""
import asyncio
import logging
import tempfile
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from ..constants import UNSHARP_AMOUNT, UNSHARP_SIGMA
from ..exceptions import EnhancerError, ImageFormatError
from ..imaging.pnm import load_image
from ..imaging.transforms import gaussian_blur, quantize
from ..models.image import Image

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def enhance_classical(img: Image, amount: float = UNSHARP_AMOUNT, sigma: float = UNSHARP_SIGMA) -> Image:
    """Unsharp masking: I + amount * (I - blur(I, sigma)), clamped."""
    original = img.pixels.astype(np.float64)
    blurred = gaussian_blur(img, sigma).pixels.astype(np.float64)
    return Image(pixels=quantize(original + amount * (original - blurred)))


def _read_enhanced(program: PathLike, source: Image, output: Path) -> Image:
    try:
        enhanced = load_image(output)
    except (OSError, ImageFormatError) as e:
        raise EnhancerError(program, f"unreadable output: {e}")
    if (enhanced.height, enhanced.width) != (source.height, source.width):
        raise EnhancerError(
            program,
            f"output is {enhanced.height}x{enhanced.width}, expected {source.height}x{source.width}",
        )
    return enhanced


async def enhance_external_async(img_path: PathLike, program: PathLike) -> Image:
    """Run ``program <input> <output>`` and load the dimension-checked result.

    Raises:
        EnhancerError: Program failure, missing output or dimension mismatch
    """
    source = load_image(img_path)
    suffix = Path(img_path).suffix or ".pgm"
    with tempfile.TemporaryDirectory() as tmp:
        output = Path(tmp) / f"enhanced{suffix}"
        try:
            process = await asyncio.create_subprocess_exec(
                str(program), str(img_path), str(output),
                stdout=asyncio.subprocess.PIPE,
                stderr=asyncio.subprocess.PIPE,
            )
        except OSError as e:
            raise EnhancerError(program, str(e))
        _, stderr = await process.communicate()
        if process.returncode != 0:
            raise EnhancerError(
                program,
                f"exit status {process.returncode}: {stderr.decode('utf-8', errors='replace').strip()}",
            )
        return _read_enhanced(program, source, output)


def enhance_external(img_path: PathLike, program: PathLike) -> Image:
    """Blocking form of ``enhance_external_async`` for a single image."""
    return asyncio.run(enhance_external_async(img_path, program))


async def enhance_external_many(paths: Sequence[PathLike], program: PathLike, limit: int = 4) -> List[Image]:
    """Enhance many images with at most ``limit`` concurrent program invocations.

    Results follow the order of ``paths``.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    semaphore = asyncio.Semaphore(limit)

    async def _one(path: PathLike) -> Image:
        async with semaphore:
            logger.debug(f"Enhancing {path} with {program}")
            return await enhance_external_async(path, program)

    return list(await asyncio.gather(*(_one(path) for path in paths)))
