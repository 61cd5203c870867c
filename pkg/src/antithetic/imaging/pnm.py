"""Binary PGM (P5) / PPM (P6) codec, 8-bit, maxval 255."""
import logging
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from ..exceptions import ImageFormatError
from ..models.image import Image

logger = logging.getLogger(__name__)

_MAGIC_CHANNELS = {b"P5": 1, b"P6": 3}
_WHITESPACE = b" \t\n\r\v\f"


def _read_header(data: bytes, path: Union[str, Path]) -> Tuple[List[bytes], int]:
    """Return the four header tokens and the payload offset."""
    tokens: List[bytes] = []
    pos = 0
    while len(tokens) < 4:
        while pos < len(data) and data[pos] in _WHITESPACE:
            pos += 1
        if pos < len(data) and data[pos] == ord("#"):
            while pos < len(data) and data[pos] not in b"\n\r":
                pos += 1
            continue
        start = pos
        while pos < len(data) and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        if start == pos:
            raise ImageFormatError(path, "truncated header")
        tokens.append(data[start:pos])
    # exactly one whitespace byte separates maxval from the payload
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise ImageFormatError(path, "missing whitespace after maxval")
    return tokens, pos + 1


def load_image(path: Union[str, Path]) -> Image:
    """Decode a binary PGM/PPM file.

    Raises:
        ImageFormatError: Malformed header, unsupported maxval or truncated payload
        OSError: If the file cannot be read
    """
    data = Path(path).read_bytes()
    tokens, offset = _read_header(data, path)
    magic = tokens[0]
    if magic not in _MAGIC_CHANNELS:
        raise ImageFormatError(path, f"unsupported magic number {magic!r}")
    channels = _MAGIC_CHANNELS[magic]
    try:
        width, height, maxval = (int(token) for token in tokens[1:])
    except ValueError:
        raise ImageFormatError(path, f"non-integer header fields {tokens[1:]}")
    if width < 1 or height < 1:
        raise ImageFormatError(path, f"invalid dimensions {width}x{height}")
    if maxval != 255:
        raise ImageFormatError(path, f"unsupported maxval {maxval}")
    expected = width * height * channels
    payload = data[offset:offset + expected]
    if len(payload) < expected:
        raise ImageFormatError(path, f"truncated payload: expected {expected} bytes, got {len(payload)}")
    pixels = np.frombuffer(payload, dtype=np.uint8)
    logger.debug(f"Loaded {path} ({height}x{width}x{channels})")
    return Image.from_flat(height, width, channels, pixels.copy())


def save_image(img: Image, path: Union[str, Path]) -> None:
    """Write P5 for single-channel images and P6 for colour ones."""
    magic = "P5" if img.channels == 1 else "P6"
    header = f"{magic}\n{img.width} {img.height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + img.pixels.tobytes())
