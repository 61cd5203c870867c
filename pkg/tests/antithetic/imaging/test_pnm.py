import numpy as np
import pytest

from src.antithetic.exceptions import ImageFormatError
from src.antithetic.imaging.pnm import load_image, save_image
from src.antithetic.models.image import Image
from tests.helpers import textured_image


def test_load_p5(tmp_path):
    path = tmp_path / "a.pgm"
    path.write_bytes(b"P5\n2 2\n255\n" + bytes([1, 2, 3, 4]))
    assert load_image(path) == Image.from_flat(2, 2, 1, [1, 2, 3, 4])


def test_load_p6_with_comment(tmp_path):
    path = tmp_path / "a.ppm"
    path.write_bytes(b"P6\n# made by hand\n1 1\n255\n" + bytes([10, 20, 30]))
    img = load_image(path)
    assert img.channels == 3
    assert img.flat == [10, 20, 30]


def test_round_trip(tmp_path, rng):
    gray = textured_image(rng)
    colour = textured_image(rng, 5, 7, channels=3)
    save_image(gray, tmp_path / "g.pgm")
    save_image(colour, tmp_path / "c.ppm")
    assert load_image(tmp_path / "g.pgm") == gray
    assert load_image(tmp_path / "c.ppm") == colour


def test_save_sizes(tmp_path):
    save_image(Image.from_flat(1, 1, 1, [0]), tmp_path / "one.pgm")
    data = (tmp_path / "one.pgm").read_bytes()
    assert data == b"P5\n1 1\n255\n\x00"
    save_image(Image(pixels=np.zeros((2, 2, 3))), tmp_path / "rgb.ppm")
    data = (tmp_path / "rgb.ppm").read_bytes()
    assert data.startswith(b"P6")
    assert len(data) - len(b"P6\n2 2\n255\n") == 12


@pytest.mark.parametrize("payload", [
    b"P5\n2 2\n255\n" + bytes([1, 2, 3]),
    b"P5\n2 2\n65535\n" + bytes(8),
    b"P3\n1 1\n255\n" + bytes([1]),
    b"P5\n2\n",
    b"P5\nx 2\n255\n" + bytes(4),
])
def test_malformed_files(tmp_path, payload):
    path = tmp_path / "bad.pgm"
    path.write_bytes(payload)
    with pytest.raises(ImageFormatError):
        load_image(path)


def test_unwritable_destination(tmp_path):
    """A directory in place of the target file cannot be written."""
    target = tmp_path / "taken.pgm"
    target.mkdir()
    with pytest.raises(OSError):
        save_image(Image.from_flat(1, 1, 1, [0]), target)
