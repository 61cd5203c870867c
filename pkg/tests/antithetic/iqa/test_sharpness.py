import numpy as np
import pytest

from src.antithetic.exceptions import BlackImageError, UnreadableImageError
from src.antithetic.imaging.pnm import save_image
from src.antithetic.imaging.transforms import gaussian_blur, to_grayscale
from src.antithetic.iqa.sharpness import score_manifest, sharpness, sharpness_of_plane
from src.antithetic.models.image import Image
from src.antithetic.models.records import Manifest, SampleRecord
from tests.helpers import textured_image


def test_constant_image():
    assert sharpness(Image(pixels=np.full((8, 8), 9))) == 0.015625


def test_two_by_two():
    """Magnitudes 10, 2, 4, 0 against a threshold of 0.01."""
    assert sharpness(Image(pixels=[[1, 2], [3, 4]])) == 0.75


def test_black_image():
    with pytest.raises(BlackImageError):
        sharpness(Image(pixels=np.zeros((4, 4))))


def test_range(rng):
    for _ in range(20):
        value = sharpness(Image(pixels=rng.integers(0, 256, size=(7, 9))))
        assert 0.0 < value <= 1.0


def test_colour_uses_grayscale(rng):
    img = textured_image(rng, 12, 10, channels=3)
    assert sharpness(img) == sharpness(to_grayscale(img))
    gray = textured_image(rng, 12, 10)
    stacked = Image(pixels=np.repeat(gray.pixels[:, :, None], 3, axis=2))
    assert sharpness(stacked) == sharpness(gray)


def test_colour_scored_after_quantizing():
    # luma 0.114 rounds to a black pixel
    pixels = np.zeros((2, 2, 3))
    pixels[0, 0, 2] = 1
    with pytest.raises(BlackImageError):
        sharpness(Image(pixels=pixels))


def test_scale_invariance():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        plane = rng.uniform(0.0, 255.0, size=(6, 5))
        assert sharpness_of_plane(plane * 3.0) == pytest.approx(sharpness_of_plane(plane), abs=1e-12)


def test_blur_never_sharpens():
    rng = np.random.default_rng(11)
    for _ in range(200):
        img = Image(pixels=rng.integers(0, 256, size=(16, 16)))
        before = sharpness(img)
        for sigma in (0.5, 1.0, 2.0):
            assert sharpness(gaussian_blur(img, sigma)) <= before


@pytest.mark.parametrize("sigma", [1.0, 2.0])
def test_blur_strictly_reduces_texture(rng, sigma):
    img = textured_image(rng)
    assert sharpness(gaussian_blur(img, sigma)) < sharpness(img)


def test_score_manifest(tmp_path):
    for name in ("a.pgm", "b.pgm"):
        save_image(Image(pixels=np.full((8, 8), 50)), tmp_path / name)
    manifest = Manifest(records=[
        SampleRecord(path="a.pgm", identity=0, camera=0),
        SampleRecord(path="b.pgm", identity=1, camera=1),
    ], root=tmp_path)
    scored = score_manifest(manifest)
    assert [r.path for r in scored.records] == ["a.pgm", "b.pgm"]
    assert [r.sharpness for r in scored.records] == [0.015625, 0.015625]


def test_score_manifest_empty():
    assert len(score_manifest(Manifest())) == 0


def test_score_manifest_thread_count_irrelevant(image_dir):
    single = score_manifest(image_dir, threads=1)
    pooled = score_manifest(image_dir, threads=4)
    assert [r.sharpness for r in single.records] == [r.sharpness for r in pooled.records]


def test_score_manifest_names_unreadable_path(image_dir):
    broken = image_dir.with_records(image_dir.records + [SampleRecord(path="missing.pgm", identity=9, camera=0)])
    with pytest.raises(UnreadableImageError) as excinfo:
        score_manifest(broken)
    assert "missing.pgm" in str(excinfo.value)
