"""Procedural identity corpus standing in for the ReID benchmarks.

Each identity owns a clothing layout (colours, stripes, patches) drawn from an
identity-seeded stream; each image adds its own background, translation,
brightness and sensor noise. A fixed fraction of images is Gaussian-blurred so
the corpus has a low- and a high-resolution population.
"""
import logging
from pathlib import Path
from typing import List, Union

import numpy as np
from pydantic import BaseModel

from ..constants import SYNTH_BLUR_SIGMA_HIGH, SYNTH_BLUR_SIGMA_LOW, SYNTH_NUM_CAMERAS
from ..imaging.pnm import save_image
from ..imaging.transforms import gaussian_blur, quantize, resize
from ..models.configs import SynthConfig
from ..models.image import Image, ResampleFilter
from ..models.records import Manifest, SampleRecord
from .manifest_io import save_manifest

logger = logging.getLogger(__name__)

NOISE_STD = 8.0
MANIFEST_NAME = "manifest.jsonl"


class SyntheticCorpus(BaseModel):
    """Generated manifest plus the bookkeeping of which images were degraded."""
    manifest: Manifest
    degraded: List[str]


class _Appearance:
    """Identity-level clothing layout."""

    def __init__(self, rng: np.random.Generator):
        self.top = rng.integers(30, 226, size=3).astype(np.float64)
        self.bottom = rng.integers(30, 226, size=3).astype(np.float64)
        self.stripe = rng.integers(30, 226, size=3).astype(np.float64)
        self.skin = rng.integers(120, 220, size=3).astype(np.float64)
        self.stripe_period = int(rng.integers(3, 8))
        self.stripe_vertical = bool(rng.integers(0, 2))
        self.body_width = float(rng.uniform(0.35, 0.55))
        self.patches = [
            (rng.uniform(0.2, 0.8), rng.uniform(0.1, 0.7), rng.uniform(0.08, 0.2), rng.uniform(0.15, 0.35),
             rng.integers(20, 236, size=3).astype(np.float64))
            for _ in range(2)
        ]


def _background(rng: np.random.Generator, height: int, width: int) -> np.ndarray:
    coarse = Image(pixels=rng.integers(40, 200, size=(6, 4, 3), dtype=np.uint8))
    return resize(coarse, height, width, ResampleFilter.BILINEAR).pixels.astype(np.float64)


def _render(appearance: _Appearance, rng: np.random.Generator, height: int, width: int) -> np.ndarray:
    canvas = _background(rng, height, width)
    dy, dx = (int(v) for v in rng.integers(-3, 4, size=2))
    body_w = max(2, int(round(appearance.body_width * width)))
    left = (width - body_w) // 2 + dx
    rows = np.arange(height)[:, None]
    cols = np.arange(width)[None, :]

    def box(r0, r1, c0, c1):
        return (rows >= r0 + dy) & (rows < r1 + dy) & (cols >= c0) & (cols < c1)

    head_w = max(2, body_w // 2)
    head_left = left + (body_w - head_w) // 2
    canvas[box(int(0.04 * height), int(0.2 * height), head_left, head_left + head_w)] = appearance.skin

    torso_top, torso_bottom = int(0.2 * height), int(0.55 * height)
    torso = box(torso_top, torso_bottom, left, left + body_w)
    canvas[torso] = appearance.top
    phase = cols if appearance.stripe_vertical else rows
    stripes = torso & ((phase // appearance.stripe_period) % 2 == 0)
    canvas[stripes] = appearance.stripe

    for rel_r, rel_c, rel_h, rel_w, color in appearance.patches:
        r0 = torso_top + int(rel_r * (torso_bottom - torso_top) * 0.7)
        c0 = left + int(rel_c * body_w)
        canvas[box(r0, r0 + max(1, int(rel_h * height)), c0, c0 + max(1, int(rel_w * body_w)))] = color

    leg_w = max(1, body_w // 2 - 1)
    legs_top, legs_bottom = torso_bottom, int(0.95 * height)
    canvas[box(legs_top, legs_bottom, left, left + leg_w)] = appearance.bottom
    canvas[box(legs_top, legs_bottom, left + body_w - leg_w, left + body_w)] = appearance.bottom

    canvas *= rng.uniform(0.85, 1.15)
    canvas += rng.normal(0.0, NOISE_STD, size=canvas.shape)
    return canvas


def synth_corpus(cfg: SynthConfig, out_dir: Union[str, Path]) -> SyntheticCorpus:
    """Render the corpus under ``out_dir/images`` and write ``out_dir/manifest.jsonl``."""
    out_dir = Path(out_dir)
    (out_dir / "images").mkdir(parents=True, exist_ok=True)
    total = cfg.identities * cfg.images_per_identity
    num_blurred = int(np.floor(cfg.blur_fraction * total + 0.5))
    blurred = set(np.random.default_rng([cfg.seed, 2 ** 31]).permutation(total)[:num_blurred].tolist())

    records = []
    degraded = []
    for identity in range(cfg.identities):
        appearance = _Appearance(np.random.default_rng([cfg.seed, identity, 0]))
        for k in range(cfg.images_per_identity):
            index = identity * cfg.images_per_identity + k
            rng = np.random.default_rng([cfg.seed, identity, k, 1])
            img = Image(pixels=quantize(_render(appearance, rng, cfg.height, cfg.width)))
            sigma = rng.uniform(SYNTH_BLUR_SIGMA_LOW, SYNTH_BLUR_SIGMA_HIGH)
            relative = f"images/{identity:04d}_{k:03d}.ppm"
            if index in blurred:
                img = gaussian_blur(img, sigma)
                degraded.append(relative)
            save_image(img, out_dir / relative)
            records.append(SampleRecord(path=relative, identity=identity, camera=k % SYNTH_NUM_CAMERAS))

    manifest = Manifest(records=records, root=out_dir)
    save_manifest(manifest, out_dir / MANIFEST_NAME)
    logger.info(f"Synthesized {len(records)} images of {cfg.identities} identities in {out_dir} ({len(degraded)} blurred)")
    return SyntheticCorpus(manifest=manifest, degraded=degraded)
