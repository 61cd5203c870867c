import os
import sys

import numpy as np
import pytest

# Add the project root directory to the Python path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from src.antithetic.constants import ACCEPTANCE_ENV_VAR
from src.antithetic.imaging.pnm import save_image
from src.antithetic.models.records import Manifest, SampleRecord
from tests.helpers import textured_image


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def textured(rng):
    return textured_image(rng)


@pytest.fixture
def image_dir(tmp_path, rng):
    """Six textured images of three identities on two cameras, with their manifest."""
    images = tmp_path / "images"
    images.mkdir()
    records = []
    for index in range(6):
        name = f"images/{index // 2:04d}_{index % 2:03d}.pgm"
        save_image(textured_image(rng), tmp_path / name)
        records.append(SampleRecord(path=name, identity=index // 2, camera=index % 2))
    return Manifest(records=records, root=tmp_path)


@pytest.fixture
def acceptance():
    """Full-scale flag for the directional experiments."""
    return ACCEPTANCE_ENV_VAR in os.environ
