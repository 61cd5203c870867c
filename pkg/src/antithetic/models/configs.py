"""Configuration models for augmentation, synthesis, losses and training."""
from enum import Enum
from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from ..constants import (
    DEFAULT_ALPHA,
    DEFAULT_BATCH_SIZE,
    DEFAULT_BETA,
    DEFAULT_DECAY_BASE,
    DEFAULT_DECAY_START_EPOCH,
    DEFAULT_EPOCHS,
    DEFAULT_HIDDEN,
    DEFAULT_INPUT_DIMS,
    DEFAULT_LR,
    DEFAULT_MARGIN,
    DEFAULT_MOMENTUM,
    DEFAULT_WEIGHT_DECAY,
    TRIHARD_PER_IDENTITY,
    DOWNSAMPLE_FACTOR_HIGH,
    DOWNSAMPLE_FACTOR_LOW,
    SYNTH_HEIGHT,
    SYNTH_WIDTH,
    LossMode,
)


class FusionStrategy(str, Enum):
    """How the companion set is derived from the original set.

    ``antithetical`` downsamples HR images and enhances LR images; the two
    alternatives apply a single transformation to every original image.
    """
    ANTITHETICAL = "antithetical"
    ENHANCE_ALL = "enhance_all"
    DOWNSAMPLE_ALL = "downsample_all"


class AugmentConfig(BaseModel):
    """Antithetical set generation parameters.

    Attributes:
        factor_low: Lower bound of the downsampling factor distribution
        factor_high: Upper bound of the downsampling factor distribution
        enhancer: ``classical`` (unsharp masking) or ``external:<program>``
        seed: Seed for the per-record random streams
        fusion: Which fusion strategy to apply
    """
    factor_low: float = DOWNSAMPLE_FACTOR_LOW
    factor_high: float = DOWNSAMPLE_FACTOR_HIGH
    enhancer: str = Field("classical", pattern=r"^(classical|external:.+)$")
    seed: int
    fusion: FusionStrategy = FusionStrategy.ANTITHETICAL

    @model_validator(mode="after")
    def check_factors(self):
        if not (0 < self.factor_low <= self.factor_high < 1):
            raise ValueError("factors must satisfy 0 < factor_low <= factor_high < 1")
        return self

    @property
    def external_program(self) -> Optional[str]:
        if self.enhancer.startswith("external:"):
            return self.enhancer[len("external:"):]
        return None


class SynthConfig(BaseModel):
    """Synthetic identity corpus parameters."""
    identities: int = Field(..., ge=1)
    images_per_identity: int = Field(..., ge=1)
    height: int = Field(SYNTH_HEIGHT, ge=8)
    width: int = Field(SYNTH_WIDTH, ge=8)
    blur_fraction: float = Field(0.5, ge=0.0, le=1.0)
    seed: int


class LossWeights(BaseModel):
    """Weights of the CCL terms and the trihard margin.

    ``inter_normalization`` selects between the mean over cross-identity
    ordered pairs (``pairs``) and the literal 1/N double sum (``literal``).
    """
    alpha: float = Field(DEFAULT_ALPHA, ge=0.0)
    beta: float = Field(DEFAULT_BETA, ge=0.0)
    margin: float = Field(DEFAULT_MARGIN, ge=0.0)
    inter_normalization: Literal["pairs", "literal"] = "pairs"


class ModelConfig(BaseModel):
    """Shape of the feed-forward embedding network."""
    input_dims: Tuple[int, int] = DEFAULT_INPUT_DIMS
    hidden: List[int] = Field(default_factory=lambda: list(DEFAULT_HIDDEN), min_length=1)
    num_identities: int = Field(..., ge=1)
    seed: int = 0

    @field_validator("input_dims")
    @classmethod
    def check_input_dims(cls, value):
        if value[0] < 1 or value[1] < 1:
            raise ValueError("input dimensions must be positive")
        return value

    @field_validator("hidden")
    @classmethod
    def check_hidden(cls, value):
        if any(width < 1 for width in value):
            raise ValueError("all layer widths must be >= 1")
        return value

    @property
    def input_size(self) -> int:
        return self.input_dims[0] * self.input_dims[1]

    @property
    def embedding_dim(self) -> int:
        return self.hidden[-1]


class TrainConfig(BaseModel):
    """SGD schedule, loss selection and augmentation switches."""
    epochs: int = Field(DEFAULT_EPOCHS, ge=1)
    batch_size: int = Field(DEFAULT_BATCH_SIZE, ge=2)
    lr0: float = Field(DEFAULT_LR, ge=0.0)
    weight_decay: float = Field(DEFAULT_WEIGHT_DECAY, ge=0.0)
    momentum: float = Field(DEFAULT_MOMENTUM, ge=0.0, lt=1.0)
    decay_start_epoch: int = Field(DEFAULT_DECAY_START_EPOCH, ge=0)
    decay_base: float = Field(DEFAULT_DECAY_BASE, gt=0.0)
    loss_mode: LossMode = "softmax+ccl"
    weights: LossWeights = Field(default_factory=LossWeights)
    pk: Optional[Tuple[int, int]] = None
    hflip: bool = True
    random_erase: bool = True
    seed: int = 0
    checkpoint: Optional[Path] = None

    @field_validator("pk")
    @classmethod
    def check_pk(cls, value):
        if value is not None and (value[0] < 1 or value[1] < 1):
            raise ValueError("P and K must be positive")
        return value

    def sampling(self, num_identities: Optional[int] = None) -> Optional[Tuple[int, int]]:
        """PK layout in effect; trihard needs identity-grouped batches.

        The default trihard layout takes K = 4 and as many identities as the
        batch holds, capped at ``num_identities`` when the pool is smaller.
        An explicit ``pk`` is returned unchanged.
        """
        if self.pk is not None:
            return self.pk
        if self.loss_mode == "softmax+trihard":
            per_identity = TRIHARD_PER_IDENTITY
            p = max(2, self.batch_size // per_identity)
            if num_identities is not None:
                p = max(1, min(p, num_identities))
            return (p, per_identity)
        return None
