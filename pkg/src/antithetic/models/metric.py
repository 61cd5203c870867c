"""Embedding batches, identity centers and loss results."""
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..constants import COSINE_EPS


class EmbeddingBatch(BaseModel):
    """Features f_i (N x d) with identity labels y_i."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    features: np.ndarray
    labels: np.ndarray

    @field_validator("features", mode="before")
    @classmethod
    def validate_features(cls, value):
        arr = np.asarray(value, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 2:
            raise ValueError(f"features must be N x d with N >= 1, d >= 2, got {arr.shape}")
        return arr

    @field_validator("labels", mode="before")
    @classmethod
    def validate_labels(cls, value):
        arr = np.asarray(value)
        if arr.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        if arr.size and np.any(arr < 0):
            raise ValueError("labels must be non-negative")
        return arr.astype(np.int64)

    @model_validator(mode="after")
    def check_lengths(self):
        if self.labels.shape[0] != self.features.shape[0]:
            raise ValueError("one label per feature row is required")
        return self

    @property
    def size(self) -> int:
        return int(self.features.shape[0])


class CenterBank(BaseModel):
    """One trainable center C_y per identity (K x d)."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    centers: np.ndarray

    @field_validator("centers", mode="before")
    @classmethod
    def validate_centers(cls, value):
        arr = np.asarray(value, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise ValueError(f"centers must be K x d, got {arr.shape}")
        if np.any(np.linalg.norm(arr, axis=1) <= COSINE_EPS):
            raise ValueError("every center must have a non-zero norm")
        return arr

    @property
    def num_identities(self) -> int:
        return int(self.centers.shape[0])


class LossOutput(BaseModel):
    """A loss value with analytic gradients.

    ``grad_features`` is the gradient with respect to the loss input rows
    (features, or logits for the classification loss); ``grad_centers`` is
    None for losses that do not read the center bank.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: float
    grad_features: np.ndarray
    grad_centers: Optional[np.ndarray] = None
    selected_triplets: Optional[List[Tuple[int, int, int]]] = None
    components: Dict[str, float] = Field(default_factory=dict)
