from pathlib import Path
from typing import Optional, Union

PathLike = Union[str, Path]


class AntitheticError(Exception):
    """Base exception for antithetical ReID pipeline errors."""


class ImageFormatError(AntitheticError):
    """Raised when a PGM/PPM file cannot be decoded."""
    def __init__(self, path: PathLike, reason: str):
        self.path = str(path)
        self.reason = reason
        super().__init__(f"Cannot decode image {self.path}: {reason}")


class ManifestFormatError(AntitheticError):
    """Raised when a manifest line is malformed or violates manifest invariants."""
    def __init__(self, path: PathLike, line_number: int, reason: str):
        self.path = str(path)
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"{self.path}:{line_number}: {reason}")


class BlackImageError(AntitheticError):
    """Raised when the sharpness threshold is degenerate (all-zero image)."""
    def __init__(self, path: Optional[PathLike] = None):
        self.path = str(path) if path is not None else None
        message = "Sharpness is undefined for an all-zero image"
        if self.path:
            message += f": {self.path}"
        super().__init__(message)


class UnreadableImageError(AntitheticError):
    """Raised when a manifest references an image that cannot be loaded."""
    def __init__(self, path: PathLike, original_error: Exception = None):
        self.path = str(path)
        self.original_error = original_error
        message = f"Cannot read image {self.path}"
        if original_error:
            message += f": {original_error}"
        super().__init__(message)


class UnscoredRecordError(AntitheticError):
    """Raised when an operation needs a sharpness score or partition that is missing."""
    def __init__(self, path: str, missing: str = "sharpness"):
        self.path = path
        self.missing = missing
        super().__init__(f"Record {path} has no {missing}")


class EnhancerError(AntitheticError):
    """Raised when an external enhancer program fails or breaks its contract."""
    def __init__(self, program: PathLike, reason: str):
        self.program = str(program)
        self.reason = reason
        super().__init__(f"Enhancer {self.program} failed: {reason}")


class LabelRangeError(AntitheticError):
    """Raised when an identity label does not index into the center bank or logits."""
    def __init__(self, label: int, size: int):
        self.label = label
        self.size = size
        super().__init__(f"Label {label} out of range for {size} identities")


class NoValidAnchorError(AntitheticError):
    """Raised when a batch has no anchor with both a positive and a negative."""
    def __init__(self):
        super().__init__("Batch has no anchor with both a positive and a negative sample")


class InsufficientPairsError(AntitheticError):
    """Raised when a distance statistic has no qualifying pairs."""
    def __init__(self, statistic: str):
        self.statistic = statistic
        super().__init__(f"No qualifying pairs for {statistic}")


class InsufficientIdentitiesError(AntitheticError):
    """Raised when PK sampling asks for more identities than the pool holds."""
    def __init__(self, requested: int, available: int):
        self.requested = requested
        self.available = available
        super().__init__(f"Requested {requested} identities but only {available} available")


class NonFiniteLossError(AntitheticError):
    """Raised when a loss evaluates to NaN or infinity."""
    def __init__(self, where: str, value: float):
        self.where = where
        self.value = value
        super().__init__(f"Non-finite loss in {where}: {value}")


class CheckpointError(AntitheticError):
    """Raised when a checkpoint is truncated, versioned differently, or mis-shaped."""
    def __init__(self, path: PathLike, reason: str):
        self.path = str(path)
        self.reason = reason
        super().__init__(f"Invalid checkpoint {self.path}: {reason}")


class IdentitySpaceError(AntitheticError):
    """Raised when training manifests do not share one identity space."""
    def __init__(self, unknown: set):
        self.unknown = sorted(unknown)
        super().__init__(f"Identities not present in the original manifest: {self.unknown[:10]}")
