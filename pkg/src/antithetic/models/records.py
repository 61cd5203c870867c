"""Manifest records for the original set D_o and the antithetical set D_a."""
from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator


class PartitionLabel(str, Enum):
    """Resolution class of an image relative to the mean-sharpness threshold."""
    HR = "HR"
    LR = "LR"

    @property
    def opposite(self) -> "PartitionLabel":
        return PartitionLabel.LR if self is PartitionLabel.HR else PartitionLabel.HR


class Origin(str, Enum):
    ORIGINAL = "original"
    ANTITHETICAL = "antithetical"


class SampleRecord(BaseModel):
    """One labelled image entry.

    Attributes:
        path: Image path relative to the manifest root
        identity: Person identity (stable across transformations)
        camera: Camera id (stable across transformations)
        partition: HR/LR label once the set has been split
        sharpness: Sharpness score once the image has been scored
        origin: Whether the image is an original or an antithetical counterpart
        counterpart: Path of the original image an antithetical record came from
    """
    path: str = Field(..., min_length=1)
    identity: int = Field(..., ge=0)
    camera: int = Field(..., ge=0)
    partition: Optional[PartitionLabel] = None
    sharpness: Optional[float] = None
    origin: Origin = Origin.ORIGINAL
    counterpart: Optional[str] = None

    @model_validator(mode="after")
    def check_counterpart(self):
        if self.origin is Origin.ANTITHETICAL and not self.counterpart:
            raise ValueError("antithetical records must reference their original counterpart")
        return self


class Manifest(BaseModel):
    """Ordered collection of sample records sharing one base directory."""
    records: List[SampleRecord] = Field(default_factory=list)
    root: Path = Path(".")

    @model_validator(mode="after")
    def check_unique_paths(self):
        seen = set()
        for record in self.records:
            if record.path in seen:
                raise ValueError(f"duplicate path in manifest: {record.path}")
            seen.add(record.path)
        return self

    def __len__(self) -> int:
        return len(self.records)

    def resolve(self, record: SampleRecord) -> Path:
        """Absolute location of a record's image."""
        path = Path(record.path)
        return path if path.is_absolute() else self.root / path

    def identities(self) -> List[int]:
        return sorted({record.identity for record in self.records})

    def with_records(self, records: List[SampleRecord]) -> "Manifest":
        return Manifest(records=records, root=self.root)

    def by_partition(self, label: PartitionLabel) -> "Manifest":
        return self.with_records([r for r in self.records if r.partition == label])
