"""Evaluation, analysis and training reports."""
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator


class EvalReport(BaseModel):
    """Ranking metrics and distance statistics for one query/gallery split."""
    cmc: List[float] = Field(default_factory=list)
    map: float = Field(0.0, ge=0.0, le=1.0)
    num_queries: int = 0
    skipped_queries: int = 0
    d_intra: Optional[float] = None
    d_inter: Optional[float] = None
    d_centers: Optional[float] = None
    probe_breakdown: Optional[Dict[str, "EvalReport"]] = None
    metadata: Dict[str, str] = Field(default_factory=dict)

    @field_validator("cmc")
    @classmethod
    def check_cmc(cls, value):
        if any(v < 0.0 or v > 1.0 for v in value):
            raise ValueError("CMC values must lie in [0, 1]")
        if any(b < a for a, b in zip(value, value[1:])):
            raise ValueError("CMC must be non-decreasing in rank")
        return value

    @property
    def rank1(self) -> float:
        return self.cmc[0] if self.cmc else 0.0


class SelectionHistogram(BaseModel):
    """Trihard selection counts indexed by (anchor bin, chosen bin), bins ordered HR, LR."""
    bins: List[str] = Field(default_factory=lambda: ["HR", "LR"])
    positive_counts: List[List[int]]
    negative_counts: List[List[int]]
    positive_normalized: List[List[float]]
    negative_normalized: List[List[float]]

    def off_diagonal_mass(self, which: str = "positive") -> float:
        """Share of normalized row mass off the diagonal, averaged over populated rows."""
        grid = self.positive_normalized if which == "positive" else self.negative_normalized
        populated = [(i, row) for i, row in enumerate(grid) if sum(row) > 0]
        if not populated:
            return 0.0
        return sum(1.0 - row[i] for i, row in populated) / len(populated)


class DistanceCell(BaseModel):
    mean: Optional[float] = None
    pairs: int = 0


class ResolutionDistanceRow(BaseModel):
    category: str
    intra: DistanceCell
    inter: DistanceCell


class ResolutionDistanceTable(BaseModel):
    """Mean intra/inter-identity distances per resolution pair category."""
    rows: List[ResolutionDistanceRow]

    def row(self, category: str) -> ResolutionDistanceRow:
        for row in self.rows:
            if row.category == category:
                return row
        raise KeyError(category)


class SharpnessSummary(BaseModel):
    """Count, mean and median sharpness of one subset."""
    num: int
    mean: Optional[float] = None
    median: Optional[float] = None


class EpochRecord(BaseModel):
    epoch: int
    lr: float
    ce: float = 0.0
    intra: float = 0.0
    inter: float = 0.0
    trihard: float = 0.0
    total: float = 0.0
    seconds: float = 0.0


class TrainHistory(BaseModel):
    records: List[EpochRecord] = Field(default_factory=list)


EvalReport.model_rebuild()
