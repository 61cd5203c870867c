"""JSON and CSV renderings of reports and tables."""
from pathlib import Path
from typing import Union

import pandas as pd

from ..models.reports import EvalReport, ResolutionDistanceTable, SelectionHistogram

PathLike = Union[str, Path]

HISTOGRAM_COLUMNS = ["selection", "anchor_bin", "count_HR", "count_LR", "normalized_HR", "normalized_LR"]
RESOLUTION_COLUMNS = ["category", "intra_mean", "intra_pairs", "inter_mean", "inter_pairs"]


def write_report(report: EvalReport, path: PathLike) -> None:
    Path(path).write_text(report.model_dump_json(indent=2, exclude_none=True) + "\n")


def read_report(path: PathLike) -> EvalReport:
    return EvalReport.model_validate_json(Path(path).read_text())


def histogram_frame(histogram: SelectionHistogram) -> pd.DataFrame:
    """One row per (selection kind, anchor bin)."""
    rows = []
    for kind, counts, normalized in (
        ("positive", histogram.positive_counts, histogram.positive_normalized),
        ("negative", histogram.negative_counts, histogram.negative_normalized),
    ):
        for i, anchor_bin in enumerate(histogram.bins):
            rows.append([kind, anchor_bin, counts[i][0], counts[i][1], normalized[i][0], normalized[i][1]])
    return pd.DataFrame(rows, columns=HISTOGRAM_COLUMNS)


def resolution_frame(table: ResolutionDistanceTable) -> pd.DataFrame:
    return pd.DataFrame(
        [[row.category, row.intra.mean, row.intra.pairs, row.inter.mean, row.inter.pairs] for row in table.rows],
        columns=RESOLUTION_COLUMNS,
    )


def write_frame(frame: pd.DataFrame, path: PathLike) -> None:
    frame.to_csv(path, index=False, float_format="%.17g")
