"""JSON-lines manifest persistence: one SampleRecord per line."""
import logging
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from ..exceptions import ManifestFormatError
from ..models.records import Manifest, SampleRecord

logger = logging.getLogger(__name__)


def load_manifest(path: Union[str, Path], root: Optional[Union[str, Path]] = None) -> Manifest:
    """Read a manifest; record paths resolve against ``root`` or the file's directory.

    Raises:
        ManifestFormatError: For a malformed line or a duplicate path, with its line number
    """
    path = Path(path)
    records = []
    seen = set()
    with path.open("r", encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = SampleRecord.model_validate_json(line)
            except ValidationError as e:
                raise ManifestFormatError(path, line_number, f"invalid record: {e.errors()[0]['msg']}")
            if record.path in seen:
                raise ManifestFormatError(path, line_number, f"duplicate path {record.path}")
            seen.add(record.path)
            records.append(record)
    logger.debug(f"Loaded {len(records)} records from {path}")
    return Manifest(records=records, root=Path(root) if root is not None else path.parent)


def save_manifest(manifest: Manifest, path: Union[str, Path]) -> None:
    path = Path(path)
    lines = [record.model_dump_json(exclude_none=True) for record in manifest.records]
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    logger.debug(f"Wrote {len(lines)} records to {path}")
