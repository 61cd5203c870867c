"""Plain-text model checkpoints.

Layout::

    antithetic-checkpoint 1
    input_dims <h> <w>
    hidden <w1> <w2> ...
    num_identities <K>
    seed <seed>
    tensor <name> <rows> <cols>
    <row values, %.17g, space separated>
    ...
    end

Seventeen significant digits make the float64 round trip exact.
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np

from ..constants import CHECKPOINT_MAGIC, CHECKPOINT_VERSION
from ..exceptions import CheckpointError
from ..models.configs import ModelConfig
from .network import EmbeddingNet, init_model

logger = logging.getLogger(__name__)


def _format_row(values: np.ndarray) -> str:
    return " ".join("%.17g" % v for v in values)


def save_model(model: EmbeddingNet, path: Union[str, Path]) -> None:
    cfg = model.config
    lines = [
        f"{CHECKPOINT_MAGIC} {CHECKPOINT_VERSION}",
        f"input_dims {cfg.input_dims[0]} {cfg.input_dims[1]}",
        "hidden " + " ".join(str(width) for width in cfg.hidden),
        f"num_identities {cfg.num_identities}",
        f"seed {cfg.seed}",
    ]
    for name, param in model.parameters().items():
        grid = param.reshape(1, -1) if param.ndim == 1 else param
        lines.append(f"tensor {name} {grid.shape[0]} {grid.shape[1]}")
        lines.extend(_format_row(row) for row in grid)
    lines.append("end")
    Path(path).write_text("\n".join(lines) + "\n")
    logger.info(f"Checkpoint written to {path}")


def _header_value(lines: List[str], index: int, key: str, path: Path) -> List[str]:
    if index >= len(lines):
        raise CheckpointError(path, f"missing '{key}' line")
    parts = lines[index].split()
    if not parts or parts[0] != key:
        raise CheckpointError(path, f"expected '{key}' on line {index + 1}")
    return parts[1:]


def load_model(path: Union[str, Path], expected: Optional[ModelConfig] = None) -> EmbeddingNet:
    """Read a checkpoint written by ``save_model``.

    Raises:
        CheckpointError: Wrong magic or version, truncation, bad numbers, or
            shapes that do not match the stored (or ``expected``) configuration
    """
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as e:
        raise CheckpointError(path, str(e))
    if not lines or lines[0].split()[:1] != [CHECKPOINT_MAGIC]:
        raise CheckpointError(path, "not a checkpoint file")
    version = lines[0].split()[1:]
    if version != [str(CHECKPOINT_VERSION)]:
        raise CheckpointError(path, f"unsupported version {' '.join(version) or '?'}")
    try:
        input_dims = tuple(int(v) for v in _header_value(lines, 1, "input_dims", path))
        hidden = [int(v) for v in _header_value(lines, 2, "hidden", path)]
        num_identities = int(_header_value(lines, 3, "num_identities", path)[0])
        seed = int(_header_value(lines, 4, "seed", path)[0])
        cfg = ModelConfig(input_dims=input_dims, hidden=hidden, num_identities=num_identities, seed=seed)
    except (ValueError, IndexError) as e:
        raise CheckpointError(path, f"bad header: {e}")
    if expected is not None and (
        tuple(expected.input_dims) != tuple(cfg.input_dims)
        or list(expected.hidden) != list(cfg.hidden)
        or expected.num_identities != cfg.num_identities
    ):
        raise CheckpointError(path, "stored shapes do not match the expected configuration")

    model = init_model(cfg)
    tensors: Dict[str, np.ndarray] = {}
    cursor = 5
    for name, param in model.parameters().items():
        parts = _header_value(lines, cursor, "tensor", path)
        shape = (1, param.size) if param.ndim == 1 else param.shape
        if len(parts) != 3 or parts[0] != name or (int(parts[1]), int(parts[2])) != shape:
            raise CheckpointError(path, f"tensor {name} missing or mis-shaped")
        rows = lines[cursor + 1:cursor + 1 + shape[0]]
        if len(rows) != shape[0]:
            raise CheckpointError(path, f"tensor {name} truncated")
        try:
            grid = np.array([[float(v) for v in row.split()] for row in rows], dtype=np.float64)
        except ValueError as e:
            raise CheckpointError(path, f"tensor {name}: {e}")
        if grid.shape != shape:
            raise CheckpointError(path, f"tensor {name} has shape {grid.shape}, expected {shape}")
        tensors[name] = grid.reshape(param.shape)
        cursor += 1 + shape[0]
    if cursor >= len(lines) or lines[cursor].strip() != "end":
        raise CheckpointError(path, "missing end marker")
    for name, param in model.parameters().items():
        param[...] = tensors[name]
    return model
