"""Batch construction: shuffled chunks or PK (P identities x K images) batches."""
from typing import Dict, List, Sequence

import numpy as np

from ..exceptions import InsufficientIdentitiesError
from ..models.records import Manifest


def pk_sample_labels(labels: Sequence[int], p: int, k: int, rng: np.random.Generator) -> List[int]:
    """Indices of P distinct identities drawn uniformly, K images each.

    Images are drawn without replacement unless an identity has fewer than K.
    """
    groups: Dict[int, List[int]] = {}
    for index, label in enumerate(labels):
        groups.setdefault(int(label), []).append(index)
    identities = sorted(groups)
    if len(identities) < p:
        raise InsufficientIdentitiesError(p, len(identities))
    chosen = rng.choice(len(identities), size=p, replace=False)
    batch: List[int] = []
    for position in chosen:
        members = groups[identities[int(position)]]
        picks = rng.choice(len(members), size=k, replace=len(members) < k)
        batch.extend(members[int(i)] for i in picks)
    return batch


def pk_sample(manifest: Manifest, p: int, k: int, rng: np.random.Generator) -> List[int]:
    return pk_sample_labels([record.identity for record in manifest.records], p, k, rng)


def shuffled_batches(size: int, batch_size: int, rng: np.random.Generator) -> List[List[int]]:
    """One epoch of shuffled index chunks; a trailing singleton joins the previous chunk."""
    order = rng.permutation(size).tolist()
    batches = [order[i:i + batch_size] for i in range(0, size, batch_size)]
    if len(batches) > 1 and len(batches[-1]) < 2:
        batches[-2].extend(batches.pop())
    return batches
