"""Cosine similarity with an epsilon norm guard, plus its gradients."""
from typing import Tuple

import numpy as np

from ..constants import COSINE_EPS


def cosine(a, b) -> float:
    """a.b / (max(|a|, eps) * max(|b|, eps)), clamped to [-1, 1]."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    denom = max(float(np.linalg.norm(a)), COSINE_EPS) * max(float(np.linalg.norm(b)), COSINE_EPS)
    return float(np.clip(np.dot(a, b) / denom, -1.0, 1.0))


def cosine_rows(a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row-wise cosine of two (n, d) arrays and its gradients w.r.t. each row.

    Rows whose norm is below the guard get a zero gradient.
    """
    raw_a = np.linalg.norm(a, axis=1)
    raw_b = np.linalg.norm(b, axis=1)
    na = np.maximum(raw_a, COSINE_EPS)
    nb = np.maximum(raw_b, COSINE_EPS)
    cos = np.einsum("ij,ij->i", a, b) / (na * nb)
    grad_a = b / (na * nb)[:, None] - (cos / na ** 2)[:, None] * a
    grad_b = a / (na * nb)[:, None] - (cos / nb ** 2)[:, None] * b
    grad_a[raw_a <= COSINE_EPS] = 0.0
    grad_b[raw_b <= COSINE_EPS] = 0.0
    return np.clip(cos, -1.0, 1.0), grad_a, grad_b


def cosine_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise cosine between the rows of a (m, d) and b (n, d)."""
    a_hat = a / np.maximum(np.linalg.norm(a, axis=1), COSINE_EPS)[:, None]
    b_hat = b / np.maximum(np.linalg.norm(b, axis=1), COSINE_EPS)[:, None]
    return np.clip(a_hat @ b_hat.T, -1.0, 1.0)
