"""Rank-revealing helpers for small dense matrices.

All subspace computations in the package go through these functions so
that the rank tolerance (1e-9, relative to the largest singular value)
is applied uniformly. Basis vectors are sign-normalized (largest-magnitude
entry positive) to keep outputs deterministic across runs.
"""

from __future__ import annotations

import numpy as np

RANK_RTOL = 1e-9


def _normalize_columns(B: np.ndarray) -> np.ndarray:
    B = np.array(B, dtype=float)
    for j in range(B.shape[1]):
        col = B[:, j]
        k = int(np.argmax(np.abs(col)))
        if col[k] < 0:
            B[:, j] = -col
    return B


def rank(A: np.ndarray, rtol: float = RANK_RTOL) -> int:
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def nullspace(A: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis of the right null space, as columns of an (n, k) array."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    m, n = A.shape
    if m == 0 or n == 0:
        return np.eye(n)
    u, s, vt = np.linalg.svd(A)
    if s.size == 0 or s[0] == 0.0:
        r = 0
    else:
        r = int(np.sum(s > rtol * s[0]))
    return _normalize_columns(vt[r:].T)


def column_space(A: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis of the column space, as columns of an (m, r) array."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    m, n = A.shape
    if m == 0 or n == 0:
        return np.zeros((m, 0))
    u, s, vt = np.linalg.svd(A)
    if s.size == 0 or s[0] == 0.0:
        r = 0
    else:
        r = int(np.sum(s > rtol * s[0]))
    return _normalize_columns(u[:, :r])


def span_contains(basis: np.ndarray, vectors: np.ndarray, rtol: float = RANK_RTOL) -> bool:
    """True iff every column of `vectors` lies in the column span of `basis`."""
    basis = np.asarray(basis, dtype=float)
    vectors = np.asarray(vectors, dtype=float)
    if vectors.size == 0:
        return True
    joint = np.hstack([basis, vectors]) if basis.size else vectors
    return rank(joint, rtol) == rank(basis, rtol)


def intersects_trivially(A: np.ndarray, B: np.ndarray, rtol: float = RANK_RTOL) -> bool:
    """True iff the column spans of A and B meet only in the zero vector."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    ra, rb = rank(A, rtol), rank(B, rtol)
    if ra == 0 or rb == 0:
        return True
    return rank(np.hstack([A, B]), rtol) == ra + rb


def orthogonal_complement(basis: np.ndarray, gram: np.ndarray | None = None,
                          rtol: float = RANK_RTOL) -> np.ndarray:
    """Complement of the column span of `basis` w.r.t. an inner product.

    With gram matrix G (default identity), returns columns spanning
    {v : b^T G v = 0 for every column b of basis}.
    """
    basis = np.asarray(basis, dtype=float)
    n = basis.shape[0]
    if basis.shape[1] == 0:
        return np.eye(n)
    G = np.eye(n) if gram is None else np.asarray(gram, dtype=float)
    return nullspace(basis.T @ G, rtol)
