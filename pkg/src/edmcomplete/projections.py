"""Projection and reflection operators for the two completion constraint sets.

The data set fixes the known entries and keeps free entries nonnegative;
the rank set contains the matrices whose conjugated leading block is PSD
with bounded rank. Their projections are the two half-steps of the
Douglas-Rachford iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .edm import HouseholderBlocks, PartialEDM, merge_blocks, split_blocks
from .errors import InvalidInput
from .linalg import as_square, symmetric_eig


@dataclass(frozen=True, eq=False)
class DataConstraint:
    """Matrices agreeing with the partial EDM on its mask, nonnegative elsewhere."""

    partial: PartialEDM


@dataclass(frozen=True)
class RankEdmConstraint:
    """Matrices whose conjugated leading block is PSD with rank at most rank_bound."""

    order: int
    rank_bound: int

    def __post_init__(self):
        if self.order < 2:
            raise InvalidInput("RankEdmConstraint: order must be at least 2")
        if not 1 <= self.rank_bound <= self.order - 1:
            raise InvalidInput(
                f"RankEdmConstraint: rank bound {self.rank_bound} out of range for order {self.order}"
            )


def project_data(x, c: DataConstraint) -> np.ndarray:
    """Nearest matrix with the known entries in place and free entries clamped at zero.

    Element-wise: known (i, j) take the stored squared distance, free
    entries take max(0, x_ij). Exact and idempotent.
    """
    arr = as_square(x, "project_data")
    if arr.shape[0] != c.partial.order:
        raise InvalidInput("project_data: order mismatch with constraint")
    return np.where(c.partial.mask, c.partial.values, np.maximum(arr, 0.0))


def project_rank_psd(s, q: int) -> np.ndarray:
    """Nearest PSD matrix of rank at most q, by eigenvalue clamp and truncation.

    Keeps the q leading eigenvalues clamped at zero and discards the rest;
    for distinct leading eigenvalues this is the unique Frobenius-nearest
    point, and the deterministic eigensolver makes the selection unique
    even with repeats.
    """
    arr = as_square(s, "project_rank_psd")
    if not 1 <= q <= arr.shape[0]:
        raise InvalidInput(f"project_rank_psd: rank {q} out of range for order {arr.shape[0]}")
    lam, u = symmetric_eig(arr)
    kept = np.clip(lam[:q], 0.0, None)
    lead = u[:, :q]
    y = (lead * kept) @ lead.T
    return (y + y.T) / 2.0


def project_rank_edm(x, c: RankEdmConstraint) -> np.ndarray:
    """Nearest matrix in the rank constraint set.

    Split off the conjugated blocks, replace the leading block by its
    rank-bounded PSD projection, keep the border and corner, and conjugate
    back. Nonnegativity and hollowness are deliberately NOT enforced here;
    they belong to the data constraint.
    """
    arr = as_square(x, "project_rank_edm")
    if arr.shape[0] != c.order:
        raise InvalidInput("project_rank_edm: order mismatch with constraint")
    # Symmetrize defensively; iterates can drift over thousands of steps.
    a = (arr + arr.T) / 2.0
    blocks = split_blocks(a)
    yhat = project_rank_psd(blocks.xhat, c.rank_bound)
    return merge_blocks(HouseholderBlocks(yhat, blocks.d, blocks.delta))


def reflect(proj_output, x) -> np.ndarray:
    """Reflection through a projection: 2 * proj_output - x."""
    p = np.asarray(proj_output, dtype=np.float64)
    arr = np.asarray(x, dtype=np.float64)
    if p.shape != arr.shape:
        raise InvalidInput("reflect: shape mismatch")
    return 2.0 * p - arr
