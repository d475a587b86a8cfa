"""EDM domain types and conversions between point clouds and distance matrices.

A Euclidean distance matrix (EDM) here always stores SQUARED pairwise
distances in square angstroms. Thresholds expressed in distance units
(cutoffs, radii) live at the observation layer and are squared before
they touch a matrix.

Embeddability is decided through the Householder conjugation test of
Hayden and Wells: X is an EDM exactly when the leading block of Q(-X)Q
is positive semidefinite, and the rank of that block is the embedding
dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import InvalidInput
from .linalg import as_square, frobenius_norm, symmetric_eig


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Labeled points in R^q: coordinates plus per-point element and residue tags."""

    coords: np.ndarray
    elements: tuple
    residues: tuple

    def __post_init__(self):
        coords = np.array(self.coords, dtype=np.float64)
        if coords.ndim != 2 or coords.shape[0] < 1 or coords.shape[1] < 1:
            raise InvalidInput("PointCloud: coords must be a nonempty m x q array")
        if not np.isfinite(coords).all():
            raise InvalidInput("PointCloud: coordinates must be finite")
        elements = tuple(str(e) for e in self.elements)
        residues = tuple(int(r) for r in self.residues)
        if len(elements) != coords.shape[0] or len(residues) != coords.shape[0]:
            raise InvalidInput("PointCloud: labels must match the point count")
        if any(r < 0 for r in residues):
            raise InvalidInput("PointCloud: residue indices must be nonnegative")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "residues", residues)

    @classmethod
    def unlabeled(cls, coords) -> "PointCloud":
        """Wrap bare coordinates with placeholder labels (element X, residue 0)."""
        coords = np.asarray(coords, dtype=np.float64)
        if coords.ndim != 2:
            raise InvalidInput("PointCloud.unlabeled: coords must be 2-dimensional")
        m = coords.shape[0]
        return cls(coords, ("X",) * m, (0,) * m)

    @property
    def order(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]


@dataclass(frozen=True, eq=False)
class PartialEDM:
    """Squared distances known on a symmetric index set that includes the diagonal.

    `mask` is True where the entry is known; `values` holds the known
    squared distances and is zero elsewhere. Construction enforces the
    three structural assumptions: hollow, symmetric, nonnegative.
    """

    mask: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        mask = np.array(self.mask, dtype=bool)
        values = np.array(self.values, dtype=np.float64)
        if mask.ndim != 2 or mask.shape[0] != mask.shape[1]:
            raise InvalidInput("PartialEDM: mask must be square")
        if values.shape != mask.shape:
            raise InvalidInput("PartialEDM: values shape must match mask")
        if not np.isfinite(values).all():
            raise InvalidInput("PartialEDM: values must be finite")
        if not mask.diagonal().all():
            raise InvalidInput("PartialEDM: diagonal pairs must be known")
        if not np.array_equal(mask, mask.T):
            raise InvalidInput("PartialEDM: mask must be symmetric")
        values = np.where(mask, values, 0.0)
        if np.any(values.diagonal() != 0.0):
            raise InvalidInput("PartialEDM: diagonal values must be zero")
        if not np.array_equal(values, values.T):
            raise InvalidInput("PartialEDM: values must be symmetric")
        if np.any(values < 0.0):
            raise InvalidInput("PartialEDM: squared distances must be nonnegative")
        mask.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "values", values)

    @property
    def order(self) -> int:
        return self.mask.shape[0]

    @property
    def known_pairs(self) -> int:
        """Number of known off-diagonal unordered pairs."""
        return int((np.count_nonzero(self.mask) - self.order) // 2)


class HouseholderBlocks(NamedTuple):
    """Blocks of Q(-X)Q: the leading (m-1)x(m-1) block, its border, the corner."""

    xhat: np.ndarray
    d: np.ndarray
    delta: float


@lru_cache(maxsize=None)
def householder_q(m: int) -> np.ndarray:
    """Householder involution whose conjugation exposes the PSD block of an EDM.

    Q = I - 2 v v^T / (v^T v) with v = (1, ..., 1, 1 + sqrt(m)). Symmetric
    and its own inverse.
    """
    if m < 2:
        raise InvalidInput("householder_q: order must be at least 2")
    v = np.ones(m)
    v[m - 1] = 1.0 + np.sqrt(m)
    q = np.eye(m) - 2.0 * np.outer(v, v) / float(v @ v)
    q.setflags(write=False)
    return q


def split_blocks(x) -> HouseholderBlocks:
    """Conjugate -X by the Householder matrix and return the three blocks."""
    arr = as_square(x, "split_blocks")
    m = arr.shape[0]
    if m < 2:
        raise InvalidInput("split_blocks: order must be at least 2")
    if frobenius_norm(arr - arr.T) > 1e-10 * max(1.0, frobenius_norm(arr)):
        raise InvalidInput("split_blocks: input is not symmetric within tolerance")
    a = (arr + arr.T) / 2.0
    q = householder_q(m)
    w = q @ (-a) @ q
    w = (w + w.T) / 2.0
    return HouseholderBlocks(w[: m - 1, : m - 1].copy(), w[: m - 1, m - 1].copy(), float(w[m - 1, m - 1]))


def merge_blocks(blocks: HouseholderBlocks) -> np.ndarray:
    """Inverse of split_blocks: rebuild X from conjugated blocks."""
    xhat = np.asarray(blocks.xhat, dtype=np.float64)
    d = np.asarray(blocks.d, dtype=np.float64)
    if xhat.ndim != 2 or xhat.shape[0] != xhat.shape[1]:
        raise InvalidInput("merge_blocks: xhat must be square")
    if d.shape != (xhat.shape[0],):
        raise InvalidInput("merge_blocks: border length must match xhat order")
    m = xhat.shape[0] + 1
    w = np.empty((m, m))
    w[: m - 1, : m - 1] = (xhat + xhat.T) / 2.0
    w[: m - 1, m - 1] = d
    w[m - 1, : m - 1] = d
    w[m - 1, m - 1] = float(blocks.delta)
    q = householder_q(m)
    out = -(q @ w @ q)
    return (out + out.T) / 2.0


def is_edm(x, tol: float = 1e-8):
    """Decide embeddability and report the embedding dimension.

    Returns (ok, embedding_dim). Structural violations (asymmetry, nonzero
    diagonal, negative entries) yield (False, 0) rather than an error. For
    structurally valid input, ok means the conjugated leading block is PSD
    within tol, and embedding_dim counts its eigenvalues above
    tol * max(1, lam_max).
    """
    if not tol > 0.0:
        raise InvalidInput("is_edm: tolerance must be positive")
    arr = as_square(x, "is_edm")
    m = arr.shape[0]
    if m < 1:
        raise InvalidInput("is_edm: matrix must be nonempty")
    scale = max(1.0, frobenius_norm(arr))
    if frobenius_norm(arr - arr.T) > tol * scale:
        return False, 0
    if float(np.max(np.abs(arr.diagonal()))) > tol * scale:
        return False, 0
    if float(arr.min()) < -tol * scale:
        return False, 0
    if m == 1:
        return True, 0
    blocks = split_blocks((arr + arr.T) / 2.0)
    lam, _ = symmetric_eig(blocks.xhat)
    thresh = tol * max(1.0, float(lam[0]))
    ok = bool(lam[-1] >= -thresh)
    dim = int(np.count_nonzero(lam > thresh))
    return ok, dim


def edm_from_points(pc) -> np.ndarray:
    """Squared pairwise distance matrix of a point cloud.

    Accepts a PointCloud or a bare m x q coordinate array. The broadcasted
    difference form keeps the result bitwise symmetric with an exactly
    zero diagonal.
    """
    coords = pc.coords if isinstance(pc, PointCloud) else np.asarray(pc, dtype=np.float64)
    if coords.ndim != 2 or coords.shape[0] < 1:
        raise InvalidInput("edm_from_points: expected a nonempty m x q array")
    if not np.isfinite(coords).all():
        raise InvalidInput("edm_from_points: coordinates must be finite")
    diff = coords[:, None, :] - coords[None, :, :]
    return np.sum(diff * diff, axis=-1)


def points_from_edm(x, q: int, like: PointCloud | None = None) -> PointCloud:
    """Recover centered coordinates from an EDM by classical scaling.

    The Gram-like matrix tau = -J X J / 2 (J the centering projector) is
    factored with the deterministic eigensolver; the top q eigenvalues are
    clamped at zero and square-rooted to scale the leading eigenvector
    columns. Clamping makes the conversion total on inexact EDMs, whose
    tau picks up a small negative spectrum.

    Parameters
    ----------
    x : array_like
        Symmetric hollow nonnegative matrix of order m.
    q : int
        Target embedding dimension, 1 <= q <= m - 1.
    like : PointCloud, optional
        Source of element/residue labels; placeholder labels otherwise.
    """
    arr = as_square(x, "points_from_edm")
    m = arr.shape[0]
    if not 1 <= q <= m - 1:
        raise InvalidInput(f"points_from_edm: rank {q} out of range for order {m}")
    a = (arr + arr.T) / 2.0
    j = np.eye(m) - np.full((m, m), 1.0 / m)
    tau = -(j @ a @ j) / 2.0
    tau = (tau + tau.T) / 2.0
    lam, u = symmetric_eig(tau)
    lead = np.clip(lam[:q], 0.0, None)
    coords = u[:, :q] * np.sqrt(lead)
    coords = coords - coords.mean(axis=0)
    if like is not None:
        if like.order != m:
            raise InvalidInput("points_from_edm: label source order mismatch")
        return PointCloud(coords, like.elements, like.residues)
    return PointCloud.unlabeled(coords)
