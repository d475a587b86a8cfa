"""Procrustes alignment and the two reconstruction error metrics.

EDMs are blind to rigid motion, so a reconstruction can only be compared
to ground truth after the best translation, rotation, and (permitted)
reflection has been applied. There is no scaling step; the distances
themselves fix the scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .edm import PointCloud
from .errors import InvalidInput
from .linalg import as_square, frobenius_norm


@dataclass(frozen=True, eq=False)
class AlignmentResult:
    """Aligned copy of the reconstructed cloud plus the rigid motion used."""

    aligned: PointCloud
    rotation: np.ndarray
    translation: np.ndarray


def procrustes_align(actual: PointCloud, reconstructed: PointCloud) -> AlignmentResult:
    """Best rigid alignment of the reconstructed cloud onto the actual one.

    Centers both clouds, factors the q x q cross-covariance by SVD, and
    applies the orthogonal map minimizing the summed squared deviations.
    Reflections are accepted as-is (no determinant correction) and there
    is no scaling.
    """
    if actual.order != reconstructed.order or actual.dim != reconstructed.dim:
        raise InvalidInput("procrustes_align: point counts and dimensions must match")
    a = actual.coords
    b = reconstructed.coords
    ca = a.mean(axis=0)
    cb = b.mean(axis=0)
    cross = (b - cb).T @ (a - ca)
    u, _, vt = np.linalg.svd(cross)
    rot = (u @ vt).T
    aligned = (b - cb) @ rot.T + ca
    translation = ca - rot @ cb
    cloud = PointCloud(aligned, reconstructed.elements, reconstructed.residues)
    return AlignmentResult(aligned=cloud, rotation=rot, translation=translation)


def edm_error(actual, reconstructed) -> float:
    """Frobenius norm of the difference between two distance matrices."""
    a = as_square(actual, "edm_error")
    b = as_square(reconstructed, "edm_error")
    if a.shape != b.shape:
        raise InvalidInput("edm_error: order mismatch")
    return frobenius_norm(a - b)


def position_error(actual: PointCloud, aligned: PointCloud) -> float:
    """Root of the summed squared point displacements after alignment."""
    if actual.order != aligned.order or actual.dim != aligned.dim:
        raise InvalidInput("position_error: point counts and dimensions must match")
    return frobenius_norm(actual.coords - aligned.coords)
