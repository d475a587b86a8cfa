"""Deterministic dense symmetric eigendecomposition and norm helpers.

Every rank and PSD projection in this package reduces to `symmetric_eig`,
and replicated solver runs must produce bitwise identical traces, so
determinism matters more here than raw speed. The factorization is a
fixed-order cyclic Jacobi sweep with an explicit sign convention and a
tie-break for repeated eigenvalues, rather than a platform-dependent
LAPACK call. The sweep kernel is jitted with numba; the algorithm is
plain textbook Jacobi either way.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import InvalidInput, NumericalFailure

# Sweep budget and tolerances for the Jacobi iteration.
MAX_SWEEPS = 64
OFF_DIAG_RTOL = 1e-12
# Eigenvalues closer than this (relative to the top one) form a cluster
# whose eigenvector columns get a canonical order.
CLUSTER_RTOL = 1e-10


class EigenDecomposition(NamedTuple):
    """Eigenvalues sorted descending, eigenvectors as matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_square(x, where: str) -> np.ndarray:
    """Validate and return a finite square float64 matrix."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidInput(f"{where}: expected a square matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise InvalidInput(f"{where}: entries must be finite")
    return arr


def frobenius_norm(x) -> float:
    """Frobenius norm sqrt(sum of squared entries); accepts any array shape."""
    arr = np.asarray(x, dtype=np.float64)
    return float(np.sqrt(np.sum(arr * arr)))


@njit(cache=True)
def _jacobi_sweeps(a, u, off_tol, max_sweeps):
    """Cyclic Jacobi sweeps on `a` in place, accumulating rotations into `u`.

    Returns the number of completed sweeps, or -1 if the off-diagonal
    Frobenius norm is still above `off_tol` after `max_sweeps` sweeps.
    """
    m = a.shape[0]
    sweeps = 0
    while True:
        off = 0.0
        for p in range(m - 1):
            for q in range(p + 1, m):
                off += 2.0 * a[p, q] * a[p, q]
        if off ** 0.5 <= off_tol:
            return sweeps
        if sweeps == max_sweeps:
            return -1
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # Rotation angle that annihilates a[p, q] (Rutishauser form).
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + (theta * theta + 1.0) ** 0.5)
                else:
                    t = -1.0 / (-theta + (theta * theta + 1.0) ** 0.5)
                c = 1.0 / (t * t + 1.0) ** 0.5
                s = t * c
                for k in range(m):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(m):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                # The exact rotation zeroes the pivot; drop the roundoff.
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(m):
                    ukp = u[k, p]
                    ukq = u[k, q]
                    u[k, p] = c * ukp - s * ukq
                    u[k, q] = s * ukp + c * ukq
        sweeps += 1


def _fix_signs(u):
    # Make each column's first largest-magnitude component nonnegative.
    for k in range(u.shape[1]):
        col = u[:, k]
        idx = int(np.argmax(np.abs(col)))
        if col[idx] < 0.0:
            u[:, k] = -col
    return u


def _order_clusters(lam, u):
    # Within a run of near-equal eigenvalues the Jacobi column order is
    # arbitrary; impose descending lexicographic order on the sign-fixed
    # columns. Eigenvalues keep their sorted positions, so the descending
    # invariant holds exactly; within a cluster the pairing is free up to
    # the cluster width.
    m = lam.shape[0]
    if m == 0:
        return u
    ctol = CLUSTER_RTOL * max(1.0, abs(float(lam[0])))
    i = 0
    while i < m:
        j = i + 1
        while j < m and float(lam[j - 1]) - float(lam[j]) <= ctol:
            j += 1
        if j - i > 1:
            cols = sorted(range(i, j), key=lambda k: tuple(u[:, k]), reverse=True)
            u[:, i:j] = u[:, cols]
        i = j
    return u


def symmetric_eig(s) -> EigenDecomposition:
    """Factor a symmetric matrix as U diag(lam) U^T with deterministic output.

    Parameters
    ----------
    s : array_like
        Square symmetric matrix. Input is symmetrized as (S + S^T)/2
        before factoring; asymmetry beyond 1e-10 * ||S||_F is rejected.

    Returns
    -------
    EigenDecomposition
        Eigenvalues sorted descending with orthonormal eigenvector
        columns in matching order. Each column's first largest-magnitude
        component is made nonnegative, and columns whose eigenvalues
        agree within 1e-10 * max(1, lam_1) are ordered canonically, so
        identical input bits give identical output bits.

    Raises
    ------
    InvalidInput
        Non-square or non-finite input, or asymmetry beyond tolerance.
    NumericalFailure
        Off-diagonal norm still above 1e-12 * ||S||_F after 64 sweeps.
    """
    arr = as_square(s, "symmetric_eig")
    norm = frobenius_norm(arr)
    if frobenius_norm(arr - arr.T) > 1e-10 * norm:
        raise InvalidInput("symmetric_eig: input is not symmetric within tolerance")
    a = np.ascontiguousarray((arr + arr.T) / 2.0)
    m = a.shape[0]
    u = np.eye(m)
    sweeps = _jacobi_sweeps(a, u, OFF_DIAG_RTOL * frobenius_norm(a), MAX_SWEEPS)
    if sweeps < 0:
        raise NumericalFailure(f"Jacobi sweep budget exhausted ({MAX_SWEEPS} sweeps)")
    lam = np.diag(a).copy()
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    u = u[:, order]
    u = _order_clusters(lam, _fix_signs(u))
    lam.setflags(write=False)
    u.setflags(write=False)
    return EigenDecomposition(lam, u)
