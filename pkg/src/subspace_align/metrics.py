"""Canonical angles between equal-dimensional subspaces and the sin-theta
family of distances, plus the optimal rotation aligning one orthonormal basis
to another."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidInput
from .kernels import (
    NORM_KINDS,
    _check_kind,
    _gauge,
    check_orthonormal,
    matrix_norm,
    orthonormal_completion,
)

__all__ = [
    "AngleSpectrum",
    "canonical_angles",
    "sin_theta_norm",
    "truncated_sin_theta_norm",
    "subspace_distance",
    "align_rotation",
]


@dataclass(frozen=True)
class AngleSpectrum:
    """Cosines and sines of the canonical angles between two k-dim subspaces.

    ``cosines`` are nonincreasing and ``sines`` nondecreasing, both clamped to
    [0, 1], sorted so index i of each array belongs to the same angle:
    ``sines[i]**2 + cosines[i]**2 == 1`` up to roundoff.  The sines are
    computed from the product with an orthonormal completion rather than as
    ``sqrt(1 - cos**2)``, so they keep full relative accuracy for nearly
    coincident subspaces.
    """

    cosines: np.ndarray
    sines: np.ndarray

    @property
    def k(self):
        return int(self.sines.shape[0])


def canonical_angles(x, y):
    """Canonical angles between the column spaces of two orthonormal bases.

    Parameters
    ----------
    x, y : (n, k) array_like
        Orthonormal bases of two k-dimensional subspaces of R^n.

    Returns
    -------
    AngleSpectrum

    Notes
    -----
    Cosines are the singular values of ``x.T @ y``; sines are the singular
    values of ``xp.T @ y`` where ``xp`` completes `x` to an orthogonal matrix,
    padded with zeros when the subspace dimension exceeds the codimension.
    The result depends only on the two subspaces, not the basis choices.
    """
    x = check_orthonormal(x, name="x")
    y = check_orthonormal(y, name="y")
    if x.shape != y.shape:
        raise DimensionMismatch(f"basis shapes differ: {x.shape} vs {y.shape}")
    n, k = x.shape
    cosines = np.clip(np.linalg.svd(x.T @ y, compute_uv=False), 0.0, 1.0)
    sines = np.zeros(k)
    if n > k:
        xp = orthonormal_completion(x)
        sv = np.linalg.svd(xp.T @ y, compute_uv=False)
        # ascending, padded with the zero sines forced when 2k > n
        sines[k - sv.size :] = np.clip(sv[::-1], 0.0, 1.0)
    return AngleSpectrum(cosines=cosines, sines=sines)


def sin_theta_norm(angles, kind):
    """Norm of the diagonal matrix of canonical-angle sines."""
    _check_kind(kind)
    return _gauge(angles.sines, kind)


def truncated_sin_theta_norm(angles, r, kind):
    """Norm of the `r` largest canonical-angle sines only."""
    _check_kind(kind)
    r = int(r)
    if r < 1:
        raise InvalidInput("truncation rank r must be at least 1")
    return _gauge(angles.sines[-r:], kind)


def subspace_distance(x, y, kind="frobenius"):
    """Sin-theta distance between the column spaces of `x` and `y`."""
    return sin_theta_norm(canonical_angles(x, y), kind)


def align_rotation(x, y):
    """Orthogonal k-by-k rotation `q` that best maps `y` onto `x`.

    `q` is the orthogonal polar factor of ``y.T @ x`` (the orthogonal
    Procrustes solution), unique when ``y.T @ x`` has full rank.  For this
    `q` the residual is sandwiched between the sin-theta distance and sqrt(2)
    times it, in every shipped norm.

    Returns
    -------
    q : (k, k) ndarray
    residuals : dict
        ``norm(x - y @ q)`` for each norm kind.
    """
    x = check_orthonormal(x, name="x")
    y = check_orthonormal(y, name="y")
    if x.shape != y.shape:
        raise DimensionMismatch(f"basis shapes differ: {x.shape} vs {y.shape}")
    u, _, vt = np.linalg.svd(y.T @ x)
    q = u @ vt
    diff = x - y @ q
    residuals = {kind: matrix_norm(diff, kind) for kind in NORM_KINDS}
    return q, residuals
