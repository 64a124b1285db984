"""Explicit perturbation-bound constants and measured-versus-bound reports.

The central inequality: if two subspaces carry pinned orthonormal bases
(products with a common matrix ``d`` symmetric PSD, equal rank r), then the
distance from one pinned basis to the other's pinned family is at most
``eta * sin-theta distance`` between the subspaces, with ``eta`` an explicit
function of r, k, the smallest positive singular values of the products, and
``||d||_2``.  This module evaluates ``eta`` and friends, the singular
subspace (Wedin-type) bounds, the polar-factor perturbation bounds, and
packages full measured-vs-bound comparisons for concrete instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .alignment import align, optimal_representative, polar
from .errors import (
    DimensionMismatch,
    InvalidInput,
    NotAligned,
    NotApplicable,
    RankMismatch,
)
from .kernels import (
    _as_matrix,
    _check_kind,
    check_orthonormal,
    matrix_norm,
    singular_values,
    svd,
    truncated_norm,
)
from .metrics import canonical_angles, sin_theta_norm, truncated_sin_theta_norm

__all__ = [
    "eta",
    "xi",
    "xi_sharpened",
    "WedinBounds",
    "wedin_bound",
    "PolarFactorBounds",
    "polar_factor_bound",
    "BoundReport",
    "evaluate_instance",
]

_SQRT2 = math.sqrt(2.0)


def _positive(value, name):
    value = np.asarray(value, dtype=np.float64)
    if np.any(value <= 0.0) or not np.all(np.isfinite(value)):
        raise InvalidInput(f"{name} must be positive and finite")
    return value


def eta(kind, r, k, sigma_r, sigma_r_tilde, d_norm):
    """Bound coefficient for one norm kind and rank regime.

    Parameters
    ----------
    kind : str
        Norm kind; the trace norm takes the generic unitarily-invariant
        coefficient, while spectral and Frobenius have sharper rank-deficient
        values.
    r, k : int
        Common rank of the pinned products and the subspace dimension.
    sigma_r, sigma_r_tilde : float or array_like
        Smallest positive singular values of ``x.T @ d`` and
        ``x_tilde.T @ d``.  Arrays broadcast, for vectorized evaluation.
    d_norm : float or array_like
        Spectral norm of the pinning matrix.

    Returns
    -------
    float or ndarray
    """
    _check_kind(kind)
    r, k = int(r), int(k)
    if not 1 <= r <= k:
        raise InvalidInput(f"need 1 <= r <= k, got r={r}, k={k}")
    s = _positive(sigma_r, "sigma_r")
    st = _positive(sigma_r_tilde, "sigma_r_tilde")
    d = np.asarray(d_norm, dtype=np.float64)
    if np.any(d < 0.0) or not np.all(np.isfinite(d)):
        raise InvalidInput("d_norm must be nonnegative and finite")
    both = s + st
    largest = np.maximum(s, st)
    if r == k:
        out = _SQRT2 * (1.0 + 2.0 * d / both)
    elif kind == "frobenius":
        out = _SQRT2 * (1.0 + 2.0 * d / both) + 4.0 * d / largest
    elif kind == "spectral":
        out = (
            _SQRT2
            + np.sqrt(8.0 * (d / both) ** 2 + 4.0 * (d / largest) ** 2)
            + 4.0 * d / largest
        )
    else:  # trace, and the generic unitarily invariant coefficient
        out = _SQRT2 * (1.0 + 2.0 * d / both) + (2.0 * _SQRT2 + 4.0) * d / largest
    return float(out) if np.ndim(out) == 0 else out


def xi(kind, r, k, sigma_r, sigma_r_tilde, d_norm, sin_theta):
    """Bound value ``eta(...) * sin_theta``; homogeneous of degree 1 in
    `sin_theta` by construction."""
    sin_theta = np.asarray(sin_theta, dtype=np.float64)
    if np.any(sin_theta < 0.0) or not np.all(np.isfinite(sin_theta)):
        raise InvalidInput("sin_theta must be nonnegative and finite")
    out = eta(kind, r, k, sigma_r, sigma_r_tilde, d_norm) * sin_theta
    return float(out) if np.ndim(out) == 0 else out


def xi_sharpened(kind, r, k, sigma_r, sigma_r_tilde, d_norm, truncated_sin_theta):
    """Rank-deficient bound with the sin-theta norm truncated to the r
    largest sines.

    Never exceeds :func:`xi` evaluated on the untruncated norm, and equals it
    for the spectral kind (truncation keeps the largest sine).  Only defined
    for ``r < k``.
    """
    if int(r) >= int(k):
        raise NotApplicable("sharpening applies only to the rank-deficient regime")
    truncated_sin_theta = np.asarray(truncated_sin_theta, dtype=np.float64)
    if np.any(truncated_sin_theta < 0.0) or not np.all(np.isfinite(truncated_sin_theta)):
        raise InvalidInput("truncated_sin_theta must be nonnegative and finite")
    out = eta(kind, r, k, sigma_r, sigma_r_tilde, d_norm) * truncated_sin_theta
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class WedinBounds:
    """Singular-subspace perturbation bounds for an equal-rank pair.

    ``bound_truncated <= bound_full`` always, and both dominate the measured
    sin-theta norms of the leading left and right singular subspaces.
    """

    bound_truncated: float
    bound_full: float
    measured_left: float
    measured_right: float


def wedin_bound(b, b_tilde, r, kind):
    """Perturbation bounds for the leading rank-r singular subspaces.

    Both matrices must have numerical rank `r` (RankMismatch otherwise).  The
    bounds divide the truncated and full norms of the difference by the
    larger of the two r-th singular values.
    """
    _check_kind(kind)
    r = int(r)
    if r < 1:
        raise InvalidInput("rank r must be at least 1")
    b = _as_matrix(b, "b")
    bt = _as_matrix(b_tilde, "b_tilde")
    if b.shape != bt.shape:
        raise DimensionMismatch(f"shapes differ: {b.shape} vs {bt.shape}")
    fb, ft = svd(b), svd(bt)
    if fb.numerical_rank != r or ft.numerical_rank != r:
        raise RankMismatch(
            f"expected numerical rank {r}, got {fb.numerical_rank} and {ft.numerical_rank}"
        )
    denom = max(float(fb.sigma[r - 1]), float(ft.sigma[r - 1]))
    fmat = bt - b
    bound_truncated = truncated_norm(fmat, r, kind) / denom
    bound_full = matrix_norm(fmat, kind) / denom
    measured_left = sin_theta_norm(canonical_angles(fb.u[:, :r], ft.u[:, :r]), kind)
    measured_right = sin_theta_norm(canonical_angles(fb.v[:, :r], ft.v[:, :r]), kind)
    return WedinBounds(
        bound_truncated=bound_truncated,
        bound_full=bound_full,
        measured_left=measured_left,
        measured_right=measured_right,
    )


@dataclass(frozen=True)
class PolarFactorBounds:
    """Perturbation bounds for canonical polar factors of an equal-rank pair.

    ``bound_generic`` holds for every unitarily invariant norm;
    ``bound_improved`` is the sharper spectral/Frobenius value, None for the
    trace norm and for the square full-rank case where the generic bound is
    already the strong one.
    """

    measured: float
    bound_generic: float
    bound_improved: float | None


def polar_factor_bound(b, b_tilde, kind, tol=None, rtol=None):
    """Measured polar-factor change and its predicted bounds.

    For square full-rank pairs the generic coefficient is
    ``2 / (sigma_r + sigma_r~)``; otherwise it gains ``2 / max(sigma_r,
    sigma_r~)``.  The improved Frobenius coefficient drops that extra term;
    the improved spectral coefficient is
    ``sqrt(4 / (sigma_r + sigma_r~)**2 + 2 / max(...)**2)``.
    """
    _check_kind(kind)
    b = _as_matrix(b, "b")
    bt = _as_matrix(b_tilde, "b_tilde")
    if b.shape != bt.shape:
        raise DimensionMismatch(f"shapes differ: {b.shape} vs {bt.shape}")
    pb = polar(b, tol=tol, rtol=rtol)
    pt = polar(bt, tol=tol, rtol=rtol)
    if pb.r != pt.r:
        raise RankMismatch(f"numerical ranks differ: {pb.r} vs {pt.r}")
    r = pb.r
    if r < 1:
        raise InvalidInput("both matrices are numerically zero")
    n, m = b.shape
    s_r = float(singular_values(b)[r - 1])
    st_r = float(singular_values(bt)[r - 1])
    diff_norm = matrix_norm(bt - b, kind)
    measured = matrix_norm(pt.q - pb.q, kind)
    if r == n == m:
        return PolarFactorBounds(
            measured=measured,
            bound_generic=2.0 / (s_r + st_r) * diff_norm,
            bound_improved=None,
        )
    generic = (2.0 / (s_r + st_r) + 2.0 / max(s_r, st_r)) * diff_norm
    if kind == "frobenius":
        improved = 2.0 / (s_r + st_r) * diff_norm
    elif kind == "spectral":
        improved = (
            math.sqrt(4.0 / (s_r + st_r) ** 2 + 2.0 / max(s_r, st_r) ** 2) * diff_norm
        )
    else:
        improved = None
    return PolarFactorBounds(
        measured=measured, bound_generic=generic, bound_improved=improved
    )


@dataclass(frozen=True)
class BoundReport:
    """All inputs and outputs of one bound evaluation.

    ``measured`` is exact for the full-rank regime and for freedom size 1
    (two-member family, exact minimum); for larger freedom it is exact in the
    Frobenius norm and otherwise the upper endpoint of the bracketing
    interval ``[measured_lower, measured_upper]`` around the true minimum.
    ``slack`` is ``xi / measured`` (infinite when measured is zero), and
    ``xi_sharpened`` is None in the full-rank regime.
    """

    kind: str
    regime: str
    r: int
    k: int
    sigma_r: float
    sigma_r_tilde: float
    d_norm: float
    sin_theta: float
    sin_theta_truncated: float
    eta: float
    xi: float
    xi_sharpened: float | None
    measured: float
    measured_lower: float
    measured_upper: float
    slack: float
    rank_tolerance: float


def _require_psd(g, d_norm, label):
    """Check that g is symmetric PSD to within 1e-10 * ||d||_2."""
    tol = 1e-10 * d_norm
    asym = float(np.linalg.norm(g - g.T))
    if asym > tol:
        raise NotAligned(f"{label} is not symmetric: asymmetry {asym:.3e} > {tol:.3e}")
    floor = float(np.linalg.eigvalsh((g + g.T) / 2.0)[0])
    if floor < -tol:
        raise NotAligned(
            f"{label} is not positive semidefinite: min eigenvalue {floor:.3e}"
        )


def evaluate_instance(x, x_tilde, d, kind, tol=None, rtol=None):
    """Measure one pinned pair against the predicted bound.

    Parameters
    ----------
    x, x_tilde : (n, k) array_like
        Orthonormal bases with ``x.T @ d`` and ``x_tilde.T @ d`` symmetric
        PSD.  This is verified, not assumed (NotAligned on failure), and the
        two products must share a numerical rank (RankMismatch otherwise).
    d : (n, k) array_like
        Pinning matrix.
    kind : str
        Norm kind for the distances and bound.
    tol, rtol : float, optional
        Rank tolerance for both products, recorded in the report.

    Returns
    -------
    BoundReport
    """
    _check_kind(kind)
    x = check_orthonormal(x, name="x")
    xt = check_orthonormal(x_tilde, name="x_tilde")
    if x.shape != xt.shape:
        raise DimensionMismatch(f"basis shapes differ: {x.shape} vs {xt.shape}")
    d = _as_matrix(d, "d")
    n, k = x.shape
    if d.shape != (n, k):
        raise DimensionMismatch(f"d must be {n}x{k}, got {d.shape[0]}x{d.shape[1]}")

    d_norm = float(np.linalg.norm(d, 2))
    g = x.T @ d
    gt = xt.T @ d
    _require_psd(g, d_norm, "x.T @ d")
    _require_psd(gt, d_norm, "x_tilde.T @ d")
    fg = svd(g, tol=tol, rtol=rtol)
    fgt = svd(gt, tol=tol, rtol=rtol)
    r = fg.numerical_rank
    if r != fgt.numerical_rank:
        raise RankMismatch(
            f"rank(x.T d) = {r} but rank(x_tilde.T d) = {fgt.numerical_rank}"
        )
    if r == 0:
        raise InvalidInput("x.T @ d vanishes; the bound needs a positive singular value")
    sigma_r = float(fg.sigma[r - 1])
    sigma_rt = float(fgt.sigma[r - 1])

    angles = canonical_angles(x, xt)
    sin_t = sin_theta_norm(angles, kind)
    sin_trunc = truncated_sin_theta_norm(angles, r, kind)
    eta_val = eta(kind, r, k, sigma_r, sigma_rt, d_norm)
    xi_val = eta_val * sin_t
    sharp = eta_val * sin_trunc if r < k else None

    if r == k:
        measured = matrix_norm(x - xt, kind)
        lower = upper = measured
    else:
        _, aset = align(x, d, tol=tol, rtol=rtol)
        if aset.freedom == 1:
            measured = min(
                matrix_norm(xt - aset.member(np.array([[s]])), kind) for s in (1.0, -1.0)
            )
            lower = upper = measured
        else:
            y_opt, _ = optimal_representative(aset, xt)
            dist_f = float(np.linalg.norm(xt - y_opt))
            if kind == "frobenius":
                measured = lower = upper = dist_f
            elif kind == "spectral":
                lower = dist_f / math.sqrt(k)
                upper = matrix_norm(xt - y_opt, "spectral")
                measured = upper
            else:
                lower = dist_f
                upper = matrix_norm(xt - y_opt, "trace")
                measured = upper

    slack = xi_val / measured if measured > 0.0 else math.inf
    return BoundReport(
        kind=kind,
        regime="full_rank" if r == k else "rank_deficient",
        r=r,
        k=k,
        sigma_r=sigma_r,
        sigma_r_tilde=sigma_rt,
        d_norm=d_norm,
        sin_theta=sin_t,
        sin_theta_truncated=sin_trunc,
        eta=eta_val,
        xi=xi_val,
        xi_sharpened=sharp,
        measured=measured,
        measured_lower=lower,
        measured_upper=upper,
        slack=slack,
        rank_tolerance=fg.rank_tolerance,
    )
