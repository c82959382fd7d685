"""Small dense linear algebra used by the B-basis construction pipeline.

Matrices here never exceed a few hundred entries per dimension, so the
routines favor robustness and simple invariants over speed.  The unpivoted
Doolittle factorization is kept separate from the pivoted solver because
the B-basis construction relies on the triangular structure of the
factors themselves, which row pivoting would destroy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RankDeficient, Singular, ZeroDiagonal, ZeroPivot

MACHINE_EPS = np.finfo(float).eps

# Relative pivot threshold: machine epsilon with headroom.
_PIVOT_RTOL = 1e-14

# Off-diagonal mass threshold for the one-sided Jacobi sweeps.
_JACOBI_TOL = 1e-14


@dataclass(frozen=True)
class LUFactors:
    """Doolittle factors with P @ a = lower @ upper.

    ``lower`` has a unit diagonal, ``upper`` is upper triangular and
    ``permutation`` is the row permutation (identity for the unpivoted
    variant).
    """

    lower: np.ndarray
    upper: np.ndarray
    permutation: np.ndarray


@dataclass(frozen=True)
class ConditionReport:
    condition_number: float
    estimated_correct_digits: int
    stage_label: str


def as_matrix(a) -> np.ndarray:
    """Validate and return a 2-d float array with finite entries."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a nonempty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def lu_unpivoted(a) -> LUFactors:
    """Doolittle LU factorization without pivoting.

    Requires nonzero leading principal minors; raises :class:`ZeroPivot`
    when a pivot magnitude drops below ``1e-14 * max|a|``, which signals
    that the factored matrix (typically a reversed-system Wronskian) is
    numerically invalid and the caller should adjust the interval.
    """
    m = as_matrix(a)
    n, nc = m.shape
    if n != nc:
        raise ValueError("lu_unpivoted requires a square matrix")
    lower = np.eye(n)
    upper = np.zeros((n, n))
    for k in range(n):
        upper[k, k:] = m[k, k:] - lower[k, :k] @ upper[:k, k:]
        pivot = upper[k, k]
        # A pivot is unusable when cancellation wiped out its digits: compare
        # against the magnitude of the terms that produced it, not a global
        # scale, since these Wronskians mix wildly different row magnitudes.
        accumulated = abs(m[k, k]) + np.abs(lower[k, :k]) @ np.abs(upper[:k, k])
        if abs(pivot) < max(_PIVOT_RTOL * accumulated, 1e-300):
            raise ZeroPivot(k)
        if k + 1 < n:
            lower[k + 1 :, k] = (m[k + 1 :, k] - lower[k + 1 :, :k] @ upper[:k, k]) / pivot
    return LUFactors(lower=lower, upper=upper, permutation=np.arange(n))


def solve_pivoted(a, b) -> np.ndarray:
    """Solve a @ x = b with partial pivoting (LAPACK)."""
    m = as_matrix(a)
    rhs = np.asarray(b, dtype=float)
    squeeze = rhs.ndim == 1
    if squeeze:
        rhs = rhs[:, None]
    try:
        x = np.linalg.solve(m, rhs)
    except np.linalg.LinAlgError as exc:
        raise Singular(str(exc)) from exc
    if not np.all(np.isfinite(x)):
        raise Singular("solution contains non-finite entries")
    return x[:, 0] if squeeze else x


def invert_triangular(t, orientation: str) -> np.ndarray:
    """Invert a triangular matrix by substitution.

    ``orientation`` is ``"lower"`` or ``"upper"``; the result has the same
    orientation as the input.
    """
    m = as_matrix(t)
    n, nc = m.shape
    if n != nc:
        raise ValueError("invert_triangular requires a square matrix")
    if orientation not in ("lower", "upper"):
        raise ValueError(f"unknown orientation {orientation!r}")
    diag = np.diag(m)
    # Tiny diagonal entries are fine for substitution as long as they are
    # accurate; only an actual underflow to zero is fatal.
    for k in range(n):
        if abs(diag[k]) < 1e-300:
            raise ZeroDiagonal(k)
    if orientation == "upper":
        return invert_triangular(m.T, "lower").T
    inv = np.zeros((n, n))
    for j in range(n):
        inv[j, j] = 1.0 / diag[j]
        for i in range(j + 1, n):
            inv[i, j] = -(m[i, j:i] @ inv[j:i, j]) / diag[i]
    return inv


def singular_values_jacobi(a) -> np.ndarray:
    """All singular values of ``a`` via cyclic one-sided Jacobi sweeps.

    Works on the tall orientation of the matrix; sweeps stop when the
    relative off-diagonal mass of the implicit Gram matrix falls below
    1e-14.  Suited to the small dense matrices of this package.
    """
    m = as_matrix(a)
    if m.shape[0] < m.shape[1]:
        m = m.T
    w = m.copy()
    n = w.shape[1]
    for _ in range(60):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[:, p] @ w[:, q]
                app = w[:, p] @ w[:, p]
                aqq = w[:, q] @ w[:, q]
                off = max(off, abs(apq) / max(math.sqrt(app * aqq), 1e-300))
                if abs(apq) <= _JACOBI_TOL * math.sqrt(app * aqq):
                    continue
                tau = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = c * t
                wp = w[:, p].copy()
                w[:, p] = c * wp - s * w[:, q]
                w[:, q] = s * wp + c * w[:, q]
        if off <= _JACOBI_TOL:
            break
    sigma = np.sqrt(np.sum(w * w, axis=0))
    return np.sort(sigma)[::-1]


def estimated_correct_digits(condition_number: float) -> int:
    """floor(-log10(cond * eps)), clamped to be nonnegative."""
    if not math.isfinite(condition_number):
        return 0
    return max(0, math.floor(-math.log10(condition_number * MACHINE_EPS)))


def condition_svd(a, stage_label: str = "") -> ConditionReport:
    """Condition number sigma_max / sigma_min from a full Jacobi SVD.

    Rows are equilibrated (scaled to unit max magnitude) first, so the
    measure reflects the accuracy a backward-stable solver delivers
    instead of the raw scaling disparity of derivative rows.  Raises
    :class:`RankDeficient` when the smallest singular value underflows;
    the report then carries an infinite condition number and zero
    correct digits.
    """
    m = as_matrix(a)
    scale = np.max(np.abs(m), axis=1, keepdims=True)
    scale[scale == 0.0] = 1.0
    sigma = singular_values_jacobi(m / scale)
    if sigma[-1] < 1e-300:
        exc = RankDeficient(f"stage {stage_label!r}: smallest singular value underflowed")
        exc.report = ConditionReport(math.inf, 0, stage_label)
        raise exc
    cond = float(sigma[0] / sigma[-1])
    return ConditionReport(cond, estimated_correct_digits(cond), stage_label)


def condition_skeel(a, a_inv, stage_label: str = "") -> ConditionReport:
    """Skeel condition number || |a_inv| |a| ||_inf.

    Scale invariant and the right measure for triangular substitution,
    where componentwise accuracy holds regardless of diagonal scaling.
    """
    m = as_matrix(a)
    inv = as_matrix(a_inv)
    cond = float(np.max(np.sum(np.abs(inv) @ np.abs(m), axis=1)))
    return ConditionReport(cond, estimated_correct_digits(cond), stage_label)
