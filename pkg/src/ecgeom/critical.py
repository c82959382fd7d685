"""Critical length of an ODE solution space.

The normalized B-basis exists on [alpha, beta] exactly when the interval
is shorter than the critical length of the space.  For spaces with only
real characteristic zeros the critical length is infinite.  Otherwise it
is the distance from alpha to the first zero of any of the Wronskian
determinants w_i(u) formed from the solutions vanishing to order at
least i at alpha, for i above half the dimension.  For spaces that are
not reflection invariant the reflected space (all zeros negated) must be
scanned as well, since the two endpoint roles are not symmetric.

Constant coefficients make the problem translation invariant, so any
fixed initial-value basis at alpha can be used; the determinant zeros do
not depend on the basis choice within the span.
"""

from __future__ import annotations

import math

import numpy as np

from .basis import ordinary_basis, ordinary_collocation
from .charpoly import (
    CharacteristicPolynomial,
    derivative_polynomial,
    is_reflection_invariant,
    reflected_polynomial,
)
from .errors import SearchFailed

BISECTION_TOL = 1e-10


def _initial_value_coeffs(p: CharacteristicPolynomial, alpha: float) -> tuple:
    """Coefficients of the basis y_k with y_k^{(j)}(alpha) = delta_{jk}."""
    funcs = ordinary_basis(p)
    n = len(funcs) - 1
    phi = ordinary_collocation(funcs, alpha, n)[:, :, 0]  # [j, m]
    coeffs = np.linalg.solve(phi, np.eye(n + 1))  # column k: y_k
    return funcs, coeffs


def _det(funcs, coeffs, i, u) -> tuple[float, float, bool]:
    """(sign, log|det|) of det W[y_i..y_n](u); last value flags overflow."""
    n = len(funcs) - 1
    table = ordinary_collocation(funcs, u, n - i)[:, :, 0]  # [r, m]
    m = table @ coeffs[:, i:]
    if not np.all(np.isfinite(m)):
        return 0.0, math.inf, False
    sign, logdet = np.linalg.slogdet(m)
    if sign != 0.0 and not math.isfinite(logdet):
        return 0.0, math.inf, False
    return float(sign), float(logdet), True

# A local |det| minimum this far (relatively) below its neighborhood is a
# zero that the determinant touches without a sign change.
_TOUCH_RTOL = 1e-8


def _refine_touch(funcs, coeffs, i, lo, hi, ref_logmag) -> float | None:
    """Golden-section minimum of log|w| on [lo, hi]; its location when the
    dip is deep enough to be an even-multiplicity zero, else None."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc = _det(funcs, coeffs, i, c)[1]
    fd = _det(funcs, coeffs, i, d)[1]
    while b - a > BISECTION_TOL:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = _det(funcs, coeffs, i, c)[1]
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = _det(funcs, coeffs, i, d)[1]
    u_min = 0.5 * (a + b)
    log_min = _det(funcs, coeffs, i, u_min)[1]
    if log_min - ref_logmag <= math.log(_TOUCH_RTOL):
        return u_min
    return None


def _first_zero(funcs, coeffs, i, alpha, cap, step) -> float | None:
    """Smallest u - alpha in (0, cap] with w_i(u) = 0, or None.

    Sign changes on the grid are bisected; grid-local minima of |w| that
    dip far below their neighborhood are refined as touch zeros.
    """
    u_prev = alpha + step
    sign_prev, log_prev, ok = _det(funcs, coeffs, i, u_prev)
    if not ok:
        raise SearchFailed("determinant overflowed at the start of the scan")
    window: list[tuple[float, float]] = [(u_prev, log_prev)]
    u = u_prev
    while u - alpha < cap:
        u = min(u + step, alpha + cap)
        sign, logmag, ok = _det(funcs, coeffs, i, u)
        if not ok:
            raise SearchFailed(f"determinant overflowed at u = {u:g} before a zero was bracketed")
        if sign == 0.0:
            return u - alpha
        if sign * sign_prev < 0.0:
            lo, hi = u_prev, u
            while hi - lo > BISECTION_TOL:
                mid = 0.5 * (lo + hi)
                s_mid, _, ok = _det(funcs, coeffs, i, mid)
                if not ok or s_mid == 0.0:
                    return mid - alpha
                if s_mid * sign_prev < 0.0:
                    hi = mid
                else:
                    lo = mid
            return 0.5 * (lo + hi) - alpha
        window.append((u, logmag))
        if len(window) >= 3:
            (u0, f0), (u1, f1), (u2, f2) = window[-3:]
            if f1 < f0 and f1 < f2:
                hit = _refine_touch(funcs, coeffs, i, u0, u2, max(f0, f2))
                if hit is not None:
                    return hit - alpha
        u_prev, sign_prev = u, sign
    return None


def _scan_polynomial(p: CharacteristicPolynomial, alpha, cap, step) -> float:
    funcs, coeffs = _initial_value_coeffs(p, alpha)
    n = len(funcs) - 1
    best = math.inf
    for i in range(n // 2 + 1, n + 1):
        hit = _first_zero(funcs, coeffs, i, alpha, cap, step)
        if hit is not None:
            best = min(best, hit)
    return best


def critical_length(
    p: CharacteristicPolynomial,
    alpha: float = 0.0,
    search_cap: float | None = None,
    grid_step: float | None = None,
) -> float:
    """Critical length of the solution space of ``p``.

    Returns ``inf`` when every characteristic zero is real, or when no
    determinant zero lies within ``search_cap`` of alpha (default
    ``8 * (|alpha| + 1)``).  Zeros are bracketed on a grid of spacing
    ``grid_step`` (default cap / 4096) and bisected to 1e-10.
    """
    if all(z.im == 0.0 for z in p.zeros):
        return math.inf
    cap = 8.0 * (abs(alpha) + 1.0) if search_cap is None else float(search_cap)
    step = cap / 4096.0 if grid_step is None else float(grid_step)
    best = _scan_polynomial(p, alpha, cap, step)
    if not is_reflection_invariant(p):
        best = min(best, _scan_polynomial(reflected_polynomial(p), alpha, cap, step))
    return best


def critical_length_for_design(
    p: CharacteristicPolynomial,
    alpha: float = 0.0,
    search_cap: float | None = None,
    grid_step: float | None = None,
) -> float:
    """Critical length for design: that of the derivative space of ``p``.

    Intervals below this bound additionally guarantee the variation
    diminishing shape properties of the B-basis representation.
    """
    return critical_length(derivative_polynomial(p), alpha, search_cap, grid_step)
