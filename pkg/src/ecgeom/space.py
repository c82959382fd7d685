"""Construction of the normalized B-basis of an ODE solution space.

The pipeline, given the characteristic polynomial and an interval
[alpha, beta] shorter than the critical length:

1. evaluate endpoint derivatives of the ordinary basis,
2. solve one collocation system per index for the bicanonical basis
   (functions vanishing to prescribed orders at both endpoints),
3. factor the reversed-order Wronskian of the bicanonical basis at beta
   into unpivoted triangular factors,
4. combine the inverted factors into the normalizing coefficients of the
   B-basis, expressed in the ordinary basis.

The resulting basis is totally positive, forms a partition of unity and
its i-th member vanishes exactly i times at alpha and n-i times at beta.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .basis import OrdinaryBasisFunction, latex_basis_function, ordinary_basis, ordinary_collocation
from .charpoly import CharacteristicPolynomial, is_reflection_invariant
from .errors import DimensionMismatch, IllConditioned, InvalidInterval, OutOfDomain, ZeroDenominator

# Intervals narrower than this are treated as degenerate.
MIN_INTERVAL_LENGTH = 1e-6

_DOMAIN_TOL = 1e-9


@dataclass(frozen=True)
class ECSpace:
    """An (n+1)-dimensional solution space on [alpha, beta] with its B-basis.

    ``rho`` holds the bicanonical basis coefficients (row i is the function
    vanishing i times at alpha, n-i times at beta), ``b_coeffs`` the B-basis
    coefficients, both with respect to ``ordinary``.  ``b_alpha``/``b_beta``
    cache the endpoint derivatives b_i^{(j)} up to order n.
    """

    polynomial: CharacteristicPolynomial
    alpha: float
    beta: float
    ordinary: tuple[OrdinaryBasisFunction, ...]
    rho: np.ndarray
    mu: np.ndarray
    lambda_col: np.ndarray
    b_coeffs: np.ndarray
    phi_alpha: np.ndarray
    phi_beta: np.ndarray
    b_alpha: np.ndarray
    b_beta: np.ndarray
    reflection_invariant: bool
    condition_reports: tuple[linalg.ConditionReport, ...]

    @property
    def dimension(self) -> int:
        return len(self.ordinary)

    @property
    def order(self) -> int:
        """n, the top B-basis index (dimension - 1)."""
        return len(self.ordinary) - 1


def _check_stage(matrix, stage, expected_digits, reports):
    report = linalg.condition_svd(matrix, stage)
    reports.append(report)
    if expected_digits is not None and report.estimated_correct_digits < expected_digits:
        raise IllConditioned(stage, report)


def build_space(
    polynomial: CharacteristicPolynomial,
    alpha: float,
    beta: float,
    check_conditioning: bool = False,
    expected_digits: int | None = None,
) -> ECSpace:
    """Build the space and its normalized B-basis on [alpha, beta].

    With ``check_conditioning`` every stage matrix gets a Jacobi-SVD
    condition report; if ``expected_digits`` is set, a stage whose
    estimated correct digits fall short raises :class:`IllConditioned`.
    """
    alpha, beta = float(alpha), float(beta)
    if not beta - alpha >= MIN_INTERVAL_LENGTH:
        raise InvalidInterval(f"need beta - alpha >= {MIN_INTERVAL_LENGTH}, got [{alpha}, {beta}]")

    funcs = ordinary_basis(polynomial)
    n = len(funcs) - 1
    phi_alpha = ordinary_collocation(funcs, alpha, n)[:, :, 0]  # [j, k] = phi_k^{(j)}(alpha)
    phi_beta = ordinary_collocation(funcs, beta, n)[:, :, 0]

    reports: list[linalg.ConditionReport] = []
    digits = expected_digits if check_conditioning else None

    # Bicanonical basis: row i of rho solves the two-point Hermite system.
    rho = np.empty((n + 1, n + 1))
    worst_system = None
    worst_cond = -1.0
    for i in range(n + 1):
        system = np.vstack([phi_alpha[: i + 1], phi_beta[: n - i]])
        rhs = np.zeros(n + 1)
        rhs[i] = 1.0
        rho[i] = linalg.solve_pivoted(system, rhs)
        if check_conditioning:
            report = linalg.condition_svd(system, f"bicanonical system {i}")
            if report.condition_number > worst_cond:
                worst_cond = report.condition_number
                worst_system = report
    if check_conditioning and worst_system is not None:
        reports.append(worst_system)
        if digits is not None and worst_system.estimated_correct_digits < digits:
            raise IllConditioned(worst_system.stage_label, worst_system)

    # Reversed-order Wronskian of the bicanonical basis at beta; in exact
    # arithmetic this is lower triangular, so the unpivoted factorization
    # cannot break down on a valid interval.
    w_rev = np.empty((n + 1, n + 1))
    for j in range(n + 1):
        w_rev[:, j] = phi_beta @ rho[n - j]
    if check_conditioning:
        _check_stage(w_rev, "reversed Wronskian", digits, reports)

    # Conditioning is judged on the systems actually solved (the bicanonical
    # collocation systems and the reversed Wronskian); the triangular factor
    # inversions are substitutions whose accuracy those systems govern.
    factors = linalg.lu_unpivoted(w_rev)
    mu = linalg.invert_triangular(factors.upper, "upper")
    lower_inv = linalg.invert_triangular(factors.lower, "lower")
    lambda_col = lower_inv[:, 0]

    b_coeffs = np.empty((n + 1, n + 1))
    for i in range(n + 1):
        combo = np.zeros(n + 1)
        for r in range(i + 1):
            combo += mu[r, i] * rho[n - r]
        b_coeffs[n - i] = lambda_col[i] * combo

    b_alpha = phi_alpha @ b_coeffs.T  # [j, i] = b_i^{(j)}(alpha)
    b_beta = phi_beta @ b_coeffs.T

    return ECSpace(
        polynomial=polynomial,
        alpha=alpha,
        beta=beta,
        ordinary=funcs,
        rho=rho,
        mu=mu,
        lambda_col=lambda_col,
        b_coeffs=b_coeffs,
        phi_alpha=phi_alpha,
        phi_beta=phi_beta,
        b_alpha=b_alpha,
        b_beta=b_beta,
        reflection_invariant=is_reflection_invariant(polynomial),
        condition_reports=tuple(reports),
    )


def _check_domain(space: ECSpace, u: np.ndarray):
    span = space.beta - space.alpha
    lo, hi = space.alpha - _DOMAIN_TOL * span, space.beta + _DOMAIN_TOL * span
    if np.any(u < lo) or np.any(u > hi):
        raise OutOfDomain(f"parameter outside [{space.alpha}, {space.beta}]")


def ordinary_matrix(space: ECSpace, u, order: int = 0) -> np.ndarray:
    """Matrix M[s, k] = phi_k^{(order)}(u_s) over the ordinary basis."""
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    return ordinary_collocation(space.ordinary, u_arr, order)[order].T


def b_matrix(space: ECSpace, u, order: int = 0) -> np.ndarray:
    """Matrix B[s, i] = b_i^{(order)}(u_s) of B-basis derivatives.

    For reflection invariant spaces the upper half of the basis is
    evaluated through the symmetry b_i^{(j)}(u) = (-1)^j b_{n-i}^{(j)}
    (alpha + beta - u), halving the coefficient combinations needed.
    """
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    _check_domain(space, u_arr)
    n = space.order
    if space.reflection_invariant:
        half = n // 2
        phi = ordinary_collocation(space.ordinary, u_arr, order)[order].T
        phi_ref = ordinary_collocation(
            space.ordinary, space.alpha + space.beta - u_arr, order
        )[order].T
        out = np.empty((u_arr.size, n + 1))
        out[:, : half + 1] = phi @ space.b_coeffs[: half + 1].T
        sign = -1.0 if order % 2 else 1.0
        for i in range(half + 1, n + 1):
            out[:, i] = sign * (phi_ref @ space.b_coeffs[n - i])
        return out
    phi = ordinary_collocation(space.ordinary, u_arr, order)[order].T
    return phi @ space.b_coeffs.T


def eval_b_basis(space: ECSpace, i: int, u, order: int = 0):
    """Value of the single basis function b_i^{(order)} at ``u``."""
    if not 0 <= i <= space.order:
        raise DimensionMismatch(f"basis index {i} outside 0..{space.order}")
    u_arr = np.asarray(u, dtype=float)
    values = b_matrix(space, u_arr, order)[:, i]
    return float(values[0]) if u_arr.ndim == 0 else values


def alternative_b_coefficients(space: ECSpace) -> np.ndarray:
    """B-basis coefficients through the endpoint normalization recursion.

    The scaling constants come from c_0 = 1 and the requirement that the
    partial sums reproduce the constant function's Taylor coefficients at
    alpha; the i-th B-basis function is then c_i times the i-th
    bicanonical function.  Serves as an independent route to ``b_coeffs``.
    """
    n = space.order
    # v_r^{(i)}(alpha) from the bicanonical coefficients
    v_alpha = space.phi_alpha @ space.rho.T  # [i, r] = v_r^{(i)}(alpha)
    c = np.empty(n + 1)
    c[0] = 1.0
    for i in range(1, n + 1):
        c[i] = -float(c[:i] @ v_alpha[i, :i])
    return c[:, None] * space.rho


def transformation_matrix(space: ECSpace) -> tuple[np.ndarray, int]:
    """Matrix T with phi_i = sum_j T[i, j] b_j, plus the flop count used.

    Row 0 is all ones (partition of unity).  The remaining entries follow
    a two-sided endpoint recursion: columns grow from the left using
    derivatives at alpha and from the right using derivatives at beta,
    meeting in the middle.  The returned count tallies the actual
    multiply, add, subtract and divide operations of the recursion.
    """
    n = space.order
    dim = n + 1
    t = np.empty((dim, dim))
    t[0, :] = 1.0
    flops = 0
    for i in range(1, dim):
        t[i, 0] = space.phi_alpha[0, i]
        t[i, n] = space.phi_beta[0, i]
        for j in range(1, n // 2 + 1):
            denom = space.b_alpha[j, j]
            if abs(denom) < 1e-300:
                raise ZeroDenominator(f"b_{j}^({j})(alpha) underflowed")
            acc = space.phi_alpha[j, i]
            for k in range(j):
                acc -= t[i, k] * space.b_alpha[j, k]
            t[i, j] = acc / denom
            flops += 2 * j + 1  # j muls, j-1 adds, 1 sub, 1 div
        for j in range(1, (n - 1) // 2 + 1):
            denom = space.b_beta[j, n - j]
            if abs(denom) < 1e-300:
                raise ZeroDenominator(f"b_{n - j}^({j})(beta) underflowed")
            acc = space.phi_beta[j, i]
            for k in range(j):
                acc -= t[i, n - k] * space.b_beta[j, n - k]
            t[i, n - j] = acc / denom
            flops += 2 * j + 1
    return t, flops


def transformation_flop_count(n: int) -> int:
    """Closed-form operation count quoted for the endpoint recursion."""
    if n < 2:
        return 0
    h = n // 2
    if n % 2 == 0:
        return n * h * (h + 5)
    return n * (h * h + 4 * h - 2)


def lu_solve_flop_count(n: int, delta: int) -> int:
    """Operation count of solving the (n+1)-square collocation route
    with an LU factorization and ``delta`` right-hand sides."""
    m = n + 1
    return round((2.0 / 3.0) * m**3 - 0.5 * m**2 - m / 6.0 + (2 * m**2 - m) * delta)


def latex_ordinary_basis(space: ECSpace) -> list[str]:
    """LaTeX strings for the ordered ordinary basis."""
    return [latex_basis_function(f) for f in space.ordinary]
