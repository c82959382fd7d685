"""B-curves: evaluation, order elevation, subdivision, exact representation
of ordinary integral curves, and Hermite interpolation.

A B-curve pairs an ECSpace with one control point per basis function.
Because the i-th basis function vanishes i times at alpha and n-i times
at beta, endpoint derivative data determines leading and trailing control
points through triangular recursions; both order elevation and the
subdivision algorithm reduce to that observation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .charpoly import CharacteristicPolynomial, CharacteristicZero, contains, make_polynomial
from .errors import (
    DimensionMismatch,
    IntervalMismatch,
    NotASubspace,
    OutOfDomain,
    SingularCollocation,
    ZeroDenominator,
)
from .space import ECSpace, b_matrix, build_space, transformation_matrix

_INTERVAL_TOL = 1e-12


@dataclass(frozen=True)
class BCurve:
    """Control points indexed like the B-basis; shape (n+1, delta), delta >= 2."""

    space: ECSpace
    control_points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.control_points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] != self.space.dimension or pts.shape[1] < 2:
            raise DimensionMismatch(
                f"need {self.space.dimension} control points in R^delta, delta >= 2, "
                f"got shape {pts.shape}"
            )
        object.__setattr__(self, "control_points", pts)

    @property
    def delta(self) -> int:
        return self.control_points.shape[1]


@dataclass(frozen=True)
class SampledCurve:
    """Uniform samples with derivatives: parameters (m,), derivatives (m, d_max+1, delta)."""

    parameters: np.ndarray
    derivatives: np.ndarray


def eval_curve(curve: BCurve, u, order: int = 0) -> np.ndarray:
    """Point (or order-th derivative) of the curve at ``u`` (scalar or array)."""
    u_arr = np.asarray(u, dtype=float)
    values = b_matrix(curve.space, u_arr, order) @ curve.control_points
    return values[0] if u_arr.ndim == 0 else values


def sample_curve(curve: BCurve, sample_count: int, d_max: int = 0) -> SampledCurve:
    """Uniform samples over [alpha, beta] with derivatives up to ``d_max``."""
    if sample_count < 2:
        raise DimensionMismatch("sample_count must be >= 2")
    u = np.linspace(curve.space.alpha, curve.space.beta, sample_count)
    derivs = np.empty((sample_count, d_max + 1, curve.delta))
    for j in range(d_max + 1):
        derivs[:, j, :] = eval_curve(curve, u, j)
    return SampledCurve(parameters=u, derivatives=derivs)


def _curve_derivatives_at(curve: BCurve, u: float, max_order: int) -> np.ndarray:
    """Array D[j] = c^{(j)}(u), shape (max_order+1, delta)."""
    out = np.empty((max_order + 1, curve.delta))
    for j in range(max_order + 1):
        out[j] = eval_curve(curve, float(u), j)
    return out


def _endpoint_controls(
    target: ECSpace,
    derivs_alpha: np.ndarray,
    derivs_beta: np.ndarray,
    count_alpha: int,
) -> np.ndarray:
    """Control points in ``target`` of the curve with the given endpoint jets.

    ``count_alpha`` leading points come from the alpha-side recursion, the
    remaining ones from the beta side.  Triangular because basis function j
    vanishes j times at alpha and n-j times at beta.
    """
    n = target.order
    delta = derivs_alpha.shape[1]
    q = np.empty((n + 1, delta))
    for i in range(count_alpha):
        denom = target.b_alpha[i, i]
        if abs(denom) < 1e-300:
            raise ZeroDenominator(f"b_{i}^({i})(alpha) underflowed")
        acc = derivs_alpha[i].copy()
        for j in range(i):
            acc -= q[j] * target.b_alpha[i, j]
        q[i] = acc / denom
    for i in range(n + 1 - count_alpha):
        denom = target.b_beta[i, n - i]
        if abs(denom) < 1e-300:
            raise ZeroDenominator(f"b_{n - i}^({i})(beta) underflowed")
        acc = derivs_beta[i].copy()
        for j in range(i):
            acc -= q[n - j] * target.b_beta[i, n - j]
        q[n - i] = acc / denom
    return q


def elevate_order(curve: BCurve, target: ECSpace) -> BCurve:
    """Re-express the curve in a larger space containing the source space.

    A one-dimension jump uses the two-sided convex-combination formulas
    with ratios of endpoint basis derivatives.  A two-dimension jump (a
    conjugate zero pair, which admits no real intermediate space) falls
    back on the endpoint-jet recursion, which yields the same unique
    control points.
    """
    src = curve.space
    if abs(src.alpha - target.alpha) > _INTERVAL_TOL or abs(src.beta - target.beta) > _INTERVAL_TOL:
        raise IntervalMismatch("target space must live on the same interval")
    if not contains(src.polynomial, target.polynomial):
        raise NotASubspace("target zero multiset does not contain the source's")
    jump = target.dimension - src.dimension
    if jump == 1:
        n = src.order
        p = curve.control_points
        q = np.empty((n + 2, curve.delta))
        q[0] = p[0]
        q[n + 1] = p[n]
        for i in range(1, n // 2 + 1):
            r = src.b_alpha[i, i] / target.b_alpha[i, i]
            q[i] = (1.0 - r) * p[i - 1] + r * p[i]
        for i in range(1, (n + 1) // 2 + 1):
            s = src.b_beta[i, n - i] / target.b_beta[i, n + 1 - i]
            q[n + 1 - i] = s * p[n - i] + (1.0 - s) * p[n + 1 - i]
        return BCurve(space=target, control_points=q)
    if jump == 2:
        m = target.order
        half = m // 2
        derivs_a = _curve_derivatives_at(curve, src.alpha, half)
        derivs_b = _curve_derivatives_at(curve, src.beta, m - half)
        q = _endpoint_controls(target, derivs_a, derivs_b, half + 1)
        return BCurve(space=target, control_points=q)
    raise NotASubspace(f"elevation handles dimension jumps of 1 or 2, got {jump}")


def _zero_difference(sub: CharacteristicPolynomial, parent: CharacteristicPolynomial):
    diff = []
    for zp in parent.zeros:
        extra = zp.mult
        for zs in sub.zeros:
            if abs(zs.re - zp.re) <= 1e-12 and abs(zs.im - zp.im) <= 1e-12:
                extra = zp.mult - zs.mult
        if extra > 0:
            diff.append(CharacteristicZero(zp.re, zp.im, extra))
    return diff


def elevate_to(curve: BCurve, target_polynomial: CharacteristicPolynomial) -> BCurve:
    """Chain single elevation steps until the target zero multiset is reached.

    Real zeros are appended one multiplicity at a time; conjugate pairs as
    one two-dimensional step.  Intermediate spaces are built on the same
    interval; their construction failures propagate.
    """
    src = curve.space
    if not contains(src.polynomial, target_polynomial):
        raise NotASubspace("target zero multiset does not contain the source's")
    current = curve
    pending = _zero_difference(src.polynomial, target_polynomial)
    pending.sort(key=lambda z: (abs(z.re) + z.im, z.re, z.im))
    for zero in pending:
        for _ in range(zero.mult):
            zeros = list(current.space.polynomial.zeros) + [CharacteristicZero(zero.re, zero.im, 1)]
            step_poly = make_polynomial(zeros)
            step_space = build_space(step_poly, src.alpha, src.beta)
            current = elevate_order(current, step_space)
    return current


def subdivide(curve: BCurve, gamma: float) -> tuple[BCurve, BCurve]:
    """Split the curve at gamma into arcs over [alpha, gamma] and [gamma, beta].

    Both child spaces use the same characteristic polynomial; the child
    control points come from matching the curve's jets at the three
    parameters, alpha and gamma for the left arc, gamma and beta for the
    right arc.
    """
    space = curve.space
    gamma = float(gamma)
    if not space.alpha < gamma < space.beta:
        raise OutOfDomain(f"gamma must lie strictly inside [{space.alpha}, {space.beta}]")
    n = space.order
    left_space = build_space(space.polynomial, space.alpha, gamma)
    right_space = build_space(space.polynomial, gamma, space.beta)
    jets_alpha = _curve_derivatives_at(curve, space.alpha, (n - 1) // 2)
    jets_gamma = _curve_derivatives_at(curve, gamma, n // 2)
    jets_beta = _curve_derivatives_at(curve, space.beta, (n - 1) // 2)
    left = _endpoint_controls(left_space, jets_alpha, jets_gamma, (n - 1) // 2 + 1)
    right = _endpoint_controls(right_space, jets_gamma, jets_beta, n // 2 + 1)
    return (
        BCurve(space=left_space, control_points=left),
        BCurve(space=right_space, control_points=right),
    )


def represent_ordinary_curve(space: ECSpace, coefficients) -> BCurve:
    """Exact B-curve of sum_i lambda_i phi_i given ordinary coefficients.

    ``coefficients`` has one row per ordinary basis function; the control
    points are the coefficient rows pushed through the basis
    transformation matrix.
    """
    lam = np.asarray(coefficients, dtype=float)
    if lam.ndim != 2 or lam.shape[0] != space.dimension:
        raise DimensionMismatch(
            f"need {space.dimension} coefficient rows, got shape {lam.shape}"
        )
    t, _ = transformation_matrix(space)
    return BCurve(space=space, control_points=t.T @ lam)


@dataclass(frozen=True)
class InterpolationProblem:
    """Hermite data: at knot u_k prescribe derivatives 0..multiplicities[k]-1.

    ``data`` concatenates the prescribed values in knot order, derivative
    order within each knot; total row count must equal the space dimension.
    """

    knots: np.ndarray
    multiplicities: np.ndarray
    data: np.ndarray

    def __post_init__(self):
        knots = np.asarray(self.knots, dtype=float)
        mults = np.asarray(self.multiplicities, dtype=int)
        data = np.asarray(self.data, dtype=float)
        if knots.ndim != 1 or mults.shape != knots.shape:
            raise DimensionMismatch("knots and multiplicities must be 1-d and equal length")
        if np.any(np.diff(knots) <= 0):
            raise DimensionMismatch("knots must be strictly increasing")
        if np.any(mults < 1):
            raise DimensionMismatch("multiplicities must be >= 1")
        if data.ndim != 2 or data.shape[0] != int(mults.sum()):
            raise DimensionMismatch("data must have one row per Hermite condition")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "multiplicities", mults)
        object.__setattr__(self, "data", data)


def interpolate(space: ECSpace, problem: InterpolationProblem) -> BCurve:
    """Unique B-curve matching the Hermite conditions of ``problem``."""
    n = space.order
    if int(problem.multiplicities.sum()) != n + 1:
        raise DimensionMismatch("multiplicities must sum to the space dimension")
    rows = []
    for u_k, m_k in zip(problem.knots, problem.multiplicities):
        if not space.alpha - 1e-12 <= u_k <= space.beta + 1e-12:
            raise OutOfDomain(f"knot {u_k} outside [{space.alpha}, {space.beta}]")
        for order in range(m_k):
            rows.append(b_matrix(space, u_k, order)[0])
    collocation = np.array(rows)
    try:
        points = linalg.solve_pivoted(collocation, problem.data)
    except linalg.Singular as exc:
        raise SingularCollocation(str(exc)) from exc
    return BCurve(space=space, control_points=points)
