"""Tensor-product B-surfaces over two ECSpaces.

Control nets live in R^3.  Every directional operation (elevation,
subdivision, exact representation) reuses the curve machinery along the
rows or columns of the net; differential geometry (fundamental forms,
curvatures, tessellation normals) comes from exact partial derivatives
of the basis, never finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curve import BCurve, SampledCurve, elevate_order, subdivide
from .errors import DegeneratePoint, DimensionMismatch, OutOfDomain
from .space import ECSpace, b_matrix, transformation_matrix

FIELD_KINDS = (
    "gaussian",
    "mean",
    "willmore",
    "log_willmore",
    "umbilic",
    "log_umbilic",
    "total",
    "log_total",
    "coordinate",
    "normal_length",
)

_REGULARITY_TOL = 1e-14

# Cold-to-hot anchors: dark blue, cyan, green, yellow, red.
_COLOR_ANCHORS = np.array(
    [
        [0.0, 0.0, 0.5],
        [0.0, 1.0, 1.0],
        [0.0, 1.0, 0.0],
        [1.0, 1.0, 0.0],
        [1.0, 0.0, 0.0],
    ]
)

DEFAULT_COLOR = np.array([0.7, 0.7, 0.7])


@dataclass(frozen=True)
class BSurface:
    """Control net of shape (dim(space_u0), dim(space_u1), 3)."""

    space_u0: ECSpace
    space_u1: ECSpace
    control_net: np.ndarray

    def __post_init__(self):
        net = np.asarray(self.control_net, dtype=float)
        expected = (self.space_u0.dimension, self.space_u1.dimension, 3)
        if net.shape != expected:
            raise DimensionMismatch(f"control net must have shape {expected}, got {net.shape}")
        object.__setattr__(self, "control_net", net)


@dataclass(frozen=True)
class SeparableSurfaceSpec:
    """Per coordinate, a list of separable terms (lambda_u0, lambda_u1).

    Coordinate ell of the surface is sum over its terms of
    (sum_i lambda_u0[i] phi_i(u0)) * (sum_i lambda_u1[i] phi_i(u1)).
    """

    terms: tuple  # three entries; each a tuple of (vector, vector) pairs


@dataclass(frozen=True)
class ScalarField:
    kind: str
    u0: np.ndarray
    u1: np.ndarray
    values: np.ndarray  # shape (len(u0), len(u1))


@dataclass(frozen=True)
class TriangleMesh:
    positions: np.ndarray
    normals: np.ndarray
    texcoords: np.ndarray
    colors: np.ndarray
    faces: np.ndarray


def eval_surface(surface: BSurface, u0, u1, j0: int = 0, j1: int = 0) -> np.ndarray:
    """Mixed partial d^{j0+j1} s / du0^{j0} du1^{j1} on the grid u0 x u1.

    Scalars give a single point; arrays give a (len(u0), len(u1), 3) grid.
    """
    u0_arr = np.asarray(u0, dtype=float)
    u1_arr = np.asarray(u1, dtype=float)
    scalar = u0_arr.ndim == 0 and u1_arr.ndim == 0
    b0 = b_matrix(surface.space_u0, u0_arr, j0)
    b1 = b_matrix(surface.space_u1, u1_arr, j1)
    grid = np.einsum("si,tj,ijl->stl", b0, b1, surface.control_net)
    return grid[0, 0] if scalar else grid


def represent_ordinary_surface(
    space_u0: ECSpace, space_u1: ECSpace, spec: SeparableSurfaceSpec
) -> BSurface:
    """Exact control net of a separable ordinary surface.

    Each term's coefficient vectors are pushed through the two basis
    transformation matrices and combined as an outer product.
    """
    if len(spec.terms) != 3:
        raise DimensionMismatch("spec must define all three coordinates")
    t0, _ = transformation_matrix(space_u0)
    t1, _ = transformation_matrix(space_u1)
    net = np.zeros((space_u0.dimension, space_u1.dimension, 3))
    for ell, terms in enumerate(spec.terms):
        for lam0, lam1 in terms:
            lam0 = np.asarray(lam0, dtype=float)
            lam1 = np.asarray(lam1, dtype=float)
            if lam0.shape != (space_u0.dimension,) or lam1.shape != (space_u1.dimension,):
                raise DimensionMismatch("coefficient vector lengths must match the spaces")
            net[:, :, ell] += np.outer(t0.T @ lam0, t1.T @ lam1)
    return BSurface(space_u0=space_u0, space_u1=space_u1, control_net=net)


def _map_direction(surface: BSurface, direction: str):
    if direction not in ("u0", "u1"):
        raise ValueError(f"direction must be 'u0' or 'u1', got {direction!r}")
    return direction == "u0"


def elevate_order_surface(surface: BSurface, direction: str, target: ECSpace) -> BSurface:
    """Order elevation of every net row or column along one direction."""
    along_u0 = _map_direction(surface, direction)
    net = surface.control_net
    if along_u0:
        columns = [
            elevate_order(BCurve(surface.space_u0, net[:, k, :]), target).control_points
            for k in range(net.shape[1])
        ]
        new_net = np.stack(columns, axis=1)
        return BSurface(target, surface.space_u1, new_net)
    rows = [
        elevate_order(BCurve(surface.space_u1, net[k, :, :]), target).control_points
        for k in range(net.shape[0])
    ]
    return BSurface(surface.space_u0, target, np.stack(rows, axis=0))


def subdivide_surface(
    surface: BSurface, direction: str, gamma: float
) -> tuple[BSurface, BSurface]:
    """Split the surface at ``gamma`` along one direction."""
    along_u0 = _map_direction(surface, direction)
    net = surface.control_net
    left_cols, right_cols = [], []
    count = net.shape[1] if along_u0 else net.shape[0]
    for k in range(count):
        strip = net[:, k, :] if along_u0 else net[k, :, :]
        space = surface.space_u0 if along_u0 else surface.space_u1
        left, right = subdivide(BCurve(space, strip), gamma)
        left_cols.append(left.control_points)
        right_cols.append(right.control_points)
        left_space, right_space = left.space, right.space
    if along_u0:
        return (
            BSurface(left_space, surface.space_u1, np.stack(left_cols, axis=1)),
            BSurface(right_space, surface.space_u1, np.stack(right_cols, axis=1)),
        )
    return (
        BSurface(surface.space_u0, left_space, np.stack(left_cols, axis=0)),
        BSurface(surface.space_u0, right_space, np.stack(right_cols, axis=0)),
    )


def isoparametric_lines(
    surface: BSurface,
    direction: str,
    line_count: int,
    samples_per_line: int,
    d_max: int = 0,
) -> list[SampledCurve]:
    """Fixed-parameter lines with derivatives along the free parameter.

    ``direction`` names the free parameter; fixed values are uniform over
    the other interval, including its endpoints.
    """
    if line_count < 1 or samples_per_line < 2:
        raise DimensionMismatch("need line_count >= 1 and samples_per_line >= 2")
    along_u0 = _map_direction(surface, direction)
    free_space = surface.space_u0 if along_u0 else surface.space_u1
    fixed_space = surface.space_u1 if along_u0 else surface.space_u0
    if line_count == 1:
        fixed_values = np.array([0.5 * (fixed_space.alpha + fixed_space.beta)])
    else:
        fixed_values = np.linspace(fixed_space.alpha, fixed_space.beta, line_count)
    u_free = np.linspace(free_space.alpha, free_space.beta, samples_per_line)
    lines = []
    for v in fixed_values:
        derivs = np.empty((samples_per_line, d_max + 1, 3))
        for j in range(d_max + 1):
            if along_u0:
                derivs[:, j, :] = eval_surface(surface, u_free, v, j0=j)[:, 0, :]
            else:
                derivs[:, j, :] = eval_surface(surface, v, u_free, j1=j)[0, :, :]
        lines.append(SampledCurve(parameters=u_free, derivatives=derivs))
    return lines


def _surface_grid(surface: BSurface, m0: int, m1: int):
    u0 = np.linspace(surface.space_u0.alpha, surface.space_u0.beta, m0)
    u1 = np.linspace(surface.space_u1.alpha, surface.space_u1.beta, m1)
    return u0, u1


def _fundamental_forms(surface: BSurface, u0, u1):
    """E, F, G, L, M, N grids plus positions, raw and unit normals."""
    s = eval_surface(surface, u0, u1)
    s_u0 = eval_surface(surface, u0, u1, j0=1)
    s_u1 = eval_surface(surface, u0, u1, j1=1)
    s_u0u0 = eval_surface(surface, u0, u1, j0=2)
    s_u0u1 = eval_surface(surface, u0, u1, j0=1, j1=1)
    s_u1u1 = eval_surface(surface, u0, u1, j1=2)
    e = np.sum(s_u0 * s_u0, axis=-1)
    f = np.sum(s_u0 * s_u1, axis=-1)
    g = np.sum(s_u1 * s_u1, axis=-1)
    raw_normal = np.cross(s_u0, s_u1)
    area_sq = e * g - f * f
    bad = np.argwhere(area_sq < _REGULARITY_TOL)
    if bad.size:
        i0, i1 = bad[0]
        raise DegeneratePoint(float(np.atleast_1d(u0)[i0]), float(np.atleast_1d(u1)[i1]))
    unit_normal = raw_normal / np.sqrt(area_sq)[..., None]
    ll = np.sum(s_u0u0 * unit_normal, axis=-1)
    mm = np.sum(s_u0u1 * unit_normal, axis=-1)
    nn = np.sum(s_u1u1 * unit_normal, axis=-1)
    return s, e, f, g, ll, mm, nn, raw_normal, unit_normal


def _field_values(surface: BSurface, u0, u1, kind: str) -> np.ndarray:
    s, e, f, g, ll, mm, nn, raw_normal, _ = _fundamental_forms(surface, u0, u1)
    area_sq = e * g - f * f
    gauss = (ll * nn - mm * mm) / area_sq
    mean = (e * nn - 2.0 * f * mm + g * ll) / (2.0 * area_sq)
    if kind == "gaussian":
        return gauss
    if kind == "mean":
        return mean
    if kind == "willmore":
        return mean * mean
    if kind == "umbilic":
        return mean * mean - gauss
    if kind == "total":
        return 4.0 * mean * mean - 2.0 * gauss
    if kind == "coordinate":
        return s[..., 2]
    if kind == "normal_length":
        return np.sqrt(np.sum(raw_normal * raw_normal, axis=-1))
    if kind.startswith("log_"):
        raw = _field_values(surface, u0, u1, kind[4:])
        return np.log1p(np.maximum(raw, 0.0))
    raise ValueError(f"unknown field kind {kind!r}")


def curvature_field(surface: BSurface, grid: tuple[int, int], kind: str) -> ScalarField:
    """Curvature or energy field sampled on a uniform (m0, m1) grid."""
    if kind not in FIELD_KINDS:
        raise ValueError(f"unknown field kind {kind!r}")
    m0, m1 = grid
    if m0 < 2 or m1 < 2:
        raise DimensionMismatch("grid must be at least 2x2")
    u0, u1 = _surface_grid(surface, m0, m1)
    return ScalarField(kind=kind, u0=u0, u1=u1, values=_field_values(surface, u0, u1, kind))


def color_map(values: np.ndarray) -> np.ndarray:
    """Cold-to-hot colors over [min, max] of ``values`` (appended axis of 3)."""
    v = np.asarray(values, dtype=float)
    lo, hi = float(v.min()), float(v.max())
    t = np.zeros_like(v) if hi - lo < 1e-300 else (v - lo) / (hi - lo)
    scaled = t * (len(_COLOR_ANCHORS) - 1)
    idx = np.minimum(scaled.astype(int), len(_COLOR_ANCHORS) - 2)
    frac = scaled - idx
    return (1.0 - frac[..., None]) * _COLOR_ANCHORS[idx] + frac[..., None] * _COLOR_ANCHORS[idx + 1]


def tessellate(surface: BSurface, grid: tuple[int, int], field_kind: str | None = None) -> TriangleMesh:
    """Triangle mesh on a uniform grid with exact normals.

    Vertex (i0, i1) gets index i0*m1 + i1; each grid cell splits into two
    counterclockwise triangles consistent with the surface normal.
    Colors follow the chosen scalar field, or a constant default.
    """
    m0, m1 = grid
    if m0 < 2 or m1 < 2:
        raise DimensionMismatch("grid must be at least 2x2")
    u0, u1 = _surface_grid(surface, m0, m1)
    s, *_rest, raw_normal, unit_normal = _fundamental_forms(surface, u0, u1)
    positions = s.reshape(-1, 3)
    normals = unit_normal.reshape(-1, 3)
    t0 = (u0 - u0[0]) / (u0[-1] - u0[0])
    t1 = (u1 - u1[0]) / (u1[-1] - u1[0])
    texcoords = np.stack(np.meshgrid(t0, t1, indexing="ij"), axis=-1).reshape(-1, 2)
    if field_kind is None:
        colors = np.tile(DEFAULT_COLOR, (positions.shape[0], 1))
    else:
        if field_kind not in FIELD_KINDS:
            raise ValueError(f"unknown field kind {field_kind!r}")
        colors = color_map(_field_values(surface, u0, u1, field_kind)).reshape(-1, 3)
    faces = []
    for i0 in range(m0 - 1):
        for i1 in range(m1 - 1):
            v00 = i0 * m1 + i1
            v10 = (i0 + 1) * m1 + i1
            v11 = (i0 + 1) * m1 + i1 + 1
            v01 = i0 * m1 + i1 + 1
            faces.append((v00, v10, v11))
            faces.append((v00, v11, v01))
    return TriangleMesh(
        positions=positions,
        normals=normals,
        texcoords=texcoords,
        colors=colors,
        faces=np.array(faces, dtype=int),
    )
