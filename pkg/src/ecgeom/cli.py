"""Command line interface: sampling, reports, meshes, and benchmarks.

Commands read a JSON config describing spaces by their characteristic
zeros, curves by control points or ordinary coefficients, and surfaces
by control nets or separable coefficient terms.  Outputs go to the
directory given by --out: delimited CSV samples, SVG line plots,
matplotlib PNG figures, OBJ meshes, and plain-text reports.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import bench as bench_mod
from .charpoly import CharacteristicZero, make_polynomial
from .critical import critical_length, critical_length_for_design
from .curve import BCurve, represent_ordinary_curve, sample_curve
from .emitters import write_csv, write_obj, write_svg
from .errors import ConfigError, ECGeomError
from .space import b_matrix, build_space, latex_ordinary_basis, ordinary_matrix
from .surface import (
    BSurface,
    FIELD_KINDS,
    SeparableSurfaceSpec,
    curvature_field,
    eval_surface,
    represent_ordinary_surface,
    tessellate,
)


def _load_config(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            config = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError("config root must be an object")
    return config


def _require(config: dict, field: str):
    if field not in config:
        raise ConfigError(f"config is missing required field {field!r}")
    return config[field]


def _polynomial_from(config: dict):
    zeros = []
    for entry in _require(config, "zeros"):
        zeros.append(
            CharacteristicZero(
                re=float(entry.get("re", 0.0)),
                im=float(entry.get("im", 0.0)),
                mult=int(entry.get("mult", 1)),
            )
        )
    return make_polynomial(zeros)


def _space_from(config: dict, args):
    polynomial = _polynomial_from(config)
    check = bool(config.get("check_conditioning", False)) or args.check_conditioning
    digits = config.get("expected_digits")
    if args.expected_digits is not None:
        digits = args.expected_digits
    return build_space(
        polynomial,
        float(_require(config, "alpha")),
        float(_require(config, "beta")),
        check_conditioning=check,
        expected_digits=int(digits) if digits is not None else None,
    )


def _curve_from(config: dict, args) -> BCurve:
    space = _space_from(_require(config, "space"), args)
    if "control_points" in config:
        return BCurve(space, np.asarray(config["control_points"], dtype=float))
    if "ordinary_coefficients" in config:
        return represent_ordinary_curve(
            space, np.asarray(config["ordinary_coefficients"], dtype=float)
        )
    raise ConfigError("curve config needs 'control_points' or 'ordinary_coefficients'")


def _surface_from(config: dict, args) -> BSurface:
    space_u0 = _space_from(_require(config, "space_u0"), args)
    space_u1 = _space_from(_require(config, "space_u1"), args)
    if "control_net" in config:
        return BSurface(space_u0, space_u1, np.asarray(config["control_net"], dtype=float))
    if "separable" in config:
        raw_terms = _require(config["separable"], "terms")
        if len(raw_terms) != 3:
            raise ConfigError("separable spec must list terms for all three coordinates")
        terms = tuple(
            tuple(
                (np.asarray(lam0, dtype=float), np.asarray(lam1, dtype=float))
                for lam0, lam1 in coordinate_terms
            )
            for coordinate_terms in raw_terms
        )
        return represent_ordinary_surface(space_u0, space_u1, SeparableSurfaceSpec(terms))
    raise ConfigError("surface config needs 'control_net' or 'separable'")


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        m0, m1 = (int(part) for part in text.lower().split("x"))
    except ValueError as exc:
        raise ConfigError(f"grid must look like '50x100', got {text!r}") from exc
    return m0, m1


def _outdir(args) -> str:
    os.makedirs(args.out, exist_ok=True)
    return args.out


def _line_png(path, x, ys, labels, title):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 6))
    for k in range(ys.shape[1]):
        label = labels[k] if labels is not None else None
        ax.plot(x, ys[:, k], label=label)
    if labels is not None and len(labels) <= 12:
        ax.legend(fontsize=8)
    ax.set_title(title)
    fig.savefig(path, dpi=110)
    plt.close(fig)


def _report_space(space, out, samples):
    u = np.linspace(space.alpha, space.beta, samples)
    ordinary = ordinary_matrix(space, u)
    bbasis = b_matrix(space, u)
    latex = latex_ordinary_basis(space)
    n = space.order
    write_csv(
        os.path.join(out, "ordinary.csv"),
        ["u"] + [f"phi_{i}" for i in range(n + 1)],
        np.column_stack([u, ordinary]),
    )
    write_csv(
        os.path.join(out, "bbasis.csv"),
        ["u"] + [f"b_{i}" for i in range(n + 1)],
        np.column_stack([u, bbasis]),
    )
    write_svg(os.path.join(out, "ordinary.svg"), u, ordinary)
    write_svg(os.path.join(out, "bbasis.svg"), u, bbasis)
    _line_png(os.path.join(out, "ordinary.png"), u, ordinary,
              [f"${s}$" for s in latex], "ordinary basis")
    _line_png(os.path.join(out, "bbasis.png"), u, bbasis,
              [f"$b_{{{i}}}$" for i in range(n + 1)], "normalized B-basis")
    lines = [
        f"dimension: {space.dimension}",
        f"interval: [{space.alpha:.17g}, {space.beta:.17g}]",
        f"reflection invariant: {space.reflection_invariant}",
        "ordinary basis: " + ", ".join(latex),
    ]
    for report in space.condition_reports:
        lines.append(
            f"conditioning[{report.stage_label}]: cond={report.condition_number:.6g}, "
            f"estimated correct digits={report.estimated_correct_digits}"
        )
    with open(os.path.join(out, "report.txt"), "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")
    print("\n".join(lines))


def cmd_space(args) -> int:
    space = _space_from(_load_config(args.config), args)
    _report_space(space, _outdir(args), args.samples)
    return 0


def cmd_curve(args) -> int:
    curve = _curve_from(_load_config(args.config), args)
    out = _outdir(args)
    sampled = sample_curve(curve, args.samples, args.dmax)
    m, orders, delta = sampled.derivatives.shape
    header = ["u"] + [
        f"d{j}_c{ell}" for j in range(orders) for ell in range(delta)
    ]
    write_csv(
        os.path.join(out, "curve.csv"),
        header,
        np.column_stack([sampled.parameters, sampled.derivatives.reshape(m, -1)]),
    )
    xy = sampled.derivatives[:, 0, :2]
    write_svg(os.path.join(out, "curve.svg"), xy[:, 0], xy[:, 1:2])
    _line_png(os.path.join(out, "curve.png"), xy[:, 0], xy[:, 1:2], None, "B-curve")
    print(f"sampled {m} points, derivatives up to order {orders - 1}")
    return 0


def cmd_surface(args) -> int:
    config = _load_config(args.config)
    surface = _surface_from(config, args)
    out = _outdir(args)
    grid = _parse_grid(args.grid)
    field_kind = config.get("field")
    if field_kind is not None and field_kind not in FIELD_KINDS:
        raise ConfigError(f"unknown field kind {field_kind!r}")
    mesh = tessellate(surface, grid, field_kind)
    write_obj(os.path.join(out, "surface.obj"), mesh)
    if field_kind is not None:
        field = curvature_field(surface, grid, field_kind)
        write_csv(
            os.path.join(out, "field.csv"),
            [f"u1_{j}" for j in range(field.values.shape[1])],
            field.values,
        )
    u0 = np.linspace(surface.space_u0.alpha, surface.space_u0.beta, grid[0])
    u1 = np.linspace(surface.space_u1.alpha, surface.space_u1.beta, grid[1])
    points = eval_surface(surface, u0, u1)
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig = plt.figure(figsize=(8, 6))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(points[..., 0], points[..., 1], points[..., 2],
                    rcount=min(grid[0], 64), ccount=min(grid[1], 64))
    fig.savefig(os.path.join(out, "surface.png"), dpi=110)
    plt.close(fig)
    print(f"wrote mesh with {mesh.positions.shape[0]} vertices, {mesh.faces.shape[0]} faces")
    return 0


def _format_length(value: float) -> str:
    return "infinite" if math.isinf(value) else f"~{value:.6f}"


def cmd_critical_length(args) -> int:
    config = _load_config(args.config)
    polynomial = _polynomial_from(config)
    alpha = float(config.get("alpha", 0.0))
    cap = config.get("search_cap")
    step = config.get("grid_step")
    full = critical_length(polynomial, alpha, cap, step)
    design = critical_length_for_design(polynomial, alpha, cap, step)
    lines = [
        f"critical length: {_format_length(full)}",
        f"critical length for design: {_format_length(design)}",
    ]
    out = _outdir(args)
    with open(os.path.join(out, "report.txt"), "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")
    print("\n".join(lines))
    return 0


def cmd_bench(args) -> int:
    config = _load_config(args.config)
    polynomial = _polynomial_from(config)
    alpha = float(_require(config, "alpha"))
    beta = float(_require(config, "beta"))
    space = build_space(polynomial, alpha, beta)
    u = np.linspace(alpha, beta, 1001)
    stages = {
        "build_space": lambda: build_space(polynomial, alpha, beta),
        "b_basis_1001": lambda: b_matrix(space, u),
    }
    out = _outdir(args)
    rows = []
    lines = []
    for name, task in stages.items():
        interval = bench_mod.time_trials(task, args.trials, args.significance)
        rows.append([interval.lower, interval.upper, interval.mean,
                     interval.stddev, interval.count])
        lines.append(
            f"{name}: mean {interval.mean:.4f} ms, "
            f"{(1 - args.significance) * 100:.1f}% interval "
            f"[{interval.lower:.4f}, {interval.upper:.4f}] ms over {interval.count} trials"
        )
    write_csv(
        os.path.join(out, "bench.csv"),
        ["lower_ms", "upper_ms", "mean_ms", "stddev_ms", "trials"],
        np.asarray(rows),
    )
    print("\n".join(lines))
    return 0


_COMMANDS = {
    "space": cmd_space,
    "curve": cmd_curve,
    "surface": cmd_surface,
    "critical-length": cmd_critical_length,
    "bench": cmd_bench,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecgeom",
        description="curves and surfaces over ODE-defined function spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--samples", type=int, default=501)
        p.add_argument("--grid", default="50x100")
        p.add_argument("--dmax", type=int, default=0)
        p.add_argument("--check-conditioning", action="store_true")
        p.add_argument("--expected-digits", type=int, default=None)
        p.add_argument("--trials", type=int, default=10)
        p.add_argument("--significance", type=float, default=0.05)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ECGeomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
