"""Ordinary basis of an ODE solution space and its derivatives.

Each zero (a, b, m) of the characteristic polynomial contributes the
functions u^r e^{au} when b = 0 and the pairs u^r e^{au} cos(bu),
u^r e^{au} sin(bu) when b > 0, for r = 0..m-1.  The basis is listed in a
deterministic order so that coefficient vectors are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charpoly import CharacteristicPolynomial


@dataclass(frozen=True)
class OrdinaryBasisFunction:
    """u^power * e^{rate u} * cos|sin(frequency u); phase ignored when frequency is 0."""

    power: int
    rate: float
    frequency: float
    phase: str  # "cos" or "sin"


def _sort_key(f: OrdinaryBasisFunction):
    return (abs(f.rate) + f.frequency, f.rate, f.frequency, f.power, 0 if f.phase == "cos" else 1)


def ordinary_basis(p: CharacteristicPolynomial) -> tuple[OrdinaryBasisFunction, ...]:
    """The ordered ordinary basis of the solution space of ``p``."""
    funcs = []
    for zero in p.zeros:
        for r in range(zero.mult):
            funcs.append(OrdinaryBasisFunction(r, zero.re, zero.im, "cos"))
            if zero.im > 0:
                funcs.append(OrdinaryBasisFunction(r, zero.re, zero.im, "sin"))
    funcs.sort(key=_sort_key)
    return tuple(funcs)


def eval_ordinary_derivative(f: OrdinaryBasisFunction, order: int, u):
    """order-th derivative of ``f`` at ``u`` (scalar or array).

    Uses the closed form d^m/du^m [e^{au} cos(bu)] = rho^m e^{au} cos(bu + m theta)
    with rho = hypot(a, b), theta = atan2(b, a), combined with the product rule
    against the monomial factor u^power.
    """
    u_arr = np.asarray(u, dtype=float)
    scalar = u_arr.ndim == 0
    u_arr = np.atleast_1d(u_arr)
    a, b, r = f.rate, f.frequency, f.power
    if order < 0:
        raise ValueError("derivative order must be >= 0")

    if a == 0.0 and b == 0.0:
        # pure monomial u^r
        if order <= r:
            out = (math.factorial(r) // math.factorial(r - order)) * u_arr ** (r - order)
        else:
            out = np.zeros_like(u_arr)
        return float(out[0]) if scalar else out

    rho = math.hypot(a, b)
    theta = math.atan2(b, a)
    trig = np.cos if f.phase == "cos" else np.sin
    out = np.zeros_like(u_arr)
    for k in range(min(order, r) + 1):
        coeff = math.comb(order, k) * (math.factorial(r) // math.factorial(r - k))
        m = order - k
        envelope = rho**m * np.exp(a * u_arr) * trig(b * u_arr + m * theta)
        out += coeff * u_arr ** (r - k) * envelope
    return float(out[0]) if scalar else out


def ordinary_collocation(
    funcs, u, max_order: int
) -> np.ndarray:
    """Array C[j, i, s] = funcs[i]^{(j)}(u[s]) for j = 0..max_order."""
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    out = np.empty((max_order + 1, len(funcs), u_arr.size))
    for j in range(max_order + 1):
        for i, f in enumerate(funcs):
            out[j, i, :] = eval_ordinary_derivative(f, j, u_arr)
    return out


def _format_number(v: float) -> str:
    if v == int(v):
        return str(int(v))
    return f"{v:g}"


def latex_basis_function(f: OrdinaryBasisFunction) -> str:
    """LaTeX for one basis function, e.g. ``u^{2}e^{4u}\\cos(u)``."""
    parts = []
    if f.power == 1:
        parts.append("u")
    elif f.power > 1:
        parts.append(f"u^{{{f.power}}}")
    if f.rate != 0.0:
        rate = _format_number(f.rate)
        rate = "" if rate == "1" else ("-" if rate == "-1" else rate)
        parts.append(f"e^{{{rate}u}}")
    if f.frequency != 0.0:
        freq = _format_number(f.frequency)
        arg = "u" if freq == "1" else f"{freq}u"
        name = "\\cos" if f.phase == "cos" else "\\sin"
        parts.append(f"{name}({arg})")
    return "".join(parts) if parts else "1"
