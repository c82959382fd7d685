import math

import numpy as np
import pytest

from ecgeom import (
    CharacteristicZero as Zero,
    OrdinaryBasisFunction,
    eval_ordinary_derivative,
    latex_basis_function,
    make_polynomial,
    ordinary_basis,
)
from conftest import polynomial_at, polynomial_et


def _signature(f):
    return (f.power, f.rate, f.frequency, f.phase)


def test_algebraic_trigonometric_basis_order():
    funcs = ordinary_basis(polynomial_at())
    expected = [
        (0, 0.0, 0.0, "cos"),  # 1
        (1, 0.0, 0.0, "cos"),  # u
        (2, 0.0, 0.0, "cos"),  # u^2
        (0, 0.0, 1.0, "cos"),  # cos u
        (0, 0.0, 1.0, "sin"),  # sin u
        (1, 0.0, 1.0, "cos"),  # u cos u
        (1, 0.0, 1.0, "sin"),  # u sin u
        (0, 0.0, 2.0, "cos"),  # cos 2u
        (0, 0.0, 2.0, "sin"),  # sin 2u
    ]
    assert [_signature(f) for f in funcs] == expected


def test_exponential_trigonometric_basis_order():
    funcs = ordinary_basis(polynomial_et())
    expected = [
        (0, 0.0, 0.0, "cos"),  # 1
        (0, 0.0, 1.0, "cos"),  # cos u
        (0, 0.0, 1.0, "sin"),  # sin u
        (0, 1.0, 0.0, "cos"),  # e^u
        (0, 2.0, 0.0, "cos"),  # e^{2u}
        (0, 4.0, 1.0, "cos"),  # e^{4u} cos u
        (0, 4.0, 1.0, "sin"),  # e^{4u} sin u
    ]
    assert [_signature(f) for f in funcs] == expected


def test_monomial_basis():
    funcs = ordinary_basis(make_polynomial([Zero(0, 0, 5)]))
    assert [_signature(f) for f in funcs] == [(r, 0.0, 0.0, "cos") for r in range(5)]


def test_exponential_derivative():
    f = OrdinaryBasisFunction(0, 2.0, 0.0, "cos")
    assert np.isclose(eval_ordinary_derivative(f, 3, 1.0), 8.0 * math.e**2)


def test_monomial_derivative():
    f = OrdinaryBasisFunction(3, 0.0, 0.0, "cos")
    assert np.isclose(eval_ordinary_derivative(f, 2, 2.0), 12.0)
    assert eval_ordinary_derivative(f, 4, 2.0) == 0.0


def test_u_cos_u_second_derivative_at_zero():
    f = OrdinaryBasisFunction(1, 0.0, 1.0, "cos")
    # (u cos u)'' = -2 sin u - u cos u, zero at u = 0
    assert abs(eval_ordinary_derivative(f, 2, 0.0)) < 1e-14


def _finite_difference(f, order, u, h):
    # central 5-point stencil applied recursively once per order
    if order == 0:
        return eval_ordinary_derivative(f, 0, u)
    g = lambda v: _finite_difference(f, order - 1, v, h)
    return (-g(u + 2 * h) + 8 * g(u + h) - 8 * g(u - h) + g(u - 2 * h)) / (12 * h)


def test_mixed_derivative_matches_finite_difference():
    f = OrdinaryBasisFunction(2, 1.0, 3.0, "sin")
    u = 0.7
    analytic = eval_ordinary_derivative(f, 4, u)
    numeric = _finite_difference(f, 4, u, 1e-3)
    assert abs(analytic - numeric) <= 1e-5 * max(1.0, abs(analytic))


def test_vectorized_matches_scalar():
    f = OrdinaryBasisFunction(1, -0.5, 2.0, "cos")
    u = np.linspace(-1, 1, 7)
    vec = eval_ordinary_derivative(f, 2, u)
    assert np.allclose(vec, [eval_ordinary_derivative(f, 2, v) for v in u])


@pytest.mark.parametrize(
    "func,expected",
    [
        (OrdinaryBasisFunction(0, 0.0, 0.0, "cos"), "1"),
        (OrdinaryBasisFunction(2, 0.0, 0.0, "cos"), "u^{2}"),
        (OrdinaryBasisFunction(0, 4.0, 1.0, "cos"), "e^{4u}\\cos(u)"),
        (OrdinaryBasisFunction(1, 0.0, 2.0, "sin"), "u\\sin(2u)"),
        (OrdinaryBasisFunction(0, 1.0, 0.0, "cos"), "e^{u}"),
        (OrdinaryBasisFunction(0, -1.0, 0.0, "cos"), "e^{-u}"),
        (OrdinaryBasisFunction(1, 0.0, 0.0, "cos"), "u"),
    ],
)
def test_latex_rendering(func, expected):
    assert latex_basis_function(func) == expected
