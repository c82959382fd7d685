import math

import numpy as np
import pytest

from ecgeom import (
    CharacteristicZero as Zero,
    alternative_b_coefficients,
    b_matrix,
    build_space,
    eval_b_basis,
    latex_ordinary_basis,
    make_polynomial,
    ordinary_matrix,
)
from ecgeom.errors import IllConditioned, InvalidInterval, OutOfDomain
from conftest import polynomial_p, polynomial_t2


def _grid(space, count=1001):
    return np.linspace(space.alpha, space.beta, count)


def test_bernstein_recovery():
    space = build_space(polynomial_p(2), 0.0, 1.0)
    u = _grid(space, 101)
    b = b_matrix(space, u)
    expected = np.column_stack([(1 - u) ** 2, 2 * u * (1 - u), u**2])
    assert np.max(np.abs(b - expected)) < 1e-12


def test_trigonometric_closed_form():
    space = build_space(polynomial_t2(), 0.0, math.pi / 2)
    quarter = math.pi / 4
    assert np.isclose(eval_b_basis(space, 0, quarter), 1 - math.sqrt(2) / 2, atol=1e-12)
    assert np.isclose(eval_b_basis(space, 1, quarter), math.sqrt(2) - 1, atol=1e-12)
    # closed form b_0 = sin^2((delta - u)/2) / sin^2(delta/2)
    u = _grid(space, 101)
    delta = math.pi / 2
    expected = np.sin((delta - u) / 2) ** 2 / math.sin(delta / 2) ** 2
    assert np.max(np.abs(b_matrix(space, u)[:, 0] - expected)) < 1e-12


def test_trigonometric_endpoint_derivatives():
    space = build_space(polynomial_t2(), 0.0, math.pi / 2)
    assert np.isclose(eval_b_basis(space, 0, 0.0, order=1), -1.0, atol=1e-12)
    assert np.isclose(eval_b_basis(space, 1, 0.0, order=1), 1.0, atol=1e-12)


def test_partition_of_unity_all_spaces(test_spaces):
    for name, space in test_spaces.items():
        u = _grid(space)
        total = b_matrix(space, u).sum(axis=1)
        assert np.max(np.abs(total - 1)) <= 1e-8, name


def test_nonnegativity_all_spaces(test_spaces):
    for name, space in test_spaces.items():
        values = b_matrix(space, _grid(space))
        assert values.min() >= -1e-8, name
        assert values.max() <= 1 + 1e-8, name


def test_endpoint_normalization(test_spaces):
    for name, space in test_spaces.items():
        n = space.order
        assert np.isclose(eval_b_basis(space, 0, space.alpha), 1.0, atol=1e-10), name
        assert np.isclose(eval_b_basis(space, n, space.beta), 1.0, atol=1e-10), name


def test_endpoint_hermite_conditions(test_spaces):
    for name, space in test_spaces.items():
        n = space.order
        scale_a = np.max(np.abs(space.b_alpha))
        scale_b = np.max(np.abs(space.b_beta))
        for i in range(n + 1):
            for j in range(i):
                assert abs(space.b_alpha[j, i]) / scale_a <= 1e-6, (name, i, j)
            assert space.b_alpha[i, i] > 0, (name, i)
            for j in range(n - i):
                assert abs(space.b_beta[j, i]) / scale_b <= 1e-6, (name, i, j)
            sign = (-1) ** (n - i)
            assert sign * space.b_beta[n - i, i] > 0, (name, i)


def test_reflection_symmetry(test_spaces):
    for name, space in test_spaces.items():
        if not space.reflection_invariant:
            continue
        u = _grid(space)
        b = b_matrix(space, u)
        b_ref = b_matrix(space, space.alpha + space.beta - u)
        n = space.order
        for i in range(n // 2 + 1):
            assert np.max(np.abs(b[:, i] - b_ref[:, n - i])) <= 1e-8, (name, i)


def test_derivative_sum_is_zero(test_spaces):
    for name, space in test_spaces.items():
        u = _grid(space, 101)
        total = b_matrix(space, u, order=1).sum(axis=1)
        scale = max(1.0, np.max(np.abs(b_matrix(space, u, order=1))))
        assert np.max(np.abs(total)) / scale <= 1e-8, name


def test_derivatives_match_finite_differences(test_spaces):
    for name, space in test_spaces.items():
        span = space.beta - space.alpha
        h = span * 1e-5
        u = np.linspace(space.alpha + 3 * h, space.beta - 3 * h, 50)
        for j in range(1, 4):
            analytic = b_matrix(space, u, order=j)
            lower = b_matrix(space, u - h, order=j - 1)
            upper = b_matrix(space, u + h, order=j - 1)
            ll = b_matrix(space, u - 2 * h, order=j - 1)
            uu = b_matrix(space, u + 2 * h, order=j - 1)
            numeric = (-uu + 8 * upper - 8 * lower + ll) / (12 * h)
            scale = max(1.0, np.max(np.abs(analytic)))
            assert np.max(np.abs(analytic - numeric)) / scale <= 1e-5, (name, j)


def test_dual_construction_equivalence(test_spaces):
    for name, space in test_spaces.items():
        alt = alternative_b_coefficients(space)
        u = _grid(space)
        direct = b_matrix(space, u)
        phi = ordinary_matrix(space, u)
        assert np.max(np.abs(direct - phi @ alt.T)) <= 1e-6, name


def test_invalid_interval():
    with pytest.raises(InvalidInterval):
        build_space(polynomial_p(2), 1.0, 1.0)
    with pytest.raises(InvalidInterval):
        build_space(polynomial_p(2), 1.0, 0.5)
    with pytest.raises(InvalidInterval):
        build_space(polynomial_p(2), 0.0, 1e-9)


def test_out_of_domain():
    space = build_space(polynomial_p(2), 0.0, 1.0)
    with pytest.raises(OutOfDomain):
        eval_b_basis(space, 0, 1.5)


def test_conditioning_gate():
    # low expectations pass, high expectations fail with a staged report
    p = polynomial_p(12)
    space = build_space(p, 0.0, 1.0, check_conditioning=True, expected_digits=6)
    assert space.condition_reports
    with pytest.raises(IllConditioned) as info:
        build_space(p, 0.0, 1.0, check_conditioning=True, expected_digits=14)
    assert info.value.stage
    assert info.value.report.estimated_correct_digits < 14
    assert "estimated correct digits" in str(info.value)


def test_condition_reports_off_by_default():
    space = build_space(polynomial_p(5), 0.0, 1.0)
    assert space.condition_reports == ()


def test_latex_ordinary_basis():
    space = build_space(
        make_polynomial([Zero(0, 0, 3), Zero(0, 1, 2), Zero(0, 2, 1)]),
        -math.pi / 2,
        math.pi / 2,
    )
    assert latex_ordinary_basis(space) == [
        "1",
        "u",
        "u^{2}",
        "\\cos(u)",
        "\\sin(u)",
        "u\\cos(u)",
        "u\\sin(u)",
        "\\cos(2u)",
        "\\sin(2u)",
    ]
