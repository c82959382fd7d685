"""Shared space builders used across the test modules."""

import math

import pytest

from ecgeom import CharacteristicZero as Zero, build_space, make_polynomial


def polynomial_p(n):
    """Pure polynomial space P_n (dimension n+1)."""
    return make_polynomial([Zero(0, 0, n + 1)])


def polynomial_t6():
    """Trigonometric space of dimension 7: z(z^2+1)(z^2+4)(z^2+9)."""
    return make_polynomial([Zero(0, 0, 1), Zero(0, 1, 1), Zero(0, 2, 1), Zero(0, 3, 1)])


def polynomial_h6():
    """Hyperbolic space of dimension 7: z(z^2-1)(z^2-4)(z^2-9)."""
    return make_polynomial(
        [Zero(0, 0, 1)]
        + [Zero(s * a, 0, 1) for a in (1, 2, 3) for s in (1, -1)]
    )


def polynomial_at():
    """Algebraic-trigonometric space of dimension 9: z^3 (z^2+1)^2 (z^2+4)."""
    return make_polynomial([Zero(0, 0, 3), Zero(0, 1, 2), Zero(0, 2, 1)])


def polynomial_et():
    """Exponential-trigonometric space of dimension 7:
    z (z^2+1) (z-1) (z-2) ((z-4)^2+1)."""
    return make_polynomial(
        [Zero(0, 0, 1), Zero(0, 1, 1), Zero(1, 0, 1), Zero(2, 0, 1), Zero(4, 1, 1)]
    )


def polynomial_m():
    """Mixed space of dimension 5: z ((z-1)^2+0.04) ((z+1)^2+0.04)."""
    return make_polynomial([Zero(0, 0, 1), Zero(1, 0.2, 1), Zero(-1, 0.2, 1)])


def polynomial_t2():
    return make_polynomial([Zero(0, 0, 1), Zero(0, 1, 1)])


TEST_SPACE_SPECS = {
    "P_8": (polynomial_p(8), 0.0, 1.0),
    "T_6": (polynomial_t6(), 0.0, 2.0),
    "H_6": (polynomial_h6(), 0.0, 3.0),
    "AT_8": (polynomial_at(), -math.pi / 2, math.pi / 2),
    "ET_6": (polynomial_et(), -2.0, 0.125),
    "M_4": (polynomial_m(), 0.0, 7.0),
}


@pytest.fixture(scope="session")
def test_spaces():
    """The six reference spaces built once per session."""
    return {
        name: build_space(p, a, b) for name, (p, a, b) in TEST_SPACE_SPECS.items()
    }
