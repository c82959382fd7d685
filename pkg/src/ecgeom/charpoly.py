"""Characteristic polynomials of constant-coefficient linear ODEs.

A polynomial is stored through the multiset of its zeros.  A zero with
positive imaginary part implicitly represents the conjugate pair, so the
stored multiset always has ``im >= 0``.  The zero z=0 must be present so
that the solution space contains the constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import MissingZeroRoot

_TOL = 1e-12


@dataclass(frozen=True)
class CharacteristicZero:
    re: float
    im: float
    mult: int

    def __post_init__(self):
        if self.mult < 1:
            raise ValueError("multiplicity must be >= 1")


@dataclass(frozen=True)
class CharacteristicPolynomial:
    """Zero multiset plus the total degree (conjugates counted twice)."""

    zeros: tuple[CharacteristicZero, ...]
    degree: int


def _normalize(zeros: Sequence[CharacteristicZero]) -> tuple[CharacteristicZero, ...]:
    merged: list[CharacteristicZero] = []
    for z in zeros:
        re, im = float(z.re), abs(float(z.im))
        for k, existing in enumerate(merged):
            if abs(existing.re - re) <= _TOL and abs(existing.im - im) <= _TOL:
                merged[k] = CharacteristicZero(existing.re, existing.im, existing.mult + z.mult)
                break
        else:
            merged.append(CharacteristicZero(re, im, z.mult))
    merged.sort(key=lambda z: (abs(z.re) + z.im, z.re, z.im))
    return tuple(merged)


def _degree(zeros: Sequence[CharacteristicZero]) -> int:
    return sum(z.mult * (2 if z.im > 0 else 1) for z in zeros)


def _from_zeros(zeros: Sequence[CharacteristicZero], require_zero_root: bool) -> CharacteristicPolynomial:
    normalized = _normalize(zeros)
    if not normalized:
        raise ValueError("at least one zero is required")
    if require_zero_root and not any(z.re == 0.0 and z.im == 0.0 for z in normalized):
        raise MissingZeroRoot("z=0 must be a zero so that constants lie in the space")
    return CharacteristicPolynomial(zeros=normalized, degree=_degree(normalized))


def make_polynomial(zeros: Sequence[CharacteristicZero]) -> CharacteristicPolynomial:
    """Build a polynomial from its zero multiset; z=0 must appear."""
    return _from_zeros(zeros, require_zero_root=True)


def derivative_polynomial(p: CharacteristicPolynomial) -> CharacteristicPolynomial:
    """Characteristic polynomial of the derivative space: one factor z removed.

    The result may lack the zero root, so it is only meant for critical
    length searches, not for B-basis construction.
    """
    out: list[CharacteristicZero] = []
    removed = False
    for z in p.zeros:
        if z.re == 0.0 and z.im == 0.0:
            removed = True
            if z.mult > 1:
                out.append(CharacteristicZero(0.0, 0.0, z.mult - 1))
        else:
            out.append(z)
    if not removed:
        raise MissingZeroRoot("cannot form the derivative space: z=0 is not a zero")
    return _from_zeros(out, require_zero_root=False)


def eval_polynomial(p: CharacteristicPolynomial, z: complex) -> complex:
    """Evaluate the monic polynomial as a product over its zero factors."""
    value = complex(1.0, 0.0)
    for zero in p.zeros:
        root = complex(zero.re, zero.im)
        value *= (z - root) ** zero.mult
        if zero.im > 0:
            value *= (z - root.conjugate()) ** zero.mult
    return value


def expanded_coefficients(p: CharacteristicPolynomial) -> np.ndarray:
    """Real coefficients gamma_0..gamma_{n+1} (ascending) of the expansion."""
    coeffs = np.array([1.0])
    for zero in p.zeros:
        if zero.im > 0:
            factor = np.array([zero.re**2 + zero.im**2, -2.0 * zero.re, 1.0])
        else:
            factor = np.array([-zero.re, 1.0])
        for _ in range(zero.mult):
            coeffs = np.convolve(coeffs, factor)
    return coeffs


def is_reflection_invariant(p: CharacteristicPolynomial) -> bool:
    """True iff the zero multiset is symmetric under negation (even/odd p)."""
    for zero in p.zeros:
        mirror = [
            z
            for z in p.zeros
            if abs(z.re + zero.re) <= _TOL and abs(z.im - zero.im) <= _TOL
        ]
        if not mirror or mirror[0].mult != zero.mult:
            return False
    return True


def reflected_polynomial(p: CharacteristicPolynomial) -> CharacteristicPolynomial:
    """Polynomial with every zero negated (the space of u -> f(-u))."""
    return _from_zeros(
        [CharacteristicZero(-z.re, z.im, z.mult) for z in p.zeros],
        require_zero_root=False,
    )


def contains(sub: CharacteristicPolynomial, parent: CharacteristicPolynomial) -> bool:
    """Zero-multiset containment, the nesting test for ODE solution spaces."""
    for zero in sub.zeros:
        match = [
            z
            for z in parent.zeros
            if abs(z.re - zero.re) <= _TOL and abs(z.im - zero.im) <= _TOL
        ]
        if not match or match[0].mult < zero.mult:
            return False
    return True
