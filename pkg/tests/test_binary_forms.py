"""Binary-form invariants: transvectants, quartic j, sextic Igusa."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cianired.binary_forms import (
    quartic_invariants,
    quartic_j,
    sextic_igusa,
    sextic_igusa_clebsch,
    transvectant,
)

small_ints = st.integers(min_value=-9, max_value=9)


def test_quartic_j_frozen_values() -> None:
    assert quartic_j([1, 0, 0, 0, 1]) == 1728
    assert quartic_j([1, 0, 0, 1, 0]) == 0


def test_quartic_j_singular_raises() -> None:
    # (x^2)^2 has a double root: discriminant zero
    with pytest.raises(ZeroDivisionError):
        quartic_j([1, 0, 0, 0, 0])


def test_transvectant_degree_and_symmetry() -> None:
    f = (1, 2, 3, 4, 5)
    g = (2, -1, 0, 1)
    t = transvectant(f, 4, g, 3, 2)
    assert len(t) == 4 + 3 - 2 * 2 + 1
    # odd-order transvectant of a form with itself vanishes
    assert all(c == 0 for c in transvectant(f, 4, f, 4, 1))
    assert all(c == 0 for c in transvectant(f, 4, f, 4, 3))


def test_i10_equals_discriminant_on_random_sextics() -> None:
    rng = random.Random(7)
    x = sympy.symbols("x")
    for _ in range(25):
        coeffs = [rng.randint(-9, 9) for _ in range(7)]
        if coeffs[0] == 0:
            coeffs[0] = 1
        poly = sum(c * x ** (6 - i) for i, c in enumerate(coeffs))
        disc = Fraction(int(sympy.discriminant(poly, x)))
        assert sextic_igusa_clebsch(coeffs)[3] == disc


def test_igusa_clebsch_gl2_scaling() -> None:
    coeffs = [1, 2, -3, 4, 0, -2, 5]
    base = sextic_igusa_clebsch(coeffs)
    substituted = [c * Fraction(3) ** (6 - i) for i, c in enumerate(coeffs)]
    scaled = sextic_igusa_clebsch(substituted)
    for value, ref, weight in zip(scaled, base, (6, 12, 18, 30)):
        assert value == ref * Fraction(3) ** weight


def test_igusa_weights() -> None:
    # J_k has weight k: rescaling the sextic by x -> t*x multiplies J_k by t^(3k)
    coeffs = [2, 1, 0, -1, 3, 1, -2]
    t = Fraction(5)
    substituted = [c * t ** (6 - i) for i, c in enumerate(coeffs)]
    base = sextic_igusa(coeffs)
    scaled = sextic_igusa(substituted)
    for value, ref, weight in zip(scaled, base, (1, 2, 3, 4, 5)):
        assert value == ref * t ** (6 * weight)


@settings(max_examples=100)
@given(c=st.tuples(*[small_ints] * 5), shift=small_ints)
def test_quartic_j_translation_invariant(c, shift) -> None:
    from sympy.abc import x

    poly = sum(ci * x ** (4 - i) for i, ci in enumerate(c))
    disc = 4 * quartic_invariants(c)[0] ** 3 - quartic_invariants(c)[1] ** 2
    if disc == 0:
        return
    shifted = sympy.Poly(poly.subs(x, x + shift), x).all_coeffs()
    shifted = [0] * (5 - len(shifted)) + [int(v) for v in shifted]
    assert quartic_j(shifted) == quartic_j(c)
