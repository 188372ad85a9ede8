"""Classical invariants of binary forms, exactly over Q.

Self-contained transvectant machinery for binary quartics (elliptic
j-invariant) and binary sextics (Igusa invariants of genus-2 curves
y^2 = f(x)).  This module deliberately shares no formulas with the
classification code: it is the independent route used to cross-check the
residue invariants that the classifier reports.

A binary form of degree n is a coefficient tuple (c_0, ..., c_n) meaning
f(x, y) = sum c_i x^(n-i) y^i; a univariate polynomial of degree <= n is
homogenized by padding.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Sequence, Union

__all__ = [
    "transvectant",
    "quartic_invariants",
    "quartic_j",
    "sextic_igusa_clebsch",
    "sextic_igusa",
    "homogenize",
]

Rat = Union[int, Fraction]


def homogenize(coeffs: Sequence[Rat], degree: int) -> tuple[Fraction, ...]:
    """Pad a descending-coefficient univariate polynomial to a binary form.

    ``coeffs`` lists the coefficients of x^d, ..., x, 1 for any d <= degree;
    the result is the degree-``degree`` binary form f(x, y) with
    y-homogenization, as a tuple of length degree+1.
    """
    cs = [Fraction(c) for c in coeffs]
    if len(cs) > degree + 1:
        raise ValueError("polynomial degree exceeds requested form degree")
    return tuple([Fraction(0)] * (degree + 1 - len(cs)) + cs)


def _dx(f: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    # d/dx of a degree-n form -> degree n-1
    return tuple(Fraction(n - i) * f[i] for i in range(n))


def _dy(f: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(i + 1) * f[i + 1] for i in range(n))


def _mixed(f: Sequence[Fraction], n: int, kx: int, ky: int) -> tuple[Fraction, ...]:
    g, d = tuple(f), n
    for _ in range(kx):
        g = _dx(g, d)
        d -= 1
    for _ in range(ky):
        g = _dy(g, d)
        d -= 1
    return g


def _mul(f: Sequence[Fraction], g: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return tuple(out)


def transvectant(
    f: Sequence[Rat], m: int, g: Sequence[Rat], n: int, k: int
) -> tuple[Fraction, ...]:
    """k-th transvectant of binary forms f (degree m) and g (degree n).

    (f, g)_k = (m-k)! (n-k)! / (m! n!) *
               sum_{i=0}^{k} (-1)^i C(k,i) f_{x^(k-i) y^i} g_{x^i y^(k-i)},

    a binary form of degree m + n - 2k.
    """
    if k > min(m, n):
        raise ValueError("transvectant order exceeds a form degree")
    ff = tuple(Fraction(c) for c in f)
    gg = tuple(Fraction(c) for c in g)
    if len(ff) != m + 1 or len(gg) != n + 1:
        raise ValueError("coefficient length does not match stated degree")
    acc = [Fraction(0)] * (m + n - 2 * k + 1)
    for i in range(k + 1):
        term = _mul(_mixed(ff, m, k - i, i), _mixed(gg, n, i, k - i))
        sign = -1 if i % 2 else 1
        cki = comb(k, i)
        for j, t in enumerate(term):
            acc[j] += sign * cki * t
    scale = Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))
    return tuple(scale * t for t in acc)


def quartic_invariants(coeffs: Sequence[Rat]) -> tuple[Fraction, Fraction]:
    """(I, J) of the binary quartic a x^4 + b x^3 + c x^2 + d x + e.

    I = 12ae - 3bd + c^2,  J = 72ace + 9bcd - 27ad^2 - 27b^2 e - 2c^3.
    """
    a, b, c, d, e = (Fraction(x) for x in homogenize(coeffs, 4))
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * b * b * e - 2 * c**3
    return I, J


def quartic_j(coeffs: Sequence[Rat]) -> Fraction:
    """j-invariant of the genus-1 curve y^2 = (binary quartic), exactly.

    j = 6912 I^3 / (4 I^3 - J^2); raises ZeroDivisionError on singular input.
    """
    I, J = quartic_invariants(coeffs)
    disc = 4 * I**3 - J * J
    if disc == 0:
        return Fraction(6912 * I**3, 1) / 0  # explicit ZeroDivisionError
    return Fraction(6912) * I**3 / disc


def sextic_igusa_clebsch(
    coeffs: Sequence[Rat],
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Igusa-Clebsch invariants (I2, I4, I6, I10) of a binary sextic.

    Built from the Clebsch transvectants

        A = (f,f)_6, i = (f,f)_4, B = (i,i)_4, Dl = (i,i)_2, C = (i,Dl)_4,
        y1 = (f,i)_4, y2 = (i,y1)_2, y3 = (i,y2)_2, D = (y3,y1)_2

    via the classical linear combinations.  I10 equals the discriminant of
    the sextic (checked in the test suite against an independent resultant
    computation).
    """
    f = homogenize(coeffs, 6)
    A = transvectant(f, 6, f, 6, 6)[0]
    i4 = transvectant(f, 6, f, 6, 4)
    B = transvectant(i4, 4, i4, 4, 4)[0]
    dl = transvectant(i4, 4, i4, 4, 2)
    C = transvectant(i4, 4, dl, 4, 4)[0]
    y1 = transvectant(f, 6, i4, 4, 4)
    y2 = transvectant(i4, 4, y1, 2, 2)
    y3 = transvectant(i4, 4, y2, 2, 2)
    D = transvectant(y3, 2, y1, 2, 2)[0]
    I2 = -120 * A
    I4 = -720 * A * A + 6750 * B
    I6 = 8640 * A**3 - 108000 * A * B + 202500 * C
    I10 = (
        -62208 * A**5
        + 972000 * A**3 * B
        + 1620000 * A * A * C
        - 3037500 * A * B * B
        - 6075000 * B * C
        - 4556250 * D
    )
    return I2, I4, I6, I10


def sextic_igusa(
    coeffs: Sequence[Rat],
) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
    """Igusa invariants (J2, J4, J6, J8, J10) of y^2 = sextic, weights (1,...,5)."""
    I2, I4, I6, I10 = sextic_igusa_clebsch(coeffs)
    J2 = I2 / 8
    J4 = (4 * J2 * J2 - I4) / 96
    J6 = (8 * J2**3 - 160 * J2 * J4 - I6) / 576
    J8 = (J2 * J6 - J4 * J4) / 4
    J10 = I10 / 4096
    return J2, J4, J6, J8, J10
