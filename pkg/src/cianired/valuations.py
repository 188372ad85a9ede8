"""Exact p-adic valuations on rationals, residue fields, and weighted normalization.

Everything in this module is exact: values are `fractions.Fraction` (or ints),
valuations are Fractions or the infinity sentinel ``INF`` (the valuation of 0),
and residues are plain integers in ``[0, p)``.  No floats ever enter the
arithmetic except the ``INF`` sentinel itself, which is only compared, never
mixed into division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from sympy import factorint, isprime

__all__ = [
    "INF",
    "Val",
    "ValuedContext",
    "EvenPrime",
    "NegativeValuation",
    "AllInfinite",
    "ZeroInput",
    "FractionalShift",
    "val_p",
    "residue",
    "canonical_shift",
    "odd_bad_primes",
    "weighted_residues",
    "weighted_points_equal",
]

#: Valuation of zero.  ``float("inf")`` compares correctly against Fractions
#: and is absorbing under addition with them, which is all we need.
INF = float("inf")

Val = Union[Fraction, float]


class EvenPrime(ValueError):
    """Raised when a context is requested at p = 2 or at a non-prime."""


class NegativeValuation(ArithmeticError):
    """Raised when a residue is requested for a rational with a pole at p."""


class AllInfinite(ValueError):
    """Raised when a weighted tuple consists entirely of valuations of zero."""


class ZeroInput(ValueError):
    """Raised when a nonzero rational is required."""


class FractionalShift(ValueError):
    """Raised when a canonical shift is not realizable by integral powers of p."""


@dataclass(frozen=True)
class ValuedContext:
    """An odd prime p, fixing the valuation nu (normalized by nu(p) = 1).

    INPUT:

    - ``p`` -- an odd prime integer

    The residue field is F_p.  p = 2 is rejected outright: every statement
    implemented here assumes odd residue characteristic.
    """

    p: int

    def __post_init__(self) -> None:
        if self.p == 2:
            raise EvenPrime("p = 2 is not supported (odd residue characteristic required)")
        if self.p < 2 or not isprime(self.p):
            raise EvenPrime(f"p = {self.p} is not an odd prime")


def val_p(x: Union[int, Fraction], ctx: ValuedContext) -> Val:
    """p-adic valuation of an exact rational.

    INPUT:

    - ``x`` -- int or Fraction
    - ``ctx`` -- ValuedContext fixing p

    OUTPUT: an integer-valued Fraction, or ``INF`` for x = 0.

    EXAMPLES: val_3(60) = 1; val_7(-416) = 0; val_p(0) = INF.
    """
    x = Fraction(x)
    if x == 0:
        return INF
    p = ctx.p
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return Fraction(v)


def residue(x: Union[int, Fraction], ctx: ValuedContext) -> int:
    """Image of x in F_p, as an integer in [0, p).

    The denominator is inverted mod p; a negative valuation raises
    ``NegativeValuation``.
    """
    x = Fraction(x)
    p = ctx.p
    if x.denominator % p == 0:
        raise NegativeValuation(f"{x} has negative valuation at p={p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def canonical_shift(
    entries: Sequence[tuple[Val, int]],
) -> tuple[Fraction, list[Val]]:
    """Canonical weighted normalization of a tuple of valuations.

    Given pairs (nu_i, w_i), returns the unique shift e such that the tuple
    (nu_i + e*w_i) has all finite entries >= 0 with at least one weighted
    entry equal to zero: e = -min over finite entries of nu_i / w_i.

    Infinite entries are ignored by the minimum and stay infinite.  Raises
    ``AllInfinite`` if there is no finite entry.
    """
    finite = [Fraction(v) / w for v, w in entries if v != INF]
    if not finite:
        raise AllInfinite("cannot normalize a tuple of all-zero values")
    e = -min(finite)
    shifted: list[Val] = [INF if v == INF else Fraction(v) + e * w for v, w in entries]
    return e, shifted


def odd_bad_primes(x: Union[int, Fraction]) -> list[tuple[int, int]]:
    """All odd primes dividing numerator or denominator of x, with signed exponents.

    Returned in ascending prime order.  Raises ``ZeroInput`` for x = 0.

    EXAMPLES: 2940 -> [(3,1), (5,1), (7,2)]; -1 -> []; 45/7 -> [(3,2), (5,1), (7,-1)].
    """
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("0 has no prime factorization")
    exps: dict[int, int] = {}
    for q, k in factorint(x.numerator).items():
        if q not in (-1, 2):
            exps[q] = exps.get(q, 0) + k
    for q, k in factorint(x.denominator).items():
        if q != 2:
            exps[q] = exps.get(q, 0) - k
    return sorted((q, k) for q, k in exps.items() if k != 0)


def weighted_residues(
    values: Sequence[Union[int, Fraction]],
    weights: Sequence[int],
    ctx: ValuedContext,
) -> tuple[Fraction, tuple[int, ...]]:
    """Reduce a weighted tuple of rationals to F_p after dividing out p^(canonical shift).

    Computes the canonical shift e of the valuation tuple and returns
    (e, residues of x_i * p^(e*w_i)).  Every e*w_i must be an integer;
    otherwise ``FractionalShift`` is raised (the normalized representative
    would live in a ramified extension).
    """
    vals = [val_p(x, ctx) for x in values]
    e, _ = canonical_shift(list(zip(vals, weights)))
    res = []
    for x, w in zip(values, weights):
        m = e * w
        if m.denominator != 1:
            raise FractionalShift(
                f"shift {e} with weight {w} needs a fractional power of p"
            )
        res.append(residue(Fraction(x) * Fraction(ctx.p) ** int(m), ctx))
    return e, tuple(res)


def weighted_points_equal(
    xs: Sequence[int],
    ys: Sequence[int],
    weights: Sequence[int],
    ctx: ValuedContext,
) -> bool:
    """Equality of two weighted projective points over F_p.

    True iff there is u in F_p* with u^w_i * x_i = y_i for all i.  Entries are
    residues in [0, p).  Root extraction is brute-forced over the <= w_i
    candidate scalars via sympy's ``nthroot_mod``.
    """
    from sympy.ntheory.residue_ntheory import nthroot_mod

    p = ctx.p
    xs = [x % p for x in xs]
    ys = [y % p for y in ys]
    if [x == 0 for x in xs] != [y == 0 for y in ys]:
        return False
    pivot = next((i for i, x in enumerate(xs) if x != 0), None)
    if pivot is None:
        return True
    target = ys[pivot] * pow(xs[pivot], -1, p) % p
    roots = nthroot_mod(target, weights[pivot], p, all_roots=True) or []
    for u in roots:
        if all(pow(u, w, p) * x % p == y for x, y, w in zip(xs, ys, weights)):
            return True
    return False
