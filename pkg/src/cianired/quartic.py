"""The symmetric plane-quartic model, its stratum invariants, and normalization.

The model is F = A x^4 + B y^4 + C z^4 + a y^2 z^2 + b x^2 z^2 + c x^2 y^2,
the generic member of the family of smooth plane quartics admitting the
Klein four-group of sign-flip automorphisms.  Attached to it:

* the three quadratic discriminants Delta_a = a^2 - 4BC (and cyclic),
* the quotient-conic discriminant Delta(X) = I3'',
* the quartic discriminant Delta(Y) (up to a fixed power of 2),
* the five stratum invariants I3, I3', I3'', I6, I of weights (3,3,3,6,6),
  which satisfy the syzygy

      4*I + I6 - I3'^2 + 16*I3*I3'' + 2*I3'*I3'' - I3''^2 = 0.

The syzygy and the two product formulas for Delta(Y) are asserted on every
construction; a violation means an implementation bug, never bad input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .valuations import (
    INF,
    Val,
    ValuedContext,
    canonical_shift,
    val_p,
)

__all__ = [
    "SingularCurve",
    "RelationViolated",
    "CianiQuartic",
    "QuarticInvariants",
    "ValuationProfile",
    "INVARIANT_WEIGHTS",
    "deltas",
    "invariants",
    "apply_transform",
    "normalize_coefficient_valuations",
    "valuation_profile",
]

#: Weights of (I3, I3', I3'', I6, I) for canonical normalization.
INVARIANT_WEIGHTS = (3, 3, 3, 6, 6)


class SingularCurve(ValueError):
    """The quartic (or octic) discriminant vanishes."""


class RelationViolated(AssertionError):
    """Internal consistency failure: the invariant syzygy or a discriminant
    identity failed.  Indicates a bug, not bad input."""


Rat = Union[int, Fraction]


@dataclass(frozen=True)
class CianiQuartic:
    """Coefficients (A, B, C, a, b, c) of the standard-form quartic."""

    A: Fraction
    B: Fraction
    C: Fraction
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self) -> None:
        for name in ("A", "B", "C", "a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def of(cls, coeffs: Sequence[Rat]) -> "CianiQuartic":
        if len(coeffs) != 6:
            raise ValueError("expected 6 coefficients A,B,C,a,b,c")
        return cls(*[Fraction(x) for x in coeffs])

    def caps(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.A, self.B, self.C)

    def lowers(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def coeffs(self) -> tuple[Fraction, ...]:
        return (self.A, self.B, self.C, self.a, self.b, self.c)


@dataclass(frozen=True)
class QuarticInvariants:
    """Discriminants and stratum invariants of a CianiQuartic."""

    delta_a: Fraction
    delta_b: Fraction
    delta_c: Fraction
    delta_X: Fraction
    delta_Y: Fraction
    I3: Fraction
    I3p: Fraction
    I3pp: Fraction
    I6: Fraction
    Iinv: Fraction

    def tuple5(self) -> tuple[Fraction, ...]:
        """The 5 classification invariants in weight order (3,3,3,6,6)."""
        return (self.I3, self.I3p, self.I3pp, self.I6, self.Iinv)


def deltas(q: CianiQuartic) -> tuple[Fraction, Fraction, Fraction]:
    """(Delta_a, Delta_b, Delta_c) = (a^2-4BC, b^2-4AC, c^2-4AB)."""
    return (
        q.a * q.a - 4 * q.B * q.C,
        q.b * q.b - 4 * q.A * q.C,
        q.c * q.c - 4 * q.A * q.B,
    )


def invariants(q: CianiQuartic) -> QuarticInvariants:
    """All discriminants and stratum invariants, with identities asserted.

    Delta(Y) is stored as -2^(-16) * I3 * I3''^4 * I6^2, equal to
    -2^(-16) * A*B*C * Delta_a^2 * Delta_b^2 * Delta_c^2 * Delta(X)^4; the
    two product forms are compared exactly.  The absolute value matches the
    discriminant scale on which |Delta(Y)| of the reference curve
    (2,2,15,-11,-11,3) equals 2^2*3*5*7^2.
    """
    A, B, C, a, b, c = q.A, q.B, q.C, q.a, q.b, q.c
    da, db, dc = deltas(q)
    I3 = A * B * C
    I3p = A * da + B * db + C * dc
    I3pp = -4 * A * B * C + A * a * a + B * b * b + C * c * c - a * b * c
    I6 = da * db * dc
    Iinv = A * B * da * db + A * C * da * dc + B * C * db * dc
    syzygy = 4 * Iinv + I6 - I3p * I3p + 16 * I3 * I3pp + 2 * I3p * I3pp - I3pp * I3pp
    if syzygy != 0:
        raise RelationViolated(f"invariant syzygy violated: {syzygy}")
    two16 = Fraction(1, 2**16)
    dY_coeff = -two16 * A * B * C * da**2 * db**2 * dc**2 * I3pp**4
    dY_inv = -two16 * I3 * I3pp**4 * I6**2
    if dY_coeff != dY_inv:
        raise RelationViolated("the two Delta(Y) product forms disagree")
    return QuarticInvariants(
        delta_a=da,
        delta_b=db,
        delta_c=dc,
        delta_X=I3pp,
        delta_Y=dY_inv,
        I3=I3,
        I3p=I3p,
        I3pp=I3pp,
        I6=I6,
        Iinv=Iinv,
    )


def apply_transform(
    q: CianiQuartic,
    perm: Sequence[int],
    scalars: Sequence[Rat],
) -> CianiQuartic:
    """Coefficient action of a model isomorphism plus a global rescaling.

    ``perm`` is a permutation (s0, s1, s2) of (0, 1, 2): coordinate slot i of
    the new model takes the old slot perm[i] (so perm = (1,0,2) swaps the
    first two variables, sending (A,B,C,a,b,c) to (B,A,C,b,a,c)).
    ``scalars`` = (lx, ly, lz, lF), all nonzero: diagonal coordinate scalings
    and a global factor on F.  Explicitly, with L = (lx, ly, lz):

        caps'[i]   = lF * L[i]^4 * caps[perm[i]]
        lowers'[i] = lF * L[j]^2 * L[k]^2 * lowers[perm[i]]   ({i,j,k} = {0,1,2})

    Every invariant scales by a power of lF*(lx*ly*lz)^(4/3) determined by
    its weight, so valuation profiles are unchanged after normalization.
    """
    if sorted(perm) != [0, 1, 2]:
        raise ValueError(f"perm must be a permutation of (0,1,2), got {perm!r}")
    lx, ly, lz, lF = (Fraction(s) for s in scalars)
    if 0 in (lx, ly, lz, lF):
        raise ValueError("scalars must be nonzero")
    L = (lx, ly, lz)
    caps, lowers = q.caps(), q.lowers()
    new_caps = []
    new_lowers = []
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        new_caps.append(lF * L[i] ** 4 * caps[perm[i]])
        new_lowers.append(lF * L[j] ** 2 * L[k] ** 2 * lowers[perm[i]])
    return CianiQuartic(*new_caps, *new_lowers)


def normalize_coefficient_valuations(
    vals: Sequence[Val],
) -> tuple[Fraction, Fraction, Fraction, tuple[Val, ...]]:
    """Normalize a 6-tuple of coefficient valuations by coordinate scalings.

    A scaling (x, y, z) -> (p^r x, p^s y, p^t z) shifts the valuations of
    (A, B, C, a, b, c) by (4r, 4s, 4t, 2s+2t, 2r+2t, 2r+2s).  This routine
    finds (r, s, t) such that each of the six coefficient sets

        {A,B,c}, {A,b,C}, {a,B,C}, {A,b,c}, {a,B,c}, {a,b,C}

    contains an entry of valuation 0 and none negative, and returns
    (r, s, t, shifted valuations).

    The procedure: lift everything to be nonnegative, then for each variable
    whose monomial set {cap, its two lowers} misses zero, scale that variable
    down; finally at most one of the "two caps + opposite lower" sets can
    still miss zero, fixed by a balanced move that leaves the other lowers
    untouched.  Each move keeps all entries nonnegative and preserves zeros
    of the other sets, so termination is immediate (at most 5 moves).
    """
    if len(vals) != 6:
        raise ValueError("expected 6 valuations for (A,B,C,a,b,c)")
    v = [INF if x == INF else Fraction(x) for x in vals]
    r = s = t = Fraction(0)

    def shift(dr: Fraction, ds: Fraction, dt: Fraction) -> None:
        nonlocal r, s, t
        r, s, t = r + dr, s + ds, t + dt
        deltas6 = (4 * dr, 4 * ds, 4 * dt, 2 * ds + 2 * dt, 2 * dr + 2 * dt, 2 * dr + 2 * ds)
        for i in range(6):
            if v[i] != INF:
                v[i] += deltas6[i]

    # Indices: 0..2 caps A,B,C; 3..5 lowers a,b,c.
    # Variable-monomial sets (first-bullet targets), cap first: x's set
    # {A,b,c}, y's set {B,a,c}, z's set {C,a,b}.
    var_sets = ((0, 4, 5), (1, 3, 5), (2, 3, 4))
    # Cap-pair sets (second-bullet targets): {A,B,c}, {A,b,C}, {a,B,C}.
    pair_sets = ((0, 1, 5), (0, 4, 2), (3, 1, 2))

    finite = [x for x in v if x != INF]
    if not finite:
        raise ValueError("all six coefficients vanish; not a curve")
    floor = min(finite)
    if floor < 0:
        # Uniform lift: r = s = t = T raises every entry by a positive amount.
        shift(-floor, -floor, -floor)

    def set_min(idxs: tuple[int, int, int]) -> Val:
        vals_here = [v[i] for i in idxs if v[i] != INF]
        return min(vals_here) if vals_here else INF

    # First bullet: make each variable's monomial set reach zero by scaling
    # that variable alone.  Weights within the set are (4, 2, 2) for
    # (cap, lower, lower), so the move is r = -min(cap/4, lower/2, lower/2).
    for var, idxs in enumerate(var_sets):
        cap, l1, l2 = idxs
        cands = []
        if v[cap] != INF:
            cands.append(v[cap] / 4)
        if v[l1] != INF:
            cands.append(v[l1] / 2)
        if v[l2] != INF:
            cands.append(v[l2] / 2)
        if not cands:
            raise ValueError("a full variable-monomial set vanishes; not a curve")
        m = min(cands)
        if m > 0:
            move = [Fraction(0)] * 3
            move[var] = -m
            shift(*move)

    # Second bullet: at most one cap-pair set can still miss zero (its two
    # lowers are then forced to 0 by the first bullet).  The balanced move
    # lowers its three entries and raises the remaining cap, leaving all
    # lowers outside the set unchanged.
    for pos, idxs in enumerate(pair_sets):
        if set_min(idxs) > 0:
            cands = [v[i] / 4 for i in idxs if v[i] != INF]
            if not cands:
                raise ValueError("a full cap-pair coefficient set vanishes; not a curve")
            m = min(cands)
            # pair_sets[0] = {A,B,c}: move (r,s,t) = (-m,-m,+m)
            # pair_sets[1] = {A,b,C}: move (r,s,t) = (-m,+m,-m)
            # pair_sets[2] = {a,B,C}: move (r,s,t) = (+m,-m,-m)
            signs = {0: (-m, -m, m), 1: (-m, m, -m), 2: (m, -m, -m)}[pos]
            shift(*signs)

    for idxs in var_sets + pair_sets:
        if set_min(idxs) != 0:
            raise RelationViolated(
                f"coefficient normalization failed: set {idxs} has min {set_min(idxs)}"
            )
    return r, s, t, tuple(v)


@dataclass(frozen=True)
class ValuationProfile:
    """Canonically normalized valuations of (I3, I3', I3'', I6, I) at p.

    ``nu_aux`` is the normalized valuation of the weight-6 combination
    I3'^2 - 16*I3*I3'', which refines one branch of the classification.
    The exact invariants and the curve they came from ride along so that
    residue-field component invariants can be computed downstream.
    """

    nu_I3: Val
    nu_I3p: Val
    nu_I3pp: Val
    nu_I6: Val
    nu_I: Val
    nu_aux: Val
    shift: Fraction
    raw: tuple[Val, ...]
    context: ValuedContext
    invariants: QuarticInvariants
    curve: CianiQuartic

    def tuple5(self) -> tuple[Val, ...]:
        return (self.nu_I3, self.nu_I3p, self.nu_I3pp, self.nu_I6, self.nu_I)


def valuation_profile(q: CianiQuartic, ctx: ValuedContext) -> ValuationProfile:
    """Normalized valuation profile of the five stratum invariants.

    Computes val_p of (I3, I3', I3'', I6, I) and applies the canonical shift
    with weights (3,3,3,6,6).  The result equals the profile of any
    coefficient-normalized model of the same curve.  Raises ``SingularCurve``
    when Delta(Y) = 0.
    """
    inv = invariants(q)
    if inv.delta_Y == 0:
        raise SingularCurve("Delta(Y) = 0: the quartic is singular")
    raw = tuple(val_p(x, ctx) for x in inv.tuple5())
    e, shifted = canonical_shift(list(zip(raw, INVARIANT_WEIGHTS)))
    aux = val_p(inv.I3p**2 - 16 * inv.I3 * inv.I3pp, ctx)
    if aux != INF:
        aux = aux + 6 * e
    return ValuationProfile(
        *shifted,
        nu_aux=aux,
        shift=e,
        raw=raw,
        context=ctx,
        invariants=inv,
        curve=q,
    )
