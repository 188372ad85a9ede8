"""The hyperelliptic stratum members: y^2 = x^8 + M*x^6 + N*x^4 + M*x^2 + 1.

Three invariants classify the stable reduction at an odd prime:

    L1 = N + 10,
    L2 = M^2 - 4*N + 8      (the discriminant of the associated conic),
    L3 = (2*M + N + 2) * (2*M - N - 2),

with Delta(Y) = 2^4 * L2^4 * L3^2 and weighted normalization of weights
(1, 2, 3).  Reduction is potentially good iff nu(L1^2/L2) >= 0 and
nu(L2^3/L3^2) = 0; otherwise the L-valuation rows (a)-(d.iii) decide the
type (shared with the quartic classifier's hyperelliptic handoff).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classify import (
    ClassificationResult,
    ComponentReport,
    match_l_valuations,
)
from .quartic import SingularCurve
from .valuations import (
    INF,
    Val,
    ValuedContext,
    canonical_shift,
    residue,
    val_p,
)

__all__ = [
    "HypCianiModel",
    "LInvariants",
    "HypValuationProfile",
    "DegenerateOrbit",
    "l_invariants",
    "l_valuation_profile",
    "classify_hyp",
    "classify_hyp_model",
    "hyp_j_residues",
    "hyp_transform_orbit",
]


class DegenerateOrbit(ValueError):
    """A parameter-orbit denominator vanishes (the curve is singular there)."""


@dataclass(frozen=True)
class HypCianiModel:
    """Parameters (M, N) of y^2 = x^8 + M*x^6 + N*x^4 + M*x^2 + 1."""

    M: Fraction
    N: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "M", Fraction(self.M))
        object.__setattr__(self, "N", Fraction(self.N))
        l_ = l_invariants(self)
        if l_.L2 == 0 or l_.L3 == 0:
            raise SingularCurve("Delta(Y) = 2^4 L2^4 L3^2 = 0: singular model")

    def octic_coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients of x^8 + M x^6 + N x^4 + M x^2 + 1, descending."""
        one, zero = Fraction(1), Fraction(0)
        return (one, zero, self.M, zero, self.N, zero, self.M, zero, one)


@dataclass(frozen=True)
class LInvariants:
    """The three stratum invariants, exact."""

    L1: Fraction
    L2: Fraction
    L3: Fraction

    def triple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.L1, self.L2, self.L3)

    @property
    def delta_Y(self) -> Fraction:
        return 16 * self.L2**4 * self.L3**2


@dataclass(frozen=True)
class HypValuationProfile:
    """Canonically normalized L-valuations (weights (1, 2, 3)) at p."""

    nu_L1: Val
    nu_L2: Val
    nu_L3: Val
    nu_disc: Val  # normalized valuation of L1^2 - 4*L2 (weight 2)
    shift: Fraction
    raw: tuple[Val, ...]
    context: ValuedContext
    l: LInvariants

    def triple(self) -> tuple[Val, Val, Val]:
        return (self.nu_L1, self.nu_L2, self.nu_L3)


def l_invariants(m: HypCianiModel) -> LInvariants:
    """The invariants (L1, L2, L3) of a hyperelliptic model."""
    M, N = Fraction(m.M), Fraction(m.N)
    return LInvariants(
        L1=N + 10,
        L2=M**2 - 4 * N + 8,
        L3=(2 * M + N + 2) * (2 * M - N - 2),
    )


def l_valuation_profile(l_: LInvariants, ctx: ValuedContext) -> HypValuationProfile:
    """Normalized valuation profile of (L1, L2, L3) with weights (1, 2, 3).

    After normalization the minimal weighted valuation is 0, hence the three
    cannot be simultaneously positive (asserted).
    """
    raw = tuple(val_p(x, ctx) for x in l_.triple())
    e, shifted = canonical_shift(list(zip(raw, (1, 2, 3))))
    nu_disc = val_p(l_.L1**2 - 4 * l_.L2, ctx)
    if nu_disc != INF:
        nu_disc = nu_disc + 2 * e
    if all(v > 0 for v in shifted):
        raise AssertionError(
            "normalized L-valuations simultaneously positive; "
            "canonical shift violated its own postcondition"
        )
    return HypValuationProfile(
        *shifted, nu_disc=nu_disc, shift=e, raw=raw, context=ctx, l=l_
    )


def classify_hyp(l_: LInvariants, ctx: ValuedContext) -> ClassificationResult:
    """Classify a hyperelliptic stratum member from its L-invariants."""
    profile = l_valuation_profile(l_, ctx)
    case_id, graph, rtype = match_l_valuations(
        profile.nu_L1, profile.nu_L2, profile.nu_L3, profile.nu_disc
    )
    if case_id in ("T3.a", "T3.d.iii"):
        components = hyp_j_residues(l_, case_id, ctx)
    else:
        components = ComponentReport(kind="none")
    return ClassificationResult(
        case_id=case_id,
        reduction_type=rtype,
        graph=graph,
        components=components,
        profile=profile,
        hyperelliptic_reduction=True,
    )


def classify_hyp_model(m: HypCianiModel, ctx: ValuedContext) -> ClassificationResult:
    """Convenience: invariants and classification in one step."""
    return classify_hyp(l_invariants(m), ctx)


def hyp_j_residues(
    l_: LInvariants, case: str, ctx: ValuedContext
) -> ComponentReport:
    """Component j-invariants for the two cases that report one.

    Case (a) carries a genus-1 component of
    j = 2^4 (12 L2 + L1^2)^3 / ((4 L2 - L1^2)^2 L2); case (d.iii) carries two
    components of j = 1728.
    """
    if case == "T3.a":
        num = 16 * (12 * l_.L2 + l_.L1**2) ** 3
        den = (4 * l_.L2 - l_.L1**2) ** 2 * l_.L2
        return ComponentReport(
            kind="j-invariant", j=residue(Fraction(num, den), ctx)
        )
    if case == "T3.d.iii":
        return ComponentReport(kind="const-1728", j=1728 % ctx.p)
    raise ValueError(f"no component j report for case {case}")


def hyp_transform_orbit(m: HypCianiModel) -> list[tuple[Fraction, Fraction]]:
    """The six (M, N) parameter pairs describing the same stratum member.

    Raises DegenerateOrbit when a denominator 2M+N+2 or -2M+N+2 vanishes
    (both are factors of L3 up to sign, so the model is singular there).
    """
    M, N = m.M, m.N
    d1 = 2 * M + N + 2
    d2 = -2 * M + N + 2
    if d1 == 0 or d2 == 0:
        raise DegenerateOrbit("orbit denominator vanishes")
    m1 = (8 * M - 4 * N + 56) / d1
    n1 = (-20 * M + 6 * N + 140) / d1
    m2 = (-8 * M - 4 * N + 56) / d2
    n2 = (20 * M + 6 * N + 140) / d2
    return [(M, N), (-M, N), (m1, n1), (-m1, n1), (m2, n2), (-m2, n2)]