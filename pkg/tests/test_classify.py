"""Valuation-profile classification and residue-field component reports."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cianired.binary_forms import sextic_igusa
from cianired.classify import (
    ComponentReport,
    MultiMatch,
    UnmatchedProfile,
    classify,
    classify_curve,
    loop_j_T1a,
    match_l_valuations,
)
from cianired.graphs import ReductionType
from cianired.quartic import CianiQuartic, invariants, valuation_profile
from cianired.valuations import INF, ValuedContext, odd_bad_primes, residue, val_p

from corpus import QUARTIC_CASES, UNMATCHED_WITNESS, quartic
from nodal_j import loop_component_j

REFERENCE = CianiQuartic(2, 2, 15, -11, -11, 3)


# ---------------------------------------------------------------------------
# Reference curve: one curve, three primes, three different outcomes.
# ---------------------------------------------------------------------------


def test_reference_curve_at_seven_is_loop_with_j_six() -> None:
    res = classify_curve(REFERENCE, ValuedContext(7))
    assert res.case_id == "T1.a"
    assert res.graph == "II.3"
    assert res.reduction_type is ReductionType.LOOP
    assert res.profile.tuple5() == (0, 0, 0, 1, 0)
    assert res.components.kind == "j-invariant"
    assert res.components.j == 6
    # and the formula value agrees with the exact rational j reduced mod 7
    assert residue(Fraction(814780504, 2535), ValuedContext(7)) == 6


def test_reference_curve_at_three_is_lop_with_igusa_point() -> None:
    res = classify_curve(REFERENCE, ValuedContext(3))
    assert res.case_id == "T1.d"
    assert res.reduction_type is ReductionType.LOP
    assert res.components.kind == "igusa"
    assert res.components.igusa == (1, 0, 2, 2, 2)
    assert res.components.j2_5_over_j10 == 2
    assert res.components.weights == (1, 2, 3, 4, 5)


def test_reference_curve_at_five_is_lop_with_special_igusa_point() -> None:
    res = classify_curve(REFERENCE, ValuedContext(5))
    assert res.case_id == "T1.d"
    assert res.components.igusa == (0, 0, 0, 0, 1)
    assert res.components.j2_5_over_j10 == 0


# ---------------------------------------------------------------------------
# Further frozen fixtures.
# ---------------------------------------------------------------------------


def test_dna_fixture() -> None:
    res = classify_curve(CianiQuartic(1, 1, 2, 1, 1, 1), ValuedContext(5))
    assert (res.case_id, res.graph) == ("T2.a", "II.2")
    assert res.reduction_type is ReductionType.DNA
    assert res.profile.tuple5() == (0, 1, 1, 0, 0)
    assert res.components.kind == "none"


def test_candy_fixture_reports_j_pair_quadratic() -> None:
    res = classify_curve(CianiQuartic(3, 3, 1, 0, 0, 1), ValuedContext(3))
    assert (res.case_id, res.graph) == ("T1.f.iii", "II.1")
    assert res.components.kind == "j-pair"
    assert res.components.quadratic == (1, 0, 0)
    assert res.components.roots == (0, 0)
    assert not res.components.degenerate


def test_fermat_quartic_has_good_reduction_everywhere() -> None:
    fermat = CianiQuartic(1, 1, 1, 0, 0, 0)
    assert odd_bad_primes(invariants(fermat).delta_Y) == []
    res = classify_curve(fermat, ValuedContext(5))
    assert res.case_id == "GOOD"
    assert res.reduction_type is ReductionType.GOOD
    assert res.type_token == "GoodQuartic"


def test_winkycat_fixture_j() -> None:
    res = classify_curve(CianiQuartic(5, -25, 1, 0, 6, 124), ValuedContext(5))
    assert res.case_id == "T1.f.vi"
    assert res.reduction_type is ReductionType.WINKY_CAT
    assert res.components.j == 3


def test_corpus_classifications_are_stable() -> None:
    for case_id, coeffs, p, graph, token in QUARTIC_CASES:
        res = classify_curve(quartic(coeffs), ValuedContext(p))
        assert res.case_id == case_id, (case_id, p)
        assert res.graph == graph, (case_id, p)
        assert res.type_token == token, (case_id, p)


def test_hyperelliptic_reduction_rows_report_the_l_point() -> None:
    for case_id, coeffs, p, _, _ in QUARTIC_CASES:
        if not case_id.startswith("T2.c"):
            continue
        res = classify_curve(quartic(coeffs), ValuedContext(p))
        assert res.hyperelliptic_reduction
        assert res.components.kind == "hyp-point"
        assert res.components.weights == (1, 2, 3)
        assert res.components.point is not None
        assert any(res.components.point)


def test_non_handoff_rows_are_not_marked_hyperelliptic() -> None:
    for case_id, coeffs, p, _, _ in QUARTIC_CASES:
        if case_id.startswith("T2.c"):
            continue
        res = classify_curve(quartic(coeffs), ValuedContext(p))
        assert not res.hyperelliptic_reduction


# ---------------------------------------------------------------------------
# The unmatched gap region is reachable and reported, not mislabeled.
# ---------------------------------------------------------------------------


def test_gap_profile_raises_unmatched() -> None:
    coeffs, p = UNMATCHED_WITNESS
    with pytest.raises(UnmatchedProfile) as exc:
        classify_curve(CianiQuartic(*coeffs), ValuedContext(p))
    assert exc.value.profile.tuple5() == (1, 1, 0, 1, 0)
    assert "no classification row matches" in str(exc.value)


# ---------------------------------------------------------------------------
# The shared L-point row matcher.
# ---------------------------------------------------------------------------


def _l_case(n1, n2, n3, disc) -> str:
    return match_l_valuations(
        Fraction(n1), Fraction(n2), Fraction(n3), Fraction(disc)
    )[0]


def test_l_row_good_tests_first() -> None:
    assert _l_case(0, 0, 0, 0) == "GOOD"
    # the good test wins even when later guards would also fire
    assert _l_case(1, 2, 3, 0) == "GOOD"


def test_l_rows_frozen_examples() -> None:
    assert _l_case(0, 0, 1, 0) == "T3.a"
    assert _l_case(1, 0, 1, 0) == "T3.a"
    assert _l_case(0, 0, 1, 1) == "T3.b"
    assert _l_case(0, 1, 0, 0) == "T3.c"
    assert _l_case(0, 1, 3, 1) == "T3.d.i"
    assert _l_case(0, 4, 3, 1) == "T3.d.ii"
    assert _l_case(0, 2, 2, 1) == "T3.d.iii"


def test_l_rows_unmatched_triple() -> None:
    with pytest.raises(UnmatchedProfile):
        _l_case(1, 1, 1, 1)


# ---------------------------------------------------------------------------
# Row disjointness and the two equivalent good-reduction criteria.
# ---------------------------------------------------------------------------

coefficients = st.integers(min_value=-30, max_value=30)


def _smooth(q: CianiQuartic) -> bool:
    return invariants(q).delta_Y != 0


@settings(max_examples=150, deadline=None)
@given(st.tuples(*[coefficients] * 6).map(lambda t: CianiQuartic(*t)).filter(_smooth))
def test_rows_never_multimatch(q: CianiQuartic) -> None:
    for p, _ in odd_bad_primes(invariants(q).delta_Y):
        if p > 50:
            continue
        try:
            classify_curve(q, ValuedContext(p))
        except UnmatchedProfile:
            pass  # the known gap region; never a silent mislabel


@settings(max_examples=150, deadline=None)
@given(st.tuples(*[coefficients] * 6).map(lambda t: CianiQuartic(*t)).filter(_smooth))
def test_good_reduction_criteria_agree(q: CianiQuartic) -> None:
    """Global-shift reading (all three special valuations vanish after the
    profile shift) versus own-shift reading (the discriminant valuation is
    cancelled exactly by its own canonical shift)."""
    inv = invariants(q)
    for p, _ in odd_bad_primes(inv.delta_Y):
        if p > 50:
            continue
        ctx = ValuedContext(p)
        prof = valuation_profile(q, ctx)
        global_good = (
            prof.nu_I3 == 0 and prof.nu_I3pp == 0 and prof.nu_I6 == 0
        )
        raw3 = val_p(inv.I3, ctx)
        raw3pp = val_p(inv.I3pp, ctx)
        raw6 = val_p(inv.I6, ctx)
        e3 = -min(raw3 / 3, raw3pp / 3, raw6 / 6)
        nu_disc = raw3 + 4 * raw3pp + 2 * raw6
        own_good = nu_disc + 27 * e3 == 0
        assert global_good == own_good


# ---------------------------------------------------------------------------
# Arbitration of the reported component invariants by independent routes
# that never touch the classifier's closed-form letter expressions.
# ---------------------------------------------------------------------------


def test_loop_t1a_j_equals_normalization_of_reduced_quartic() -> None:
    """The T1.a genus-1 component is the normalization of the reduced
    2-nodal quartic; its j-invariant is recomputed here by projecting from
    a node over F_{p^2}."""
    fixtures = [
        ((1, 2, 1, -3, Fraction(5, 2), Fraction(9, 2)), 7),
        ((2, 2, 15, -11, -11, 3), 7),
        ((-2, 45, 6, Fraction(-1081, 2), -11, -27), 11),
        ((-1, 12, 2, 12, 14, 9), 17),
    ]
    for letters, p in fixtures:
        q = CianiQuartic(*map(Fraction, letters))
        res = classify_curve(q, ValuedContext(p))
        assert res.case_id == "T1.a", (letters, p)
        assert loop_component_j(q, p) == res.components.j, (letters, p)


def test_loop_t1g_j_equals_normalization_of_reduced_quartic() -> None:
    fixtures = [
        ((-9, 35, 14, 29, -16, 30), 7),
        ((-33, -22, 35, 34, -19, 39), 11),
        ((30, 39, -13, 4, -17, 12), 13),
    ]
    for letters, p in fixtures:
        q = CianiQuartic(*map(Fraction, letters))
        res = classify_curve(q, ValuedContext(p))
        assert res.case_id == "T1.g", (letters, p)
        assert loop_component_j(q, p) == res.components.j, (letters, p)


def test_lop_igusa_normalization_constants_exact() -> None:
    """The raw T1.d polynomial forms equal the sextic-model Igusa invariants
    scaled by lambda = -bc/2 in weights (1..5) and the fixed constants
    (1, 32, -8, -4096, 2048); this pins the normalization division used by
    the classifier, as an exact rational identity on the A = 0 locus."""
    rng = random.Random(61409)
    weights = (1, 2, 3, 4, 5)
    mus = (1, 32, -8, -4096, 2048)
    checked = 0
    while checked < 40:
        B, C, a, b, c = (
            Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(5)
        )
        if 0 in (B, C, b, c):
            continue
        checked += 1
        i3p = B * b**2 + C * c**2
        i3pp = i3p - a * b * c
        i6 = (a * a - 4 * B * C) * b * b * c * c
        iv = B * C * b * b * c * c
        raw = (
            i3p * i3pp - i3pp**2 + 2 * i6 + 24 * iv,
            i3pp**2 * i6 + 64 * i3p * i3pp * iv - 64 * i3pp**2 * iv
            + 128 * i6 * iv + 768 * iv**2,
            i3pp**2 * i6 * iv - 32 * i3p * i3pp * iv**2 + 32 * i3pp**2 * iv**2
            - 64 * i6 * iv**2 - 256 * iv**3,
            i3pp**4 * i6**2 + 256 * i3p * i3pp**3 * i6 * iv
            - 256 * i3pp**4 * i6 * iv + 512 * i3pp**2 * i6**2 * iv
            + 4608 * i3pp**2 * i6 * iv**2 - 32768 * i3p * i3pp * iv**3
            + 32768 * i3pp**2 * iv**3 - 65536 * i6 * iv**3 - 196608 * iv**4,
            i3pp**4 * i6**2 * iv,
        )
        sext = sextic_igusa(
            [-c * B, 0, -(c * a + b * B), 0, -(c * C + a * b), 0, -b * C]
        )
        lam = Fraction(-b * c, 2)
        for rv, mu, w, sv in zip(raw, mus, weights, sext):
            assert Fraction(rv) == mu * lam**w * Fraction(sv)
        # after dividing out the constants, the mandatory Igusa relation
        # 4*J8 = J2*J6 - J4^2 holds exactly
        j2, j4, j6, j8, _ = (
            Fraction(rv, mu) for rv, mu in zip(raw, mus)
        )
        assert 4 * j8 == j2 * j6 - j4**2
