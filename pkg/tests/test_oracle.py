"""Branch-data oracle: conic parametrization, coordinates, tree rebuilding."""

from __future__ import annotations

from fractions import Fraction

import pytest

from cianired.oracle import (
    DegeneratePoint,
    MoebiusMap,
    ProjPoint,
    RationalBranchData,
    branch_points,
    build_tree,
    coordinate_classes,
    cross_ratio,
    equivalent,
    oracle_classify,
    parametrize_conic,
    triple_coordinate,
)
from cianired.quartic import CianiQuartic
from cianired.valuations import ValuedContext

from corpus import QUARTIC_CASES, quartic


def _pt(u, v) -> ProjPoint:
    return ProjPoint.of(Fraction(u), Fraction(v))


# ---------------------------------------------------------------------------
# Projective points and Moebius coordinates.
# ---------------------------------------------------------------------------


def test_projpoint_canonicalization() -> None:
    assert _pt(Fraction(1, 2), Fraction(3, 4)) == ProjPoint(2, 3)
    assert _pt(-2, -4) == ProjPoint(1, 2)
    assert _pt(0, -7) == ProjPoint(0, 1)
    assert _pt(-3, 0) == ProjPoint(1, 0)
    with pytest.raises(DegeneratePoint):
        _pt(0, 0)


def test_projpoint_residue() -> None:
    ctx = ValuedContext(5)
    assert _pt(7, 3).residue(ctx) == (4, 1)
    assert _pt(1, 5).residue(ctx) == (1, 0)
    assert _pt(3, 10).residue(ctx) == (1, 0)


def test_cross_ratio_pinned() -> None:
    zero, one, inf, two = _pt(0, 1), _pt(1, 1), _pt(1, 0), _pt(2, 1)
    assert cross_ratio(zero, one, inf, two) == Fraction(1, 2)


def test_triple_coordinate_sends_triple_to_standard() -> None:
    p0, p1, p2 = _pt(3, 7), _pt(-2, 5), _pt(11, 4)
    xi = triple_coordinate(p0, p1, p2)
    assert xi(p0) == ProjPoint(0, 1)
    assert xi(p1) == ProjPoint(1, 1)
    assert xi(p2) == ProjPoint(1, 0)


def test_coordinate_equivalence_at_five() -> None:
    ctx = ValuedContext(5)
    zero, one, inf, five = _pt(0, 1), _pt(1, 1), _pt(1, 0), _pt(5, 1)
    xi_standard = triple_coordinate(zero, one, inf)
    # collapsing 5 onto 0 changes the component ...
    assert not equivalent(xi_standard, triple_coordinate(zero, five, inf), ctx)
    # ... while permuting the pinned points does not
    assert equivalent(xi_standard, triple_coordinate(one, zero, inf), ctx)


def test_four_points_split_into_two_classes() -> None:
    ctx = ValuedContext(5)
    pts = [_pt(0, 1), _pt(1, 1), _pt(1, 0), _pt(5, 1)]
    reps, members = coordinate_classes(pts, ctx)
    assert len(reps) == 2
    assert sorted(len(m) for m in members) == [12, 12]


# ---------------------------------------------------------------------------
# Branch data.
# ---------------------------------------------------------------------------


def test_branch_data_rejects_wrong_roots() -> None:
    q = CianiQuartic(1, 2, 1, -3, Fraction(5, 2), Fraction(9, 2))
    good = RationalBranchData.from_quartic(q)
    with pytest.raises(ValueError):
        RationalBranchData(
            q,
            good.alpha + 1,
            good.alpha2,
            good.beta,
            good.beta2,
            good.gamma,
            good.gamma2,
        )


def test_branch_data_requires_square_discriminants() -> None:
    # reference curve: Delta_c = -7 is not a rational square
    with pytest.raises(ValueError, match="not a rational square"):
        RationalBranchData.from_quartic(CianiQuartic(2, 2, 15, -11, -11, 3))


def test_branch_points_are_six_and_labeled() -> None:
    d = RationalBranchData.from_quartic(
        quartic(("1", "2", "1", "-3", "5/2", "9/2"))
    )
    pts = branch_points(d)
    assert len(pts) == 6
    assert sorted(label for _, label in pts) == [1, 1, 2, 2, 3, 3]
    # each point lies on the quotient conic Ax^2 + By^2 + Cz^2 + ayz + bxz + cxy
    q = d.q
    for (x, y, z), _ in pts:
        value = (
            q.A * x**2 + q.B * y**2 + q.C * z**2
            + q.a * y * z + q.b * x * z + q.c * x * y
        )
        assert value == 0


def test_parametrized_points_are_pairwise_distinct() -> None:
    d = RationalBranchData.from_quartic(
        quartic(("1", "2", "1", "-3", "5/2", "9/2"))
    )
    pts = parametrize_conic(d)
    assert len(pts) == 6
    seen = {pt for pt, _ in pts}
    assert len(seen) == 6


# ---------------------------------------------------------------------------
# Tree reconstruction against the frozen corpus.
# ---------------------------------------------------------------------------


def test_oracle_agrees_on_full_corpus() -> None:
    for case_id, coeffs, p, graph, _ in QUARTIC_CASES:
        d = RationalBranchData.from_quartic(quartic(coeffs))
        assert oracle_classify(d, ValuedContext(p)) == graph, case_id


def test_oracle_is_base_point_independent() -> None:
    picks = [QUARTIC_CASES[1], QUARTIC_CASES[11], QUARTIC_CASES[24]]
    for case_id, coeffs, p, graph, _ in picks:
        d = RationalBranchData.from_quartic(quartic(coeffs))
        ids = {
            build_tree(parametrize_conic(d, base_index=i), ValuedContext(p)).graph_id
            for i in range(6)
        }
        assert ids == {graph}, case_id


def test_oracle_rejects_singular_curve() -> None:
    # Delta_a = 0, so Delta(Y) = 0, yet all resolvent roots are rational
    q = CianiQuartic(1, 1, 1, 2, Fraction(5, 2), Fraction(5, 2))
    d = RationalBranchData.from_quartic(q)
    with pytest.raises(DegeneratePoint):
        oracle_classify(d, ValuedContext(5))


def test_marked_tree_structure_for_loop_fixture() -> None:
    d = RationalBranchData.from_quartic(
        quartic(("1", "2", "1", "-3", "5/2", "9/2"))
    )
    tree = build_tree(parametrize_conic(d), ValuedContext(7))
    assert tree.graph_id == "II.3"
    assert len(tree.mark_component) == 6
    assert tree.decorated.tree.n_components == len(tree.representatives)
