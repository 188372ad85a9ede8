"""Independent stable-model computation from explicit rational branch data.

The six branch points of a Ciani quartic's quotient conic are rational
whenever the three discriminants Delta_a, Delta_b, Delta_c are rational
squares.  Projecting the conic from one branch point identifies it with a
projective line; the stably marked model of the line with its six marked
points is then reconstructed purely matrix-theoretically:

* every ordered triple of distinct marks yields the Moebius coordinate
  sending it to (0, 1, infinity);
* two coordinates describe the same component of the stable model iff
  their transition matrix, normalized to coprime integers, has unit
  determinant at p;
* the transition matrix between distinct components reduces to a rank-1
  matrix whose column space is the point where one component attaches
  relative to the other ("direction point"), and two components are
  adjacent iff all other components see them through the same direction;
* mark labels plus the decorated-graph edge labeling turn the resulting
  tree into a decorated graph, which is matched against the 20-class
  catalog.

The result must agree with the valuation classifier — that agreement is
the oracle's whole purpose.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .graphs import DecoratedGraph, MarkedTree, edge_labels, identify
from .quartic import CianiQuartic, deltas, invariants
from .valuations import ValuedContext

__all__ = [
    "RationalBranchData",
    "ProjPoint",
    "MoebiusMap",
    "OracleTree",
    "DegeneratePoint",
    "RankAnomaly",
    "NotATree",
    "branch_points",
    "parametrize_conic",
    "cross_ratio",
    "triple_coordinate",
    "equivalent",
    "coordinate_classes",
    "build_tree",
    "oracle_classify",
]


class DegeneratePoint(ValueError):
    """A constructed projective point vanished identically."""


class RankAnomaly(AssertionError):
    """A reduced transition matrix is neither invertible nor rank 1."""


class NotATree(AssertionError):
    """The component adjacency relation is not a tree."""


# ---------------------------------------------------------------------------
# Projective points of the line over Q, in coprime-integer canonical form.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjPoint:
    """A point (u : v) of the projective line with coprime integer entries."""

    u: int
    v: int

    @staticmethod
    def of(u: Fraction, v: Fraction) -> "ProjPoint":
        u, v = Fraction(u), Fraction(v)
        if u == 0 and v == 0:
            raise DegeneratePoint("(0 : 0) is not a projective point")
        d = math.lcm(u.denominator, v.denominator)
        a, b = int(u * d), int(v * d)
        g = math.gcd(a, b)
        a, b = a // g, b // g
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        return ProjPoint(a, b)

    def residue(self, ctx: ValuedContext) -> tuple[int, int]:
        """Canonical image in P^1(F_p): (m, 1) for finite m, (1, 0) for inf."""
        p = ctx.p
        a, b = self.u % p, self.v % p
        if b != 0:
            return ((a * pow(b, -1, p)) % p, 1)
        return (1, 0)


def _cross(pt1: ProjPoint, pt2: ProjPoint) -> int:
    return pt1.u * pt2.v - pt2.u * pt1.v


def cross_ratio(
    p1: ProjPoint, p2: ProjPoint, p3: ProjPoint, p4: ProjPoint
) -> Fraction:
    """Cross-ratio (p1, p2; p3, p4), assumed finite and well-defined."""
    return Fraction(_cross(p1, p3) * _cross(p2, p4), _cross(p1, p4) * _cross(p2, p3))


# ---------------------------------------------------------------------------
# Branch data and conic parametrization.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalBranchData:
    """A Ciani quartic together with rational roots of the three resolvent
    quadratics T^2 - 2aT + 4BC, T^2 - 2bT + 4AC, T^2 - 2cT + 4AB."""

    q: CianiQuartic
    alpha: Fraction
    alpha2: Fraction
    beta: Fraction
    beta2: Fraction
    gamma: Fraction
    gamma2: Fraction

    def __post_init__(self) -> None:
        for name in ("alpha", "alpha2", "beta", "beta2", "gamma", "gamma2"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        q = self.q
        checks = (
            (self.alpha, self.alpha2, q.a, 4 * q.B * q.C),
            (self.beta, self.beta2, q.b, 4 * q.A * q.C),
            (self.gamma, self.gamma2, q.c, 4 * q.A * q.B),
        )
        for r1, r2, lin, const in checks:
            if r1 + r2 != 2 * lin or r1 * r2 != const:
                raise ValueError("roots do not solve the resolvent quadratic")

    @staticmethod
    def from_quartic(q: CianiQuartic) -> "RationalBranchData":
        """Extract rational roots; fails if a discriminant is not a square."""
        d_a, d_b, d_c = deltas(q)
        roots = []
        for disc, lin in ((d_a, q.a), (d_b, q.b), (d_c, q.c)):
            s = _rational_sqrt(disc)
            if s is None:
                raise ValueError(
                    f"discriminant {disc} is not a rational square; "
                    "rational branch data unavailable"
                )
            roots.extend((lin + s, lin - s))
        return RationalBranchData(q, *roots)


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


#: label constants for the six branch points
_LABELS = (1, 1, 2, 2, 3, 3)


def branch_points(d: RationalBranchData) -> list[tuple[tuple[Fraction, ...], int]]:
    """The six labeled branch points on the quotient conic."""
    q = d.q
    pts = [
        ((Fraction(0), d.alpha, Fraction(-2 * q.B)), 1),
        ((Fraction(0), Fraction(-2 * q.C), d.alpha), 1),
        ((Fraction(-2 * q.C), Fraction(0), d.beta), 2),
        ((d.beta, Fraction(0), Fraction(-2 * q.A)), 2),
        ((d.gamma, Fraction(-2 * q.A), Fraction(0)), 3),
        ((Fraction(-2 * q.B), d.gamma, Fraction(0)), 3),
    ]
    for coords, _ in pts:
        if all(c == 0 for c in coords):
            raise DegeneratePoint("branch point (0:0:0); singular input")
    return pts


def _conic_matrix(q: CianiQuartic) -> list[list[Fraction]]:
    return [
        [2 * q.A, q.c, q.b],
        [q.c, 2 * q.B, q.a],
        [q.b, q.a, 2 * q.C],
    ]


def _apply(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum(m[i][j] * v[j] for j in range(3)) for i in range(3)]


def _cross3(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    return [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]


def parametrize_conic(
    d: RationalBranchData, base_index: int = 0
) -> list[tuple[ProjPoint, int]]:
    """Project the six branch points from one of them to the line.

    The base point (index into the six, a branch point on the conic) maps to
    its tangent direction; every other point maps to the direction of its
    chord through the base.  Returns labeled ProjPoints, pairwise distinct.
    """
    pts = branch_points(d)
    base = pts[base_index][0]
    m = _conic_matrix(d.q)

    # two independent linear forms vanishing at the base point
    i = next(k for k in range(3) if base[k] != 0)
    others = [k for k in range(3) if k != i]
    forms = [
        tuple(
            base[i] if idx == j else (-base[j] if idx == i else Fraction(0))
            for idx in range(3)
        )
        for j in others
    ]

    def project(v: Sequence[Fraction]) -> ProjPoint:
        return ProjPoint.of(
            sum(f * x for f, x in zip(forms[0], v)),
            sum(f * x for f, x in zip(forms[1], v)),
        )

    out: list[tuple[ProjPoint, int]] = []
    tangent = _apply(m, list(base))
    for idx, (coords, label) in enumerate(pts):
        if idx == base_index:
            w = _cross3(tangent, list(base))
            out.append((project(w), label))
        else:
            out.append((project(coords), label))
    for (pt1, _), (pt2, _) in itertools.combinations(out, 2):
        if _cross(pt1, pt2) == 0:
            raise DegeneratePoint("parametrized branch points collide over Q")
    return out


# ---------------------------------------------------------------------------
# Moebius coordinates and their equivalence at p.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MoebiusMap:
    """A 2x2 rational matrix acting on the projective line."""

    m: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]

    def __post_init__(self) -> None:
        if self.det == 0:
            raise ValueError("degenerate Moebius map")

    @property
    def det(self) -> Fraction:
        (a, b), (c, d) = self.m
        return a * d - b * c

    def __call__(self, pt: ProjPoint) -> ProjPoint:
        (a, b), (c, d) = self.m
        return ProjPoint.of(a * pt.u + b * pt.v, c * pt.u + d * pt.v)

    def compose_inverse(self, other: "MoebiusMap") -> tuple[tuple[int, ...], ...]:
        """Integer matrix of self . other^-1 with content 1."""
        (a, b), (c, d) = self.m
        (e, f), (g, h) = other.m
        # adjugate of other
        raw = (
            (a * h - b * g, -a * f + b * e),
            (c * h - d * g, -c * f + d * e),
        )
        den = math.lcm(*(x.denominator for row in raw for x in row))
        ints = [int(x * den) for row in raw for x in row]
        g_ = math.gcd(*ints)
        ints = [x // g_ for x in ints]
        return (tuple(ints[:2]), tuple(ints[2:]))


def triple_coordinate(
    p0: ProjPoint, p1: ProjPoint, p2: ProjPoint
) -> MoebiusMap:
    """The Moebius map sending (p0, p1, p2) to (0, 1, infinity)."""
    a_ = Fraction(p1.u * p2.v - p1.v * p2.u)
    b_ = Fraction(p1.u * p0.v - p1.v * p0.u)
    return MoebiusMap(
        (
            (a_ * p0.v, -a_ * p0.u),
            (b_ * p2.v, -b_ * p2.u),
        )
    )


def equivalent(xi1: MoebiusMap, xi2: MoebiusMap, ctx: ValuedContext) -> bool:
    """Do two coordinates designate the same stable-model component at p?"""
    m = xi1.compose_inverse(xi2)
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return det % ctx.p != 0


def coordinate_classes(
    points: Sequence[ProjPoint], ctx: ValuedContext
) -> tuple[list[MoebiusMap], list[list[tuple[int, int, int]]]]:
    """Partition the ordered triples of distinct points by coordinate
    equivalence; returns class representatives and the triple lists."""
    reps: list[MoebiusMap] = []
    members: list[list[tuple[int, int, int]]] = []
    for t in itertools.permutations(range(len(points)), 3):
        xi = triple_coordinate(points[t[0]], points[t[1]], points[t[2]])
        for k, rep in enumerate(reps):
            if equivalent(xi, rep, ctx):
                members[k].append(t)
                break
        else:
            reps.append(xi)
            members.append([t])
    return reps, members


# ---------------------------------------------------------------------------
# Tree reconstruction.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleTree:
    """The reconstructed stably marked tree of the six points."""

    decorated: DecoratedGraph
    representatives: tuple[MoebiusMap, ...]
    specializations: tuple[tuple[tuple[int, int], ...], ...]
    directions: dict
    mark_component: tuple[int, ...]

    @property
    def graph_id(self) -> str:
        return identify(self.decorated.tree)


def _direction(
    rep_t: MoebiusMap, rep_u: MoebiusMap, ctx: ValuedContext
) -> tuple[int, int]:
    """Column space of the reduced transition matrix: where t sits on u."""
    p = ctx.p
    m = rep_u.compose_inverse(rep_t)
    red = [[x % p for x in row] for row in m]
    cols = [
        (red[0][0], red[1][0]),
        (red[0][1], red[1][1]),
    ]
    nz = [c for c in cols if c != (0, 0)]
    if not nz:
        raise RankAnomaly("transition matrix reduced to zero despite content 1")
    # rank must be exactly 1: the two columns must be proportional
    if len(nz) == 2:
        if (nz[0][0] * nz[1][1] - nz[0][1] * nz[1][0]) % p != 0:
            raise RankAnomaly("unit-determinant transition between classes")
    a, b = nz[0]
    if b != 0:
        return ((a * pow(b, -1, p)) % p, 1)
    return (1, 0)


def build_tree(
    labeled_points: Sequence[tuple[ProjPoint, int]], ctx: ValuedContext
) -> OracleTree:
    """Reconstruct the stably marked tree of six labeled points at p."""
    points = [pt for pt, _ in labeled_points]
    labels = [lab for _, lab in labeled_points]
    reps, _ = coordinate_classes(points, ctx)
    n = len(reps)

    specializations = tuple(
        tuple(rep(pt).residue(ctx) for pt in points) for rep in reps
    )
    directions = {
        (t, u): _direction(reps[t], reps[u], ctx)
        for t in range(n)
        for u in range(n)
        if t != u
    }

    edges = []
    for t, u in itertools.combinations(range(n), 2):
        if all(
            directions[(t, w)] == directions[(u, w)]
            for w in range(n)
            if w not in (t, u)
        ):
            edges.append((t, u))
    # tree check: connected with n-1 edges
    if len(edges) != n - 1:
        raise NotATree(f"{n} components with {len(edges)} adjacencies")
    seen = {0}
    frontier = [0]
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    if len(seen) != n:
        raise NotATree("adjacency graph is disconnected")

    # place each mark on the unique component where it avoids all nodes
    mark_component = []
    for k in range(6):
        homes = [
            t
            for t in range(n)
            if all(
                specializations[t][k] != directions[(u, t)]
                for u in range(n)
                if u != t
            )
        ]
        if len(homes) != 1:
            raise NotATree(
                f"mark {k} specializes onto {len(homes)} components"
            )
        mark_component.append(homes[0])

    marks: list[list[int]] = [[] for _ in range(n)]
    for k, comp in enumerate(mark_component):
        marks[comp].append(labels[k])
    tree = MarkedTree(
        marks=tuple(tuple(m) for m in marks), edges=tuple(edges)
    )
    decorated = edge_labels(tree)
    return OracleTree(
        decorated=decorated,
        representatives=tuple(reps),
        specializations=specializations,
        directions=directions,
        mark_component=tuple(mark_component),
    )


def oracle_classify(d: RationalBranchData, ctx: ValuedContext) -> str:
    """Decorated-graph class of the curve, computed from branch data alone."""
    if invariants(d.q).delta_Y == 0:
        raise DegeneratePoint("singular quartic")
    return build_tree(parametrize_conic(d), ctx).graph_id