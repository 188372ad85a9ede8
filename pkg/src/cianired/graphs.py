"""Decorated marked trees, admissible Klein-four covers, and the stable-type catalog.

A *marked tree* is a tree of projective lines carrying 6 marked points
labeled 1, 2, 3 (each twice), every component stable (>= 3 special points).
Labels live in the Klein four-group V = {0, 1, 2, 3} under XOR (0 the
identity; 1^2 = 3 and cyclically).  Each edge of the tree acquires a unique
V-label: the XOR of all mark labels on one side of the edge (both sides
agree since the total is 0).

The *admissible cover* lifts the tree to the stable curve it bounds: above a
component whose nontrivial incident labels (marks and edges) form the
multiset S with generated subgroup H <= V,

    |H| = 4 -> one component of genus |S| - 3,
    |H| = 2 -> two components of genus |S|/2 - 1,
    |H| = 1 -> four components of genus 0,

indexed by the cosets V/H.  Above an edge of label l sit the cosets of
<l> (two nodes if l != 0, four if l = 0), the node of coset g<l> joining the
component-cosets containing it on either side.  Stabilization then contracts
genus-0 vertices with fewer than 3 special points.

There are exactly 20 marked-tree classes up to tree automorphism and
relabeling, and exactly 13 stable shapes; both catalogs live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "ReductionType",
    "GRAPH_IDS",
    "GRAPH_TYPE_BY_ID",
    "MarkedTree",
    "DecoratedGraph",
    "StableCurveGraph",
    "UnknownType",
    "GenusMismatch",
    "edge_labels",
    "admissible_cover",
    "stabilize",
    "type_name",
    "stable_catalog",
    "enumerate_decorated",
    "identify",
    "REPRESENTATIVES",
]


class ReductionType(str, Enum):
    """The 13 stable reduction types (12 singular shapes plus good reduction),
    with the good case split by which stratum member realizes it."""

    GOOD = "Good"
    GOOD_HYPERELLIPTIC = "Good (hyperelliptic)"
    CANDY = "Candy"
    DNA = "DNA"
    LOOP = "Loop"
    LOP = "Lop"
    LOOOP = "Looop"
    TREE = "Tree"
    WINKY_CAT = "Winky Cat"
    CAVE = "Cave"
    GRL_PWR = "Grl Pwr"
    GARDEN = "Garden"
    CAT = "Cat"
    BRAID = "Braid"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value

    @property
    def token(self) -> str:
        """Identifier-safe name used in classification results and the CLI."""
        return {
            ReductionType.GOOD: "GoodQuartic",
            ReductionType.GOOD_HYPERELLIPTIC: "GoodHyperelliptic",
            ReductionType.WINKY_CAT: "WinkyCat",
            ReductionType.GRL_PWR: "GrlPwr",
        }.get(self, self.value)


class UnknownType(ValueError):
    """A stable graph matched nothing in the 13-shape catalog."""


class GenusMismatch(AssertionError):
    """Internal check failure: a cover's arithmetic genus is not 3."""


@dataclass(frozen=True)
class MarkedTree:
    """A tree of components with 6 labeled marks.

    ``marks[i]`` is the sorted tuple of mark labels on component i; ``edges``
    are component-index pairs forming a tree.
    """

    marks: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "marks", tuple(tuple(sorted(m)) for m in self.marks)
        )
        object.__setattr__(
            self, "edges", tuple(tuple(sorted(e)) for e in self.edges)
        )
        n = len(self.marks)
        if len(self.edges) != n - 1:
            raise ValueError("component graph is not a tree (edge count)")
        # connectivity
        seen = {0}
        frontier = [0]
        adj: dict[int, list[int]] = {i: [] for i in range(n)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        while frontier:
            v = frontier.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        if len(seen) != n:
            raise ValueError("component graph is not connected")
        all_marks = sorted(l for m in self.marks for l in m)
        if all_marks != [1, 1, 2, 2, 3, 3]:
            raise ValueError("marks must be 1,2,3 each exactly twice")
        for i in range(n):
            if len(self.marks[i]) + len(adj[i]) < 3:
                raise ValueError(f"component {i} is unstable")

    @property
    def n_components(self) -> int:
        return len(self.marks)


@dataclass(frozen=True)
class DecoratedGraph:
    """A MarkedTree together with its (unique) V-valued edge labels."""

    tree: MarkedTree
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        # per-component XOR over incident marks and edges must vanish
        n = self.tree.n_components
        acc = [0] * n
        for i in range(n):
            for l in self.tree.marks[i]:
                acc[i] ^= l
        for (i, j), l in zip(self.tree.edges, self.labels):
            acc[i] ^= l
            acc[j] ^= l
        if any(acc):
            raise ValueError("edge labels violate the per-component product rule")


@dataclass(frozen=True)
class StableCurveGraph:
    """A genus-labeled multigraph (self-loops allowed)."""

    genera: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "edges", tuple(sorted(tuple(sorted(e)) for e in self.edges))
        )

    @property
    def arithmetic_genus(self) -> int:
        return sum(self.genera) + len(self.edges) - len(self.genera) + 1

    def degrees(self) -> list[int]:
        deg = [0] * len(self.genera)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1  # a self-loop counts twice automatically
        return deg

    def is_stable(self) -> bool:
        return all(
            g >= 1 or d >= 3 for g, d in zip(self.genera, self.degrees())
        )

    def canonical(self) -> tuple:
        """Isomorphism-invariant key by exhaustive vertex permutation."""
        n = len(self.genera)
        best = None
        for perm in itertools.permutations(range(n)):
            inv = {old: new for new, old in enumerate(perm)}
            g = tuple(self.genera[old] for old in perm)
            e = tuple(sorted(tuple(sorted((inv[i], inv[j]))) for i, j in self.edges))
            key = (g, e)
            if best is None or key < best:
                best = key
        return best


def edge_labels(t: MarkedTree) -> DecoratedGraph:
    """Attach to every edge the XOR of the mark labels on one of its sides."""
    n = t.n_components
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j in t.edges:
        adj[i].append(j)
        adj[j].append(i)
    labels = []
    for i, j in t.edges:
        # marks in the subtree on the i-side of edge (i, j); in a tree,
        # that side is everything reachable from i without entering j
        seen = {i}
        frontier = [i]
        while frontier:
            v = frontier.pop()
            for u in adj[v]:
                if u != j and u not in seen:
                    seen.add(u)
                    frontier.append(u)
        acc = 0
        for v in seen:
            for l in t.marks[v]:
                acc ^= l
        labels.append(acc)
    return DecoratedGraph(tree=t, labels=tuple(labels))


def _span(gens: Iterable[int]) -> frozenset[int]:
    h = {0}
    for g in gens:
        h |= {x ^ g for x in h}
    return frozenset(h)


def _cosets(h: frozenset[int]) -> list[frozenset[int]]:
    seen: set[frozenset[int]] = set()
    out = []
    for g in range(4):
        c = frozenset(x ^ g for x in h)
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def admissible_cover(g: DecoratedGraph) -> StableCurveGraph:
    """Lift a decorated graph to the (pre-stabilization) stable curve graph.

    Implements the coset bookkeeping described in the module docstring and
    asserts total arithmetic genus 3 plus freeness/transitivity of the
    V-translation action on the 4 nodes above every label-0 edge.
    """
    t = g.tree
    n = t.n_components
    incident: dict[int, list[int]] = {i: list(t.marks[i]) for i in range(n)}
    for (i, j), l in zip(t.edges, g.labels):
        incident[i].append(l)
        incident[j].append(l)

    vertex_index: dict[tuple[int, frozenset[int]], int] = {}
    genera: list[int] = []
    for i in range(n):
        s = [l for l in incident[i] if l != 0]
        h = _span(s)
        if len(h) == 4:
            gen = [len(s) - 3]
        elif len(h) == 2:
            gen = [len(s) // 2 - 1] * 2
        else:
            gen = [0] * 4
        for c in _cosets(h):
            vertex_index[(i, c)] = len(genera)
            genera.append(gen[0])

    def component_of(i: int, elt: int) -> int:
        for (comp, coset), idx in vertex_index.items():
            if comp == i and elt in coset:
                return idx
        raise AssertionError("coset bookkeeping hole")

    edges: list[tuple[int, int]] = []
    for (i, j), l in zip(t.edges, g.labels):
        node_cosets = _cosets(_span([l] if l else []))
        if l == 0 and len(node_cosets) != 4:
            raise GenusMismatch("label-0 edge must carry 4 nodes")
        for c in node_cosets:
            rep = min(c)
            edges.append((component_of(i, rep), component_of(j, rep)))
        if l == 0:
            # V acts by translation on the nodes; freeness and transitivity
            # on 4 singleton cosets is the definition, asserted explicitly.
            orbit = set()
            for v in range(4):
                img = frozenset(x ^ v for x in node_cosets[0])
                orbit.add(img)
            if len(orbit) != 4:
                raise GenusMismatch("V-action not free/transitive above a 0-edge")

    sc = StableCurveGraph(genera=tuple(genera), edges=tuple(edges))
    if sc.arithmetic_genus != 3:
        raise GenusMismatch(f"cover has arithmetic genus {sc.arithmetic_genus}")
    return sc


def stabilize(s: StableCurveGraph) -> StableCurveGraph:
    """Contract genus-0 vertices of degree <= 2 (self-loops count twice).

    Degree-2 vertices are smoothed (their two edge ends joined); degree-0/1
    vertices are pruned.  Arithmetic genus is preserved and the result is
    stable.
    """
    genera = dict(enumerate(s.genera))
    edges = [list(e) for e in s.edges]
    changed = True
    while changed:
        changed = False
        deg: dict[int, int] = {v: 0 for v in genera}
        for i, j in edges:
            deg[i] += 1
            deg[j] += 1
        for v in list(genera):
            if genera[v] != 0 or deg[v] > 2:
                continue
            incident = [e for e in edges if v in e]
            if any(e[0] == e[1] for e in incident):
                # a lone self-loop cannot be contracted without changing genus
                continue
            if deg[v] <= 1:
                for e in incident:
                    edges.remove(e)
                del genera[v]
                changed = True
                break
            # smooth: join the two far ends
            (e1, e2) = incident
            u1 = e1[0] if e1[1] == v else e1[1]
            u2 = e2[0] if e2[1] == v else e2[1]
            edges.remove(e1)
            edges.remove(e2)
            edges.append([u1, u2])
            del genera[v]
            changed = True
            break
    order = sorted(genera)
    reindex = {old: new for new, old in enumerate(order)}
    out = StableCurveGraph(
        genera=tuple(genera[v] for v in order),
        edges=tuple((reindex[i], reindex[j]) for i, j in edges),
    )
    if out.arithmetic_genus != s.arithmetic_genus:
        raise GenusMismatch("stabilization changed the arithmetic genus")
    if not out.is_stable():
        raise GenusMismatch("stabilization terminated on an unstable graph")
    return out


# ---------------------------------------------------------------------------
# The 20 decorated-graph classes and the 13-shape catalog.
# ---------------------------------------------------------------------------

#: Canonical representatives of the 20 marked-tree classes.  Chains are
#: listed end-to-end; the starred shapes are stars with center first.
REPRESENTATIVES: dict[str, MarkedTree] = {
    "I": MarkedTree(marks=((1, 1, 2, 2, 3, 3),), edges=()),
    "II.1": MarkedTree(marks=((1, 1, 2), (2, 3, 3)), edges=((0, 1),)),
    "II.2": MarkedTree(marks=((1, 2, 3), (1, 2, 3)), edges=((0, 1),)),
    "II.3": MarkedTree(marks=((1, 1), (2, 2, 3, 3)), edges=((0, 1),)),
    "II.4": MarkedTree(marks=((1, 2), (1, 2, 3, 3)), edges=((0, 1),)),
    "III.1": MarkedTree(marks=((1, 1), (2, 2), (3, 3)), edges=((0, 1), (1, 2))),
    "III.2": MarkedTree(marks=((1, 1), (2, 3), (2, 3)), edges=((0, 1), (1, 2))),
    "III.3": MarkedTree(marks=((1, 2), (2, 3), (1, 3)), edges=((0, 1), (1, 2))),
    "III.4": MarkedTree(marks=((1, 2), (3, 3), (1, 2)), edges=((0, 1), (1, 2))),
    "III.5": MarkedTree(marks=((1, 1, 2), (2,), (3, 3)), edges=((0, 1), (1, 2))),
    "III.6": MarkedTree(marks=((1, 1, 2), (3,), (2, 3)), edges=((0, 1), (1, 2))),
    "III.7": MarkedTree(marks=((1, 2, 3), (3,), (1, 2)), edges=((0, 1), (1, 2))),
    "IV.1": MarkedTree(
        marks=((1, 1), (2,), (2,), (3, 3)), edges=((0, 1), (1, 2), (2, 3))
    ),
    "IV.2": MarkedTree(
        marks=((1, 1), (2,), (3,), (2, 3)), edges=((0, 1), (1, 2), (2, 3))
    ),
    "IV.3": MarkedTree(
        marks=((1, 2), (1,), (3,), (2, 3)), edges=((0, 1), (1, 2), (2, 3))
    ),
    "IV.4": MarkedTree(
        marks=((1, 2), (3,), (1,), (2, 3)), edges=((0, 1), (1, 2), (2, 3))
    ),
    "IV.5": MarkedTree(
        marks=((1, 2), (3,), (3,), (1, 2)), edges=((0, 1), (1, 2), (2, 3))
    ),
    "IV*.1": MarkedTree(
        marks=((), (1, 1), (2, 2), (3, 3)), edges=((0, 1), (0, 2), (0, 3))
    ),
    "IV*.2": MarkedTree(
        marks=((), (1, 1), (2, 3), (2, 3)), edges=((0, 1), (0, 2), (0, 3))
    ),
    "IV*.3": MarkedTree(
        marks=((), (1, 2), (2, 3), (1, 3)), edges=((0, 1), (0, 2), (0, 3))
    ),
}

GRAPH_IDS: tuple[str, ...] = tuple(REPRESENTATIVES)

#: Stable type of each decorated-graph class.  Constructed shapes with the
#: same multigraph always share one name (asserted by ``stable_catalog``).
GRAPH_TYPE_BY_ID: dict[str, ReductionType] = {
    "I": ReductionType.GOOD,
    "II.1": ReductionType.CANDY,
    "II.2": ReductionType.DNA,
    "II.3": ReductionType.LOOP,
    "II.4": ReductionType.LOP,
    "III.1": ReductionType.DNA,
    "III.2": ReductionType.LOOOP,
    "III.3": ReductionType.LOOP,
    "III.4": ReductionType.CANDY,
    "III.5": ReductionType.TREE,
    "III.6": ReductionType.WINKY_CAT,
    "III.7": ReductionType.CAVE,
    "IV.1": ReductionType.GRL_PWR,
    "IV.2": ReductionType.GARDEN,
    "IV.3": ReductionType.CAT,
    "IV.4": ReductionType.BRAID,
    "IV.5": ReductionType.GRL_PWR,
    "IV*.1": ReductionType.BRAID,
    "IV*.2": ReductionType.CAT,
    "IV*.3": ReductionType.LOOOP,
}


def _pipeline(t: MarkedTree) -> StableCurveGraph:
    return stabilize(admissible_cover(edge_labels(t)))


@lru_cache(maxsize=1)
def stable_catalog() -> dict[tuple, ReductionType]:
    """Canonical stable shape -> type name, built by running the pipeline on
    every representative.  Raises if two classes with the same shape carry
    different names (which would make the naming ill-defined)."""
    catalog: dict[tuple, ReductionType] = {}
    for gid, tree in REPRESENTATIVES.items():
        key = _pipeline(tree).canonical()
        name = GRAPH_TYPE_BY_ID[gid]
        if key in catalog and catalog[key] is not name:
            raise GenusMismatch(
                f"shape of {gid} already named {catalog[key]}, cannot also be {name}"
            )
        catalog[key] = name
    return catalog


def type_name(s: StableCurveGraph) -> ReductionType:
    """Name a stable genus-3 graph by catalog lookup."""
    try:
        return stable_catalog()[s.canonical()]
    except KeyError:
        raise UnknownType(f"stable graph not in catalog: {s}") from None


# ---------------------------------------------------------------------------
# Exhaustive enumeration (the catalog's independent derivation).
# ---------------------------------------------------------------------------

_SHAPES: list[dict] = [
    {
        "edges": (),
        "min_marks": (6,),
        "autos": [(0,)],
    },
    {
        "edges": ((0, 1),),
        "min_marks": (2, 2),
        "autos": [(0, 1), (1, 0)],
    },
    {
        "edges": ((0, 1), (1, 2)),
        "min_marks": (2, 1, 2),
        "autos": [(0, 1, 2), (2, 1, 0)],
    },
    {
        "edges": ((0, 1), (1, 2), (2, 3)),
        "min_marks": (2, 1, 1, 2),
        "autos": [(0, 1, 2, 3), (3, 2, 1, 0)],
    },
    {
        # star: center 0
        "edges": ((0, 1), (0, 2), (0, 3)),
        "min_marks": (0, 2, 2, 2),
        "autos": [
            (0,) + p for p in itertools.permutations((1, 2, 3))
        ],
    },
]

_LABEL_PERMS = [
    {1: a, 2: b, 3: c}
    for a, b, c in itertools.permutations((1, 2, 3))
]


def _canonical_marks(
    marks: Sequence[Sequence[int]], autos: Sequence[Sequence[int]]
) -> tuple:
    best = None
    for sigma in _LABEL_PERMS:
        relabeled = [tuple(sorted(sigma[l] for l in m)) for m in marks]
        for tau in autos:
            arranged = tuple(relabeled[i] for i in tau)
            if best is None or arranged < best:
                best = arranged
    return best


def enumerate_decorated() -> list[DecoratedGraph]:
    """All decorated graphs on <= 4 components up to automorphism and
    relabeling: exactly the 20 canonical representatives, in catalog order."""
    found: dict[tuple, MarkedTree] = {}
    for shape in _SHAPES:
        n = len(shape["min_marks"])
        autos = shape["autos"]
        # distribute each label's two copies over the n components
        placements = list(
            itertools.combinations_with_replacement(range(n), 2)
        )
        for p1, p2, p3 in itertools.product(placements, repeat=3):
            marks: list[list[int]] = [[] for _ in range(n)]
            for label, (i, j) in zip((1, 2, 3), (p1, p2, p3)):
                marks[i].append(label)
                marks[j].append(label)
            if any(
                len(m) < need for m, need in zip(marks, shape["min_marks"])
            ):
                continue
            key = (n, shape["edges"], _canonical_marks(marks, autos))
            if key not in found:
                found[key] = MarkedTree(
                    marks=tuple(tuple(m) for m in marks), edges=shape["edges"]
                )
    # match against the named representatives
    by_key = {
        (
            rep.n_components,
            rep.edges,
            _canonical_marks(
                rep.marks, _SHAPES[_shape_index(rep)]["autos"]
            ),
        ): gid
        for gid, rep in REPRESENTATIVES.items()
    }
    out: dict[str, DecoratedGraph] = {}
    for key, tree in found.items():
        gid = by_key.get(key)
        if gid is None:
            raise GenusMismatch(f"enumerated class matches no representative: {tree}")
        out[gid] = edge_labels(REPRESENTATIVES[gid])
    if len(out) != len(found):
        raise GenusMismatch("representative matching collapsed distinct classes")
    return [out[gid] for gid in GRAPH_IDS if gid in out]


def _shape_index(t: MarkedTree) -> int:
    for idx, shape in enumerate(_SHAPES):
        if len(shape["min_marks"]) == t.n_components and shape["edges"] == t.edges:
            return idx
    raise ValueError("tree matches no enumeration shape")


def _arrange(t: MarkedTree) -> MarkedTree:
    """Reindex components into the enumeration's shape convention:
    chains end-to-end, stars center-first."""
    n = t.n_components
    if n == 1:
        return t
    deg: dict[int, int] = {i: 0 for i in range(n)}
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j in t.edges:
        deg[i] += 1
        deg[j] += 1
        adj[i].append(j)
        adj[j].append(i)
    if n == 4 and max(deg.values()) == 3:
        center = max(deg, key=deg.get)
        order = [center] + sorted(v for v in range(n) if v != center)
        edges = ((0, 1), (0, 2), (0, 3))
    else:
        # a chain: walk from one endpoint
        start = min(v for v in range(n) if deg[v] == 1)
        order = [start]
        while len(order) < n:
            nxt = [u for u in adj[order[-1]] if u not in order]
            order.append(nxt[0])
        edges = tuple((k, k + 1) for k in range(n - 1))
    return MarkedTree(
        marks=tuple(t.marks[v] for v in order), edges=edges
    )


@lru_cache(maxsize=1)
def _identify_table() -> dict[tuple, str]:
    table = {}
    for gid, rep in REPRESENTATIVES.items():
        key = (
            rep.n_components,
            rep.edges,
            _canonical_marks(rep.marks, _SHAPES[_shape_index(rep)]["autos"]),
        )
        table[key] = gid
    return table


def identify(t: MarkedTree) -> str:
    """Name the decorated-graph class ("I", "II.3", ...) of a marked tree."""
    arranged = _arrange(t)
    key = (
        arranged.n_components,
        arranged.edges,
        _canonical_marks(
            arranged.marks, _SHAPES[_shape_index(arranged)]["autos"]
        ),
    )
    try:
        return _identify_table()[key]
    except KeyError:
        raise UnknownType(f"marked tree not among the 20 classes: {t}") from None
