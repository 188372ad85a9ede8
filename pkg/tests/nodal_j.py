"""Independent j-invariant of the normalization of a 2-nodal plane quartic.

For a Loop reduction the genus-1 component of the special fiber is the
normalization of the reduced plane quartic, which has exactly two nodes.
This module computes its j-invariant from first principles, without any of
the classifier's closed-form expressions in the curve letters:

1. reduce the quartic mod p and locate its singular points by brute force
   over F_{p^2} (two nodes; they are either rational or a conjugate pair,
   so F_{p^2} always contains both);
2. move one node to (0:0:1) and project away from it, writing the quartic
   as g2(x, y) z^2 + g3(x, y) z + g4(x, y);
3. form the degree-6 projection discriminant g3^2 - 4 g2 g4, which for a
   2-nodal quartic has four simple zeros (the branch points of the double
   cover) and one double zero (the direction of the other node);
4. strip the double zero (located as the root of gcd(D, D'), so the branch
   points themselves never need to be found individually) and read the
   j-invariant off the remaining binary quartic.

Both nodes are used and must agree, which checks the computation against
itself.  Used by the test suite to arbitrate reported Loop j-values.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["loop_component_j"]

Elt = tuple[int, int]


def _nonresidue(p: int) -> int:
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return n
    raise ValueError(f"no quadratic nonresidue mod {p}; need an odd prime")


class _Fp2:
    """F_{p^2} = F_p[s] / (s^2 - nr): elements are pairs (u, v) = u + v*s."""

    def __init__(self, p: int) -> None:
        self.p = p
        self.nr = _nonresidue(p)
        self.zero: Elt = (0, 0)
        self.one: Elt = (1, 0)

    def lift(self, x: Fraction) -> Elt:
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ValueError("coefficient is not p-integral")
        return ((x.numerator * pow(x.denominator, -1, self.p)) % self.p, 0)

    def add(self, a: Elt, b: Elt) -> Elt:
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def sub(self, a: Elt, b: Elt) -> Elt:
        return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)

    def mul(self, a: Elt, b: Elt) -> Elt:
        return (
            (a[0] * b[0] + self.nr * a[1] * b[1]) % self.p,
            (a[0] * b[1] + a[1] * b[0]) % self.p,
        )

    def smul(self, k: int, a: Elt) -> Elt:
        return ((k * a[0]) % self.p, (k * a[1]) % self.p)

    def inv(self, a: Elt) -> Elt:
        norm = (a[0] * a[0] - self.nr * a[1] * a[1]) % self.p
        ni = pow(norm, -1, self.p)
        return ((a[0] * ni) % self.p, (-a[1] * ni) % self.p)

    def div(self, a: Elt, b: Elt) -> Elt:
        return self.mul(a, self.inv(b))

    def elements(self) -> list[Elt]:
        return [(u, v) for u in range(self.p) for v in range(self.p)]


# -- ternary polynomials: {(i, j, k): coeff} with i + j + k constant --------


def _tmul(F: _Fp2, f: dict, g: dict) -> dict:
    out: dict = {}
    for ea, ca in f.items():
        for eb, cb in g.items():
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            prev = out.get(e)
            term = F.mul(ca, cb)
            out[e] = term if prev is None else F.add(prev, term)
    return {e: c for e, c in out.items() if c != F.zero}


def _tpartial(F: _Fp2, f: dict, axis: int) -> dict:
    out: dict = {}
    for e, c in f.items():
        if e[axis]:
            e2 = list(e)
            e2[axis] -= 1
            out[tuple(e2)] = F.smul(e[axis], c)
    return {e: c for e, c in out.items() if c != F.zero}


def _teval(F: _Fp2, terms: list, pows: list) -> Elt:
    acc = F.zero
    for (i, j, k), c in terms:
        acc = F.add(acc, F.mul(F.mul(c, pows[0][i]), F.mul(pows[1][j], pows[2][k])))
    return acc


def _power_table(F: _Fp2, coord: Elt) -> list:
    row = [F.one]
    for _ in range(4):
        row.append(F.mul(row[-1], coord))
    return row


def _singular_points(F: _Fp2, f: dict) -> list:
    """All singular points of the quartic f = 0 in P^2(F_{p^2}).

    Since p is odd, Euler's relation 4 f = x f_x + y f_y + z f_z makes the
    three partials a complete singularity test.
    """
    parts = [list(_tpartial(F, f, ax).items()) for ax in (0, 1, 2)]
    elems = F.elements()
    one_tab = _power_table(F, F.one)
    zero_tab = _power_table(F, F.zero)
    tables = {e: _power_table(F, e) for e in elems}
    found = []

    def check(pows, pt) -> None:
        for terms in parts:
            if _teval(F, terms, pows) != F.zero:
                return
        found.append(pt)

    for y in elems:
        ty = tables[y]
        for z in elems:
            check([one_tab, ty, tables[z]], (F.one, y, z))
    for z in elems:
        check([zero_tab, one_tab, tables[z]], (F.zero, F.one, z))
    check([zero_tab, zero_tab, one_tab], (F.zero, F.zero, F.one))
    return found


def _move_node_to_origin(F: _Fp2, f: dict, node: tuple) -> dict:
    """Rewrite f in coordinates whose third basis vector is the node."""
    if node[0] == F.one:
        cols = [(F.zero, F.one, F.zero), (F.zero, F.zero, F.one), node]
    elif node[1] == F.one:
        cols = [(F.one, F.zero, F.zero), (F.zero, F.zero, F.one), node]
    else:
        cols = [(F.one, F.zero, F.zero), (F.zero, F.one, F.zero), node]
    lin = []
    for row in range(3):
        d = {}
        for var in range(3):
            if cols[var][row] != F.zero:
                d[tuple(1 if t == var else 0 for t in range(3))] = cols[var][row]
        lin.append(d)
    pw = []
    for d in lin:
        tower = [{(0, 0, 0): F.one}]
        for _ in range(4):
            tower.append(_tmul(F, tower[-1], d))
        pw.append(tower)
    out: dict = {}
    for (i, j, k), c in f.items():
        term = _tmul(F, _tmul(F, pw[0][i], pw[1][j]), pw[2][k])
        for e, cc in term.items():
            prev = out.get(e)
            piece = F.mul(c, cc)
            out[e] = piece if prev is None else F.add(prev, piece)
    return {e: c for e, c in out.items() if c != F.zero}


# -- binary / univariate layer ----------------------------------------------


def _z_slice(F: _Fp2, g: dict, z_deg: int, xy_deg: int) -> list:
    """Coefficients [c_0..c_{xy_deg}] of the x^(xy_deg-m) y^m z^z_deg part."""
    out = [F.zero] * (xy_deg + 1)
    for (i, j, k), c in g.items():
        if k == z_deg:
            out[j] = c
    return out


def _bmul(F: _Fp2, u: list, v: list) -> list:
    out = [F.zero] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return out


def _utrim(F: _Fp2, u: list) -> list:
    u = list(u)
    while u and u[-1] == F.zero:
        u.pop()
    return u


def _uderiv(F: _Fp2, u: list) -> list:
    return _utrim(F, [F.smul(m, u[m]) for m in range(1, len(u))])


def _umonic(F: _Fp2, u: list) -> list:
    scale = F.inv(u[-1])
    return [F.mul(scale, c) for c in u]


def _umod(F: _Fp2, u: list, v: list) -> list:
    u = list(u)
    dv = len(v) - 1
    lead_inv = F.inv(v[-1])
    while len(u) - 1 >= dv and u:
        shift = len(u) - 1 - dv
        factor = F.mul(u[-1], lead_inv)
        for m in range(len(v)):
            u[shift + m] = F.sub(u[shift + m], F.mul(factor, v[m]))
        u = _utrim(F, u)
        if not u:
            break
    return u


def _ugcd(F: _Fp2, u: list, v: list) -> list:
    u, v = _utrim(F, u), _utrim(F, v)
    while v:
        u, v = v, _umod(F, u, v)
    return _umonic(F, u) if u else u


def _udiv_linear(F: _Fp2, u: list, r: Elt) -> list:
    """Exact division of u(t) by (t - r); raises if the remainder is nonzero."""
    out = [F.zero] * (len(u) - 1)
    acc = F.zero
    for m in range(len(u) - 1, 0, -1):
        acc = F.add(u[m], F.mul(acc, r))
        out[m - 1] = acc
    if F.add(u[0], F.mul(acc, r)) != F.zero:
        raise ValueError("expected root is not a root")
    return out


def _quartic_j_mod(F: _Fp2, coeffs: list) -> Elt:
    a, b, c, d, e = coeffs
    I = F.add(
        F.sub(F.smul(12, F.mul(a, e)), F.smul(3, F.mul(b, d))), F.mul(c, c)
    )
    J = F.smul(72, F.mul(F.mul(a, c), e))
    J = F.add(J, F.smul(9, F.mul(F.mul(b, c), d)))
    J = F.sub(J, F.smul(27, F.mul(a, F.mul(d, d))))
    J = F.sub(J, F.smul(27, F.mul(F.mul(b, b), e)))
    J = F.sub(J, F.smul(2, F.mul(F.mul(c, c), c)))
    I3 = F.mul(F.mul(I, I), I)
    denom = F.sub(F.smul(4, I3), F.mul(J, J))
    if denom == F.zero:
        raise ValueError("branch quartic is degenerate (4I^3 - J^2 = 0)")
    return F.div(F.smul(6912, I3), denom)


def _projection_j(F: _Fp2, f: dict, node: tuple) -> Elt:
    g = _move_node_to_origin(F, f, node)
    if any(k > 2 for (_, _, k) in g):
        raise ValueError("chosen point is not a double point")
    g2 = _z_slice(F, g, 2, 2)
    g3 = _z_slice(F, g, 1, 3)
    g4 = _z_slice(F, g, 0, 4)
    disc = [
        F.sub(a, F.smul(4, b))
        for a, b in zip(_bmul(F, g3, g3), _bmul(F, g2, g4))
    ]
    # disc[m] is the coefficient of x^(6-m) y^m; as a polynomial in t = y/x
    # the list is already ascending, and trailing zeros are roots at t = oo.
    dt = _utrim(F, disc)
    inf_mult = 7 - len(dt)
    if inf_mult > 2 or not dt:
        raise ValueError("projection discriminant is too degenerate")
    multiple_part = _ugcd(F, dt, _uderiv(F, dt))
    if inf_mult == 2:
        if len(multiple_part) != 1:
            raise ValueError("expected four simple finite branch points")
        quart = dt
    else:
        if len(multiple_part) != 2:
            raise ValueError("expected exactly one finite double zero")
        r = F.sub(F.zero, multiple_part[0])
        quart = _udiv_linear(F, _udiv_linear(F, dt, r), r)
    quart = quart + [F.zero] * (5 - len(quart))
    return _quartic_j_mod(F, list(reversed(quart)))


def loop_component_j(q, p: int) -> int:
    """j-invariant (as an integer mod p) of the genus-1 normalization of the
    reduction of the Ciani quartic q at the odd prime p.

    Raises ValueError if the reduction is not a 2-nodal quartic of the kind
    a Loop reduction produces.  Requires p >= 5: in characteristic 3 the
    classical binary-quartic invariants satisfy 4I^3 - J^2 = 27 disc = 0
    identically, so this route cannot see the j-invariant there.
    """
    if p < 5:
        raise ValueError("loop_component_j needs p >= 5")
    F = _Fp2(p)
    f = {
        (4, 0, 0): F.lift(q.A),
        (0, 4, 0): F.lift(q.B),
        (0, 0, 4): F.lift(q.C),
        (0, 2, 2): F.lift(q.a),
        (2, 0, 2): F.lift(q.b),
        (2, 2, 0): F.lift(q.c),
    }
    f = {e: c for e, c in f.items() if c != F.zero}
    nodes = _singular_points(F, f)
    if len(nodes) != 2:
        raise ValueError(f"expected 2 singular points, found {len(nodes)}")
    j0 = _projection_j(F, f, nodes[0])
    j1 = _projection_j(F, f, nodes[1])
    if j0 != j1:
        raise ValueError(f"projections from the two nodes disagree: {j0} vs {j1}")
    if j0[1] != 0:
        raise ValueError("j-invariant did not land in the prime field")
    return j0[0]
