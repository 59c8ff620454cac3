"""Universal Schottky group machinery over truncated q-series.

Generators are the 2x2 matrices

    phi_h = 1/(a_h - a_{-h}) [[a_h - a_{-h} q_h, -a_h a_{-h}(1 - q_h)],
                              [1 - q_h,          -a_{-h} + a_h q_h  ]]

acting on P^1 by linear fractional transformations, where a_h is read as
infinity when h lies in the distinguished subset E_inf; in that case the
documented projective limit of the matrix is used.  A reduced edge path
rho = h(1)...h(l) maps anti-homomorphically to phi_{h(l)} ... phi_{h(1)}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .graphs import GraphError, StableGraph, validate
from .qseries import (
    BElement,
    NotInvertible,
    QSeries,
    QSeriesError,
    hensel_solve_quadratic,
)


class SchottkyError(ValueError):
    pass


class DegenerateElement(SchottkyError):
    """Repeated or infinite fixed point at q=0 (parabolic/degenerate regime)."""


class Infinity:
    """The point at infinity of P^1; a value, not an error."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"


INF = Infinity()


# -- projective matrices -------------------------------------------------


class ProjMat:
    """2x2 matrix over BElement, compared projectively after pivot scaling."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        (a, b), (c, d) = entries
        self.entries = ((a, b), (c, d))

    def __iter__(self):
        yield from self.entries

    def flat(self):
        (a, b), (c, d) = self.entries
        return (a, b, c, d)

    def __matmul__(self, other: "ProjMat") -> "ProjMat":
        (a, b), (c, d) = self.entries
        (e, f), (g, h) = other.entries
        return ProjMat((
            (a * e + b * g, a * f + b * h),
            (c * e + d * g, c * f + d * h),
        ))

    def det(self) -> BElement:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    def normalized(self) -> "ProjMat":
        """Scale so the pivot (first nonzero entry, row-major) has leading part 1."""
        for x in self.flat():
            if not x.is_zero():
                s = x.leading_invertible_part().invert()
                return ProjMat(tuple(tuple(y * s for y in row) for row in self.entries))
        raise SchottkyError("zero matrix is not projective")

    def proj_eq(self, other: "ProjMat") -> bool:
        a = self.normalized()
        b = other.normalized()
        return all(x == y for x, y in zip(a.flat(), b.flat()))

    def is_scalar(self) -> bool:
        (a, b), (c, d) = self.entries
        return b.is_zero() and c.is_zero() and a == d

    def __repr__(self):
        (a, b), (c, d) = self.entries
        return "ProjMat([[%s, %s], [%s, %s]])" % (a, b, c, d)


def identity_mat(variables, N: int) -> ProjMat:
    one = BElement.constant(1, variables, N)
    zero = BElement.constant(0, variables, N)
    return ProjMat(((one, zero), (zero, one)))


# -- context -------------------------------------------------------------


OrientedEdge = tuple[str, int]


def _neg(h: OrientedEdge) -> OrientedEdge:
    return (h[0], -h[1])


@dataclass(frozen=True)
class SchottkyContext:
    graph: StableGraph
    alpha: Mapping[OrientedEdge, Fraction]   # defined exactly on E; complement is E_inf
    N: int
    base_vertex: str | None = None

    def __post_init__(self):
        g = self.graph
        rep = validate(g)
        # stability is irrelevant here: the group exists for any connected graph
        if rep.structural_errors:
            raise SchottkyError("invalid graph: %s" % "; ".join(rep.structural_errors))
        if g.tails:
            raise SchottkyError("Schottky context needs a tail-free graph (extend first)")
        alpha = {h: Fraction(v) for h, v in dict(self.alpha).items()}
        object.__setattr__(self, "alpha", alpha)
        pm = self.oriented_edges()
        for h in alpha:
            if h not in pm:
                raise SchottkyError("alpha assigned to unknown oriented edge %r" % (h,))
        e_inf = [h for h in pm if h not in alpha]
        for h in e_inf:
            if _neg(h) in e_inf:
                raise SchottkyError("E_inf meets -E_inf at edge %s" % h[0])
        seen = {}
        for h in e_inf:
            v = g.terminal(h)
            if v in seen:
                raise SchottkyError(
                    "two E_inf branches %r, %r share vertex %s" % (seen[v], h, v))
            seen[v] = h
        # distinctness constraints defining A_0
        for h, a in alpha.items():
            nh = _neg(h)
            if nh in alpha and h < nh and alpha[nh] == a:
                raise SchottkyError("alpha_e = alpha_{-e} on edge %s" % h[0])
        by_vertex: dict = {}
        for h, a in alpha.items():
            by_vertex.setdefault(g.terminal(h), []).append((h, a))
        for v, items in by_vertex.items():
            vals = [a for _, a in items]
            if len(set(vals)) != len(vals):
                raise SchottkyError("coincident alpha values at vertex %s" % v)
        base = self.base_vertex or min(g.vertices)
        if base not in g.vertices:
            raise SchottkyError("base vertex %r not in graph" % (self.base_vertex,))
        object.__setattr__(self, "base_vertex", base)

    def oriented_edges(self) -> list:
        return [(e, s) for e in sorted(self.graph.edges) for s in (+1, -1)]

    @property
    def variables(self) -> tuple:
        return tuple(sorted(self.graph.edges))

    def alpha_of(self, h: OrientedEdge):
        return self.alpha.get(h, INF)

    def spanning_tree(self) -> dict:
        """vertex -> reduced edge path from base_vertex, via BFS (deterministic)."""
        g = self.graph
        paths = {self.base_vertex: []}
        frontier = [self.base_vertex]
        while frontier:
            nxt = []
            for v in frontier:
                for e in sorted(g.edges):
                    a, b = g.edges[e]
                    for h, src, dst in (((e, +1), a, b), ((e, -1), b, a)):
                        if src == v and dst not in paths:
                            paths[dst] = paths[v] + [h]
                            nxt.append(dst)
            frontier = nxt
        return paths


def initial_vertex(graph: StableGraph, h: OrientedEdge) -> str:
    return graph.terminal(_neg(h))


# -- generators ----------------------------------------------------------


def phi(ctx: SchottkyContext, h: OrientedEdge) -> ProjMat:
    """The generator matrix of an oriented edge (projective limit form on E_inf)."""
    e, s = h
    if e not in ctx.graph.edges or s not in (+1, -1):
        raise SchottkyError("not an oriented edge of the context: %r" % (h,))
    vs, N = ctx.variables, ctx.N
    q = QSeries.gen(e, vs, N)
    one = QSeries.constant(1, vs, N)
    ah = ctx.alpha_of(h)
    anh = ctx.alpha_of(_neg(h))
    if ah is INF:
        m = ((one, (-anh) * (one - q)), (QSeries.constant(0, vs, N), q))
    elif anh is INF:
        m = ((q, ah * (one - q)), (QSeries.constant(0, vs, N), one))
    else:
        c = Fraction(1, 1) / (ah - anh)
        m = (
            (c * (ah * one - anh * q), c * (-ah * anh) * (one - q)),
            (c * (one - q), c * (-anh * one + ah * q)),
        )
    return ProjMat(tuple(tuple(BElement(x) for x in row) for row in m))


def mobius_apply(M: ProjMat, z):
    """Linear fractional action; z is a BElement/QSeries/rational or INF."""
    (a, b), (c, d) = M.entries
    if z is INF:
        if c.is_zero():
            return INF
        return a * c.invert()
    if isinstance(z, QSeries):
        z = BElement(z)
    if isinstance(z, (int, Fraction)):
        z = BElement.constant(z, a.vars, a.N)
    num = a * z + b
    den = c * z + d
    if den.is_zero():
        return INF
    return num * den.invert()


# -- paths and the anti-homomorphism --------------------------------------


def check_reduced_path(ctx: SchottkyContext, path: Sequence[OrientedEdge]) -> None:
    g = ctx.graph
    for h in path:
        if h[0] not in g.edges or h[1] not in (+1, -1):
            raise SchottkyError("not an oriented edge: %r" % (h,))
    for i in range(len(path) - 1):
        if path[i] == _neg(path[i + 1]):
            raise SchottkyError("path is not reduced at position %d" % i)
        if g.terminal(path[i]) != initial_vertex(g, path[i + 1]):
            raise SchottkyError("path is not composable at position %d" % i)


def word_to_element(ctx: SchottkyContext, path: Sequence[OrientedEdge]) -> ProjMat:
    """rho = h(1)...h(l)  |->  phi_{h(l)} ... phi_{h(1)}  (anti-homomorphism)."""
    check_reduced_path(ctx, path)
    out = identity_mat(ctx.variables, ctx.N)
    for h in path:
        out = phi(ctx, h) @ out
    return out


def reduce_path(path: Sequence[OrientedEdge]) -> list:
    out: list = []
    for h in path:
        if out and out[-1] == _neg(h):
            out.pop()
        else:
            out.append(h)
    return out


def free_generators(ctx: SchottkyContext) -> list:
    """One reduced loop at the base vertex per non-tree edge; count = genus."""
    g = ctx.graph
    paths = ctx.spanning_tree()
    tree_edges = set()
    for p in paths.values():
        tree_edges.update(e for e, _ in p)
    gens = []
    for e in sorted(g.edges):
        if e in tree_edges:
            continue
        h = (e, +1)
        to_start = paths[initial_vertex(g, h)]
        from_end = [_neg(x) for x in reversed(paths[g.terminal(h)])]
        gens.append(reduce_path(to_start + [h] + from_end))
    return gens


# -- fixed points and multipliers ------------------------------------------


@dataclass(frozen=True)
class FixedPointData:
    attractive: QSeries
    repulsive: QSeries
    multiplier: QSeries


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    sp, sq = math.isqrt(p), math.isqrt(q)
    if sp * sp == p and sq * sq == q:
        return Fraction(sp, sq)
    return None


def _polynomial_entries(M: ProjMat) -> tuple:
    """Clear the common monomial denominator (a projective rescaling)."""
    flat = M.flat()
    vs, N = flat[0].vars, flat[0].N
    dmax = [0] * len(vs)
    for x in flat:
        dmax = [max(a, b) for a, b in zip(dmax, x.den)]
    out = []
    for x in flat:
        shift = tuple(d - xd for d, xd in zip(dmax, x.den))
        out.append(QSeries(
            vs, N,
            {tuple(e + s for e, s in zip(exp, shift)): c for exp, c in x.num.coeffs.items()},
        ))
    return tuple(out)


def fixed_point_data(ctx: SchottkyContext, M: ProjMat) -> FixedPointData:
    """Attractive/repulsive fixed points and the multiplier of a hyperbolic element.

    Requires the element to come from a nonempty cyclically reduced word: the
    fixed points must have distinct rational constant terms and the multiplier
    must vanish at q=0.
    """
    m11, m12, m21, m22 = _polynomial_entries(M)
    c2 = m21
    c1 = m22 - m11
    c0 = -m12
    a2 = c2.constant_term()
    if a2 == 0:
        raise DegenerateElement("fixed point at infinity at q=0 (m21 vanishes mod q)")
    a1 = c1.constant_term()
    a0 = c0.constant_term()
    disc = a1 * a1 - 4 * a2 * a0
    if disc == 0:
        raise DegenerateElement("repeated fixed point at q=0")
    sd = _rational_sqrt(disc)
    if sd is None:
        raise DegenerateElement("fixed points are irrational at q=0 (discriminant %s)" % disc)
    r_plus = (-a1 + sd) / (2 * a2)
    r_minus = (-a1 - sd) / (2 * a2)
    roots = [hensel_solve_quadratic(c2, c1, c0, r) for r in (r_plus, r_minus)]
    lam = [m21 * r + m22 for r in roots]
    units = [x.constant_term() != 0 for x in lam]
    if units == [True, False]:
        a, aprime = roots
        lam_a = lam[0]
    elif units == [False, True]:
        aprime, a = roots
        lam_a = lam[1]
    else:
        raise DegenerateElement("could not separate attractive/repulsive fixed points")
    det = m11 * m22 - m12 * m21
    b = det * lam_a.invert() * lam_a.invert()
    if b.constant_term() != 0:
        raise DegenerateElement("multiplier has nonzero constant term")
    return FixedPointData(attractive=a, repulsive=aprime, multiplier=b)


def cross_ratio_residual(M: ProjMat, fp: FixedPointData) -> list:
    """Coefficients (in z^2, z, 1) of the defining relation's residual.

    (gamma(z) - a)/(z - a) - b (gamma(z) - a')/(z - a') cleared of denominators:
    all three coefficients are exactly zero in the truncated ring iff the
    relation holds identically for symbolic z.
    """
    m11, m12, m21, m22 = _polynomial_entries(M)
    a, ap, b = fp.attractive, fp.repulsive, fp.multiplier
    # ((m11 - a m21) z + (m12 - a m22)) (z - a')
    p1 = m11 - a * m21
    p0 = m12 - a * m22
    lhs = [p1, p0 - ap * p1, -ap * p0]
    q1 = m11 - ap * m21
    q0 = m12 - ap * m22
    rhs = [b * q1, b * (q0 - a * q1), -(b * (a * q0))]
    return [x - y for x, y in zip(lhs, rhs)]


def verify_cross_ratio(M: ProjMat, fp: FixedPointData) -> bool:
    return all(c.is_zero() for c in cross_ratio_residual(M, fp))
