"""
The N and Q polynomials of a hypercube decomposition, the BBDVW identity in
both its direct and rearranged forms, relative R~-polynomials, and the
identities and conjectures that tie them to the hypercube map.

Every check returns residual polynomials rather than booleans: a nonzero
residual is an inspectable counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .bruhat import ReflectionOrder, build_graph, build_interval, lex_order
from .hypercube import (
    HypercubeCluster,
    OrderIdeal,
    compute_cluster,
    lambda_ideal,
    principal_ideal,
    theta_extended,
)
from .klr import (
    DEFAULT_CACHE,
    InconsistencyError,
    PolyCache,
    increasing_path_sum,
    kl_polynomial,
    r_polynomial,
    rtilde_polynomial,
)
from .permutation import Permutation, bruhat_leq
from .poly import ONE, ZERO, IntPolynomial, q

__all__ = [
    "BBDVWContext",
    "BBDVWCheck",
    "make_context",
    "n_poly_simplified",
    "gamma_coefficients",
    "n_poly_original",
    "q_poly_subsets",
    "q_poly_antichains",
    "check_bbdvw",
    "relative_rtilde_def",
    "relative_rtilde_paths",
    "relative_rtilde_theta",
    "check_R_from_relR",
    "check_Feq0relR",
    "inner_sums",
    "check_conjecture_feq0",
    "check_conjecture_reqh",
    "counterexample_record",
]


@dataclass(eq=False)
class BBDVWContext:
    ideal: OrderIdeal
    cluster_u: HypercubeCluster
    cache: PolyCache = field(default=DEFAULT_CACHE, repr=False)

    @property
    def interval(self):
        return self.ideal.interval

    @property
    def u(self) -> Permutation:
        return self.interval.u

    @property
    def v(self) -> Permutation:
        return self.interval.v

    @property
    def length(self) -> int:
        return self.interval.length

    def P(self, x, y) -> IntPolynomial:
        return kl_polynomial(x, y, cache=self.cache)

    def R(self, x, y) -> IntPolynomial:
        return r_polynomial(x, y, cache=self.cache)

    def Rt(self, x, y) -> IntPolynomial:
        return rtilde_polynomial(x, y, cache=self.cache)

    def outside(self) -> list[Permutation]:
        return [y for y in self.interval.elements if y not in self.ideal.members]


def make_context(u: Permutation, v: Permutation, z: Permutation,
                 cache: PolyCache | None = None) -> BBDVWContext:
    interval = build_interval(u, v)
    ideal = principal_ideal(interval, z)
    cluster = compute_cluster(ideal, u)
    if not cluster.ok:
        raise ValueError(f"no hypercube cluster at {u} for z={z}")
    return BBDVWContext(ideal, cluster, DEFAULT_CACHE if cache is None else cache)


# -- N -----------------------------------------------------------------------


def n_poly_simplified(ctx: BBDVWContext) -> IntPolynomial:
    total = ZERO
    for x in ctx.ideal.members:
        if x != ctx.u:
            total = total + ctx.R(ctx.u, x) * ctx.P(x, ctx.v)
    return total


def gamma_coefficients(ctx: BBDVWContext) -> dict[Permutation, IntPolynomial]:
    """Solve P_{x,v} = sum_{y in I - {u}, y >= x} gamma_y P_{x,y} from the top down."""
    rest = sorted((x for x in ctx.ideal.members if x != ctx.u), reverse=True)
    gamma: dict[Permutation, IntPolynomial] = {}
    for x in rest:
        acc = ctx.P(x, ctx.v)
        for y, g in gamma.items():
            if bruhat_leq(x, y):
                acc = acc - g * ctx.P(x, y)
        gamma[x] = acc
    for x in rest:
        if sum((g * ctx.P(x, y) for y, g in gamma.items()), ZERO) != ctx.P(x, ctx.v):
            raise InconsistencyError(f"gamma system inconsistent at {x}")
    return gamma


def n_poly_original(ctx: BBDVWContext) -> IntPolynomial:
    total = ZERO
    u = ctx.u
    for y, g in gamma_coefficients(ctx).items():
        p = ctx.P(u, y)
        total = total + g * (p.reverse(y.length - u.length) - p)
    return total


# -- Q -----------------------------------------------------------------------


def q_poly_subsets(ctx: BBDVWContext) -> IntPolynomial:
    """-q^l * sum over nonempty Y in Y_u of (1/q - 1)^|Y| P_{theta(Y),v}(1/q)."""
    cl = ctx.cluster_u
    ys = sorted(cl.yset)
    inv_q_minus_1 = IntPolynomial({-1: 1, 0: -1})
    total = ZERO
    for r in range(1, len(ys) + 1):
        factor = inv_q_minus_1 ** r
        for Y in combinations(ys, r):
            top = theta_extended(cl, Y)
            total = total + factor * ctx.P(top, ctx.v).invert_variable()
    result = -total.shift(ctx.length)
    return _require_polynomial(result, "Q (subsets)")


def q_poly_antichains(ctx: BBDVWContext) -> IntPolynomial:
    cl = ctx.cluster_u
    total = ZERO
    for Y in cl.antichains:
        if not Y:
            continue
        k = len(Y)
        lam = len(lambda_ideal(cl, Y))
        term = ((q - 1) ** k) * ctx.P(cl.theta[Y], ctx.v).invert_variable()
        sign = -1 if k % 2 == 0 else 1
        total = total + term.shift(ctx.length - lam).scale(sign)
    return _require_polynomial(total, "Q (antichains)")


def _require_polynomial(p: IntPolynomial, what: str) -> IntPolynomial:
    if not p.is_polynomial():
        raise InconsistencyError(f"{what} has negative exponents: {p}")
    return p


@dataclass
class BBDVWCheck:
    direct: IntPolynomial
    rearranged: IntPolynomial

    @property
    def ok(self) -> bool:
        return self.direct.is_zero() and self.rearranged.is_zero()

    @property
    def consistent(self) -> bool:
        return self.direct == self.rearranged


def _tail(ctx: BBDVWContext, a: Permutation) -> IntPolynomial:
    """sum over y in [u,v] - I of R_{a,y} P_{y,v}."""
    total = ZERO
    for y in ctx.outside():
        if bruhat_leq(a, y):
            total = total + ctx.R(a, y) * ctx.P(y, ctx.v)
    return total


def check_bbdvw(ctx: BBDVWContext) -> BBDVWCheck:
    u, v = ctx.u, ctx.v
    p = ctx.P(u, v)
    direct = p.reverse(ctx.length) - p - n_poly_simplified(ctx) - q_poly_antichains(ctx)
    cl = ctx.cluster_u
    rearranged = ZERO
    for Y in cl.antichains:
        top = cl.theta[Y]
        k = len(Y)
        lam = len(lambda_ideal(cl, Y))
        term = ((q - 1) ** k) * _tail(ctx, top)
        rearranged = rearranged + term.shift(top.length - u.length - lam).scale(-1 if k % 2 else 1)
    return BBDVWCheck(direct, rearranged)


def inner_sums(ctx: BBDVWContext, y: Permutation) -> tuple[IntPolynomial, IntPolynomial]:
    """
    For y outside I: ``sum_Y (-q)^|Y| R~_{theta(Y),y}`` and
    ``sum_Y (-1)^|Y| q^{l(u,theta(Y)) - |Lambda(Y)|} (q-1)^|Y| R_{theta(Y),y}``.
    """
    cl = ctx.cluster_u
    tilde = ZERO
    plain = ZERO
    for Y in cl.antichains:
        top = cl.theta[Y]
        k = len(Y)
        sign = -1 if k % 2 else 1
        tilde = tilde + ctx.Rt(top, y).shift(k).scale(sign)
        lam = len(lambda_ideal(cl, Y))
        plain = plain + (((q - 1) ** k) * ctx.R(top, y)).shift(top.length - ctx.u.length - lam).scale(sign)
    return tilde, plain


# -- relative R~ ---------------------------------------------------------------


def _ideal_members(u, v, ideal: Iterable[Permutation]) -> list[Permutation]:
    return sorted(x for x in ideal if bruhat_leq(u, x) and bruhat_leq(x, v))


def relative_rtilde_def(u: Permutation, v: Permutation, ideal: Iterable[Permutation],
                        cache: PolyCache | None = None) -> IntPolynomial:
    """sum_{x in I cap [u,v]} R~_{u,x}(-q) R~_{x,v}(q)."""
    total = ZERO
    for x in _ideal_members(u, v, ideal):
        total = total + rtilde_polynomial(u, x, cache=cache).substitute_neg_q() \
            * rtilde_polynomial(x, v, cache=cache)
    return total


def relative_rtilde_paths(u: Permutation, v: Permutation, ideal: Iterable[Permutation],
                          order: ReflectionOrder | None = None) -> IntPolynomial:
    """
    Signed path count: paths u -> v that are decreasing from u up to the
    vertex after the last I-vertex x and increasing from x on, weighted by
    (-1)^{#edges inside I} q^{length}.  Falls back to the closed form when
    I cap [u, v] is the whole interval.
    """
    order = order or lex_order(u.n)
    if not bruhat_leq(u, v):
        return ZERO
    members = frozenset(_ideal_members(u, v, ideal))
    if u not in members:
        return ZERO
    if v in members:
        return ONE if u == v else ZERO
    graph = build_graph(build_interval(u, v))
    # decreasing walks inside I from u: state (x, position of last label, #edges)
    total = ZERO
    stack = [(u, None, 0)]
    while stack:
        x, last, m = stack.pop()
        for y, t in graph.succ[x]:
            p = order.position(t)
            if last is not None and p >= last:
                continue
            if y in members:
                stack.append((y, p, m + 1))
            else:
                tail = increasing_path_sum(y, v, order, first_above=p)
                if tail:
                    total = total + tail.shift(m + 1).scale(-1 if m % 2 else 1)
    return total


def relative_rtilde_theta(cluster: HypercubeCluster, v: Permutation) -> IntPolynomial:
    """sum of q^|Y| over antichains Y with theta_x(Y) = v."""
    total = ZERO
    for Y in cluster.antichains:
        if cluster.theta[Y] == v:
            total = total + IntPolynomial({len(Y): 1})
    return total


def check_R_from_relR(u: Permutation, v: Permutation, ideal: Iterable[Permutation],
                      cache: PolyCache | None = None) -> IntPolynomial:
    """Residual of R~_{u,v} = sum_{x in I} R~_{u,x} R~_{x,v,I}."""
    members = _ideal_members(u, v, ideal)
    total = ZERO
    for x in members:
        total = total + rtilde_polynomial(u, x, cache=cache) * relative_rtilde_def(x, v, members, cache)
    return rtilde_polynomial(u, v, cache=cache) - total


def check_Feq0relR(u: Permutation, v: Permutation, ideal: Iterable[Permutation],
                   cache: PolyCache | None = None) -> IntPolynomial:
    """sum_{y in [u,v]} R~_{u,y,I}(-q) R~_{y,v}(q); zero whenever u < v."""
    members = _ideal_members(u, v, ideal)
    total = ZERO
    for y in build_interval(u, v).elements:
        rel = relative_rtilde_def(u, y, members, cache)
        total = total + rel.substitute_neg_q() * rtilde_polynomial(y, v, cache=cache)
    return total


# -- conjectures ---------------------------------------------------------------


def check_conjecture_feq0(ctx: BBDVWContext) -> IntPolynomial:
    """sum_{Y in A_u} (-q)^|Y| R~_{theta_u(Y), v}."""
    total = ZERO
    for Y in ctx.cluster_u.antichains:
        k = len(Y)
        total = total + ctx.Rt(ctx.cluster_u.theta[Y], ctx.v).shift(k).scale(-1 if k % 2 else 1)
    return total


def check_conjecture_reqh(ctx: BBDVWContext, clusters: dict | None = None) -> IntPolynomial:
    """R~_{u,v} - sum_{x in I} sum_{theta_x(Y) = v} q^|Y| R~_{u,x}."""
    total = ZERO
    for x in sorted(ctx.ideal.members):
        cl = clusters[x] if clusters else compute_cluster(ctx.ideal, x)
        if not cl.ok:
            raise ValueError(f"no hypercube cluster at {x}")
        gen = relative_rtilde_theta(cl, ctx.v)
        if gen:
            total = total + gen * ctx.Rt(ctx.u, x)
    return ctx.Rt(ctx.u, ctx.v) - total


def counterexample_record(check: str, u, v, z, residual: IntPolynomial | None,
                          witness=None) -> dict:
    return {
        "check": check,
        "u": str(u),
        "v": str(v),
        "z": None if z is None else str(z),
        "residual": None if residual is None else residual.to_json(),
        "witness": witness,
    }
