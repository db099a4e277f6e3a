"""
Order ideals of Bruhat intervals, hypercube clusters and hypercube
decompositions, plus the strongness / numerical-criterion / (E) predicates.

Hypercubes are searched dimension by dimension: once every proper subset of
an antichain Y has a unique spanned hypercube, any hypercube spanned by Y
must restrict to those on its faces through the bottom vertex, so its top is
a common Gamma-successor of the tops for ``Y - {y}``.  The number of such
successors is the number of hypercubes spanned by Y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .bruhat import (
    BruhatGraph,
    BruhatInterval,
    ReflectionOrder,
    build_graph,
    build_interval,
    enumerate_reflection_orders,
    lex_order,
    up_edges,
)
from .permutation import Permutation, bruhat_leq

__all__ = [
    "OrderIdeal",
    "HypercubeCluster",
    "HDReport",
    "PropertyE",
    "principal_ideal",
    "generated_ideal",
    "enumerate_order_ideals",
    "antichains",
    "diamonds",
    "is_diamond_closed",
    "compute_cluster",
    "theta_extended",
    "lambda_ideal",
    "is_hypercube_decomposition",
    "enumerate_hcds",
    "is_strong_cluster",
    "numerical_criterion",
    "is_simple",
    "has_property_E",
    "ideal_property_E",
    "MAX_E_SEARCH_N",
]

MAX_E_SEARCH_N = 5


@dataclass(eq=False)
class OrderIdeal:
    interval: BruhatInterval
    members: frozenset

    def __post_init__(self):
        self.members = frozenset(self.members)

    def __contains__(self, x):
        return x in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def is_downward_closed(self) -> bool:
        graph = build_graph(self.interval)
        # enough to check Gamma-predecessors: every cover is an edge
        return all(a in self.members for y in self.members for a, _ in graph.pred[y])

    def maximal_elements(self) -> list[Permutation]:
        graph = build_graph(self.interval)
        return sorted(x for x in self.members
                      if not any(y in self.members for y, _ in graph.succ[x]))

    @property
    def top(self) -> Permutation | None:
        """z if the ideal equals [u, z], else None."""
        tops = self.maximal_elements()
        if len(tops) != 1:
            return None
        z = tops[0]
        if self.members == _below(self.interval, z):
            return z
        return None

    def is_principal(self) -> bool:
        return self.top is not None


def _below(interval: BruhatInterval, z: Permutation) -> frozenset:
    return frozenset(x for x in interval.elements if bruhat_leq(x, z))


def principal_ideal(interval: BruhatInterval, z: Permutation) -> OrderIdeal:
    if z not in interval:
        raise ValueError(f"{z} is not in [{interval.u},{interval.v}]")
    return OrderIdeal(interval, _below(interval, z))


def generated_ideal(interval: BruhatInterval, gens: Iterable[Permutation]) -> OrderIdeal:
    gens = list(gens)
    return OrderIdeal(interval, frozenset(
        x for x in interval.elements if any(bruhat_leq(x, g) for g in gens)))


def antichains(elements: Iterable[Permutation], leq=bruhat_leq) -> list[frozenset]:
    """All antichains (including the empty one), ordered by size then content."""
    elems = sorted(elements)
    out: list[frozenset] = []

    def extend(start, chosen):
        out.append(frozenset(chosen))
        for k in range(start, len(elems)):
            y = elems[k]
            if all(not leq(y, c) and not leq(c, y) for c in chosen):
                chosen.append(y)
                extend(k + 1, chosen)
                chosen.pop()

    extend(0, [])
    out.sort(key=lambda Y: (len(Y), sorted(y.sort_key() for y in Y)))
    return out


def enumerate_order_ideals(interval: BruhatInterval, nonempty: bool = True) -> Iterator[OrderIdeal]:
    """Every order ideal of the interval, one per antichain of maximal elements."""
    for gens in antichains(interval.elements):
        if gens or not nonempty:
            yield generated_ideal(interval, gens)


@lru_cache(maxsize=2048)
def _diamonds(u: Permutation, v: Permutation) -> tuple:
    graph = build_graph(build_interval(u, v))
    succ_sets = {x: frozenset(y for y, _ in graph.succ[x]) for x in graph.interval.elements}
    out = []
    for x in graph.interval.elements:
        ups = sorted(succ_sets[x])
        for y1, y2 in combinations(ups, 2):
            for w in sorted(succ_sets[y1] & succ_sets[y2]):
                out.append((x, y1, y2, w))
    return tuple(out)


def diamonds(graph: BruhatGraph) -> tuple:
    """All (x, y1, y2, w) with x -> y1 -> w and x -> y2 -> w in Gamma(u, v), y1 < y2."""
    return _diamonds(graph.interval.u, graph.interval.v)


def is_diamond_closed(ideal: OrderIdeal, witness: bool = False):
    members = ideal.members
    for d in _diamonds(ideal.interval.u, ideal.interval.v):
        if sum(1 for a in d if a in members) == 3:
            return (False, d) if witness else False
    return (True, None) if witness else True


@dataclass(eq=False)
class HypercubeCluster:
    """The data at x relative to an ideal; `failures` lists (Y, hypercube count) for count != 1."""
    x: Permutation
    ideal: OrderIdeal
    yset: frozenset
    antichains: list
    theta: dict = field(repr=False)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lam(self, Y) -> frozenset:
        return lambda_ideal(self, Y)


def compute_cluster(ideal: OrderIdeal, x: Permutation) -> HypercubeCluster:
    if x not in ideal:
        raise ValueError(f"{x} is not in the ideal")
    graph = build_graph(ideal.interval)
    succ = {}

    def successors(a):
        s = succ.get(a)
        if s is None:
            s = succ[a] = frozenset(y for y, _ in graph.succ[a])
        return s

    yset = frozenset(y for y in successors(x) if y not in ideal.members)
    achains = antichains(yset)
    theta: dict[frozenset, Permutation] = {frozenset(): x}
    failures = []
    size = 0
    for Y in achains:
        if len(Y) != size:
            if failures:
                break
            size = len(Y)
        if size == 0:
            continue
        if size == 1:
            (y,) = Y
            theta[Y] = y
            continue
        lower = [theta[S] for r in range(size) for S in map(frozenset, combinations(sorted(Y), r))]
        if len(set(lower)) < len(lower):
            failures.append((Y, 0))
            continue
        common = None
        for y in Y:
            s = successors(theta[Y - {y}])
            common = s if common is None else common & s
        if len(common) == 1:
            theta[Y] = next(iter(common))
        else:
            failures.append((Y, len(common)))
    return HypercubeCluster(x, ideal, yset, achains, theta, failures)


def maximal_subset(Y: Iterable[Permutation]) -> frozenset:
    Y = list(Y)
    return frozenset(y for y in Y if not any(z != y and bruhat_leq(y, z) for z in Y))


def theta_extended(cluster: HypercubeCluster, Y: Iterable[Permutation]) -> Permutation:
    """theta of the antichain of maximal elements of an arbitrary Y in the Y-set."""
    return cluster.theta[maximal_subset(Y)]


def lambda_ideal(cluster: HypercubeCluster, Y: Iterable[Permutation]) -> frozenset:
    Y = list(Y)
    return frozenset(a for a in cluster.yset if any(bruhat_leq(a, y) for y in Y))


@dataclass
class HDReport:
    hd1: bool
    hd2: bool
    hd3: bool
    z: Permutation | None
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.hd1 and self.hd2 and self.hd3


def is_hypercube_decomposition(ideal: OrderIdeal, stop_early: bool = False) -> HDReport:
    z = ideal.top
    hd1 = z is not None
    hd2, diamond = is_diamond_closed(ideal, witness=True)
    witnesses = []
    if not hd1:
        witnesses.append({"hd1": [str(m) for m in ideal.maximal_elements()]})
    if not hd2:
        witnesses.append({"hd2": [str(a) for a in diamond]})
    hd3 = True
    if not (stop_early and not (hd1 and hd2)):
        for x in sorted(ideal.members):
            cluster = compute_cluster(ideal, x)
            if not cluster.ok:
                hd3 = False
                witnesses.append({"hd3": {"x": str(x), "failures": [
                    {"Y": [str(y) for y in sorted(Y)], "count": c} for Y, c in cluster.failures]}})
                if stop_early:
                    break
    return HDReport(hd1, hd2, hd3, z, witnesses)


def enumerate_hcds(interval: BruhatInterval) -> list[OrderIdeal]:
    """Every [u, z] (z in [u, v]) that is a hypercube decomposition."""
    out = []
    for z in interval.elements:
        ideal = principal_ideal(interval, z)
        if not is_diamond_closed(ideal):
            continue
        if all(compute_cluster(ideal, x).ok for x in sorted(ideal.members)):
            out.append(ideal)
    return out


def is_strong_cluster(cluster: HypercubeCluster, graph: BruhatGraph | None = None):
    """(True, None) or (False, witness dict) for Def. of strongness."""
    graph = graph or build_graph(cluster.ideal.interval)
    theta = cluster.theta
    succ = lambda a: frozenset(y for y, _ in graph.succ[a])
    ys = sorted(cluster.yset)
    for Z in cluster.antichains:
        rest = [y for y in ys if y not in Z]
        for a, b in combinations(rest, 2):
            Y1, Y2 = Z | {a}, Z | {b}
            if Y1 not in theta or Y2 not in theta:
                continue
            for w in sorted(succ(theta[Y1]) & succ(theta[Y2])):
                union = Z | {a, b}
                if theta.get(union) != w:
                    return False, {"Y1": [str(y) for y in sorted(Y1)], "Y2": [str(y) for y in sorted(Y2)],
                                   "w": str(w), "antichain": union in theta}
    return True, None


def numerical_criterion(cluster: HypercubeCluster):
    x = cluster.x
    for Y in cluster.antichains:
        top = cluster.theta[Y]
        lhs = top.length - x.length + len(Y)
        lam = len(lambda_ideal(cluster, Y))
        if lhs != 2 * lam:
            return False, {"Y": [str(y) for y in sorted(Y)], "length": top.length - x.length,
                           "lambda": lam}
    return True, None


def is_simple(interval: BruhatInterval) -> bool:
    """Cover roots e_i - e_j of u are independent iff their graph on [n] is a forest."""
    u, v = interval.u, interval.v
    parent = list(range(u.n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for y, (i, j) in up_edges(u):
        if y.length == u.length + 1 and bruhat_leq(y, v):
            ri, rj = find(i), find(j)
            if ri == rj:
                return False
            parent[ri] = rj
    return True


def cover_roots(interval: BruhatInterval) -> list[tuple[int, int]]:
    u, v = interval.u, interval.v
    return [t for y, t in up_edges(u) if y.length == u.length + 1 and bruhat_leq(y, v)]


@dataclass
class PropertyE:
    value: bool | None  # None: unknown
    method: str
    order: ReflectionOrder | None = None

    @property
    def label(self) -> str:
        return {True: "true", False: "false", None: "unknown"}[self.value]


def edge_label_classes(ideal: OrderIdeal, x: Permutation) -> tuple[set, set]:
    """Labels of edges inside I cap [x, v], and of edges from there to [x, v] - I."""
    graph = build_graph(ideal.interval)
    inside = [a for a in ideal.members if bruhat_leq(x, a)]
    internal, exits = set(), set()
    for a in inside:
        for b, t in graph.succ[a]:
            (internal if b in ideal.members else exits).add(t)
    return internal, exits


def has_property_E(ideal: OrderIdeal, x: Permutation, method: str = "auto",
                   allow_large: bool = False) -> PropertyE:
    """
    method: "auto" (simple-interval shortcut, then search), "search" (always
    brute force over reflection orders) or "simple" (shortcut only).
    """
    internal, exits = edge_label_classes(ideal, x)
    n = ideal.interval.n
    if internal & exits:
        return PropertyE(False, "overlap")
    if not internal or not exits:
        return PropertyE(True, "vacuous", lex_order(n))
    if method in ("auto", "simple"):
        if is_simple(ideal.interval) and ideal.is_principal() and is_diamond_closed(ideal):
            return PropertyE(True, "simple")
        if method == "simple":
            return PropertyE(None, "simple")
    if n > MAX_E_SEARCH_N and not allow_large:
        return PropertyE(None, "guard")
    for order in enumerate_reflection_orders(n, allow_large=allow_large):
        if max(order.position(t) for t in internal) < min(order.position(t) for t in exits):
            return PropertyE(True, "search", order)
    return PropertyE(False, "search")


def ideal_property_E(ideal: OrderIdeal, method: str = "auto", allow_large: bool = False) -> PropertyE:
    """Property (E) at every x in the ideal; the first non-true result is returned."""
    unknown = None
    result = None
    for x in sorted(ideal.members):
        result = has_property_E(ideal, x, method, allow_large)
        if result.value is False:
            return result
        if result.value is None and unknown is None:
            unknown = result
    return unknown or result or PropertyE(True, "vacuous")
