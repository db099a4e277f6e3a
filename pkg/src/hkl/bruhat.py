"""
Bruhat intervals, labeled Bruhat graphs and reflection orders in S_n.

An edge ``x -> y`` of the Bruhat graph carries the label ``t = y x^{-1}``,
a transposition written as a pair ``(i, j)`` with ``i < j``; ``y`` is
obtained from ``x`` by swapping the values i and j, and the edge points up
in length.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .permutation import (
    Permutation,
    all_transpositions,
    bruhat_leq,
    identity,
    longest_element,
)

__all__ = [
    "BruhatInterval",
    "BruhatGraph",
    "ReflectionOrder",
    "up_edges",
    "build_interval",
    "build_graph",
    "is_reflection_order",
    "lex_order",
    "reflection_order_from_word",
    "reduced_words",
    "enumerate_reflection_orders",
    "increasing_paths",
    "MAX_ORDER_N",
]

Transposition = tuple[int, int]

MAX_ORDER_N = 6


@lru_cache(maxsize=None)
def up_edges(x: Permutation) -> tuple[tuple[Permutation, Transposition], ...]:
    """All Bruhat-graph edges leaving x in the whole group, as (y, t)."""
    pos = {a: p for p, a in enumerate(x.word)}
    out = []
    for i, j in all_transpositions(x.n):
        if pos[i] < pos[j]:
            out.append((x.left_transpose(i, j), (i, j)))
    return tuple(out)


@dataclass(eq=False)
class BruhatInterval:
    u: Permutation
    v: Permutation
    elements: tuple[Permutation, ...]
    rank: dict[Permutation, int] = field(repr=False)
    _members: frozenset = field(repr=False, default=frozenset())

    def __post_init__(self):
        self._members = frozenset(self.elements)

    @property
    def length(self) -> int:
        return self.v.length - self.u.length

    @property
    def n(self) -> int:
        return self.u.n

    def __contains__(self, x) -> bool:
        return x in self._members

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def members(self) -> frozenset:
        return self._members

    def by_rank(self) -> list[list[Permutation]]:
        levels: list[list[Permutation]] = [[] for _ in range(self.length + 1)]
        for x in self.elements:
            levels[self.rank[x]].append(x)
        return levels

    def is_lower(self) -> bool:
        return self.u.is_identity()


@lru_cache(maxsize=4096)
def build_interval(u: Permutation, v: Permutation) -> BruhatInterval:
    """[u, v], elements sorted by (length, word)."""
    if not bruhat_leq(u, v):
        raise ValueError(f"{u} is not <= {v} in Bruhat order")
    seen = {u}
    frontier = [u]
    while frontier:
        nxt = []
        for x in frontier:
            for y, _ in up_edges(x):
                if y not in seen and bruhat_leq(y, v):
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    elements = tuple(sorted(seen))
    base = u.length
    return BruhatInterval(u, v, elements, {x: x.length - base for x in elements})


@dataclass(eq=False)
class BruhatGraph:
    interval: BruhatInterval
    edges: tuple[tuple[Permutation, Permutation, Transposition], ...]
    succ: dict[Permutation, tuple[tuple[Permutation, Transposition], ...]] = field(repr=False)
    pred: dict[Permutation, tuple[tuple[Permutation, Transposition], ...]] = field(repr=False)

    def has_edge(self, x: Permutation, y: Permutation) -> bool:
        return any(z == y for z, _ in self.succ.get(x, ()))

    def successors(self, x: Permutation) -> list[Permutation]:
        return [y for y, _ in self.succ[x]]

    def to_json(self) -> str:
        return json.dumps([[str(x), str(y), list(t)] for x, y, t in self.edges])

    def is_acyclic_graded(self) -> bool:
        return all(x.length < y.length for x, y, _ in self.edges)


@lru_cache(maxsize=4096)
def _graph_for(u: Permutation, v: Permutation) -> BruhatGraph:
    interval = build_interval(u, v)
    edges = []
    succ: dict = {}
    pred: dict = {x: [] for x in interval.elements}
    for x in interval.elements:
        out = [(y, t) for y, t in up_edges(x) if y in interval]
        succ[x] = tuple(out)
        for y, t in out:
            edges.append((x, y, t))
            pred[y].append((x, t))
    return BruhatGraph(interval, tuple(edges), succ, {x: tuple(p) for x, p in pred.items()})


def build_graph(interval: BruhatInterval) -> BruhatGraph:
    """Gamma(u, v): the induced labeled subgraph of the Bruhat graph."""
    return _graph_for(interval.u, interval.v)


# -- reflection orders -------------------------------------------------------


class ReflectionOrder:
    """A total order on the transpositions of S_n."""

    __slots__ = ("n", "sequence", "_pos")

    def __init__(self, sequence: Sequence[Transposition], n: int):
        self.n = n
        self.sequence = tuple(tuple(t) for t in sequence)
        self._pos = {t: k for k, t in enumerate(self.sequence)}
        if sorted(self.sequence) != list(all_transpositions(n)):
            raise ValueError("sequence must list every transposition exactly once")

    def position(self, t: Transposition) -> int:
        return self._pos[t]

    def less(self, t1: Transposition, t2: Transposition) -> bool:
        return self._pos[t1] < self._pos[t2]

    def is_valid(self) -> bool:
        return is_reflection_order(self.sequence, self.n)

    def __eq__(self, other):
        return isinstance(other, ReflectionOrder) and self.sequence == other.sequence

    def __hash__(self):
        return hash(self.sequence)

    def __repr__(self):
        body = " < ".join(f"({i} {j})" for i, j in self.sequence)
        return f"ReflectionOrder({body})"

    def to_json(self) -> list:
        return [list(t) for t in self.sequence]


def is_reflection_order(sequence: Sequence[Transposition], n: int) -> bool:
    pos = {tuple(t): k for k, t in enumerate(sequence)}
    if len(pos) != len(sequence) or set(pos) != set(all_transpositions(n)):
        return False
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            for c in range(b + 1, n + 1):
                ab, ac, bc = pos[(a, b)], pos[(a, c)], pos[(b, c)]
                if not (ab < ac < bc or bc < ac < ab):
                    return False
    return True


def lex_order(n: int) -> ReflectionOrder:
    """(1 2) < (1 3) < ... < (1 n) < (2 3) < ... ; a reflection order."""
    return ReflectionOrder(all_transpositions(n), n)


def reflection_order_from_word(word: Sequence[int], n: int) -> ReflectionOrder:
    """
    The order t_1 < t_2 < ... with ``t_k = s_{i_1}...s_{i_{k-1}} s_{i_k} s_{i_{k-1}}...s_{i_1}``
    for a reduced word ``i_1 ... i_N`` of the longest element.
    """
    prefix = list(range(1, n + 1))
    seq = []
    for i in word:
        a, b = prefix[i - 1], prefix[i]
        seq.append((min(a, b), max(a, b)))
        prefix[i - 1], prefix[i] = b, a
    return ReflectionOrder(seq, n)


def reduced_words(w: Permutation) -> Iterator[tuple[int, ...]]:
    """Every reduced word of w, lexicographically."""
    if w.is_identity():
        yield ()
        return
    for i in sorted(w.descents("right")):
        for word in reduced_words(w.right_transpose(i, i + 1)):
            yield word + (i,)


def enumerate_reflection_orders(n: int, allow_large: bool = False) -> Iterator[ReflectionOrder]:
    if n > MAX_ORDER_N and not allow_large:
        raise OverflowError(f"refusing to enumerate reflection orders for n={n} > {MAX_ORDER_N}")
    if n == 1:
        yield ReflectionOrder((), 1)
        return
    for word in reduced_words(longest_element(n)):
        yield reflection_order_from_word(word, n)


# -- paths -------------------------------------------------------------------


def increasing_paths(graph: BruhatGraph, order: ReflectionOrder,
                     a: Permutation, b: Permutation) -> list[tuple[Permutation, ...]]:
    """All paths a -> b in `graph` with strictly increasing labels."""
    if a not in graph.interval or b not in graph.interval or not bruhat_leq(a, b):
        return []
    paths = []

    def walk(x, lo, trail):
        if x == b:
            paths.append(tuple(trail))
            return
        for y, t in graph.succ[x]:
            p = order.position(t)
            if p > lo and bruhat_leq(y, b):
                trail.append(y)
                walk(y, p, trail)
                trail.pop()

    walk(a, -1, [a])
    return paths


def path_labels(path: Sequence[Permutation]) -> list[Transposition]:
    from .permutation import as_transposition
    return [as_transposition(y * x.inverse()) for x, y in zip(path, path[1:])]


def identity_interval(n: int) -> BruhatInterval:
    e = identity(n)
    return build_interval(e, e)
