"""
Block and caravan structure of hypercube decompositions of lower intervals.

For a hypercube decomposition I = [e, z] of [e, v], the atoms of I are
simple reflections and cut {1..n} into blocks of consecutive integers.  An
antichain Y of reflections leaving I is drawn as arcs i -> j over the
blocks (its caravan); the connected pieces with at least one arc are the
camels.  The lengths, Lambda-sizes and theta-images of antichains can then
be read off the caravan, independently of any hypercube search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from graphlib import TopologicalSorter
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .bruhat import build_interval
from .hypercube import (
    OrderIdeal,
    compute_cluster,
    is_strong_cluster,
    lambda_ideal,
    numerical_criterion,
    principal_ideal,
)
from .permutation import (
    Permutation,
    as_transposition,
    bruhat_leq,
    identity,
    multiply,
    transposition,
)

__all__ = [
    "BlockPartition",
    "Caravan",
    "CaravanError",
    "blocks_of_ideal",
    "build_caravan",
    "camels_and_crossings",
    "lambda_via_camels",
    "theta_via_product",
    "theta_length",
    "render_caravan",
    "verify_lower_structure",
    "LowerStructureReport",
]

Arc = tuple[int, int]


class CaravanError(ValueError):
    """A structural statement about lower-interval decompositions failed."""


@dataclass(frozen=True)
class BlockPartition:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        flat = [a for b in self.blocks for a in b]
        if not self.blocks or any(not b for b in self.blocks) or flat != list(range(1, len(flat) + 1)):
            raise ValueError(f"not a partition of 1..n into consecutive blocks: {self.blocks}")
        for b in self.blocks:
            if list(b) != list(range(b[0], b[-1] + 1)):
                raise ValueError(f"block {b} is not consecutive")

    @property
    def n(self) -> int:
        return self.blocks[-1][-1]

    def index(self, i: int) -> int:
        for a, b in enumerate(self.blocks):
            if b[0] <= i <= b[-1]:
                return a
        raise ValueError(i)

    def same_block(self, i: int, j: int) -> bool:
        return self.index(i) == self.index(j)

    def contains_parabolic(self, w: Permutation) -> bool:
        """w lies in the Young subgroup of the blocks."""
        return all(self.index(w(i)) == self.index(i) for i in range(1, w.n + 1))

    def __str__(self):
        return " | ".join("".join(str(a) if a < 10 else f"({a})" for a in b) for b in self.blocks)


def blocks_of_ideal(ideal: OrderIdeal) -> BlockPartition:
    interval = ideal.interval
    if not interval.u.is_identity():
        raise ValueError("blocks are defined for lower intervals [e, v]")
    n = interval.n
    atoms = set()
    for x in ideal.members:
        if x.length == 1:
            atoms.add(as_transposition(x)[0])
    blocks, current = [], [1]
    for i in range(1, n):
        if i in atoms:
            current.append(i + 1)
        else:
            blocks.append(tuple(current))
            current = [i + 1]
    blocks.append(tuple(current))
    partition = BlockPartition(tuple(blocks))
    expected = frozenset(x for x in interval.elements if partition.contains_parabolic(x))
    if expected != ideal.members:
        raise CaravanError(f"ideal is not [e,v] cap W_J for blocks {partition}")
    return partition


@dataclass
class Caravan:
    n: int
    blocks: BlockPartition
    arcs: frozenset

    def out_arcs(self, i: int) -> list[Arc]:
        return [a for a in self.arcs if a[0] == i]

    def in_arcs(self, j: int) -> list[Arc]:
        return [a for a in self.arcs if a[1] == j]

    def violations(self) -> list[str]:
        out = []
        for (i, j), (k, l) in combinations(sorted(self.arcs), 2):
            if (k <= i and j <= l) or (i <= k and l <= j):
                out.append(f"nested arcs ({i} {j}), ({k} {l})")
        for v in range(1, self.n + 1):
            if len(self.out_arcs(v)) > 1 or len(self.in_arcs(v)) > 1:
                out.append(f"vertex {v} has in/out-degree > 1")
        for i, j in sorted(self.arcs):
            a, b = self.blocks.index(i), self.blocks.index(j)
            if b != a + 1:
                out.append(f"arc ({i} {j}) joins non-consecutive blocks")
                continue
            if i != self.blocks.blocks[a][-1] and j != self.blocks.blocks[b][0]:
                out.append(f"arc ({i} {j}) uses no block endpoint")
        return out


def _as_arc(y) -> Arc:
    if isinstance(y, Permutation):
        t = as_transposition(y)
        if t is None:
            raise ValueError(f"{y} is not a transposition")
        return t
    return tuple(y)


def build_caravan(Y: Iterable, blocks: BlockPartition, strict: bool = True) -> Caravan:
    """One arc per element of Y (transpositions as permutations or pairs)."""
    car = Caravan(blocks.n, blocks, frozenset(_as_arc(y) for y in Y))
    if strict:
        bad = car.violations()
        if bad:
            raise CaravanError("; ".join(bad))
    return car


def camels_and_crossings(car: Caravan) -> tuple[list[list[Arc]], int]:
    """Camels as left-to-right arc chains, ordered by minimal vertex, and cross(Y)."""
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in car.arcs:
        parent[find(i)] = find(j)
    groups: dict[int, list[Arc]] = {}
    for arc in car.arcs:
        groups.setdefault(find(arc[0]), []).append(arc)
    camels = sorted((sorted(g) for g in groups.values()), key=lambda c: c[0][0])
    cross = 0
    for c1, c2 in combinations(camels, 2):
        if any(i < k < j < l or k < i < l < j for (i, j) in c1 for (k, l) in c2):
            cross += 1
    return camels, cross


def _support(camel: Sequence[Arc]) -> tuple[int, int]:
    return min(a for a, _ in camel), max(b for _, b in camel)


def lambda_via_camels(Y: Iterable, blocks: BlockPartition) -> int:
    camels, cross = camels_and_crossings(build_caravan(Y, blocks))
    return sum(hi - lo for lo, hi in map(_support, camels)) - cross


def theta_length(Y: Iterable, blocks: BlockPartition) -> int:
    camels, cross = camels_and_crossings(build_caravan(Y, blocks))
    return sum(2 * (hi - lo) - len(c) for c, (lo, hi) in zip(camels, map(_support, camels))) - 2 * cross


def _chain_products(camel: Sequence[Arc], n: int) -> list[Permutation]:
    """Products of a chain (i1 i2), (i2 i3), ... over every relative order of neighbours."""
    ts = [transposition(i, j, n) for i, j in sorted(camel)]
    out = []
    for flags in product((False, True), repeat=len(ts) - 1):
        # flags[k-1]: arc k is multiplied to the left of arc k-1
        preds: dict[int, set[int]] = {k: set() for k in range(len(ts))}
        for k, before in enumerate(flags, start=1):
            if before:
                preds[k - 1].add(k)
            else:
                preds[k].add(k - 1)
        w = identity(n)
        for k in TopologicalSorter(preds).static_order():
            w = multiply(w, ts[k])
        out.append(w)
    return out


def theta_via_product(Y: Iterable, blocks: BlockPartition, v: Permutation) -> Permutation:
    """
    theta_e(Y) as the commuting product over camels of the unique chain
    product that stays below v.
    """
    camels, _ = camels_and_crossings(build_caravan(Y, blocks))
    n = blocks.n
    result = identity(n)
    for camel in camels:
        hits = sorted({w for w in _chain_products(camel, n) if bruhat_leq(w, v)})
        if len(hits) != 1:
            raise CaravanError(f"camel {camel}: {len(hits)} products below {v}")
        result = multiply(result, hits[0])
    return result


def render_caravan(car: Caravan) -> str:
    """ASCII arc diagram: one row per arc above the vertex row, blocks bracketed."""
    n = car.n
    col = {}
    cells = []
    for b in car.blocks.blocks:
        cells.append("[")
        for a in b:
            col[a] = sum(len(c) for c in cells)
            cells.append(str(a))
            cells.append(" ")
        cells[-1] = "]"
        cells.append(" ")
    base = "".join(cells).rstrip()
    rows = []
    for i, j in sorted(car.arcs, key=lambda a: (a[1] - a[0], a)):
        row = [" "] * len(base)
        a, b = col[i], col[j]
        row[a] = "+"
        row[b] = ">"
        for k in range(a + 1, b):
            row[k] = "-"
        rows.append("".join(row).rstrip())
    return "\n".join(list(reversed(rows)) + [base])


@dataclass
class LowerStructureReport:
    v: Permutation
    z: Permutation
    blocks: BlockPartition | None = None
    failures: dict = field(default_factory=dict)
    antichains_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, check: str, detail) -> None:
        self.failures.setdefault(check, []).append(detail)


def verify_lower_structure(v: Permutation, z: Permutation, check_products: bool = True) -> LowerStructureReport:
    """Check the block/caravan/camel statements on one decomposition [e, z] of [e, v]."""
    n = v.n
    e = identity(n)
    interval = build_interval(e, v)
    ideal = principal_ideal(interval, z)
    report = LowerStructureReport(v, z)
    try:
        blocks = blocks_of_ideal(ideal)
    except CaravanError as exc:
        report.fail("parabolic", str(exc))
        return report
    report.blocks = blocks
    cluster = compute_cluster(ideal, e)
    if not cluster.ok:
        report.fail("cluster", [(sorted(map(str, Y)), c) for Y, c in cluster.failures])
        return report

    ye = {as_transposition(y) for y in cluster.yset}
    expected = {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
                if not blocks.same_block(i, j) and bruhat_leq(transposition(i, j, n), v)}
    if ye != expected:
        report.fail("Ye-from-blocks", {"found": sorted(ye), "expected": sorted(expected)})

    for i, j in sorted(ye):
        for k in range(i + 1, j):
            if ((i, k) in ye) == ((k, j) in ye):
                report.fail("no-S3", (i, k, j))
        a, b = blocks.index(i), blocks.index(j)
        if b != a + 1:
            report.fail("consecutive-blocks", (i, j))
        if len({blocks.index(k) for k in range(i + 1, j)}) > 1:
            report.fail("no-nested-edges", (i, j))
        if b == a + 1 and i != blocks.blocks[a][-1] and j != blocks.blocks[b][0]:
            report.fail("arcs-use-endpoint", (i, j))

    for Y in cluster.antichains:
        report.antichains_checked += 1
        arcs = sorted(as_transposition(y) for y in Y)
        car = build_caravan(arcs, blocks, strict=False)
        bad = car.violations()
        if bad:
            report.fail("caravan", {"Y": arcs, "violations": bad})
            continue
        camels, cross = camels_and_crossings(car)
        for (i, j), (k, l) in combinations(arcs, 2):
            if i < k < j < l:
                a = blocks.index(i)
                if not (j == blocks.blocks[a + 1][0] and k == blocks.blocks[a][-1]):
                    report.fail("crossing-arcs", {"Y": arcs, "pair": [(i, j), (k, l)]})
        for c1, c2 in zip(camels, camels[1:]):
            lo1, hi1 = _support(c1)
            lo2, hi2 = _support(c2)
            if hi1 < lo2:
                continue
            if not (hi1 == lo2 + 1 and hi1 == blocks.blocks[blocks.index(hi1)][0]
                    and lo2 == blocks.blocks[blocks.index(lo2)][-1]):
                report.fail("crossing-camels", {"Y": arcs, "camels": [c1, c2]})
        for c1, c2 in combinations(camels, 2):
            if camels.index(c2) - camels.index(c1) > 1 and \
                    any(i < k < j < l for (i, j) in c1 for (k, l) in c2):
                report.fail("crossing-nonconsecutive", {"Y": arcs})
        lam_direct = len(lambda_ideal(cluster, Y))
        if lambda_via_camels(arcs, blocks) != lam_direct:
            report.fail("lambda", {"Y": arcs, "direct": lam_direct})
        top = cluster.theta[Y]
        if theta_length(arcs, blocks) != top.length:
            report.fail("theta-length", {"Y": arcs, "direct": top.length})
        try:
            if theta_via_product(arcs, blocks, v) != top:
                report.fail("theta-product", {"Y": arcs, "direct": str(top)})
        except CaravanError as exc:
            report.fail("theta-product", {"Y": arcs, "error": str(exc)})
        if check_products and 1 < len(Y) <= 4:
            for seq in permutations(arcs):
                if not _product_spans_hypercube(seq, n):
                    report.fail("almost-reduced-product", {"Y": arcs, "order": list(seq)})

    strong, witness = is_strong_cluster(cluster)
    if not strong:
        report.fail("strong", witness)
    nc, witness = numerical_criterion(cluster)
    if not nc:
        report.fail("numerical-criterion", witness)
    return report


def _product_spans_hypercube(seq: Sequence[Arc], n: int) -> bool:
    """Deleting subsets of factors from y_1...y_k gives a hypercube in the Bruhat graph of S_n."""
    ts = [transposition(i, j, n) for i, j in seq]
    k = len(ts)
    vertex = {}
    for mask in range(1 << k):
        w = identity(n)
        for a in range(k):
            if mask >> a & 1:
                w = multiply(w, ts[a])
        vertex[mask] = w
    if len(set(vertex.values())) != 1 << k:
        return False
    for mask, w in vertex.items():
        for a in range(k):
            if not mask >> a & 1:
                y = vertex[mask | 1 << a]
                if y.length <= w.length or as_transposition(multiply(y, w.inverse())) is None:
                    return False
    return True
