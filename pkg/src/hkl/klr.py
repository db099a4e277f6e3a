"""
R-, R~- and Kazhdan-Lusztig polynomials of S_n, memoized on (u, v).

Each family has two independent routes:

* R by the left-descent recurrence, R~ by counting increasing paths in the
  Bruhat graph (and ``rtilde_to_r`` connects them);
* P by truncating ``sum_{x in (u,v]} R_{u,x} P_{x,v}`` with the recurrence
  R (`kl_polynomial`), or with R obtained from path-counted R~
  (`kl_polynomial_via_rtilde`).
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from .bruhat import ReflectionOrder, build_interval, lex_order, up_edges
from .permutation import Permutation, bruhat_leq
from .poly import ONE, ZERO, IntPolynomial, q, rtilde_to_r

__all__ = [
    "PolyCache",
    "CacheConflict",
    "InconsistencyError",
    "DEFAULT_CACHE",
    "r_polynomial",
    "rtilde_polynomial",
    "kl_polynomial",
    "kl_polynomial_via_rtilde",
    "kl_identity_residual",
]


class CacheConflict(RuntimeError):
    pass


class InconsistencyError(ArithmeticError):
    """A defining identity failed; some upstream computation is wrong."""


class PolyCache:
    """Write-once table keyed by (kind, u, v); kind is "R", "Rt" or "P"."""

    def __init__(self):
        self._table: dict[tuple[str, Permutation, Permutation], IntPolynomial] = {}
        self._lock = threading.Lock()

    def get(self, kind: str, u: Permutation, v: Permutation) -> IntPolynomial | None:
        return self._table.get((kind, u, v))

    def put(self, kind: str, u: Permutation, v: Permutation, value: IntPolynomial) -> IntPolynomial:
        key = (kind, u, v)
        with self._lock:
            old = self._table.setdefault(key, value)
        if old != value:
            raise CacheConflict(f"{kind}[{u},{v}]: cached {old}, new {value}")
        return old

    def __len__(self):
        return len(self._table)

    def clear(self):
        with self._lock:
            self._table.clear()

    def dump(self, path: str | os.PathLike) -> int:
        """Write one JSON object per line: {"kind", "u", "v", "poly"}."""
        with self._lock:
            items = sorted(self._table.items(), key=lambda kv: (kv[0][0], kv[0][1].sort_key(), kv[0][2].sort_key()))
        with open(path, "w") as fh:
            for (kind, u, v), p in items:
                fh.write(json.dumps({"kind": kind, "u": str(u), "v": str(v), "poly": p.to_json()}) + "\n")
        return len(items)

    def load(self, path: str | os.PathLike) -> int:
        path = Path(path)
        if not path.exists():
            return 0
        count = 0
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                self.put(rec["kind"], Permutation.parse(rec["u"]), Permutation.parse(rec["v"]),
                         IntPolynomial.from_json(rec["poly"]))
                count += 1
        return count


DEFAULT_CACHE = PolyCache()


def _lowest_left_descent(v: Permutation) -> int:
    # s_i v < v iff i+1 sits to the left of i in v
    pos = v.inverse().word
    for i in range(1, v.n):
        if pos[i] < pos[i - 1]:
            return i
    raise ValueError("identity has no descents")


def r_polynomial(u: Permutation, v: Permutation, cache: PolyCache | None = None,
                 descent: int | None = None) -> IntPolynomial:
    """
    R_{u,v} by the recurrence on a left descent s of v.

    `descent` overrides the choice of s at the top level only; by default the
    smallest i with s_i v < v is used.
    """
    cache = DEFAULT_CACHE if cache is None else cache
    if descent is None:
        hit = cache.get("R", u, v)
        if hit is not None:
            return hit
    if not bruhat_leq(u, v):
        result = ZERO
    elif u == v:
        result = ONE
    else:
        i = _lowest_left_descent(v) if descent is None else descent
        if i not in v.descents("left"):
            raise ValueError(f"s_{i} is not a left descent of {v}")
        sv = v.left_transpose(i, i + 1)
        su = u.left_transpose(i, i + 1)
        if su.length < u.length:
            result = r_polynomial(su, sv, cache)
        else:
            result = (q - 1) * r_polynomial(u, sv, cache) + q * r_polynomial(su, sv, cache)
    if descent is None:
        cache.put("R", u, v, result)
    return result


def rtilde_polynomial(u: Permutation, v: Permutation, order: ReflectionOrder | None = None,
                      cache: PolyCache | None = None) -> IntPolynomial:
    """
    R~_{u,v} as the length generating function of increasing paths u -> v.

    Results are cached only when `order` is None (the lexicographic order is
    then used); an explicit order always recomputes.
    """
    cache = DEFAULT_CACHE if cache is None else cache
    if order is None:
        hit = cache.get("Rt", u, v)
        if hit is not None:
            return hit
    if not bruhat_leq(u, v):
        result = ZERO
    else:
        result = _increasing_path_sum(u, v, lex_order(u.n) if order is None else order)
    if order is None:
        cache.put("Rt", u, v, result)
    return result


def _increasing_path_sum(u: Permutation, v: Permutation, order: ReflectionOrder,
                         first_above: int = -1) -> IntPolynomial:
    memo: dict[tuple[Permutation, int], IntPolynomial] = {}

    def f(x: Permutation, lo: int) -> IntPolynomial:
        if x == v:
            return ONE
        key = (x, lo)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = ZERO
        for y, t in up_edges(x):
            p = order.position(t)
            if p > lo and bruhat_leq(y, v):
                total = total + f(y, p).shift(1)
        memo[key] = total
        return total

    return f(u, first_above)


def increasing_path_sum(u: Permutation, v: Permutation, order: ReflectionOrder,
                        first_above: int = -1) -> IntPolynomial:
    """Sum of q^len over increasing paths u -> v whose labels all sit above position `first_above`."""
    if not bruhat_leq(u, v):
        return ZERO
    return _increasing_path_sum(u, v, order, first_above)


def kl_identity_residual(u: Permutation, v: Permutation, p_uv: IntPolynomial,
                         r_func=None, cache: PolyCache | None = None) -> IntPolynomial:
    """q^l P(1/q) - P - sum_{x in (u,v]} R_{u,x} P_{x,v}."""
    r_func = r_func or r_polynomial
    total = _kl_rhs(u, v, r_func, cache)
    return p_uv.reverse(v.length - u.length) - p_uv - total


def _kl_rhs(u, v, r_func, cache, p_func=None):
    p_func = p_func or kl_polynomial
    total = ZERO
    for x in build_interval(u, v).elements:
        if x != u:
            total = total + r_func(u, x, cache=cache) * p_func(x, v, cache=cache)
    return total


def kl_polynomial(u: Permutation, v: Permutation, cache: PolyCache | None = None) -> IntPolynomial:
    """P_{u,v}: minus the part of ``sum R_{u,x} P_{x,v}`` below degree l(u,v)/2."""
    cache = DEFAULT_CACHE if cache is None else cache
    hit = cache.get("P", u, v)
    if hit is not None:
        return hit
    if not bruhat_leq(u, v):
        result = ZERO
    elif u == v:
        result = ONE
    else:
        result = _truncate_solve(u, v, r_polynomial, kl_polynomial, cache)
    return cache.put("P", u, v, result)


def _truncate_solve(u, v, r_func, p_func, cache) -> IntPolynomial:
    length = v.length - u.length
    rhs = _kl_rhs(u, v, r_func, cache, p_func)
    # exponents < l/2 ; 2k < l
    result = -IntPolynomial({k: a for k, a in rhs.coeffs.items() if 2 * k < length})
    if result.reverse(length) - result != rhs:
        raise InconsistencyError(f"KL identity fails for [{u},{v}]: D = {rhs}")
    return result


def _r_from_rtilde(u, v, cache=None):
    return rtilde_to_r(rtilde_polynomial(u, v, cache=cache), v.length - u.length) \
        if bruhat_leq(u, v) else ZERO


def kl_polynomial_via_rtilde(u: Permutation, v: Permutation, cache: PolyCache | None = None) -> IntPolynomial:
    """P_{u,v} recomputed with R taken from path-counted R~ (no recurrence R)."""
    cache = DEFAULT_CACHE if cache is None else cache
    hit = cache.get("P~", u, v)
    if hit is not None:
        return hit
    if not bruhat_leq(u, v):
        result = ZERO
    elif u == v:
        result = ONE
    else:
        result = _truncate_solve(u, v, _r_from_rtilde, kl_polynomial_via_rtilde, cache)
    return cache.put("P~", u, v, result)
