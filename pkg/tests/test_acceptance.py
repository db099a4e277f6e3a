"""
Acceptance criteria, one test per criterion.  Every comparison is exact.

Run directly (``python tests/test_acceptance.py``) or through pytest; either
way one PASS/FAIL line is printed per criterion.
"""

import time

import pytest

from hkl.bbdvw import (
    BBDVWContext,
    check_bbdvw,
    check_conjecture_feq0,
    check_conjecture_reqh,
    check_Feq0relR,
    check_R_from_relR,
    counterexample_record,
    make_context,
    n_poly_original,
    n_poly_simplified,
    q_poly_antichains,
    q_poly_subsets,
    relative_rtilde_def,
    relative_rtilde_paths,
    relative_rtilde_theta,
)
from hkl.bruhat import ReflectionOrder, build_interval, enumerate_reflection_orders, lex_order
from hkl.camels import (
    blocks_of_ideal,
    build_caravan,
    camels_and_crossings,
    lambda_via_camels,
    theta_length,
    theta_via_product,
)
from hkl.hypercube import (
    compute_cluster,
    enumerate_hcds,
    enumerate_order_ideals,
    has_property_E,
    is_strong_cluster,
    lambda_ideal,
    numerical_criterion,
    principal_ideal,
)
from hkl.klr import kl_identity_residual, kl_polynomial, r_polynomial, rtilde_polynomial
from hkl.permutation import Permutation, all_permutations, bruhat_leq, identity, transposition
from hkl.poly import ONE, q, rtilde_to_r
from hkl.sweep import SweepConfig, run_sweep

RESULTS: dict[int, tuple[bool, str]] = {}


def pairs(n, lower=False):
    ps = all_permutations(n)
    us = [identity(n)] if lower else ps
    return [(u, v) for u in us for v in ps if bruhat_leq(u, v)]


def hcd_contexts(n, lower=False):
    for u, v in pairs(n, lower):
        for I in enumerate_hcds(build_interval(u, v)):
            yield make_context(u, v, I.top)


def record(k, ok, detail):
    RESULTS[k] = (ok, detail)
    return ok, detail


def _restricts_to(order4, order3):
    inner = [t for t in order4.sequence if t[1] <= 3]
    return tuple(inner) == order3.sequence


def criterion_1():
    t0 = time.perf_counter()
    s3_orders = list(enumerate_reflection_orders(3))
    s4_orders = list(enumerate_reflection_orders(4))
    lifted = [next(o for o in s4_orders if _restricts_to(o, o3)) for o3 in s3_orders]
    rest = [o for o in s4_orders if o not in lifted]
    sampled = [rest[0], rest[len(rest) // 2], rest[-1]]
    orders4 = list(dict.fromkeys(lifted + sampled))
    bad = []
    for u, v in pairs(3):
        for o in s3_orders:
            if rtilde_to_r(rtilde_polynomial(u, v, o), v.length - u.length) != r_polynomial(u, v):
                bad.append((u, v, o))
    n = 0
    for u, v in pairs(4):
        r = r_polynomial(u, v)
        for o in orders4:
            n += 1
            if rtilde_to_r(rtilde_polynomial(u, v, o), v.length - u.length) != r:
                bad.append((u, v, o))
    dt = time.perf_counter() - t0
    ok = not bad and len(orders4) == 5 and dt < 10
    return record(1, ok, f"{n} S4 comparisons over {len(orders4)} orders, {len(bad)} mismatches, {dt:.1f}s")


def criterion_2():
    ok = kl_polynomial(Permutation.parse("1324"), Permutation.parse("3412")) == 1 + q
    bad = 0
    for u, v in pairs(4):
        p = kl_polynomial(u, v)
        if v.length - u.length <= 2 and p != ONE:
            bad += 1
        if not kl_identity_residual(u, v, p).is_zero():
            bad += 1
    return record(2, ok and not bad, f"P(1324,3412) = {kl_polynomial(Permutation.parse('1324'), Permutation.parse('3412'))}, {bad} violations")


def criterion_3():
    t0 = time.perf_counter()
    counts = {}
    bad = []
    for n in (4, 5):
        k = 0
        for ctx in hcd_contexts(n, lower=True):
            k += 1
            res = check_bbdvw(ctx)
            if not res.ok:
                bad.append(counterexample_record("bbdvw", ctx.u, ctx.v, ctx.ideal.top, res.direct))
        counts[n] = k
    dt = time.perf_counter() - t0
    return record(3, not bad, f"{counts[4]} HCDs (S4), {counts[5]} HCDs (S5), {len(bad)} nonzero residuals, {dt:.1f}s")


def criterion_4():
    bad = []
    k = 0
    for n in (4, 5):
        for ctx in hcd_contexts(n, lower=True):
            k += 1
            cl = ctx.cluster_u
            if not (has_property_E(ctx.ideal, ctx.u).value is True
                    and is_strong_cluster(cl)[0] and numerical_criterion(cl)[0]):
                bad.append((ctx.v, ctx.ideal.top))
    return record(4, not bad, f"{k} HCDs of lower intervals (S4, S5), {len(bad)} violations")


def criterion_5():
    orders = [lex_order(4)] + list(enumerate_reflection_orders(4))[::5]
    fails = {"R-from-relR": [], "Feq0relR": [], "paths": []}
    ideals = 0
    for u, v in pairs(4):
        iv = build_interval(u, v)
        for I in enumerate_order_ideals(iv):
            ideals += 1
            m = I.members
            if not check_R_from_relR(u, v, m).is_zero():
                fails["R-from-relR"].append((u, v))
            if u != v:
                res = check_Feq0relR(u, v, m)
                if not res.is_zero():
                    fails["Feq0relR"].append((u, v, len(m) == len(iv), res == rtilde_polynomial(u, v)))
            d = relative_rtilde_def(u, v, m)
            for o in orders:
                if relative_rtilde_paths(u, v, m, o) != d:
                    fails["paths"].append((u, v, o))
    feq = fails["Feq0relR"]
    whole = sum(1 for f in feq if f[2] and f[3])
    detail = (f"{ideals} ideals; R-from-relR {len(fails['R-from-relR'])} fail, "
              f"def=paths {len(fails['paths'])} fail, Feq0relR {len(feq)} fail "
              f"({whole} of them have I = [u,v] and sum = R~_(u,v))")
    return record(5, not any(fails.values()), detail)


def criterion_6():
    bad = 0
    k = 0
    for ctx in hcd_contexts(4, lower=True):
        k += 1
        if relative_rtilde_theta(ctx.cluster_u, ctx.v) != relative_rtilde_def(ctx.u, ctx.v, ctx.ideal.members):
            bad += 1
    return record(6, not bad, f"{k} HCDs, {bad} mismatches at e")


def criterion_7():
    bad = 0
    k = 0
    for ctx in hcd_contexts(4):
        k += 1
        if n_poly_original(ctx) != n_poly_simplified(ctx):
            bad += 1
        if q_poly_subsets(ctx) != q_poly_antichains(ctx):
            bad += 1
        if not check_bbdvw(ctx).consistent:
            bad += 1
    return record(7, not bad, f"{k} HCDs of S4, {bad} disagreements")


def criterion_8():
    P = Permutation.parse
    v, z = P("361245"), P("214356")
    e = identity(6)
    ideal = principal_ideal(build_interval(e, v), z)
    blocks = blocks_of_ideal(ideal)
    arcs = [(1, 3), (2, 4), (4, 5), (5, 6)]
    car = build_caravan(arcs, blocks)
    camels, cross = camels_and_crossings(car)
    formula = (len(camels), cross, lambda_via_camels(arcs, blocks), theta_length(arcs, blocks))
    cl = compute_cluster(ideal, e)
    Y = frozenset(transposition(i, j, 6) for i, j in arcs)
    theta = cl.theta.get(Y)
    lam = len(lambda_ideal(cl, Y)) if theta is not None else None
    direct = (theta.length if theta else None, lam)
    ok = (str(blocks) == "12 | 34 | 5 | 6" and formula == (2, 1, 5, 6) and direct == (6, 5)
          and theta == theta_via_product(arcs, blocks, v)
          and (direct[0] + len(Y)) == 2 * direct[1] and numerical_criterion(cl)[0])
    return record(8, ok, f"blocks {blocks}; camels/cross/|Lambda|/l(theta) = {formula}; direct l(theta), |Lambda| = {direct}")


def criterion_9():
    records = []
    counts = {"bbdvw": 0, "feq0": 0, "reqh": 0}

    def run(ctx):
        res = check_bbdvw(ctx)
        counts["bbdvw"] += 1
        if not res.ok:
            records.append(counterexample_record("conj-bbdvw", ctx.u, ctx.v, ctx.ideal.top, res.direct))
        clusters = {x: compute_cluster(ctx.ideal, x) for x in ctx.ideal.members}
        if numerical_criterion(ctx.cluster_u)[0] and ctx.ideal.top != ctx.v:
            counts["feq0"] += 1
            r = check_conjecture_feq0(ctx)
            if not r.is_zero():
                records.append(counterexample_record("conj-feq0", ctx.u, ctx.v, ctx.ideal.top, r))
        if all(numerical_criterion(c)[0] for c in clusters.values()):
            counts["reqh"] += 1
            r = check_conjecture_reqh(ctx, clusters)
            if not r.is_zero():
                records.append(counterexample_record("conj-reqh", ctx.u, ctx.v, ctx.ideal.top, r))

    for ctx in hcd_contexts(4):
        run(ctx)
    for ctx in hcd_contexts(5, lower=True):
        run(ctx)
    for rec in records:
        print("COUNTEREXAMPLE", rec)
    return record(9, not records, f"instances checked {counts}, {len(records)} counterexamples")


def criterion_10():
    cfg = dict(n=5, scope="lower", checks=("bbdvw",))
    one = run_sweep(SweepConfig(**cfg, jobs=1))
    eight = run_sweep(SweepConfig(**cfg, jobs=8))
    return record(10, one == eight and len(one) > 0, f"{len(one)} records, identical = {one == eight}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k):
    ok, detail = CRITERIA[k - 1]()
    assert ok, detail


if __name__ == "__main__":
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
