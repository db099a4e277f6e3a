from fractions import Fraction
from itertools import combinations

import pytest

from hkl.bruhat import build_graph, build_interval, lex_order
from hkl.hypercube import (
    MAX_E_SEARCH_N,
    OrderIdeal,
    antichains,
    compute_cluster,
    cover_roots,
    edge_label_classes,
    enumerate_hcds,
    enumerate_order_ideals,
    generated_ideal,
    has_property_E,
    is_diamond_closed,
    is_hypercube_decomposition,
    is_simple,
    is_strong_cluster,
    lambda_ideal,
    numerical_criterion,
    principal_ideal,
    theta_extended,
)
from hkl.permutation import Permutation, all_permutations, bruhat_leq, identity


def intervals(n, lower=False):
    ps = all_permutations(n)
    us = [identity(n)] if lower else ps
    return [build_interval(u, v) for u in us for v in ps if bruhat_leq(u, v)]


def rank(vectors):
    rows = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def in_parabolic(w, J):
    # w lies in W_J iff w fixes {1..i} setwise for every s_i outside J
    return all(set(w.word[:i]) == set(range(1, i + 1)) for i in range(1, w.n) if i not in J)


@pytest.fixture
def s3(P):
    iv = build_interval(P("123"), P("321"))
    return iv, OrderIdeal(iv, {P("123"), P("213")})


def test_antichains_small(P):
    elems = [P("123"), P("213"), P("132"), P("321")]
    acs = antichains(elems)
    assert acs[0] == frozenset()
    assert frozenset({P("213"), P("132")}) in acs
    assert all(not (bruhat_leq(a, b) and a != b) for Y in acs for a in Y for b in Y)
    assert len(acs) == 6


def test_order_ideals_are_downward_closed():
    for iv in intervals(3):
        ideals = list(enumerate_order_ideals(iv))
        assert len({I.members for I in ideals}) == len(ideals)
        assert all(I.is_downward_closed() and len(I) > 0 for I in ideals)


def test_diamond_closed_examples(P, s3):
    iv, I = s3
    assert is_diamond_closed(OrderIdeal(iv, iv.elements))
    assert is_diamond_closed(I)
    bad = OrderIdeal(iv, {P("123"), P("213"), P("132")})
    ok, witness = is_diamond_closed(bad, witness=True)
    assert not ok and witness is not None


def test_cluster_examples(P, s3):
    iv, I = s3
    cl = compute_cluster(I, P("123"))
    assert cl.ok and cl.yset == frozenset({P("132"), P("321")})
    assert cl.theta[frozenset()] == P("123")
    assert cl.theta[frozenset({P("321")})] == P("321")
    assert theta_extended(cl, [P("132"), P("321")]) == P("321")
    assert lambda_ideal(cl, []) == frozenset()
    with pytest.raises(ValueError):
        compute_cluster(I, P("321"))


def test_hd_examples(P, s3):
    iv, I = s3
    assert is_hypercube_decomposition(I).ok
    whole = OrderIdeal(iv, iv.elements)
    rep = is_hypercube_decomposition(whole)
    assert rep.hd1 and rep.hd2 and rep.hd3
    e6 = identity(6)
    big = build_interval(e6, P("361245"))
    assert is_hypercube_decomposition(principal_ideal(big, P("214356"))).ok


def test_enumerate_hcds_examples(P):
    tops = {I.top for I in enumerate_hcds(build_interval(P("123"), P("321")))}
    assert {P("213"), P("321")} <= tops
    w = P("2413")
    assert [I.top for I in enumerate_hcds(build_interval(w, w))] == [w]
    u, v = P("1324"), P("3124")
    assert {I.top for I in enumerate_hcds(build_interval(u, v))} == {u, v}


def test_hcds_round_trip_and_cube_shape_s4():
    for iv in intervals(4):
        hcds = enumerate_hcds(iv)
        assert any(I.top == iv.v for I in hcds)
        for I in hcds:
            assert is_hypercube_decomposition(I).ok
            for x in I.members:
                cl = compute_cluster(I, x)
                assert cl.ok
                for Y in cl.antichains:
                    top = cl.theta[Y]
                    assert top.length - x.length >= len(Y)
                    verts = {theta_extended(cl, S) for r in range(len(Y) + 1) for S in combinations(Y, r)}
                    assert len(verts) == 2 ** len(Y)


def test_strong_and_nc_lower_s4():
    for iv in intervals(4, lower=True):
        for I in enumerate_hcds(iv):
            cl = compute_cluster(I, iv.u)
            assert is_strong_cluster(cl)[0]
            assert numerical_criterion(cl)[0]


def test_strongness_vacuous_for_small_ysets():
    for iv in intervals(4):
        for I in enumerate_hcds(iv):
            for x in I.members:
                cl = compute_cluster(I, x)
                if len(cl.yset) <= 1:
                    assert is_strong_cluster(cl)[0]
                for Y in cl.antichains:
                    if len(Y) == 1:
                        (y,) = Y
                        assert (y.length - x.length + 1) == 2 * len(lambda_ideal(cl, Y))


def test_is_simple_matches_rank_oracle():
    for iv in intervals(4):
        roots = []
        for i, j in cover_roots(iv):
            vec = [0] * iv.n
            vec[i - 1], vec[j - 1] = 1, -1
            roots.append(vec)
        assert is_simple(iv) == (rank(roots) == len(roots))
        if iv.u.is_identity() or iv.length == 1:
            assert is_simple(iv)


def test_property_E_example(P, s3):
    iv, I = s3
    res = has_property_E(I, P("123"), method="search")
    assert res.value is True
    assert res.order.less((1, 2), (1, 3)) and res.order.less((1, 2), (2, 3))
    inside, exits = edge_label_classes(I, P("123"))
    assert inside == {(1, 2)} and exits == {(1, 3), (2, 3)}


def test_property_E_overlap_is_false():
    found = 0
    for iv in intervals(4):
        for I in enumerate_order_ideals(iv):
            for x in sorted(I.members)[:1]:
                inside, exits = edge_label_classes(I, x)
                if inside & exits:
                    res = has_property_E(I, x)
                    assert res.value is False
                    found += 1
    assert found > 0


def test_property_E_shortcut_agrees_with_search_s4():
    for iv in intervals(4):
        for I in enumerate_hcds(iv):
            for x in I.members:
                auto = has_property_E(I, x)
                assert auto.value is not None
                if auto.method == "simple":
                    assert has_property_E(I, x, method="search").value is True


def test_property_E_guard(P):
    e = identity(MAX_E_SEARCH_N + 1)
    v = Permutation(tuple(range(MAX_E_SEARCH_N + 1, 0, -1)))
    iv = build_interval(e, v)
    I = principal_ideal(iv, Permutation.parse("213456"))
    res = has_property_E(I, e, method="search")
    assert res.value is None and res.label == "unknown"
    assert has_property_E(I, e).value is True  # simple shortcut still applies


def test_lower_hcds_have_E_s5():
    for iv in intervals(5, lower=True):
        for I in enumerate_hcds(iv):
            res = has_property_E(I, iv.u)
            assert res.value is True and res.method in ("simple", "vacuous")


def test_diamond_closed_lower_ideals_are_parabolic_s4():
    for iv in intervals(4, lower=True):
        atoms = {w.reduced_word()[0] for w in iv.elements if w.length == 1}
        for I in enumerate_order_ideals(iv):
            if not is_diamond_closed(I):
                continue
            J = {w.reduced_word()[0] for w in I.members if w.length == 1}
            assert J <= atoms
            assert I.is_principal()
            assert I.members == frozenset(w for w in iv.elements if in_parabolic(w, J))
