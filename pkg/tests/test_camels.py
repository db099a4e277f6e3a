import pytest

from hkl.bruhat import build_interval
from hkl.camels import (
    BlockPartition,
    CaravanError,
    blocks_of_ideal,
    build_caravan,
    camels_and_crossings,
    lambda_via_camels,
    render_caravan,
    theta_length,
    theta_via_product,
    verify_lower_structure,
)
from hkl.hypercube import compute_cluster, enumerate_hcds, lambda_ideal, numerical_criterion, principal_ideal
from hkl.permutation import all_permutations, identity, longest_element, transposition

CAMEL_Y = [(1, 3), (2, 4), (4, 5), (5, 6)]


@pytest.fixture
def camel_example(P):
    v, z = P("361245"), P("214356")
    ideal = principal_ideal(build_interval(identity(6), v), z)
    return v, z, ideal, blocks_of_ideal(ideal)


def test_blocks(P, camel_example):
    *_, blocks = camel_example
    assert str(blocks) == "12 | 34 | 5 | 6"
    e = identity(4)
    iv = build_interval(e, longest_element(4))
    assert str(blocks_of_ideal(principal_ideal(iv, e))) == "1 | 2 | 3 | 4"
    assert str(blocks_of_ideal(principal_ideal(iv, iv.v))) == "1234"


def test_camel_example_caravan(camel_example):
    v, z, ideal, blocks = camel_example
    car = build_caravan(CAMEL_Y, blocks)
    camels, cross = camels_and_crossings(car)
    assert [sorted(c) for c in camels] == [[(1, 3)], [(2, 4), (4, 5), (5, 6)]]
    assert cross == 1
    assert lambda_via_camels(CAMEL_Y, blocks) == 5
    assert theta_length(CAMEL_Y, blocks) == 6
    theta = theta_via_product(CAMEL_Y, blocks, v)
    assert theta == v and theta.length == 6
    # direct route through the hypercube cluster
    cl = compute_cluster(ideal, identity(6))
    Y = frozenset(transposition(i, j, 6) for i, j in CAMEL_Y)
    assert Y in cl.theta
    assert cl.theta[Y] == theta
    assert len(lambda_ideal(cl, Y)) == 5
    assert (theta.length + len(Y)) == 2 * 5
    assert numerical_criterion(cl)[0]
    art = render_caravan(car)
    assert art.splitlines()[-1] == "[1 2] [3 4] [5] [6]"
    assert art.count("+") == 4


def test_caravan_edge_cases(camel_example):
    *_, blocks = camel_example
    empty = build_caravan([], blocks)
    assert camels_and_crossings(empty) == ([], 0)
    single = build_caravan([(2, 4)], blocks)
    camels, cross = camels_and_crossings(single)
    assert len(camels) == 1 and cross == 0
    apart = build_caravan([(2, 4), (5, 6)], blocks)
    assert camels_and_crossings(apart)[1] == 0
    with pytest.raises(CaravanError):
        build_caravan([(1, 2)], blocks)


def test_block_partition_helpers():
    bp = BlockPartition(((1, 2), (3,), (4, 5)))
    assert bp.n == 5 and bp.index(4) == 2 and bp.same_block(4, 5) and not bp.same_block(2, 3)


def test_lower_structure_example(P):
    rep = verify_lower_structure(P("361245"), P("214356"))
    assert rep.ok, rep.failures
    assert rep.antichains_checked > 0


@pytest.mark.parametrize("n", [4, 5])
def test_lower_structure_all_hcds(n):
    e = identity(n)
    for v in all_permutations(n):
        for I in enumerate_hcds(build_interval(e, v)):
            rep = verify_lower_structure(v, I.top, check_products=(n == 4))
            assert rep.ok, (v, I.top, rep.failures)
