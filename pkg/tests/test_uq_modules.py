import pytest

from symsub import catalog
from symsub.exactq import LaurentPoly, qint
from symsub.linalg import SMat, kron
from symsub.rootdata import cartan_type, simply_connected
from symsub.uq.battery import Battery, battery_highest_weights, check_relations, corrupt, default_battery
from symsub.uq.modules import build_simple, generate_submodule, specialize, tensor, twist

q = LaurentPoly.q()


def rd_of(kind, rank):
    return simply_connected(cartan_type(kind, rank))


def test_sl2_two_dimensional():
    rd = rd_of("A", 1)
    M = build_simple(rd, (1,))
    assert M.weights == [(1,), (-1,)]
    assert M.E(0).to_dense() == [[0, 1], [0, 0]]
    assert M.F(0).to_dense() == [[0, 0], [1, 0]]
    assert M.kdiag((1,)).to_dense(0) == [[q, 0], [0, q ** -1]]


def test_sl2_three_dimensional_divided_powers():
    rd = rd_of("A", 1)
    M = build_simple(rd, (2,))
    assert M.dim == 3
    # E^2 = [2] E^(2), and E^(2) is integral
    assert M.E(0) @ M.E(0) == M.E(0, 2).scale(qint(2))
    assert M.integral
    assert M.E(0, 3).is_zero()


def test_a2_fundamental_weights():
    rd = rd_of("A", 2)
    M = build_simple(rd, (1, 0))
    assert sorted(M.weights) == sorted([(1, 0), (-1, 1), (0, -1)])


@pytest.mark.parametrize("kind,rank", [("A", 1), ("A", 2), ("C", 2), ("A", 3)])
def test_dimensions_match_weyl(kind, rank):
    rd = rd_of(kind, rank)
    depth = 2 if rank < 3 else 1
    for lam in battery_highest_weights(rd, depth):
        M = build_simple(rd, lam)
        assert M.dim == rd.weyl_dimension(lam), lam


@pytest.mark.parametrize("kind,rank", [("A", 1), ("A", 2), ("C", 2)])
def test_weight_multiset_is_w_invariant(kind, rank):
    rd = rd_of(kind, rank)
    for lam in battery_highest_weights(rd, 2):
        M = build_simple(rd, lam)
        ws = M.weight_multiset()
        for i in range(rd.n):
            assert sorted(rd.reflect_X(i, w) for w in ws) == ws


def test_twist_and_tensor():
    rd = rd_of("A", 1)
    M = build_simple(rd, (1,))
    T = twist(M)
    assert T.weights == [(-1,), (1,)]
    assert T.E(0) == M.F(0)
    P = tensor(M, M)
    assert P.dim == 4
    want = kron(M.E(0), SMat.identity(2, M.ring.one)) + kron(M.kdiag((1,)), M.E(0))
    assert P.E(0) == want
    for r in check_relations(default_battery(rd, 1)):
        assert r.ok, r


def test_tensor_decomposes():
    rd = rd_of("A", 1)
    P = specialize(tensor(build_simple(rd, (1,)), build_simple(rd, (1,))))
    top = generate_submodule(P, {0: 1})
    assert len(top) == 3
    # the weight-zero vector killed by E spans the trivial summand
    low = generate_submodule(P, {1: 1, 2: -1})
    assert len(low) == 1


@pytest.mark.parametrize("name", ["SL2-split", "SL2xSL2-swap", "A2-split", "Sp4-split"])
def test_relations_on_battery(name):
    rd = catalog.get(name).datum
    bat = default_battery(rd, 1)
    for r in check_relations(bat):
        assert r.ok, (r.family, r.module, r.detail)


def test_corrupted_module_fails():
    rd = rd_of("A", 2)
    M = build_simple(rd, (1, 0))
    bad = check_relations(Battery(rd, [corrupt(M)]))
    assert not all(r.ok for r in bad)


def test_specialize_keeps_integral_entries():
    rd = rd_of("C", 2)
    M = build_simple(rd, (0, 1))
    S = specialize(M)
    for i in range(rd.n):
        for row in S.E(i).to_dense():
            assert all(isinstance(x, int) for x in row)
