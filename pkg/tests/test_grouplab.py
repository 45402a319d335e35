import random

import pytest

from symsub import catalog
from symsub.grouplab import (PointInvolution, char2_nonreduced_witness, conic_count, enumerate_group,
                             fixed_points, identity_point, modular_battery, one_param, point_from_matrix,
                             sl2_table, tk_check, torus_parametrisation, torus_point)
from symsub.rootdata import ValidationError

SL2 = catalog.get("SL2-split")


def brute_conic(p):
    return len({(u, v) for u in range(p) for v in range(p) if (u * u - v * v) % p == 1})


def j_oracle(g, p):
    """theta(g) = J g^{-T} J with J = [[0, 1], [1, 0]]: ((a, b), (c, d)) -> ((d, c), (b, a))."""
    (a, b), (c, d) = g
    return ((d % p, c % p), (b % p, a % p))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_group_orders_and_conic(p):
    G = enumerate_group(p, SL2)
    assert len(G) == p * (p * p - 1)
    K = fixed_points(G, SL2)
    assert len(K) == conic_count(p) == brute_conic(p) == len(torus_parametrisation(p)) == p - 1


def test_torus_point_f3():
    bat = modular_battery(SL2, 3)
    t = torus_point(bat, 2)
    assert t.key == ((2, 0), (0, 2))  # diag(2, 2^-1) over F_3
    assert torus_point(bat, lambda lam: pow(2, lam[0], 3)) == t
    with pytest.raises(ValidationError):
        torus_point(bat, lambda lam: 2)
    with pytest.raises(ValidationError):
        torus_point(bat, 0)


def test_additivity_f7():
    bat = modular_battery(SL2, 7)
    rng = random.Random(7)
    for _ in range(20):
        a, b = rng.randrange(7), rng.randrange(7)
        for sign in "+-":
            assert one_param(bat, a, sign) * one_param(bat, b, sign) == one_param(bat, a + b, sign)


@pytest.mark.parametrize("p", [3, 5])
def test_theta_matches_j_oracle(p):
    G = enumerate_group(p, SL2)
    th = PointInvolution(SL2, G.battery)
    for g in G.elements:
        img = th(g)
        assert img.key == j_oracle(g.key, p)
        assert th(img) == g
        assert img.tensor_compatible()


def test_theta_is_a_homomorphism():
    G = enumerate_group(5, SL2)
    th = PointInvolution(SL2, G.battery)
    rng = random.Random(1)
    for _ in range(50):
        g, h = rng.choice(G.elements), rng.choice(G.elements)
        assert th(g * h) == th(g) * th(h)


def test_fixed_points_form_a_subgroup():
    K = fixed_points(enumerate_group(5, SL2), SL2)
    assert K.is_subgroup_exhaustive()
    assert identity_point(K.battery) in K


def test_points_are_tensor_compatible():
    G = enumerate_group(3, SL2)
    assert all(g.tensor_compatible() for g in G.elements)
    assert G.closure_sample(100)


def test_point_from_matrix_rejects():
    bat = modular_battery(SL2, 5)
    with pytest.raises(ValidationError):
        point_from_matrix(bat, ((1, 1), (1, 1)))


def test_bad_inputs():
    with pytest.raises(ValidationError):
        modular_battery(SL2, 4)
    with pytest.raises(ValidationError):
        modular_battery(SL2, 17)
    with pytest.raises(ValidationError):
        modular_battery(catalog.get("A2-split"), 3)


def test_char2_witness():
    w = char2_nonreduced_witness()
    assert w["ok"] and w["zero_mod_2"] and not w["zero_mod_3"]
    assert w["difference"] == {"u^0v^0": 2, "u^0v^1": 2, "u^0v^2": 2, "u^1v^0": 2, "u^1v^1": 2}


@pytest.mark.parametrize("p", [5, 7])
def test_tk_check(p):
    rep = tk_check(SL2, p)
    assert rep["ok"] and rep["split"]
    assert rep["fixed_points"] == rep["generated"] == p - 1
    assert rep["negative_control_excluded"]


def test_other_sign_is_informational():
    tab = sl2_table((3, 5, 7, 11), sign=-1)
    assert not tab["normative"]
    # p - (-1/p): the fixed points form a non-split torus when -1 is not a square
    assert [r["fixed_points"] for r in tab["rows"]] == [4, 4, 8, 12]
