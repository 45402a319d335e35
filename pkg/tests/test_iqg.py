from itertools import product

import pytest

from symsub import catalog
from symsub.iqg import (PARAM_NOTE, bad_params, bgen, igens, igrading_check, sign_constraints,
                        validate_params, wrong_theta)
from symsub.rootdata import ValidationError
from symsub.satake import Param
from symsub.uq.algebra import E, F, Ki, gen
from symsub.uq.battery import default_battery

# Required products sbar_i * sbar_j, worked out by hand from the diagrams:
# only tau-orbits of size two and odd black heights constrain anything.
ORACLE = {
    "SL2-split": [],
    "PGL2-split": [],
    "SL2-compact": [],
    "GL2-split": [],
    "SL2xSL2-swap": [(0, 1, 1)],
    "A2-split": [],
    "A2-quasi-split": [(0, 1, 1)],
    "Sp4-split": [],
    "Sp4-CII": [],
    "SL4-AIII": [(0, 2, -1)],
}


@pytest.mark.parametrize("name", sorted(ORACLE))
def test_every_sign_assignment(name):
    ird = catalog.get(name)
    white = ird.white
    for signs in product((1, -1), repeat=len(white)):
        s = dict(zip(white, signs))
        want = all(s[i] * s[j] == p for i, j, p in ORACLE[name])
        got = validate_params(ird, {i: Param(v) for i, v in s.items()})
        assert got["ok"] == want, (name, s, got["checks"])


def test_validate_params_reports_node():
    ird = catalog.get("SL2xSL2-swap")
    rep = validate_params(ird, {0: Param(1), 1: Param(-1)})
    assert not rep["ok"]
    failing = [c for c in rep["checks"] if c["status"] == "fail"]
    assert {c["node"] for c in failing} == {1, 2}
    assert rep["note"] == PARAM_NOTE


def test_black_parameter_rejected():
    ird = catalog.get("Sp4-CII")
    rep = validate_params(ird, {0: Param(1), 1: Param(1)})
    assert not rep["ok"]


def test_bad_params_exist_exactly_when_constrained():
    for name in ORACLE:
        ird = catalog.get(name)
        bp = bad_params(ird)
        if ORACLE[name]:
            assert bp is not None and not validate_params(ird, bp)["ok"]
        else:
            assert bp is None


def test_vacuous_flags():
    rows = sign_constraints(catalog.get("SL2-split"))
    prod = [r for r in rows if "rho" in r["constraint"]]
    assert prod and all(r["vacuous_for_all_signs"] for r in prod)


def test_bgen_sl2():
    ird = catalog.get("SL2-split")
    rd = ird.datum
    want = gen(rd, F(0)) + gen(rd, E(0), Ki(rd, 0, -1))
    assert bgen(ird, 0) == want
    with pytest.raises(ValidationError):
        bgen(catalog.get("SL2-compact"), 0)
    with pytest.raises(ValidationError):
        bgen(ird, 5)


def test_bgen_uses_parameter():
    ird = catalog.get("SL2-split").with_params({0: Param(-1, 1)})
    rd = ird.datum
    b = bgen(ird, 0)
    q = __import__("symsub").exactq.LaurentPoly.q()
    assert b == gen(rd, F(0)) + gen(rd, E(0), Ki(rd, 0, -1), coeff=-q)


def test_generator_sets():
    gs = igens(catalog.get("SL4-AIII"))
    labels = [lab for lab, _, _ in gs.items()]
    assert labels[:2] == ["B0", "B2"]
    assert sum(1 for lab in labels if lab.startswith("K")) == 2
    assert labels[-2:] == ["E1", "F1"]


@pytest.mark.parametrize("name", ["SL2-split", "SL2xSL2-swap", "A2-quasi-split", "Sp4-CII"])
def test_igrading(name):
    ird = catalog.get(name)
    bat = default_battery(ird.datum, 1)
    assert igrading_check(ird, bat)["ok"]
    assert not igrading_check(wrong_theta(ird), bat)["ok"]
