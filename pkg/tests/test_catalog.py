import json

import jsonschema
import pytest

from symsub import catalog
from symsub.report import load_schema

NAMES = catalog.entry_names()


def test_expected_entries():
    for n in ("SL2-split", "SL2-compact", "GL2-split", "SL2xSL2-swap", "A2-split", "A2-quasi-split",
              "Sp4-split", "Sp4-CII", "SL4-AIII"):
        assert n in NAMES
    assert catalog.get("A2") is catalog.get("A2-split")
    with pytest.raises(KeyError):
        catalog.raw_entry("E8")


@pytest.mark.parametrize("name", NAMES)
def test_export_roundtrip(name):
    doc = json.loads(catalog.export_json(name))
    jsonschema.validate(doc, load_schema("input.schema.json"))
    a = catalog.parse_entry(doc)
    b = catalog.get(name)
    assert a.thetaX == b.thetaX
    assert a.satake.black == b.satake.black and a.satake.tau == b.satake.tau
    assert a.params == b.params


def test_sign_override():
    ird = catalog.get("SL2-split", sign=-1)
    assert ird.sbar(0) == -1
    assert catalog.get("SL2-split").sbar(0) == 1


def test_varsigma_field():
    doc = json.loads(catalog.export_json("SL4-AIII"))
    doc["varsigma"] = {"1": [-1, 0], "3": 1}
    ird = catalog.parse_entry(doc)
    assert (ird.sbar(0), ird.sbar(2)) == (-1, 1)
