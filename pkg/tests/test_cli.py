import io
import json
import subprocess
import sys

import jsonschema
import pytest

from symsub import catalog
from symsub.cli import main
from symsub.report import load_schema


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def entry(name="A2-split"):
    return json.loads(catalog.export_json(name))


def test_validate_good(tmp_path):
    code, text = run("validate", write(tmp_path, "a.json", entry()))
    assert code == 0 and "PASS" in text


def test_malformed_json_is_input_error(tmp_path, capsys):
    code, _ = run("validate", write(tmp_path, "bad.json", '{"name": '))
    assert code == 2
    assert "bad.json:1:" in capsys.readouterr().err


def test_missing_field_is_input_error(tmp_path):
    d = entry()
    del d["roots"]
    assert run("validate", write(tmp_path, "m.json", d))[0] == 2


def test_missing_file_is_input_error(tmp_path):
    assert run("validate", str(tmp_path / "nope.json"))[0] == 2


def test_non_symmetric_form_fails(tmp_path):
    d = entry()
    d["cartan"]["form"] = [[2, -1], [0, 2]]
    code, text = run("validate", write(tmp_path, "n.json", d), "--format", "json")
    assert code == 1
    rep = json.loads(text)
    assert rep["status"] == "fail"
    assert rep["checks"][0]["status"] == "fail"


def test_araki_failure_names_axiom(tmp_path):
    d = entry()
    d["black"], d["tau"] = [1], [1, 2]
    code, text = run("validate", write(tmp_path, "s.json", d))
    assert code == 1 and "[fail] Satake axiom" in text


def test_bad_sign_in_file_fails(tmp_path):
    d = entry("SL2xSL2-swap")
    d["varsigma"] = {"1": 1, "2": -1}
    code, text = run("validate", write(tmp_path, "p.json", d), "--format", "json")
    assert code == 1
    names = [c["name"] for c in json.loads(text)["checks"] if c["status"] == "fail"]
    assert any("parameters" in n for n in names)


def test_unknown_entry():
    assert run("verify", "serre", "E8-split")[0] == 2


def test_catalog_export_roundtrip(tmp_path):
    code, text = run("catalog", "--export", "Sp4-CII")
    assert code == 0
    code, _ = run("validate", write(tmp_path, "e.json", text))
    assert code == 0
    code, text = run("catalog", "--format", "json")
    assert {r["name"] for r in json.loads(text)} == set(catalog.entry_names())


def test_report_schema_and_determinism():
    schema = load_schema("report.schema.json")
    code, a = run("verify", "igens", "SL2xSL2-swap", "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(a), schema)
    _, b = run("verify", "igens", "SL2xSL2-swap", "--format", "json")
    assert a == b
    _, c = run("verify", "igens", "SL2xSL2-swap", "--format", "json", "--seed", "3")
    assert json.loads(c)["seed"] == 3


def test_xlattice_text():
    code, text = run("xlattice", "SL2-split")
    assert code == 0
    assert "X_iota = Z/2" in text and "Y^iota = 0" in text and "not perfect" in text


def test_sl2lab():
    code, text = run("sl2lab", "--primes", "3", "5")
    assert code == 0
    assert "   3         24         2      2  True" in text
    code, text = run("sl2lab", "--primes", "3", "--sign", "-1", "--format", "json")
    assert code == 0
    rep = json.loads(text)
    assert "informational" in rep["note"]


@pytest.mark.parametrize("bad", ["4", "17", "x"])
def test_sl2lab_rejects_primes(bad):
    with pytest.raises(SystemExit) as exc:
        run("sl2lab", "--primes", bad)
    assert exc.value.code == 2


def test_verify_sign_override_rejected_when_inadmissible():
    code, _ = run("verify", "igens", "A2-quasi-split", "--sign", "-1")
    assert code == 0  # flipping every sign keeps sbar_1 sbar_2 = 1
    code, _ = run("verify", "igens", "SL4-AIII", "--sign", "1")
    assert code == 1


def test_epsilon_black_flag():
    code, text = run("verify", "involution", "SL4-AIII", "--epsilon-black", "1", "--format", "json")
    assert code == 1
    assert json.loads(text)["status"] == "fail"


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "symsub", "xlattice", "A2-quasi-split"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "X_iota = Z" in out.stdout
