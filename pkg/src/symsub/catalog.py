"""Built-in iota-root data.

Every entry is stored in the same JSON-shaped form the CLI accepts, so
``catalog --export`` and ``validate`` round-trip.
"""
from __future__ import annotations

import json
from functools import lru_cache

from .rootdata import CartanDatum, RootDatum, ValidationError, cartan_type
from .satake import IRootDatum, Param, SatakeDiagram, build_theta


def _sc(kind, rank):
    cd = cartan_type(kind, rank)
    n = cd.rank
    roots = [[cd.cartan(i, j) for i in range(n)] for j in range(n)]
    coroots = [[int(k == i) for k in range(n)] for i in range(n)]
    return cd, roots, coroots, [[int(a == b) for b in range(n)] for a in range(n)]


def _entry(name, cd, rankX, roots, coroots, pairing, black, tau, thetaX=None, note=""):
    d = {
        "name": name,
        "cartan": {"nodes": list(cd.nodes), "form": [list(r) for r in cd.form]},
        "rankX": rankX,
        "roots": [list(r) for r in roots],
        "coroots": [list(r) for r in coroots],
        "pairing": [list(r) for r in pairing],
        "black": list(black),
        "tau": list(tau),
    }
    if thetaX is not None:
        d["thetaX"] = [list(r) for r in thetaX]
    if note:
        d["note"] = note
    return d


def _raw_entries():
    out = []
    cd, r, c, p = _sc("A", 1)
    out.append(_entry("SL2-split", cd, 1, r, c, p, [], [1], note="AI_1"))
    out.append(_entry("PGL2-split", cd, 1, [[1]], [[2]], [[1]], [], [1]))
    out.append(_entry("SL2-compact", cd, 1, r, c, p, [1], [1], note="all nodes black"))
    out.append(_entry("GL2-split", cd, 2, [[1, -1]], [[1, -1]], [[1, 0], [0, 1]], [], [1],
                      thetaX=[[-1, 0], [0, -1]], note="reductive; theta supplied"))
    cd, r, c, p = _sc("A1xA1", 2)
    out.append(_entry("SL2xSL2-swap", cd, 2, r, c, p, [], [2, 1], note="tau swaps the factors"))
    cd, r, c, p = _sc("A", 2)
    out.append(_entry("A2-split", cd, 2, r, c, p, [], [1, 2], note="SL3, AI_2"))
    out.append(_entry("A2-quasi-split", cd, 2, r, c, p, [], [2, 1], note="SL3, tau = diagram flip"))
    cd, r, c, p = _sc("C", 2)
    out.append(_entry("Sp4-split", cd, 2, r, c, p, [], [1, 2], note="CI_2; node 1 short"))
    out.append(_entry("Sp4-CII", cd, 2, r, c, p, [1], [1, 2], note="CII with the short node black"))
    cd, r, c, p = _sc("A", 3)
    out.append(_entry("SL4-AIII", cd, 3, r, c, p, [2], [3, 2, 1],
                      note="middle node black, tau = flip"))
    return out


ALIASES = {
    "SL2": "SL2-split",
    "A1": "SL2-split",
    "PGL2": "PGL2-split",
    "A1xA1": "SL2xSL2-swap",
    "SL2xSL2": "SL2xSL2-swap",
    "A2": "A2-split",
    "SL3-split": "A2-split",
    "SL3": "A2-split",
    "A2-quasisplit": "A2-quasi-split",
    "SL3-quasi-split": "A2-quasi-split",
    "B2": "Sp4-split",
    "C2": "Sp4-split",
    "Sp4": "Sp4-split",
    "A3": "SL4-AIII",
}


def entry_names():
    return [e["name"] for e in _raw_entries()]


def raw_entry(name: str) -> dict:
    name = ALIASES.get(name, name)
    for e in _raw_entries():
        if e["name"] == name:
            return e
    raise KeyError(name)


def parse_entry(d: dict) -> IRootDatum:
    """Build and validate an iota-root datum from the JSON-shaped dict."""
    for key in ("cartan", "rankX", "roots", "coroots", "pairing", "black", "tau"):
        if key not in d:
            raise ValidationError("missing field", key)
    cart = d["cartan"]
    if not isinstance(cart, dict) or "nodes" not in cart or "form" not in cart:
        raise ValidationError("cartan must have nodes and form", cart)
    nodes = tuple(cart["nodes"])
    cd = CartanDatum.from_matrix(nodes, cart["form"])
    name = d.get("name", "")
    rd = RootDatum.build(cd, d["rankX"], d["roots"], d["coroots"], d["pairing"], name)
    idx = {v: k for k, v in enumerate(nodes)}
    try:
        black = tuple(sorted(idx[b] for b in d["black"]))
        if len(d["tau"]) != len(nodes):
            raise ValidationError("tau must list one image per node", d["tau"])
        tau = tuple(idx[t] for t in d["tau"])
    except KeyError as exc:
        raise ValidationError("unknown node label", exc.args[0]) from None
    sd = SatakeDiagram(rd, black, tau)
    params = None
    if "varsigma" in d and d["varsigma"] is not None:
        params = {}
        for node, val in d["varsigma"].items():
            key = _node_key(node, nodes)
            if key not in idx:
                raise ValidationError("unknown node label in varsigma", node)
            if isinstance(val, int):
                params[idx[key]] = Param(val, 0)
            else:
                params[idx[key]] = Param(int(val[0]), int(val[1]) if len(val) > 1 else 0)
            if params[idx[key]].sign not in (1, -1):
                raise ValidationError("varsigma sign must be +1 or -1", val)
        for i in sd.white:
            params.setdefault(i, Param(1, 0))
    return build_theta(sd, d.get("thetaX"), params, name)


def _node_key(node, nodes):
    if node in nodes:
        return node
    for n in nodes:
        if str(n) == str(node):
            return n
    return node


@lru_cache(maxsize=None)
def _cached(name: str) -> IRootDatum:
    return parse_entry(raw_entry(name))


def get(name: str, sign=None) -> IRootDatum:
    """Catalog entry by name or alias; ``sign`` overrides every white sign."""
    ird = _cached(ALIASES.get(name, name))
    if sign is None:
        return ird
    params = {i: Param(sign, p.exponent) for i, p in ird.params.items()}
    return ird.with_params(params)


def catalog():
    return [get(n) for n in entry_names()]


def export_json(name: str) -> str:
    return json.dumps(raw_entry(name), indent=2, sort_keys=True)
