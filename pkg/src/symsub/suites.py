"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a list of check dicts ``{"name", "status", "details"}``
with status "pass", "fail" or "vacuous".  Negative controls pass when the
deliberately broken input is rejected.
"""
from __future__ import annotations

import json
import random

from . import catalog
from .iqg import bad_params, igrading_check, validate_params, wrong_theta
from .linalg import int_det
from .qone import (fixed_lie_algebra, fixes_igens, sbar_checks, theta_A, theta_prime_square_check,
                   verify_involution)
from .rootdata import CartanDatum, RootDatum, ValidationError
from .satake import DEFAULT_AXIOMS
from .uq.algebra import E, F, K, Ki, braid_T, gen
from .uq.battery import (TImage, check_relations, corrupt, default_battery, eq_mod_battery,
                         specialized_battery)

SUITES = ("serre", "braid", "involution", "igens", "lie")

AXIOM_NAMES = {
    "axiom_involution": "tau is an involution of I preserving i.j and I_black",
    "axiom_black_longest": "w_black(alpha_j) = -alpha_{tau j} for j in I_black",
    "axiom_araki": "<rho_black^vee, alpha_j> is an integer for white tau-fixed j",
}


def check(name, ok, details=None, vacuous=False):
    status = "vacuous" if vacuous else ("pass" if ok else "fail")
    return {"name": name, "status": status, "details": details or {}}


def battery_info(bat):
    d = dict(bat.description)
    return {"depth": d.get("depth"), "ring": d.get("ring"), "modules": len(bat),
            "dim_bound": d.get("dim_bound")}


# -- input validation

class InputError(Exception):
    """Malformed input (exit code 2)."""


def _int_matrix(v, name):
    if not isinstance(v, list) or not all(isinstance(r, list) and all(isinstance(x, int) and not isinstance(x, bool)
                                                                     for x in r) for r in v):
        raise InputError(f"{name} must be an array of integer arrays")


def validate_document(d) -> list:
    """Staged validation: returns checks; raises InputError on malformed input."""
    if not isinstance(d, dict):
        raise InputError("top level must be an object")
    for key in ("cartan", "rankX", "roots", "coroots", "pairing", "black", "tau"):
        if key not in d:
            raise InputError(f"missing field {key!r}")
    cart = d["cartan"]
    if not isinstance(cart, dict) or "nodes" not in cart or "form" not in cart:
        raise InputError("cartan must have nodes and form")
    _int_matrix(cart["form"], "cartan.form")
    for key in ("roots", "coroots", "pairing"):
        _int_matrix(d[key], key)
    if "thetaX" in d and d["thetaX"] is not None:
        _int_matrix(d["thetaX"], "thetaX")
    if not isinstance(d["rankX"], int) or d["rankX"] < 0:
        raise InputError("rankX must be a nonnegative integer")
    if not isinstance(d["black"], list) or not isinstance(d["tau"], list):
        raise InputError("black and tau must be arrays")
    nodes = cart["nodes"]
    if not isinstance(nodes, list):
        raise InputError("cartan.nodes must be an array")
    try:
        idx = {v: k for k, v in enumerate(nodes)}
    except TypeError:
        raise InputError("node labels must be scalars") from None
    for lbl in list(d["black"]) + list(d["tau"]):
        if lbl not in idx:
            raise InputError(f"unknown node label {lbl!r}")
    if len(d["tau"]) != len(nodes):
        raise InputError("tau must list one image per node")
    if "varsigma" in d and d["varsigma"] is not None and not isinstance(d["varsigma"], dict):
        raise InputError("varsigma must be an object")

    out = []

    def stage(name, fn):
        try:
            val = fn()
        except ValidationError as exc:
            out.append(check(name, False, {"condition": exc.condition, "witness": _jsonable(exc.witness)}))
            return None
        out.append(check(name, True))
        return val

    cd = stage("Cartan datum: symmetric, finite type, integral", lambda: CartanDatum.from_matrix(nodes, cart["form"]))
    if cd is None:
        return out
    rd = stage("root datum: <alpha_i^vee, alpha_j> = 2 i.j / i.i, perfect pairing",
               lambda: RootDatum.build(cd, d["rankX"], d["roots"], d["coroots"], d["pairing"], d.get("name", "")))
    if rd is None:
        return out
    black = tuple(sorted(idx[b] for b in d["black"]))
    tau = tuple(idx[t] for t in d["tau"])
    failed = False
    for ax in DEFAULT_AXIOMS:
        msg = None
        if not failed:
            msg = ax(rd, black, tau)
        name = "Satake axiom: " + AXIOM_NAMES[ax.__name__]
        if failed:
            out.append(check(name, False, {"skipped": True}))
        else:
            out.append(check(name, msg is None, {"message": msg} if msg else None))
        failed = failed or msg is not None
    if failed:
        return out
    ird = stage("iota-root datum: theta^2 = 1, theta(alpha_i) = -w_black alpha_{tau i}, no odd torsion in X_iota",
                lambda: catalog.parse_entry(dict(d, varsigma=None)))
    if ird is None:
        return out
    try:
        full = catalog.parse_entry(d)
        rep = validate_params(full)
    except ValidationError as exc:
        out.append(check("parameters", False, {"condition": exc.condition, "witness": _jsonable(exc.witness)}))
        return out
    out.append(check("parameters: sign constraints", rep["ok"], rep))
    return out


def _jsonable(x):
    try:
        json.dumps(x)
        return x
    except TypeError:
        return repr(x)


# -- suites

def suite_serre(ird, depth=2):
    rd = ird.datum
    bat = default_battery(rd, depth)
    res = check_relations(bat)
    fams = {}
    for r in res:
        f = fams.setdefault(r.family, {"modules": 0, "failures": []})
        f["modules"] += 1
        if not r.ok:
            f["failures"].append({"module": r.module, "detail": r.detail})
    out = [check(f"relation {name}", not v["failures"], v) for name, v in sorted(fams.items())]
    # negative controls: a mutated relation and a corrupted module
    wrong = None
    for M in bat:
        for i in range(rd.n):
            comm = M.E(i) @ M.F(i) - M.F(i) @ M.E(i)
            if comm != M.kdiag(tuple(rd.cartan.eps(i) * x for x in rd.coroots[i])):
                wrong = M.name
                break
        if wrong:
            break
    out.append(check("negative control: E_iF_i - F_iE_i = K_i is rejected", wrong is not None,
                     {"module": wrong}))
    target = max(bat.simples(), key=lambda M: M.dim)
    bad = check_relations(type(bat)(rd, [corrupt(target)], {}), families=("EF", "serre"))
    out.append(check("negative control: corrupted E-matrix is rejected", not all(r.ok for r in bad),
                     {"module": f"corrupt({target.name})"}))
    return out, {"quantum": battery_info(bat)}


def _reduced_words_longest(rd):
    words = rd.reduced_words(rd.longest_element())
    return words[0], words[-1]


def suite_braid(ird, depth=2):
    rd = ird.datum
    out = []
    # structural identities
    struct = True
    for i in range(rd.n):
        if braid_T(gen(rd, E(i)), i) != gen(rd, F(i), Ki(rd, i), coeff=-1):
            struct = False
        if braid_T(gen(rd, F(i)), i) != gen(rd, Ki(rd, i, -1), E(i), coeff=-1):
            struct = False
        for a in range(rd.rankX):
            mu = tuple(int(a == b) for b in range(rd.rankX))
            if braid_T(gen(rd, K(mu)), i) != gen(rd, K(rd.reflect_Y(i, mu))):
                struct = False
    out.append(check("T_i(E_i) = -F_iK_i, T_i(F_i) = -K_i^-1E_i, T_i(K_mu) = K_{s_i mu}", struct))
    bat = default_battery(rd, depth)
    gens = [gen(rd, E(k)) for k in range(rd.n)] + [gen(rd, F(k)) for k in range(rd.n)]
    gens += [gen(rd, K(tuple(int(a == b) for b in range(rd.rankX)))) for a in range(rd.rankX)]
    rel_ok = True
    witness = None
    for i in range(rd.n):
        for j in range(i + 1, rd.n):
            m = rd.cartan.braid_order(i, j)
            w1 = tuple((i, j) * m)[:m]
            w2 = tuple((j, i) * m)[:m]
            for g in gens:
                ok, wit = eq_mod_battery(TImage(w1, g), TImage(w2, g), bat)
                if not ok:
                    rel_ok = False
                    witness = {"pair": [rd.nodes[i], rd.nodes[j]], "generator": str(g), **wit}
                    break
    out.append(check("braid relations T_iT_j... = T_jT_i... on generators", rel_ok, witness,
                     vacuous=rd.n < 2))
    w1, w2 = _reduced_words_longest(rd)
    ok_w = True
    wit = None
    if w1 != w2:
        wbat = bat if rd.n <= 2 else default_battery(rd, 1)
        for g in gens:
            ok, wit = eq_mod_battery(TImage(w1, g), TImage(w2, g), wbat)
            if not ok:
                ok_w = False
                break
    out.append(check("T_{w_0} independent of the reduced word", ok_w,
                     {"words": [list(w1), list(w2)], "witness": wit}, vacuous=w1 == w2))
    sq = theta_prime_square_check(ird)
    out.append(check("T_{w_black}^2 = Xi((-1)^<2 rho_black^vee, .>) at q = 1", sq["ok"], sq, vacuous=sq["vacuous"]))
    sb = sbar_checks(rd)
    out.append(check("T_i(u) = s_i u s_i^-1 and y_i(-1)x_i(1)y_i(-1) = s_i at q = 1", sb["ok"], sb))
    return out, {"quantum": battery_info(bat), "q=1": battery_info(specialized_battery(rd, 2))}


def _random_word(rd, rng, length=3):
    syms = []
    for _ in range(length):
        kind = rng.choice("EF1")
        if kind == "1":
            lam = tuple(rng.randint(-2, 2) for _ in range(rd.rankX))
            syms.append(("1", lam))
        else:
            syms.append((kind, rng.randrange(rd.n), rng.randint(1, 2)))
    return gen(rd, *syms)


def suite_involution(ird, depth=2, eps_black=-1, seed=0, pairs=20):
    rd = ird.datum
    out = []
    rep = verify_involution(ird, depth=depth, eps_black=eps_black)
    name = "theta_A^2 = id on window generators at q = 1"
    if eps_black != -1:
        name += f" (eps on black nodes = {eps_black:+d})"
    out.append(check(name, rep["ok"], rep))
    if eps_black == -1 and ird.black:
        neg = verify_involution(ird, depth=depth, eps_black=1)
        out.append(check("negative control: eps = +1 on black nodes", not neg["ok"],
                         {"witness": neg["witness"]} if not neg["ok"] else
                         {"note": "theta_A^2 is insensitive to eps on the black nodes for this entry"},
                         vacuous=neg["ok"]))
    bat = specialized_battery(rd, depth)
    rng = random.Random(seed)
    bad = None
    for _ in range(pairs):
        x = _random_word(rd, rng)
        y = _random_word(rd, rng)
        ok, wit = eq_mod_battery(theta_A(ird, x * y, eps_black).at_one(),
                                 (theta_A(ird, x, eps_black) * theta_A(ird, y, eps_black)).at_one(), bat)
        if not ok:
            bad = {"x": str(x), "y": str(y), **wit}
            break
    out.append(check(f"theta_A(xy) = theta_A(x) theta_A(y) on {pairs} random word pairs", bad is None,
                     {"seed": seed, "witness": bad}))
    return out, {"q=1": battery_info(bat)}


def suite_igens(ird, depth=2):
    rd = ird.datum
    out = []
    vp = validate_params(ird)
    out.append(check("parameter constraints", vp["ok"], vp))
    bp = bad_params(ird)
    if bp is not None:
        rej = not validate_params(ird, bp)["ok"]
        out.append(check("negative control: flipped sign on a tau-orbit is rejected", rej,
                         {"params": {str(rd.nodes[i]): [p.sign, p.exponent] for i, p in sorted(bp.items())}}))
    else:
        out.append(check("negative control: flipped sign is rejected", True,
                         {"note": "every sign choice satisfies the constraints"}, vacuous=True))
    bat = default_battery(rd, depth)
    gr = igrading_check(ird, bat)
    out.append(check("iota-generators respect the X_iota grading", gr["ok"], gr))
    if ird.white:
        wr = igrading_check(wrong_theta(ird), bat)
        out.append(check("negative control: grading check with theta = id fails", not wr["ok"],
                         {"witness": next((c["witness"] for c in wr["checks"] if c["witness"]), None)}))
    fx = fixes_igens(ird, depth=depth)
    out.append(check("theta_A fixes every iota-generator at q = 1", fx["ok"], fx))
    return out, {"quantum": battery_info(bat), "q=1": battery_info(specialized_battery(rd, depth))}


def suite_lie(ird, depth=None):
    from .qone import lie_battery
    bat = lie_battery(ird.datum, depth)
    rep = fixed_lie_algebra(ird, bat)
    out = [
        check("g realised faithfully", rep["dim_g"] == rep["expected_dim_g"],
              {"dim_g": rep["dim_g"], "expected": rep["expected_dim_g"]}),
        check("k by generator closure equals the theta-fixed subspace",
              rep["closure_inside_eigenspace"] and rep["dim_k_closure"] == rep["dim_k_eigenspace"], rep),
        check("dim k + dim(-1 eigenspace) = dim g",
              rep["dim_k_eigenspace"] + rep["dim_minus_eigenspace"] == rep["dim_g"]),
        check("k closed under bracket", rep["k_closed_under_bracket"]),
    ]
    return out, {"lie": battery_info(bat)}


def run_suite(name, ird, depth=2, eps_black=-1, seed=0):
    if name == "serre":
        return suite_serre(ird, depth)
    if name == "braid":
        return suite_braid(ird, depth)
    if name == "involution":
        return suite_involution(ird, depth, eps_black, seed)
    if name == "igens":
        return suite_igens(ird, depth)
    if name == "lie":
        return suite_lie(ird)
    raise KeyError(name)


# -- X_iota report

def xlattice_report(ird) -> dict:
    rd = ird.datum
    xl = ird.xlattice
    ybasis = [list(v) for v in ird.ylattice_fixed]
    gens = []
    for k, m in enumerate(xl.moduli):
        cls = [0] * len(xl.moduli)
        cls[k] = 1
        gens.append(cls)
    pairing = [[ird.ipairing(mu, cls) for cls in gens] for mu in ybasis]
    free_cols = [k for k, m in enumerate(xl.moduli) if m == 0]
    perfect = (not xl.torsion and len(ybasis) == len(free_cols)
               and (not ybasis or abs(int_det([[row[k] for k in free_cols] for row in pairing])) == 1))
    identity_theta = all(ird.thetaX[a][b] == int(a == b) for a in range(rd.rankX) for b in range(rd.rankX))
    return {
        "X_iota": xl.invariants(),
        "free_rank": xl.free_rank,
        "torsion": xl.torsion,
        "X_iota_equals_X": identity_theta,
        "Y_iota_basis": ybasis,
        "generators": [{"modulus": m, "lift": list(xl.lift(g))} for m, g in zip(xl.moduli, gens)],
        "pairing_matrix": pairing,
        "perfect": perfect,
        "splitting_after_inverting_2": xl.splitting_check(ird.thetaX),
    }
