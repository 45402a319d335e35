"""The specialisation q = 1: the involution theta_A, its verification on
module batteries, the elements s_i, and the Lie algebras g and k."""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import lcm

from .linalg import RowSpace, SMat, integer_kernel
from .satake import IRootDatum
from .uq.algebra import (AlgebraElement, E, F, braid_T, braid_T_word, gen, idem, omega,
                         tau_tilde, xi)
from .uq.battery import TImage, act, specialized_battery
from .uq.modules import specialize


# -- theta_A on algebra elements

def epsilon(ird: IRootDatum, eps_black: int = -1):
    """eps(i) = sbar_i on white nodes and eps_black (normally -1) on black ones."""
    return [eps_black if i in ird.black else ird.sbar(i) for i in range(ird.datum.n)]


def theta_A(ird: IRootDatum, x: AlgebraElement, eps_black: int = -1) -> AlgebraElement:
    """T_{w_black} o tau~ o omega o Xi(eps), applied symbol by symbol."""
    y = xi(x, epsilon(ird, eps_black))
    y = omega(y)
    y = tau_tilde(y, ird.tau, ird.tau_X, ird.tau_Y)
    return braid_T_word(y, ird.w_black.word)


def theta_weight(ird: IRootDatum, lam):
    """-w_black tau lam, the index of theta(1_lam)."""
    w = ird.w_black
    rd = ird.datum
    return tuple(-x for x in rd.act_X(w.word, ird.tau_X(lam)))


def window(rd, bound: int = 3):
    """Weights with |<alpha_i^vee, lam>| <= bound; coordinates are bounded
    by the same number so that data with a central torus stay finite."""
    out = []
    for lam in product(range(-bound, bound + 1), repeat=rd.rankX):
        if all(abs(c) <= bound for c in rd.pairings(lam)):
            out.append(lam)
    return out


def sign_table(ird: IRootDatum):
    """sbar_i sbar_{tau i} (-1)^<2 rho_black^vee, alpha_i> for white i (all must be 1)."""
    rd = ird.datum
    rows = []
    for i in ird.white:
        h = ird.two_rho_black_pairing(i)
        val = ird.sbar(i) * ird.sbar(ird.tau[i]) * (-1 if h % 2 else 1)
        rows.append({"node": rd.nodes[i], "sbar": ird.sbar(i), "sbar_tau": ird.sbar(ird.tau[i]),
                     "two_rho_black_pairing": h, "product": val})
    return rows


def _module_weights(battery):
    ws = set()
    for M in battery:
        ws.update(M.weight_index())
    return ws


def window_generators(rd, win):
    for lam in win:
        yield f"1{list(lam)}", gen(rd, idem(lam))
        for i in range(rd.n):
            yield f"E{rd.nodes[i]}1{list(lam)}", gen(rd, E(i), idem(lam))
            yield f"F{rd.nodes[i]}1{list(lam)}", gen(rd, F(i), idem(lam))


def verify_involution(ird: IRootDatum, win=None, battery=None, depth: int = 2,
                      eps_black: int = -1) -> dict:
    """theta_A(theta_A(g)) == g at q = 1 for all window generators."""
    rd = ird.datum
    win = window(rd) if win is None else list(win)
    battery = specialized_battery(rd, depth) if battery is None else battery
    present = _module_weights(battery)
    checked = nontrivial = structural = 0
    witness = None
    for label, g in window_generators(rd, win):
        lam = next(s[1] for s in next(iter(g.terms)) if s[0] == "1")
        checked += 1
        tt = theta_A(ird, theta_A(ird, g, eps_black), eps_black)
        diff = (tt - g).at_one()
        if diff.is_zero():
            structural += 1
        if lam not in present:
            continue
        nontrivial += 1
        if diff.is_zero():
            continue
        for M in battery:
            m = act(diff, M)
            if not m.is_zero():
                r, c, a, _ = m.first_difference(SMat(m.nrows, m.ncols))
                witness = {"generator": label, "module": M.name, "row": r, "col": c,
                           "difference": str(a)}
                break
        if witness:
            break
    table = sign_table(ird)
    signs_ok = all(row["product"] == 1 for row in table)
    return {
        "ok": witness is None and signs_ok,
        "generators": checked,
        "generators_acting_nontrivially": nontrivial,
        "structurally_equal": structural,
        "window_size": len(win),
        "eps_black": eps_black,
        "sign_table": table,
        "witness": witness,
    }


def theta_prime_square_check(ird: IRootDatum, battery=None, depth: int = 2) -> dict:
    """T_{w_black}^2 acts on E_i and F_i by (-1)^<2 rho_black^vee, +-alpha_i> at q = 1.

    Checking E_i rather than each E_i 1_lam covers every weight at once,
    since both sides preserve the weight decomposition.
    """
    rd = ird.datum
    battery = specialized_battery(rd, depth) if battery is None else battery
    word = ird.w_black.word * 2
    rows = []
    ok = True
    for i in range(rd.n):
        h = ird.two_rho_black_pairing(i)
        sign = -1 if h % 2 else 1
        for kind in ("E", "F"):
            g = gen(rd, (kind, i, 1))
            lhs = TImage(word, g)
            bad = None
            for M in battery:
                a = lhs.act(M)
                b = act(g, M).scale(sign)
                if a != b:
                    r, c, u, v = a.first_difference(b)
                    bad = {"module": M.name, "row": r, "col": c, "lhs": str(u), "rhs": str(v)}
                    break
            rows.append({"generator": f"{kind}{rd.nodes[i]}", "exponent": h, "sign": sign,
                         "status": "fail" if bad else "pass", "witness": bad})
            ok = ok and bad is None
    return {"ok": ok, "word": list(word), "checks": rows, "vacuous": not ird.black}


# -- the elements x_i(a), y_i(a) and s_i on specialised modules

def one_param_matrix(M, i: int, a, kind: str = "E", modulus=None) -> SMat:
    """sum_n a^n X_i^(n) on M (X = E or F); terminates by nilpotency."""
    M = specialize(M)
    total = SMat.identity(M.dim)
    n = 1
    while True:
        m = M.E(i, n) if kind == "E" else M.F(i, n)
        if m.is_zero():
            break
        total = total + m.scale(a ** n)
        n += 1
    if modulus is not None:
        total = total.map(lambda x: x % modulus)
    return total


def sbar_matrix(M, i: int) -> SMat:
    """x_i(1) y_i(-1) x_i(1)."""
    x = one_param_matrix(M, i, 1, "E")
    y = one_param_matrix(M, i, -1, "F")
    return x @ y @ x


def sbar_inverse(M, i: int) -> SMat:
    x = one_param_matrix(M, i, -1, "E")
    y = one_param_matrix(M, i, 1, "F")
    return x @ y @ x


def sbar_checks(rd, battery=None, depth: int = 2) -> dict:
    """Conjugation identity T_i(u) = s_i u s_i^-1 on generators and the
    symmetric form y_i(-1) x_i(1) y_i(-1) = s_i, at q = 1."""
    battery = specialized_battery(rd, depth) if battery is None else battery
    rows = []
    ok = True
    for i in range(rd.n):
        bad = None
        sym_bad = None
        for M in battery:
            s = sbar_matrix(M, i)
            si = sbar_inverse(M, i)
            if s @ si != SMat.identity(M.dim):
                bad = {"module": M.name, "what": "inverse"}
                break
            alt = one_param_matrix(M, i, -1, "F") @ one_param_matrix(M, i, 1, "E") @ one_param_matrix(M, i, -1, "F")
            if alt != s and sym_bad is None:
                sym_bad = {"module": M.name}
            for j in range(rd.n):
                for kind in ("E", "F"):
                    g = gen(rd, (kind, j, 1))
                    lhs = act(braid_T(g, i), M)
                    rhs = s @ act(g, M) @ si
                    if lhs != rhs:
                        bad = {"module": M.name, "generator": f"{kind}{rd.nodes[j]}"}
                        break
                if bad:
                    break
            if bad:
                break
        rows.append({"node": rd.nodes[i], "conjugation": "fail" if bad else "pass",
                     "omega_prime_symmetry": "fail" if sym_bad else "pass",
                     "witness": bad or sym_bad})
        ok = ok and bad is None and sym_bad is None
    return {"ok": ok, "checks": rows}


# -- generator fixing

def fixes_igens(ird: IRootDatum, battery=None, depth: int = 2) -> dict:
    """theta_A(g) == g at q = 1 for every iota-generator g."""
    from .iqg import igens
    rd = ird.datum
    battery = specialized_battery(rd, depth) if battery is None else battery
    rows = []
    ok = True
    for label, g, _ in igens(ird).items():
        diff = (theta_A(ird, g) - g).at_one()
        bad = None
        if not diff.is_zero():
            for M in battery:
                m = act(diff, M)
                if not m.is_zero():
                    r, c, a, _ = m.first_difference(SMat(m.nrows, m.ncols))
                    bad = {"module": M.name, "row": r, "col": c, "difference": str(a)}
                    break
        rows.append({"generator": label, "status": "fail" if bad else "pass", "witness": bad})
        ok = ok and bad is None
    return {"ok": ok, "checks": rows}


# -- Lie algebras realised on a specialised battery

class LieRealization:
    """Elements of g as tuples of integer matrices, one per module."""

    def __init__(self, rd, battery):
        self.rd = rd
        self.modules = [specialize(M) for M in battery]

    def e(self, i):
        return tuple(M.E(i) for M in self.modules)

    def f(self, i):
        return tuple(M.F(i) for M in self.modules)

    def h(self, mu):
        rd = self.rd
        return tuple(SMat.diagonal([rd.pair(mu, w) for w in M.weights]) for M in self.modules)

    def of_element(self, x: AlgebraElement):
        return tuple(act(x, M) for M in self.modules)

    @staticmethod
    def bracket(a, b):
        return tuple(x @ y - y @ x for x, y in zip(a, b))

    @staticmethod
    def add(a, b, s=1):
        return tuple(x + y.scale(s) for x, y in zip(a, b))

    @staticmethod
    def vector(a) -> dict:
        out = {}
        for k, m in enumerate(a):
            for c, col in m.cols.items():
                for r, v in col.items():
                    if v:
                        out[(k, r, c)] = Fraction(v)
        return out


def close_under_brackets(L: LieRealization, gens, limit: int = 400):
    """Basis of the Lie algebra generated by ``gens``: list of (tree, element).

    Trees are ('g', k) for the k-th generator or ('b', k, m) for
    [generator k, basis element m]; left-normed brackets suffice.
    """
    space = RowSpace()
    basis = []
    for k, g in enumerate(gens):
        if space.add(L.vector(g)):
            basis.append((("g", k), g))
    frontier = list(range(len(basis)))
    while frontier:
        new = []
        for m in frontier:
            for k, g in enumerate(gens):
                b = L.bracket(g, basis[m][1])
                if space.add(L.vector(b)):
                    basis.append((("b", k, m), b))
                    new.append(len(basis) - 1)
                    if len(basis) > limit:
                        raise RuntimeError("bracket closure exceeded its size limit")
        frontier = new
    return basis, space


_TAG = 1 << 30  # sorts after every module index, so pivots land on real coordinates


def _solve_in_basis(vecs, target):
    """Rational c with sum c_k vecs[k] = target, or None."""
    rs = RowSpace()
    # augment each vector with a tag coordinate to recover coefficients
    tagged = []
    for k, v in enumerate(vecs):
        w = dict(v)
        w[(_TAG, k, 0)] = Fraction(1)
        tagged.append(w)
    for w in tagged:
        rs.add(w)
    t = {k: -x for k, x in target.items()}
    r = rs.reduce(t)
    if any(k[0] != _TAG for k in r):
        return None
    return [r.get((_TAG, k, 0), Fraction(0)) for k in range(len(vecs))]


def _nullity_basis(rows):
    """Rational kernel basis of a square rational matrix (list of lists)."""
    den = 1
    for row in rows:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    ints = [[int(Fraction(x) * den) for x in row] for row in rows]
    return integer_kernel(ints)


def expected_dim_g(rd) -> int:
    return rd.rankX + 2 * len(rd.positive_roots())


def lie_battery(rd, depth: int = None):
    """Simple modules at q = 1; the coordinate bound in the highest-weight
    grid makes the centre act faithfully for reductive data.  Without an
    explicit depth, the smallest depth in 1..3 realising g faithfully is used."""
    if depth is not None:
        return specialized_battery(rd, depth, tensors=False)
    want = expected_dim_g(rd)
    for d in (1, 2, 3):
        bat = specialized_battery(rd, d, tensors=False)
        L = LieRealization(rd, bat)
        ybasis = [tuple(int(a == b) for b in range(rd.rankX)) for a in range(rd.rankX)]
        gens = [L.e(i) for i in range(rd.n)] + [L.f(i) for i in range(rd.n)] + [L.h(mu) for mu in ybasis]
        if len(close_under_brackets(L, gens)[0]) >= want:
            return bat
    return bat


def fixed_lie_algebra(ird: IRootDatum, battery=None, eps_black: int = -1) -> dict:
    """k two ways: closure of the k-generators, and the +1 eigenspace of theta on g."""
    rd = ird.datum
    battery = lie_battery(rd) if battery is None else battery
    L = LieRealization(rd, battery)
    ybasis = [tuple(int(a == b) for b in range(rd.rankX)) for a in range(rd.rankX)]
    ggens = [L.e(i) for i in range(rd.n)] + [L.f(i) for i in range(rd.n)] + [L.h(mu) for mu in ybasis]
    gbasis, _ = close_under_brackets(L, ggens)
    dim_g = len(gbasis)
    want_g = expected_dim_g(rd)
    if dim_g < want_g:
        raise ValueError(f"battery is not faithful: realised dim g = {dim_g} < {want_g}")

    # theta on generators, from theta_A at q = 1
    theta_gens = []
    for i in range(rd.n):
        theta_gens.append(L.of_element(theta_A(ird, gen(rd, E(i)), eps_black).at_one()))
    for i in range(rd.n):
        theta_gens.append(L.of_element(theta_A(ird, gen(rd, F(i)), eps_black).at_one()))
    for mu in ybasis:
        theta_gens.append(L.h(ird.theta_Y(mu)))

    images = []
    for tree, _ in gbasis:
        if tree[0] == "g":
            images.append(theta_gens[tree[1]])
        else:
            images.append(L.bracket(theta_gens[tree[1]], images[tree[2]]))
    vecs = [L.vector(b) for _, b in gbasis]
    theta = []
    for im in images:
        c = _solve_in_basis(vecs, L.vector(im))
        if c is None:
            raise ValueError("theta does not preserve the realised g")
        theta.append(c)
    # theta[k] = coordinates of theta(basis k); matrix acting on columns
    n = dim_g
    Th = [[theta[c][r] for c in range(n)] for r in range(n)]
    sq = [[sum(Th[r][k] * Th[k][c] for k in range(n)) for c in range(n)] for r in range(n)]
    involutive = all(sq[r][c] == (1 if r == c else 0) for r in range(n) for c in range(n))
    plus = _nullity_basis([[Th[r][c] - (1 if r == c else 0) for c in range(n)] for r in range(n)])
    minus = _nullity_basis([[Th[r][c] + (1 if r == c else 0) for c in range(n)] for r in range(n)])

    # k from generators
    kgens = []
    for i in ird.white:
        fi = L.f(i)
        kgens.append(L.add(fi, theta_gens[rd.n + i]))
    for j in ird.black:
        kgens.append(L.e(j))
        kgens.append(L.f(j))
    for mu in ird.ylattice_fixed:
        kgens.append(L.h(mu))
    kgens = [g for g in kgens if L.vector(g)]
    kbasis, kspace = close_under_brackets(L, kgens) if kgens else ([], RowSpace())

    # compare: closure inside the eigenspace and equal dimension
    plus_vecs = []
    for v in plus:
        acc = {}
        for k, c in enumerate(v):
            if c:
                for key, x in vecs[k].items():
                    acc[key] = acc.get(key, 0) + c * x
        plus_vecs.append({k: x for k, x in acc.items() if x})
    closure_in_plus = all(_solve_in_basis(plus_vecs, L.vector(b)) is not None for _, b in kbasis)
    agree = closure_in_plus and len(kbasis) == len(plus)
    closed = True
    kvecs = [L.vector(b) for _, b in kbasis]
    for a in range(len(kbasis)):
        for b in range(a + 1, len(kbasis)):
            if _solve_in_basis(kvecs, L.vector(L.bracket(kbasis[a][1], kbasis[b][1]))) is None:
                closed = False
    return {
        "ok": agree and involutive and closed and len(plus) + len(minus) == dim_g,
        "dim_g": dim_g,
        "expected_dim_g": want_g,
        "dim_k_closure": len(kbasis),
        "dim_k_eigenspace": len(plus),
        "dim_minus_eigenspace": len(minus),
        "theta_involutive": involutive,
        "closure_inside_eigenspace": closure_in_plus,
        "k_closed_under_bracket": closed,
        "battery": [M.name for M in battery],
    }
