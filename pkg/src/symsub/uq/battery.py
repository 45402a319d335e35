"""Acting with algebra elements on modules; equality modulo a battery."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..exactq import ClassicalRing, GenericRing, at_one, q_pow, qint
from ..linalg import SMat
from ..rootdata import RootDatum
from .algebra import AlgebraElement, braid_symbol, gen
from .modules import WeightModule, build_simple, specialize, tensor, twist


class TImage:
    """T_word(x), evaluated on modules without expanding into words."""

    def __init__(self, word, x: AlgebraElement, coeff=1):
        self.word = tuple(word)
        self.x = x
        self.coeff = coeff
        self.rd = x.rd

    def scale(self, s):
        return TImage(self.word, self.x, self.coeff * s)

    def act(self, M: WeightModule) -> SMat:
        rd = self.rd
        word = self.word
        cache = {}
        ident = SMat.identity(M.dim, M.ring.one)

        def letter(k, sym):
            if k == 0:
                return act(gen(rd, sym), M)
            key = (k, sym)
            if key in cache:
                return cache[key]
            img = braid_symbol(rd, word[k - 1], sym)
            total = SMat(M.dim, M.dim)
            for w, c in img.terms.items():
                m = ident
                for s in w:
                    m = m @ letter(k - 1, s)
                total = total + m.scale(c if M.generic else at_one(c))
            cache[key] = total
            return total

        total = SMat(M.dim, M.dim)
        for w, c in self.x.terms.items():
            m = ident
            for s in w:
                m = m @ letter(len(word), s)
            total = total + m.scale(c if M.generic else at_one(c))
        coeff = self.coeff if M.generic else at_one(self.coeff)
        return total.scale(coeff)


def act(x, M: WeightModule) -> SMat:
    """Matrix of x on M (entries specialised at q = 1 on classical modules)."""
    if not isinstance(x, AlgebraElement):
        return x.act(M)
    generic = M.generic
    total = {}
    for w, c in x.terms.items():
        coeff = c if generic else at_one(c)
        body = w
        if body and body[-1][0] == "1":
            cols = M.indices_of_weight(body[-1][1])
            body = body[:-1]
        else:
            cols = range(M.dim)
        if not cols:
            continue
        if body and body[-1][0] == "K":
            kv = M.kvalues(body[-1][1])
            vecs = {k: {k: kv[k]} for k in cols}
            body = body[:-1]
        else:
            one = M.ring.one
            vecs = {k: {k: one} for k in cols}
        for sym in reversed(body):
            kind = sym[0]
            if kind == "E":
                m = M.E(sym[1], sym[2])
            elif kind == "F":
                m = M.F(sym[1], sym[2])
            else:
                raise ValueError(f"non-canonical word {w!r}")
            nv = {}
            for k, v in vecs.items():
                r = m.apply(v)
                if r:
                    nv[k] = r
            vecs = nv
            if not vecs:
                break
        for k, v in vecs.items():
            tgt = total.setdefault(k, {})
            for r, a in v.items():
                val = coeff * a
                old = tgt.get(r)
                new = val if old is None else old + val
                if new != 0:
                    tgt[r] = new
                else:
                    tgt.pop(r, None)
    return SMat(M.dim, M.dim, {k: v for k, v in total.items() if v})


@dataclass
class Battery:
    rd: RootDatum
    modules: list
    description: dict = field(default_factory=dict)

    @property
    def generic(self):
        return all(M.generic for M in self.modules)

    def __iter__(self):
        return iter(self.modules)

    def __len__(self):
        return len(self.modules)

    def simples(self) -> "Battery":
        mods = [M for M in self.modules if M.name.startswith("L")]
        return Battery(self.rd, mods, dict(self.description, tensors=[]))


def eq_mod_battery(x: AlgebraElement, y: AlgebraElement, battery):
    """(True, None) or (False, witness dict) for the first differing module."""
    both = isinstance(x, AlgebraElement) and isinstance(y, AlgebraElement)
    diff = x - y if both else None
    for M in battery:
        m = act(diff, M) if both else act(x, M) - act(y, M)
        if not m.is_zero():
            r, c, a, _ = m.first_difference(SMat(m.nrows, m.ncols))
            return False, {"module": M.name, "row": r, "col": c, "difference": str(a)}
    return True, None


def vanishes_on_battery(x, battery):
    return eq_mod_battery(x, AlgebraElement(x.rd), battery)


def matrices_equal_on_battery(f, g, battery):
    """Compare two module-to-matrix functions on every battery module."""
    for M in battery:
        a, b = f(M), g(M)
        if a != b:
            r, c, u, v = a.first_difference(b)
            return False, {"module": M.name, "row": r, "col": c, "lhs": str(u), "rhs": str(v)}
    return True, None


def battery_highest_weights(rd: RootDatum, depth: int):
    """Dominant lam with 0 <= <alpha_i^vee, lam> <= depth and coordinates
    bounded by depth (the coordinate bound only matters for data with a
    central torus)."""
    out = []
    rng = range(-depth, depth + 1)
    seen = set()
    for lam in product(rng, repeat=rd.rankX):
        p = rd.pairings(lam)
        if all(0 <= c <= depth for c in p):
            if lam not in seen:
                seen.add(lam)
                out.append(lam)
    out.sort(key=lambda l: (sum(rd.pairings(l)), rd.pairings(l), l))
    return out


_BATTERY_CACHE = {}


def default_battery(rd: RootDatum, depth: int = 2, dim_bound: int = 200, ring=GenericRing,
                    tensors: bool = True) -> Battery:
    key = (rd.cartan.key(), rd.rankX, rd.roots, rd.coroots, rd.pairing, depth, dim_bound, ring.name, tensors)
    if key in _BATTERY_CACHE:
        return _BATTERY_CACHE[key]
    hws = battery_highest_weights(rd, depth)
    simples = []
    for lam in hws:
        if rd.weyl_dimension(lam) <= dim_bound:
            simples.append(build_simple(rd, lam, ring))
    mods = list(simples)
    pairs = []
    if tensors:
        for A in simples:
            for B in simples:
                if A.dim * B.dim <= dim_bound:
                    mods.append(tensor(twist(A), B))
                    pairs.append([A.name, B.name])
    desc = {
        "depth": depth,
        "dim_bound": dim_bound,
        "ring": ring.name,
        "highest_weights": [list(l) for l in hws],
        "simple_dims": [M.dim for M in simples],
        "tensors": pairs,
        "modules": len(mods),
    }
    bat = Battery(rd, mods, desc)
    _BATTERY_CACHE[key] = bat
    return bat


def specialized_battery(rd: RootDatum, depth: int = 2, dim_bound: int = 200, tensors=True,
                        method: str = "specialize") -> Battery:
    """Battery at q = 1.

    ``specialize`` evaluates the generic simple modules at q = 1 and forms
    tensors there; ``classical`` builds the simple modules directly over Z.
    """
    key = ("spec", method, rd.cartan.key(), rd.rankX, rd.roots, rd.coroots, rd.pairing, depth, dim_bound, tensors)
    if key in _BATTERY_CACHE:
        return _BATTERY_CACHE[key]
    if method == "classical":
        bat = default_battery(rd, depth, dim_bound, ClassicalRing, tensors)
    else:
        gen = default_battery(rd, depth, dim_bound, GenericRing, tensors=False)
        simples = [specialize(M) for M in gen.modules]
        mods = list(simples)
        pairs = []
        if tensors:
            for A in simples:
                for B in simples:
                    if A.dim * B.dim <= dim_bound:
                        mods.append(tensor(twist(A), B))
                        pairs.append([A.name, B.name])
        desc = dict(gen.description, ring="specialized", tensors=pairs, modules=len(mods))
        bat = Battery(rd, mods, desc)
    _BATTERY_CACHE[key] = bat
    return bat


# -- defining relations, checked on matrices

@dataclass
class RelationResult:
    family: str
    module: str
    ok: bool
    detail: str = ""


def _qint_diag(M, i):
    eps = M.rd.cartan.eps(i)
    vals = []
    for w in M.weights:
        n = M.rd.pair(M.rd.coroots[i], w)
        vals.append(qint(n, eps) if M.generic else n)
    return SMat.diagonal(vals)


def check_relations(battery, families=("K", "KE", "KF", "EF", "serre")):
    """Check the defining relations as matrix identities on every module."""
    rd = battery.rd
    out = []
    nodes = range(rd.n)
    basisY = [tuple(int(a == b) for b in range(rd.rankX)) for a in range(rd.rankX)]
    for M in battery:
        if "K" in families:
            ident = SMat.identity(M.dim, M.ring.one)
            out.append(RelationResult("K_0 = 1", M.name, M.kdiag(tuple([0] * rd.rankX)) == ident))
            ok = True
            for mu in basisY:
                for nu in basisY:
                    s = tuple(a + b for a, b in zip(mu, nu))
                    if M.kdiag(mu) @ M.kdiag(nu) != M.kdiag(s):
                        ok = False
                neg = tuple(-a for a in mu)
                if M.kdiag(mu) @ M.kdiag(neg) != ident:
                    ok = False
            out.append(RelationResult("K_mu K_nu = K_mu+nu", M.name, ok))
        for fam, getter, sgn in (("KE", M.E, 1), ("KF", M.F, -1)):
            if fam not in families:
                continue
            ok = True
            for mu in basisY:
                km = M.kdiag(mu)
                for i in nodes:
                    x = getter(i)
                    c = rd.pair(mu, rd.roots[i]) * sgn
                    lhs = km @ x
                    rhs = (x @ km).scale(q_pow(c) if M.generic else 1)
                    if lhs != rhs:
                        ok = False
            exp = "<mu,alpha_i>" if sgn > 0 else "-<mu,alpha_i>"
            out.append(RelationResult(f"K_mu {fam[1]}_i = q^{exp} {fam[1]}_i K_mu", M.name, ok))
        if "EF" in families:
            ok = True
            detail = ""
            for i in nodes:
                for j in nodes:
                    comm = M.E(i) @ M.F(j) - M.F(j) @ M.E(i)
                    want = _qint_diag(M, i) if i == j else SMat(M.dim, M.dim)
                    if comm != want:
                        ok = False
                        detail = f"E{rd.nodes[i]}F{rd.nodes[j]}"
            out.append(RelationResult("E_iF_j - F_jE_i = delta_ij [K_i;0]", M.name, ok, detail))
        if "serre" in families:
            for getter, name in ((M.E, "E"), (M.F, "F")):
                ok = True
                detail = ""
                for i in nodes:
                    for j in nodes:
                        if i == j:
                            continue
                        top = 1 - rd.cartan.cartan(i, j)
                        total = SMat(M.dim, M.dim)
                        for r in range(top + 1):
                            term = _pow_div(getter, i, r, M) @ getter(j) @ _pow_div(getter, i, top - r, M)
                            total = total + term.scale(-1 if r % 2 else 1)
                        if not total.is_zero():
                            ok = False
                            detail = f"{name} ({rd.nodes[i]},{rd.nodes[j]})"
                out.append(RelationResult(f"q-Serre for {name}", M.name, ok, detail))
    return out


def _pow_div(getter, i, r, M):
    if r == 0:
        return SMat.identity(M.dim, M.ring.one)
    return getter(i, r)


def corrupt(M: WeightModule, node=0) -> WeightModule:
    """Copy of M with one nonzero entry of E_node perturbed (negative control)."""
    E1 = {i: M.E(i) for i in range(M.rd.n)}
    F1 = {i: M.F(i) for i in range(M.rd.n)}
    m = E1[node]
    cols = {c: dict(v) for c, v in m.cols.items()}
    c = min(cols)
    r = min(cols[c])
    cols[c][r] = cols[c][r] + M.ring.one
    if cols[c][r] == 0:
        cols[c][r] = M.ring.one
    E1[node] = SMat(m.nrows, m.ncols, cols)
    return WeightModule(M.rd, M.weights, M.ring, E1, F1, name=f"corrupt({M.name})")
