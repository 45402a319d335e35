"""Rank-one group functor at desk scale.

Points are tuples of exact matrices, one per module of a fixed battery.
Over F_p the battery is realised from the integral divided-power
matrices of the specialised simple modules, their omega-twists and the
tensors used in the quantum checks.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .qone import theta_A
from .rootdata import ValidationError
from .satake import IRootDatum
from .uq.algebra import F, gen
from .uq.battery import act, specialized_battery
from .uq.modules import specialize, tensor, twist

MAX_PRIME = 13


# -- small dense matrices over Z/p

def _mul(a, b, p):
    n, m, k = len(a), len(b[0]), len(b)
    out = []
    for i in range(n):
        row = a[i]
        out.append(tuple(sum(row[t] * b[t][j] for t in range(k)) % p for j in range(m)))
    return tuple(out)


def _ident(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _kron(a, b, p):
    out = []
    for ra in a:
        for rb in b:
            out.append(tuple((x * y) % p for x in ra for y in rb))
    return tuple(out)


def _dense_mod(m, p):
    d = m.to_dense()
    return tuple(tuple(int(x) % p for x in row) for row in d)


def is_odd_prime(p) -> bool:
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        return False
    return all(p % k for k in range(3, int(p ** 0.5) + 1, 2))


def _check_prime(p):
    if not is_odd_prime(p) or p > MAX_PRIME:
        raise ValidationError(f"p must be an odd prime <= {MAX_PRIME}", p)


def _check_rank_one(ird_or_rd):
    rd = getattr(ird_or_rd, "datum", ird_or_rd)
    if rd.n != 1 or rd.rankX != 1 or tuple(rd.roots[0]) != (2,):
        raise ValidationError("finite-field enumeration supports the SL2 datum only", rd.name)
    return rd


class ModularBattery:
    """Integral modules for SL2 with x(a), y(a) and torus actions mod p."""

    def __init__(self, rd, p: int, depth: int = 2):
        self.rd = rd
        self.p = p
        base = specialized_battery(rd, depth, tensors=False)
        simples = [specialize(M) for M in base]
        mods = list(simples) + [twist(M) for M in simples]
        self.pairs = []
        for A in simples:
            for B in simples:
                if A.dim * B.dim <= 200:
                    T = tensor(twist(A), B)
                    mods.append(T)
                    self.pairs.append((len(simples) + simples.index(A), simples.index(B), len(mods) - 1))
        self.modules = mods
        self.names = tuple(M.name for M in mods)
        self.std = self.names.index("L(1,)")
        self._powers = []
        for M in mods:
            e, f = [], []
            n = 1
            while not M.E(0, n).is_zero():
                e.append(_dense_mod(M.E(0, n), p))
                n += 1
            n = 1
            while not M.F(0, n).is_zero():
                f.append(_dense_mod(M.F(0, n), p))
                n += 1
            self._powers.append((e, f))
        self._xcache = {}

    def one_param(self, kind, a):
        """x(a) (kind 'E') or y(a) (kind 'F') on every module."""
        a %= self.p
        key = (kind, a)
        if key not in self._xcache:
            mats = []
            for M, (e, f) in zip(self.modules, self._powers):
                pw = e if kind == "E" else f
                acc = [list(r) for r in _ident(M.dim)]
                for n, m in enumerate(pw, start=1):
                    c = pow(a, n, self.p)
                    for r in range(M.dim):
                        for s in range(M.dim):
                            if m[r][s]:
                                acc[r][s] = (acc[r][s] + c * m[r][s]) % self.p
                mats.append(tuple(tuple(r) for r in acc))
            self._xcache[key] = tuple(mats)
        return self._xcache[key]

    def torus(self, t):
        """t: unit on the basis character; acts on weight lam by t^lam."""
        p = self.p
        mats = []
        for M in self.modules:
            diag = [pow(t, w[0], p) for w in M.weights]
            mats.append(tuple(tuple(diag[i] if i == j else 0 for j in range(M.dim)) for i in range(M.dim)))
        return tuple(mats)


@dataclass(frozen=True)
class GroupPoint:
    """One matrix per battery module, over Z/p."""

    battery: ModularBattery
    mats: tuple

    @property
    def p(self):
        return self.battery.p

    @property
    def key(self):
        return self.mats[self.battery.std]

    def __mul__(self, other: "GroupPoint") -> "GroupPoint":
        return GroupPoint(self.battery, tuple(_mul(a, b, self.p) for a, b in zip(self.mats, other.mats)))

    def __eq__(self, other):
        return isinstance(other, GroupPoint) and self.mats == other.mats

    def __hash__(self):
        return hash(self.mats)

    def inverse(self) -> "GroupPoint":
        a, b = self.key[0]
        c, d = self.key[1]
        return point_from_matrix(self.battery, ((d, -b), (-c, a)))

    def tensor_compatible(self) -> bool:
        for ia, ib, it in self.battery.pairs:
            if _kron(self.mats[ia], self.mats[ib], self.p) != self.mats[it]:
                return False
        return True


def identity_point(bat: ModularBattery) -> GroupPoint:
    return GroupPoint(bat, tuple(_ident(M.dim) for M in bat.modules))


def one_param(bat: ModularBattery, a, sign: str = "+") -> GroupPoint:
    """x(a) for sign '+', y(a) for sign '-'."""
    return GroupPoint(bat, bat.one_param("E" if sign == "+" else "F", a))


def torus_point(bat: ModularBattery, t) -> GroupPoint:
    """Torus point from a character value (int) or a map on X (callable),
    the latter checked to be multiplicative on generators."""
    p = bat.p
    if callable(t):
        one = t((0,)) % p
        base = t((1,)) % p
        if one != 1 or (t((2,)) - base * base) % p or (t((-1,)) * base - 1) % p:
            raise ValidationError("torus character is not multiplicative", None)
        t = base
    if t % p == 0:
        raise ValidationError("torus value must be a unit", t)
    return GroupPoint(bat, bat.torus(t % p))


def point_from_matrix(bat: ModularBattery, g) -> GroupPoint:
    """Realise a determinant-one 2x2 matrix on the whole battery through
    g = x(s1) y(c) x(s3) (c != 0) or g = h(a) x(s) (c = 0)."""
    p = bat.p
    (a, b), (c, d) = [[x % p for x in row] for row in g]
    if (a * d - b * c) % p != 1:
        raise ValidationError("determinant is not 1", g)
    if c:
        ci = pow(c, -1, p)
        s1 = (a - 1) * ci % p
        s3 = (d - 1) * ci % p
        return one_param(bat, s1) * one_param(bat, c, "-") * one_param(bat, s3)
    ai = pow(a, -1, p)
    return torus_point(bat, a) * one_param(bat, b * ai % p)


class FiniteFieldGroup:
    def __init__(self, bat: ModularBattery, elements):
        self.battery = bat
        self.elements = list(elements)
        self._index = {g.key: g for g in self.elements}

    @property
    def p(self):
        return self.battery.p

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        h = self._index.get(g.key)
        return h is not None and h == g

    def closure_sample(self, pairs: int = 200, seed: int = 0) -> bool:
        rng = random.Random(seed)
        for _ in range(pairs):
            a, b = rng.choice(self.elements), rng.choice(self.elements)
            if a * b not in self:
                return False
        return True

    def is_subgroup_exhaustive(self) -> bool:
        ident = identity_point(self.battery)
        if ident not in self:
            return False
        for g in self.elements:
            if g.inverse() not in self:
                return False
            for h in self.elements:
                if g * h not in self:
                    return False
        return True


_BAT = {}


def modular_battery(ird, p: int) -> ModularBattery:
    rd = _check_rank_one(ird)
    _check_prime(p)
    key = (rd.roots, rd.coroots, rd.pairing, p)
    if key not in _BAT:
        _BAT[key] = ModularBattery(rd, p)
    return _BAT[key]


def enumerate_group(p: int, ird) -> FiniteFieldGroup:
    """All determinant-one points, p(p^2 - 1) of them."""
    bat = modular_battery(ird, p)
    pts = []
    for a, b, c, d in product(range(p), repeat=4):
        if (a * d - b * c) % p == 1:
            pts.append(point_from_matrix(bat, ((a, b), (c, d))))
    return FiniteFieldGroup(bat, pts)


# -- the involution on points

class PointInvolution:
    """theta on points, transported from theta_A on E, F and on X.

    theta_A(E) at q = 1 is c F or c E (rank one), which fixes the images
    of x(a); likewise for y(a); torus points go to t o theta.
    """

    def __init__(self, ird: IRootDatum, bat: ModularBattery):
        self.ird = ird
        self.bat = bat
        rd = ird.datum
        self.images = {}
        for kind in ("E", "F"):
            img = theta_A(ird, gen(rd, (kind, 0, 1))).at_one()
            if len(img.terms) != 1:
                raise ValidationError("theta image of a generator is not a single word", str(img))
            (w, c), = img.terms.items()
            syms = [s for s in w if s[0] != "K"]
            if len(syms) != 1 or syms[0][2] != 1:
                raise ValidationError("theta image of a generator is not a scaled generator", str(img))
            self.images[kind] = (syms[0][0], int(c))
        self.theta_char = ird.thetaX[0][0]

    def x_image(self, kind, a):
        k2, c = self.images[kind]
        return one_param(self.bat, c * a, "+" if k2 == "E" else "-")

    def __call__(self, g: GroupPoint) -> GroupPoint:
        p = self.bat.p
        (a, b), (c, d) = g.key
        if c:
            ci = pow(c, -1, p)
            s1 = (a - 1) * ci % p
            s3 = (d - 1) * ci % p
            return self.x_image("E", s1) * self.x_image("F", c) * self.x_image("E", s3)
        ai = pow(a, -1, p)
        t = pow(a, self.theta_char, p)
        return torus_point(self.bat, t) * self.x_image("E", b * ai % p)


def theta_on_points(ird: IRootDatum, g: GroupPoint) -> GroupPoint:
    return PointInvolution(ird, g.battery)(g)


def fixed_points(group: FiniteFieldGroup, ird: IRootDatum) -> FiniteFieldGroup:
    th = PointInvolution(ird, group.battery)
    return FiniteFieldGroup(group.battery, [g for g in group.elements if th(g) == g])


# -- coordinate ring of the rank-one symmetric subgroup

def conic_count(p: int) -> int:
    """#{(u, v) in F_p^2 : u^2 - v^2 = 1} by exhaustion."""
    if not is_odd_prime(p):
        raise ValidationError("p must be an odd prime", p)
    return sum(1 for u in range(p) for v in range(p) if (u * u - v * v - 1) % p == 0)


def torus_parametrisation(p: int):
    """t -> ((t + 1/t)/2, (t - 1/t)/2) on F_p^x; returns the image set."""
    h = pow(2, -1, p)
    pts = set()
    for t in range(1, p):
        ti = pow(t, -1, p)
        pts.add(((t + ti) * h % p, (t - ti) * h % p))
    return pts


def _pmul(a, b):
    out = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v}


def char2_nonreduced_witness() -> dict:
    """(u+v+1)^2 and u^2-v^2-1 agree mod 2, so u+v+1 is nilpotent in the fibre."""
    lin = {(1, 0): 1, (0, 1): 1, (0, 0): 1}
    sq = _pmul(lin, lin)
    conic = {(2, 0): 1, (0, 2): -1, (0, 0): -1}
    diff = dict(sq)
    for k, v in conic.items():
        diff[k] = diff.get(k, 0) - v
    diff = {k: v for k, v in diff.items() if v}
    mod2 = {k: v % 2 for k, v in diff.items() if v % 2}
    mod3 = {k: v % 3 for k, v in diff.items() if v % 3}
    # u+v+1 has degree 1 < 2, so it is not a multiple of the conic equation
    return {
        "difference": {f"u^{i}v^{j}": c for (i, j), c in sorted(diff.items())},
        "all_even": all(v % 2 == 0 for v in diff.values()),
        "zero_mod_2": not mod2,
        "zero_mod_3": not mod3,
        "nilpotent_nonzero": not mod2,
        "ok": not mod2 and bool(mod3),
    }


# -- K = T^theta K^o at desk scale

def tk_check(ird: IRootDatum, p: int) -> dict:
    """Fixed points versus the group generated by theta-fixed torus points
    and exponentials of the k-generator f + theta(f)."""
    bat = modular_battery(ird, p)
    G = enumerate_group(p, ird)
    K = fixed_points(G, ird)
    rd = ird.datum
    th = PointInvolution(ird, bat)
    V = bat.modules[bat.std]
    kelt = gen(rd, F(0)) + theta_A(ird, gen(rd, F(0)))
    k = _dense_mod(act(kelt.at_one(), V), p)
    k2 = _mul(k, k, p)
    c = k2[0][0]
    scalar = k2 == tuple(tuple(c if i == j else 0 for j in range(2)) for i in range(2))
    root = None
    if scalar and c:
        root = next((r for r in range(1, p) if r * r % p == c), None)
    gens = [g for g in (torus_point(bat, t) for t in range(1, p)) if th(g) == g]
    exps = []
    if root is not None:
        h = pow(2, -1, p)
        ri = pow(2 * root, -1, p)
        for s in range(1, p):
            si = pow(s, -1, p)
            a0 = (s + si) * h % p
            a1 = (s - si) * ri % p
            m = tuple(tuple((a0 * int(i == j) + a1 * k[i][j]) % p for j in range(2)) for i in range(2))
            exps.append(point_from_matrix(bat, m))
    generated = _subgroup(bat, gens + exps)
    fixed_in = all(g in generated for g in K.elements)
    gen_in = all(g in K for g in generated.elements)
    neg = one_param(bat, 1)
    return {
        "p": p,
        "split": root is not None,
        "fixed_points": len(K),
        "generated": len(generated),
        "theta_fixed_torus_points": len(gens),
        "fixed_subset_of_generated": fixed_in,
        "generated_subset_of_fixed": gen_in,
        "negative_control_excluded": neg not in generated and th(neg) != neg,
        "ok": (root is not None) and fixed_in and gen_in and neg not in generated,
        "caveat": "the factorisation is stated over algebraically closed fields; over F_p this is evidence only",
    }


def _subgroup(bat, gens) -> FiniteFieldGroup:
    ident = identity_point(bat)
    seen = {ident.key: ident}
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for h in gens:
                x = g * h
                if x.key not in seen:
                    seen[x.key] = x
                    new.append(x)
        frontier = new
    return FiniteFieldGroup(bat, list(seen.values()))


def sl2_table(primes=(3, 5, 7), sign=None) -> dict:
    """Counts per prime for the SL2-split entry (sign overrides sbar)."""
    from . import catalog
    ird = catalog.get("SL2-split", sign=sign)
    rows = []
    for p in primes:
        G = enumerate_group(p, ird)
        K = fixed_points(G, ird)
        cc = conic_count(p)
        rows.append({"p": p, "group_order": len(G), "expected_order": p * (p * p - 1),
                     "fixed_points": len(K), "conic_count": cc, "torus_oracle": len(torus_parametrisation(p)),
                     "equal": len(K) == cc})
    return {"sign": ird.sbar(0), "normative": sign in (None, 1), "rows": rows,
            "char2_witness": char2_nonreduced_witness()}
