"""Finite-dimensional weight modules with exact matrices.

Simple modules are built by lowering from a highest-weight vector.  A vector
of weight below the top is zero exactly when every E_j kills it, so each
candidate F_i^(a) b is represented by its E-image in the already-built
spaces above it.  Candidates are chosen so that, when possible, the basis
spans the lattice generated by divided powers; then every matrix entry lies
in Z[q, q^-1] (or Z at q = 1).
"""
from __future__ import annotations

from functools import lru_cache

from ..exactq import ClassicalRing, GenericRing, at_one, q_pow
from ..linalg import SMat, choose_lattice_basis, independent_subset, kron
from ..rootdata import RootDatum, ValidationError

MAX_SIMPLE_RANK = 3

# One table for the coproduct: Delta(E_i) = E_i (x) 1 + K_i (x) E_i,
# Delta(F_i) = F_i (x) K_i^-1 + 1 (x) F_i, Delta(K_mu) = K_mu (x) K_mu.
COPRODUCT = {
    "E": (("E", "1"), ("K", "E")),
    "F": (("F", "Kinv"), ("1", "F")),
}


class AbstractSimple:
    """Lowering data for L(lambda) over a Cartan datum, weights as depth
    vectors beta (lambda - sum beta_i alpha_i)."""

    def __init__(self, cartan, hw, ring):
        self.cartan = cartan
        self.hw = tuple(hw)
        self.ring = ring
        self.depths = []          # depth vector per basis index
        self.E = {}               # i -> column dict
        self.Fd = {}              # (i, a) -> column dict
        self.integral = True
        self._build()

    def _pair(self, i, beta):
        cd = self.cartan
        return self.hw[i] - sum(cd.cartan(i, j) * beta[j] for j in range(cd.rank))

    def _build(self):
        cd = self.cartan
        n = cd.rank
        zero = tuple([0] * n)
        spaces = {zero: [0]}
        self.depths.append(zero)
        for i in range(n):
            self.E[i] = {0: {}}
        height = 0
        while True:
            height += 1
            targets = set()
            for src, idxs in spaces.items():
                a = height - sum(src)
                if idxs and a >= 1:
                    for i in range(n):
                        t = list(src)
                        t[i] += a
                        targets.add(tuple(t))
            if not targets:
                break
            any_nonzero = False
            for beta in sorted(targets):
                idxs = self._build_space(beta, spaces)
                spaces[beta] = idxs
                any_nonzero = any_nonzero or bool(idxs)
            if not any_nonzero:
                break
        self.spaces = spaces

    def _build_space(self, beta, spaces):
        cd, ring = self.cartan, self.ring
        n = cd.rank
        cands = []
        for i in range(n):
            for a in range(1, beta[i] + 1):
                src = list(beta)
                src[i] -= a
                src = tuple(src)
                for k in spaces.get(src, []):
                    cands.append((i, a, k, src))
        if not cands:
            return []
        cands.sort(key=lambda c: (-c[1], c[0], c[2]))
        vecs = []
        for i, a, k, src in cands:
            img = {}
            for j in range(n):
                if beta[j] == 0:
                    continue
                tj = list(beta)
                tj[j] -= 1
                if not spaces.get(tuple(tj)):
                    continue
                # F_i^(a) E_j b
                ejb = self.E[j].get(k, {})
                if ejb:
                    fcols = self.Fd.get((i, a), {})
                    for r, x in ejb.items():
                        for r2, y in fcols.get(r, {}).items():
                            v = img.get(r2)
                            w = x * y
                            img[r2] = w if v is None else v + w
                if j == i:
                    c = ring.qint(self._pair(i, src) - a + 1, cd.eps(i))
                    if c:
                        if a == 1:
                            lower = {k: ring.one}
                        else:
                            lower = self.Fd.get((i, a - 1), {}).get(k, {})
                        for r2, y in lower.items():
                            v = img.get(r2)
                            w = c * y
                            img[r2] = w if v is None else v + w
            vecs.append({r: v for r, v in img.items() if v})
        order = list(range(len(cands)))
        rank = len(independent_subset(vecs, ring, order))
        if rank == 0:
            for i, a, k, src in cands:
                self.Fd.setdefault((i, a), {})
            return []
        subset, coords, integral = choose_lattice_basis(vecs, ring, order, rank)
        self.integral = self.integral and integral
        start = len(self.depths)
        new = list(range(start, start + rank))
        for s, cidx in enumerate(subset):
            self.depths.append(beta)
            g = new[s]
            img = vecs[cidx]
            for j in range(n):
                tj = list(beta)
                tj[j] -= 1
                rows = set(spaces.get(tuple(tj), []))
                self.E[j][g] = {r: v for r, v in img.items() if r in rows}
        for (i, a, k, src), co in zip(cands, coords):
            col = {new[s]: x for s, x in enumerate(co) if x}
            fd = self.Fd.setdefault((i, a), {})
            if col:
                fd[k] = col
        return new


@lru_cache(maxsize=None)
def abstract_simple(cartan, hw, ring_name="generic"):
    ring = GenericRing if ring_name == "generic" else ClassicalRing
    return AbstractSimple(cartan, hw, ring)


class WeightModule:
    """Module with a weight basis; E/F divided powers as sparse matrices."""

    def __init__(self, rd: RootDatum, weights, ring, E1, F1, name="", Fd=None, integral=True):
        self.rd = rd
        self.weights = [tuple(w) for w in weights]
        self.ring = ring
        self.name = name
        self.integral = integral
        self._E = {(i, 1): m for i, m in E1.items()}
        self._F = {(i, 1): m for i, m in F1.items()}
        if Fd:
            for key, m in Fd.items():
                self._F.setdefault(key, m)
        self._windex = None
        self._kcache = {}

    @property
    def dim(self):
        return len(self.weights)

    @property
    def generic(self):
        return self.ring is GenericRing

    def weight_index(self):
        if self._windex is None:
            d = {}
            for k, w in enumerate(self.weights):
                d.setdefault(w, []).append(k)
            self._windex = d
        return self._windex

    def indices_of_weight(self, lam):
        return self.weight_index().get(tuple(lam), [])

    def _divided(self, store, i, n):
        key = (i, n)
        if key in store:
            return store[key]
        if n == 0:
            return SMat.identity(self.dim, self.ring.one)
        prev = self._divided(store, i, n - 1)
        m = store[(i, 1)] @ prev
        c = self.ring.qint(n, self.rd.cartan.eps(i))
        ring = self.ring

        def div(x):
            y = ring.try_div(x, c)
            if y is None:
                self.integral = False
                y = ring.field_div(x, c)
            return y

        m = m.map(div)
        store[key] = m
        return m

    def E(self, i, n=1) -> SMat:
        return self._divided(self._E, i, n)

    def F(self, i, n=1) -> SMat:
        return self._divided(self._F, i, n)

    def kvalues(self, mu):
        """Eigenvalues of K_mu on the basis."""
        mu = tuple(mu)
        if mu not in self._kcache:
            if self.generic:
                self._kcache[mu] = [q_pow(self.rd.pair(mu, w)) for w in self.weights]
            else:
                self._kcache[mu] = [1] * self.dim
        return self._kcache[mu]

    def kdiag(self, mu) -> SMat:
        return SMat.diagonal(self.kvalues(mu))

    def weight_multiset(self):
        return sorted(self.weights)

    def __repr__(self):
        return f"WeightModule({self.name}, dim={self.dim})"


def highest_weight_pairings(rd, lam):
    p = rd.pairings(lam)
    if any(c < 0 for c in p):
        raise ValidationError("highest weight is not dominant", lam)
    return p


def build_simple(rd: RootDatum, lam, ring=GenericRing) -> WeightModule:
    if rd.n > MAX_SIMPLE_RANK:
        raise ValidationError("simple-module construction limited to rank <= 3", rd.n)
    lam = tuple(lam)
    hw = highest_weight_pairings(rd, lam)
    ab = abstract_simple(rd.cartan, hw, ring.name)
    weights = []
    for beta in ab.depths:
        w = list(lam)
        for i, b in enumerate(beta):
            if b:
                for a in range(rd.rankX):
                    w[a] -= b * rd.roots[i][a]
        weights.append(tuple(w))
    dim = len(weights)
    E1 = {i: SMat(dim, dim, {c: dict(v) for c, v in ab.E[i].items() if v}) for i in range(rd.n)}
    Fd = {}
    for (i, a), cols in ab.Fd.items():
        Fd[(i, a)] = SMat(dim, dim, {c: dict(v) for c, v in cols.items() if v})
    F1 = {i: Fd.get((i, 1), SMat(dim, dim)) for i in range(rd.n)}
    return WeightModule(rd, weights, ring, E1, F1, name=f"L{lam}", Fd=Fd, integral=ab.integral)


def twist(M: WeightModule) -> WeightModule:
    """The omega-twist: E acts as F, F as E, weights negated."""
    weights = [tuple(-x for x in w) for w in M.weights]
    tw = WeightModule(M.rd, weights, M.ring, {}, {}, name=f"w{M.name}", integral=M.integral)
    tw._E = M._F
    tw._F = M._E
    return tw


def _factor(M: WeightModule, kind, i):
    if kind == "1":
        return SMat.identity(M.dim, M.ring.one)
    if kind == "E":
        return M.E(i)
    if kind == "F":
        return M.F(i)
    eps = M.rd.cartan.eps(i)
    cor = tuple(eps * x for x in M.rd.coroots[i])
    if kind == "K":
        return M.kdiag(cor)
    if kind == "Kinv":
        return M.kdiag(tuple(-x for x in cor))
    raise KeyError(kind)


def tensor(M: WeightModule, N: WeightModule, table=None) -> WeightModule:
    if M.ring is not N.ring:
        raise ValueError("tensor factors over different rings")
    table = COPRODUCT if table is None else table
    weights = [tuple(a + b for a, b in zip(wm, wn)) for wm in M.weights for wn in N.weights]
    E1, F1 = {}, {}
    for i in range(M.rd.n):
        for key, store in (("E", E1), ("F", F1)):
            total = None
            for lk, rk in table[key]:
                term = kron(_factor(M, lk, i), _factor(N, rk, i))
                total = term if total is None else total + term
            store[i] = total
    return WeightModule(M.rd, weights, M.ring, E1, F1, name=f"{M.name}(x){N.name}",
                        integral=M.integral and N.integral)


def specialize(M: WeightModule) -> WeightModule:
    """Entries evaluated at q = 1; divided powers are specialised, not
    recomputed."""
    if not M.generic:
        return M

    def f(x):
        return at_one(x)

    E1 = {i: M.E(i).map(f) for i in range(M.rd.n)}
    F1 = {i: M.F(i).map(f) for i in range(M.rd.n)}
    S = WeightModule(M.rd, M.weights, ClassicalRing, E1, F1, name=M.name, integral=M.integral)
    for store_src, store_dst in ((M._E, S._E), (M._F, S._F)):
        for key, m in store_src.items():
            store_dst[key] = m.map(f)
    return S


def generate_submodule(M: WeightModule, vector: dict, max_n=None):
    """Weight-homogeneous span of U.v inside M over the fraction field.

    Returns the list of basis vectors (sparse dicts) found by closing under
    E_i and F_i; used to certify simplicity and highest-weight generation.
    """
    from ..linalg import RowSpace
    if M.generic:
        raise NotImplementedError("submodule generation is run on specialised modules")
    space = RowSpace()
    frontier = [vector]
    space.add(vector)
    basis = [vector]
    while frontier:
        new = []
        for v in frontier:
            for i in range(M.rd.n):
                for m in (M.E(i), M.F(i)):
                    w = m.apply(v)
                    if w and space.add(w):
                        new.append(w)
                        basis.append(w)
        frontier = new
    return basis
