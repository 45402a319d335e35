"""Cartan data, root data and finite Weyl groups."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .linalg import int_det, matmul, matvec, rat_inverse, identity


class ValidationError(ValueError):
    """Input violates a structural condition; carries the offending data."""

    def __init__(self, condition: str, witness=None):
        self.condition = condition
        self.witness = witness
        super().__init__(f"{condition}: {witness!r}" if witness is not None else condition)


def _leading_minors_positive(form) -> bool:
    n = len(form)
    return all(int_det([row[:k] for row in form[:k]]) > 0 for k in range(1, n + 1))


@dataclass(frozen=True)
class CartanDatum:
    nodes: tuple
    form: tuple  # symmetric integer matrix, form[i][j] = i.j

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "form", tuple(tuple(int(x) for x in row) for row in self.form))

    @classmethod
    def from_matrix(cls, nodes, form, validate=True) -> "CartanDatum":
        cd = cls(tuple(nodes), tuple(tuple(r) for r in form))
        if validate:
            cd.validate()
        return cd

    def validate(self):
        n = len(self.nodes)
        if len(set(self.nodes)) != n:
            raise ValidationError("node labels must be distinct", self.nodes)
        if len(self.form) != n or any(len(r) != n for r in self.form):
            raise ValidationError("form must be square of size |I|", self.form)
        for i in range(n):
            for j in range(n):
                if self.form[i][j] != self.form[j][i]:
                    raise ValidationError("form not symmetric", (self.nodes[i], self.nodes[j]))
        for i in range(n):
            if self.form[i][i] not in (2, 4, 6):
                raise ValidationError("i.i must lie in {2,4,6}", (self.nodes[i], self.form[i][i]))
            for j in range(n):
                if i == j:
                    continue
                num = 2 * self.form[i][j]
                if num % self.form[i][i]:
                    raise ValidationError("2(i.j)/(i.i) not an integer", (self.nodes[i], self.nodes[j]))
                if num // self.form[i][i] not in (0, -1, -2, -3):
                    raise ValidationError("2(i.j)/(i.i) must lie in {0,-1,-2,-3}",
                                          (self.nodes[i], self.nodes[j], num // self.form[i][i]))
        if not _leading_minors_positive(self.form):
            raise ValidationError("form not positive definite (not of finite type)", self.form)

    @property
    def rank(self) -> int:
        return len(self.nodes)

    def eps(self, i: int) -> int:
        """epsilon_i = (i.i)/2 for node index i."""
        return self.form[i][i] // 2

    def cartan(self, i: int, j: int) -> int:
        """2(i.j)/(i.i) = <alpha_i^vee, alpha_j>."""
        return 2 * self.form[i][j] // self.form[i][i]

    @cached_property
    def cartan_matrix(self):
        n = self.rank
        return tuple(tuple(self.cartan(i, j) for j in range(n)) for i in range(n))

    def index(self, node) -> int:
        return self.nodes.index(node)

    def braid_order(self, i: int, j: int) -> int:
        if i == j:
            return 1
        p = self.cartan(i, j) * self.cartan(j, i)
        return {0: 2, 1: 3, 2: 4, 3: 6}[p]

    def key(self):
        return (self.nodes, self.form)


@dataclass(frozen=True)
class WeylElement:
    word: tuple  # node indices, applied right to left
    matrixX: tuple
    matrixY: tuple

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass
class WeylGroup:
    datum: "RootDatum"
    subset: tuple
    elements: list

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def longest(self) -> WeylElement:
        return max(self.elements, key=lambda w: (w.length, w.word))

    def by_word(self, word) -> WeylElement:
        mx = self.datum.word_matrix_X(word)
        for w in self.elements:
            if w.matrixX == mx:
                return w
        raise KeyError(word)


@dataclass(frozen=True)
class RootDatum:
    cartan: CartanDatum
    rankX: int
    roots: tuple      # roots[i] in X = Z^rankX
    coroots: tuple    # coroots[i] in Y = Z^rankX
    pairing: tuple    # <y, x> = y^T P x
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(tuple(int(c) for c in r) for r in self.roots))
        object.__setattr__(self, "coroots", tuple(tuple(int(c) for c in r) for r in self.coroots))
        object.__setattr__(self, "pairing", tuple(tuple(int(c) for c in r) for r in self.pairing))

    @classmethod
    def build(cls, cartan, rankX, roots, coroots, pairing, name="", validate=True):
        rd = cls(cartan, int(rankX), tuple(map(tuple, roots)), tuple(map(tuple, coroots)),
                 tuple(map(tuple, pairing)), name)
        if validate:
            rd.validate()
        return rd

    def validate(self):
        n = self.cartan.rank
        r = self.rankX
        if len(self.roots) != n or len(self.coroots) != n:
            raise ValidationError("need one root and one coroot per node", (len(self.roots), len(self.coroots)))
        for v in self.roots + self.coroots:
            if len(v) != r:
                raise ValidationError("vector length differs from rankX", v)
        if len(self.pairing) != r or any(len(row) != r for row in self.pairing):
            raise ValidationError("pairing must be rankX x rankX", self.pairing)
        det = int_det(self.pairing)
        if abs(det) != 1:
            raise ValidationError("pairing matrix not unimodular", det)
        for i in range(n):
            for j in range(n):
                got = self.pair(self.coroots[i], self.roots[j])
                want = self.cartan.cartan(i, j)
                if got != want:
                    raise ValidationError("<alpha_i^vee, alpha_j> differs from the Cartan datum",
                                          (self.cartan.nodes[i], self.cartan.nodes[j], got, want))

    @property
    def nodes(self):
        return self.cartan.nodes

    @property
    def n(self):
        return self.cartan.rank

    def pair(self, y, x) -> int:
        P = self.pairing
        return sum(y[a] * P[a][b] * x[b] for a in range(self.rankX) for b in range(self.rankX) if y[a] and x[b])

    def pairings(self, lam) -> tuple:
        """(<alpha_i^vee, lam>)_i."""
        return tuple(self.pair(c, lam) for c in self.coroots)

    # -- reflections
    @cached_property
    def _refl_X(self):
        out = []
        r = self.rankX
        for i in range(self.n):
            cols = []
            for b in range(r):
                e = tuple(int(k == b) for k in range(r))
                cols.append(self.reflect_X(i, e))
            out.append(tuple(tuple(cols[b][a] for b in range(r)) for a in range(r)))
        return out

    @cached_property
    def _refl_Y(self):
        out = []
        r = self.rankX
        for i in range(self.n):
            cols = []
            for b in range(r):
                e = tuple(int(k == b) for k in range(r))
                cols.append(self.reflect_Y(i, e))
            out.append(tuple(tuple(cols[b][a] for b in range(r)) for a in range(r)))
        return out

    def reflect_X(self, i: int, lam) -> tuple:
        c = self.pair(self.coroots[i], lam)
        return tuple(l - c * a for l, a in zip(lam, self.roots[i]))

    def reflect_Y(self, i: int, mu) -> tuple:
        c = self.pair(mu, self.roots[i])
        return tuple(m - c * a for m, a in zip(mu, self.coroots[i]))

    def reflection_matrix_X(self, i):
        return self._refl_X[i]

    def reflection_matrix_Y(self, i):
        return self._refl_Y[i]

    def word_matrix_X(self, word):
        m = identity(self.rankX)
        for i in word:
            m = matmul(m, self._refl_X[i])
        return tuple(map(tuple, m))

    def word_matrix_Y(self, word):
        m = identity(self.rankX)
        for i in word:
            m = matmul(m, self._refl_Y[i])
        return tuple(map(tuple, m))

    def act_X(self, word, lam):
        for i in reversed(word):
            lam = self.reflect_X(i, lam)
        return lam

    def act_Y(self, word, mu):
        for i in reversed(word):
            mu = self.reflect_Y(i, mu)
        return mu

    # -- Weyl groups
    def weyl_enumerate(self, subset=None, rank_bound: int = 4) -> WeylGroup:
        subset = tuple(range(self.n)) if subset is None else tuple(sorted(subset))
        if len(subset) > rank_bound:
            raise ValidationError("rank exceeds the Weyl enumeration bound", (len(subset), rank_bound))
        key = (subset,)
        cache = self.__dict__.setdefault("_weyl_cache", {})
        if key in cache:
            return cache[key]
        ident = tuple(map(tuple, identity(self.rankX)))
        found = {ident: ()}
        level = [ident]
        mats = {ident: (ident, ident)}
        while level:
            cands = {}
            for m in level:
                w = found[m]
                mx, my = mats[m]
                for j in subset:
                    nm = tuple(map(tuple, matmul(mx, self._refl_X[j])))
                    if nm in found:
                        continue
                    word = w + (j,)
                    if nm not in cands or word < cands[nm][0]:
                        cands[nm] = (word, tuple(map(tuple, matmul(my, self._refl_Y[j]))))
            level = []
            for nm, (word, ny) in sorted(cands.items(), key=lambda kv: kv[1][0]):
                found[nm] = word
                mats[nm] = (nm, ny)
                level.append(nm)
        elements = [WeylElement(found[m], m, mats[m][1]) for m in found]
        elements.sort(key=lambda w: (w.length, w.word))
        wg = WeylGroup(self, subset, elements)
        cache[key] = wg
        return wg

    def longest_element(self, subset=None) -> WeylElement:
        return self.weyl_enumerate(subset).longest

    def reduced_words(self, w: WeylElement, subset=None):
        """All reduced words of w, sorted; a word of length l(w) with the
        right matrix is automatically reduced."""
        subset = tuple(range(self.n)) if subset is None else tuple(sorted(subset))
        out = []

        def walk(prefix, mx):
            if len(prefix) == w.length:
                if mx == w.matrixX:
                    out.append(prefix)
                return
            for j in subset:
                if prefix and prefix[-1] == j:
                    continue
                walk(prefix + (j,), tuple(map(tuple, matmul(mx, self._refl_X[j]))))

        walk((), tuple(map(tuple, identity(self.rankX))))
        return sorted(out)

    # -- positive (co)roots in simple coordinates
    def positive_roots(self, subset=None):
        """Positive roots of the subsystem as coefficient dicts {i: c}."""
        return self._positive(subset, coroot=False)

    def positive_coroots(self, subset=None):
        return self._positive(subset, coroot=True)

    def _positive(self, subset, coroot):
        subset = tuple(range(self.n)) if subset is None else tuple(sorted(subset))
        idx = {j: k for k, j in enumerate(subset)}
        C = self.cartan

        def refl(i, v):
            # v is a tuple of coefficients on the simple (co)roots of subset
            if coroot:
                s = sum(v[idx[j]] * C.cartan(j, i) for j in subset)
            else:
                s = sum(v[idx[j]] * C.cartan(i, j) for j in subset)
            out = list(v)
            out[idx[i]] -= s
            return tuple(out)

        start = [tuple(int(k == idx[j]) for k in range(len(subset))) for j in subset]
        seen = set(start)
        frontier = list(start)
        while frontier:
            new = []
            for v in frontier:
                for i in subset:
                    w = refl(i, v)
                    if w not in seen:
                        seen.add(w)
                        new.append(w)
            frontier = new
        pos = [v for v in seen if all(c >= 0 for c in v)]
        pos.sort(key=lambda v: (sum(v), v))
        return [{j: v[idx[j]] for j in subset if v[idx[j]]} for v in pos]

    def combine_X(self, coeffs: dict):
        out = [0] * self.rankX
        for i, c in coeffs.items():
            for a in range(self.rankX):
                out[a] += c * self.roots[i][a]
        return tuple(out)

    def combine_Y(self, coeffs: dict):
        out = [0] * self.rankX
        for i, c in coeffs.items():
            for a in range(self.rankX):
                out[a] += c * self.coroots[i][a]
        return tuple(out)

    def two_rho_coroot(self, subset=None) -> tuple:
        total = [0] * self.rankX
        for c in self.positive_coroots(subset):
            v = self.combine_Y(c)
            total = [x + y for x, y in zip(total, v)]
        return tuple(total)

    def two_rho_pairing(self, subset, i: int) -> int:
        """<2 rho^vee_subset, alpha_i>."""
        return self.pair(self.two_rho_coroot(subset), self.roots[i])

    def dominant(self, lam) -> bool:
        return all(c >= 0 for c in self.pairings(lam))

    def is_semisimple(self) -> bool:
        """Roots span X tensor Q."""
        from .linalg import rref_rank
        return rref_rank([list(r) for r in self.roots]) == self.rankX

    def solve_X_from_roots(self, images):
        """Linear map on X (integer matrix) sending alpha_i to images[i].

        Requires the roots to span X tensor Q; raises if the result is not
        integral.
        """
        if not self.is_semisimple():
            raise ValidationError("roots do not span X tensor Q; map on X is not determined", self.name)
        # choose rankX independent roots
        from .linalg import row_basis
        chosen = []
        for i in range(self.n):
            if len(row_basis([list(self.roots[k]) for k in chosen + [i]])) == len(chosen) + 1:
                chosen.append(i)
            if len(chosen) == self.rankX:
                break
        R = [[self.roots[i][a] for i in chosen] for a in range(self.rankX)]
        T = [[images[i][a] for i in chosen] for a in range(self.rankX)]
        M = matmul(T, rat_inverse(R))
        if any(Fraction(x).denominator != 1 for row in M for x in row):
            raise ValidationError("forced map is not integral on X", M)
        M = tuple(tuple(int(x) for x in row) for row in M)
        for i in range(self.n):
            if matvec(M, self.roots[i]) != tuple(images[i]):
                raise ValidationError("map inconsistent on dependent roots", i)
        return M

    def weyl_dimension(self, lam) -> int:
        """Dimension of L(lam) from the Weyl dimension formula."""
        n = self.pairings(lam)
        num = Fraction(1)
        for c in self.positive_coroots():
            a = sum(k * (n[i] + 1) for i, k in c.items())
            b = sum(k for k in c.values())
            num *= Fraction(a, b)
        assert num.denominator == 1
        return int(num)


def simply_connected(cartan: CartanDatum, name="") -> RootDatum:
    """X = weight lattice in the fundamental-weight basis, Y = coroot lattice."""
    n = cartan.rank
    roots = [tuple(cartan.cartan(i, j) for i in range(n)) for j in range(n)]
    coroots = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    return RootDatum.build(cartan, n, roots, coroots, identity(n), name)


def adjoint(cartan: CartanDatum, name="") -> RootDatum:
    """X = root lattice in the simple-root basis."""
    n = cartan.rank
    roots = [tuple(int(k == j) for k in range(n)) for j in range(n)]
    coroots = [tuple(cartan.cartan(i, k) for k in range(n)) for i in range(n)]
    return RootDatum.build(cartan, n, roots, coroots, identity(n), name)


def cartan_type(kind: str, rank: int) -> CartanDatum:
    """Standard Cartan data; B2 and C2 use node 1 short, node 2 long."""
    kind = kind.upper()
    nodes = tuple(range(1, rank + 1))
    form = [[0] * rank for _ in range(rank)]
    if kind == "A":
        for i in range(rank):
            form[i][i] = 2
            if i + 1 < rank:
                form[i][i + 1] = form[i + 1][i] = -1
    elif kind in ("B", "C"):
        if rank == 2:
            form = [[2, -2], [-2, 4]]
        elif kind == "B":
            for i in range(rank):
                form[i][i] = 4 if i < rank - 1 else 2
                if i + 1 < rank:
                    form[i][i + 1] = form[i + 1][i] = -2
        else:
            for i in range(rank):
                form[i][i] = 2 if i < rank - 1 else 4
                if i + 1 < rank:
                    form[i][i + 1] = form[i + 1][i] = -1 if i + 1 < rank - 1 else -2
    elif kind == "G" and rank == 2:
        form = [[2, -3], [-3, 6]]
    elif kind == "A1XA1" or (kind == "D" and rank == 2):
        form = [[2, 0], [0, 2]]
        nodes = (1, 2)
    else:
        raise ValidationError("unsupported Cartan type", (kind, rank))
    return CartanDatum.from_matrix(nodes, form)
