"""Sparse matrices over exact rings and integer lattice utilities."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import kernels


class SMat:
    """Sparse matrix stored as columns ``{col: {row: value}}``.

    Entries are any exact scalars (int, Fraction, LaurentPoly, RatFunc);
    zeros are never stored.
    """

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else {}

    @classmethod
    def identity(cls, n: int, one=1):
        return cls(n, n, {k: {k: one} for k in range(n)})

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols, {})

    @classmethod
    def from_dense(cls, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = {}
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                if v != 0:
                    cols.setdefault(c, {})[r] = v
        return cls(nrows, ncols, cols)

    @classmethod
    def diagonal(cls, values):
        return cls(len(values), len(values), {k: {k: v} for k, v in enumerate(values) if v != 0})

    def to_dense(self, zero=0):
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for c, col in self.cols.items():
            for r, v in col.items():
                out[r][c] = v
        return out

    def entry(self, r, c, zero=0):
        return self.cols.get(c, {}).get(r, zero)

    def nnz(self):
        return sum(len(c) for c in self.cols.values())

    def __matmul__(self, other: "SMat") -> "SMat":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SMat(self.nrows, other.ncols, kernels.spmm(self.cols, other.cols))

    def apply(self, vec: dict) -> dict:
        return kernels.spmv(self.cols, vec)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = {c: dict(col) for c, col in self.cols.items()}
        for c, col in other.cols.items():
            tgt = out.setdefault(c, {})
            for r, v in col.items():
                w = tgt.get(r)
                w = (v if sign > 0 else -v) if w is None else (w + v if sign > 0 else w - v)
                if w != 0:
                    tgt[r] = w
                else:
                    tgt.pop(r, None)
            if not tgt:
                del out[c]
        return SMat(self.nrows, self.ncols, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "SMat":
        if s == 0:
            return SMat(self.nrows, self.ncols, {})
        if s == 1:
            return self
        out = {}
        for c, col in self.cols.items():
            nc = {}
            for r, v in col.items():
                w = v * s
                if w != 0:
                    nc[r] = w
            if nc:
                out[c] = nc
        return SMat(self.nrows, self.ncols, out)

    def map(self, f) -> "SMat":
        out = {}
        for c, col in self.cols.items():
            nc = {}
            for r, v in col.items():
                w = f(v)
                if w != 0:
                    nc[r] = w
            if nc:
                out[c] = nc
        return SMat(self.nrows, self.ncols, out)

    def restrict_cols(self, keep) -> "SMat":
        keep = set(keep)
        return SMat(self.nrows, self.ncols, {c: col for c, col in self.cols.items() if c in keep})

    def transpose(self) -> "SMat":
        out = {}
        for c, col in self.cols.items():
            for r, v in col.items():
                out.setdefault(r, {})[c] = v
        return SMat(self.ncols, self.nrows, out)

    def is_zero(self):
        return not self.cols

    def __eq__(self, other):
        if not isinstance(other, SMat):
            return NotImplemented
        if self.shape != other.shape:
            return False
        keys = set(self.cols) | set(other.cols)
        for c in keys:
            a = self.cols.get(c, {})
            b = other.cols.get(c, {})
            if set(a) != set(b):
                return False
            for r, v in a.items():
                if not (v == b[r]):
                    return False
        return True

    def __hash__(self):
        raise TypeError("SMat is unhashable")

    def first_difference(self, other):
        """(row, col, mine, theirs) for one differing entry, or None."""
        keys = sorted(set(self.cols) | set(other.cols))
        for c in keys:
            a = self.cols.get(c, {})
            b = other.cols.get(c, {})
            for r in sorted(set(a) | set(b)):
                x, y = a.get(r, 0), b.get(r, 0)
                if not (x == y):
                    return (r, c, x, y)
        return None

    def __repr__(self):
        return f"SMat({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def kron(a: SMat, b: SMat) -> SMat:
    """Kronecker product with index (i, j) -> i * b.n + j."""
    out = {}
    bn_r, bn_c = b.nrows, b.ncols
    for ca, cola in a.cols.items():
        for cb, colb in b.cols.items():
            col = {}
            for ra, va in cola.items():
                base = ra * bn_r
                for rb, vb in colb.items():
                    w = va * vb
                    if w != 0:
                        col[base + rb] = w
            if col:
                out[ca * bn_c + cb] = col
    return SMat(a.nrows * b.nrows, a.ncols * b.ncols, out)


def matpow(m: SMat, n: int, one=1) -> SMat:
    out = SMat.identity(m.nrows, one)
    for _ in range(n):
        out = m @ out
    return out


# -- fraction-free elimination over an exact integral domain

def ff_solve(basis_vecs, targets, ring):
    """Express each target vector in terms of independent ``basis_vecs``.

    Vectors are sparse dicts over a common row index set.  Uses fraction-free
    Gauss-Jordan with exact division; returns ``(coords, integral)`` where
    ``coords[t]`` is the coefficient list of target t and ``integral`` says
    whether every coefficient stayed in the ring.  Raises ValueError if a
    target is outside the span or the basis is dependent.
    """
    r = len(basis_vecs)
    m = len(targets)
    rows = sorted(set().union(*[set(v) for v in basis_vecs], *[set(v) for v in targets]) if (basis_vecs or targets) else set())
    zero = ring.zero
    mat = []
    for row in rows:
        mat.append([v.get(row, zero) for v in basis_vecs] + [t.get(row, zero) for t in targets])
    prev = ring.one
    nrow = len(mat)
    for k in range(r):
        piv = None
        for i in range(k, nrow):
            if mat[i][k]:
                piv = i
                break
        if piv is None:
            raise ValueError("basis vectors are linearly dependent")
        if piv != k:
            mat[k], mat[piv] = mat[piv], mat[k]
        pk = mat[k]
        d = pk[k]
        for i in range(nrow):
            if i == k:
                continue
            row = mat[i]
            f = row[k]
            if not f:
                if d != prev:
                    for j in range(r + m):
                        if j != k and row[j]:
                            row[j] = _ediv(d * row[j], prev, ring)
                continue
            for j in range(r + m):
                if j == k:
                    continue
                num = d * row[j] - f * pk[j]
                row[j] = _ediv(num, prev, ring) if num else zero
            row[k] = zero
        prev = d
    for i in range(r, nrow):
        if any(mat[i][r:]):
            raise ValueError("target outside the span of the basis")
    det = prev
    coords = []
    integral = True
    for t in range(m):
        col = []
        for k in range(r):
            x = mat[k][r + t]
            if not x:
                col.append(zero)
                continue
            qv = ring.try_div(x, det)
            if qv is None:
                integral = False
                qv = ring.field_div(x, det)
            col.append(qv)
        coords.append(col)
    return coords, integral


def _ediv(a, b, ring):
    if b == ring.one:
        return a
    qv = ring.try_div(a, b)
    if qv is None:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return qv


def independent_subset(vecs, ring, order=None):
    """Greedy maximal independent subset (indices), scanning ``order``."""
    order = list(range(len(vecs))) if order is None else list(order)
    reduced = []  # (pivot_row, pivot_val, vec)
    chosen = []
    for idx in order:
        v = dict(vecs[idx])
        for prow, pval, u in reduced:
            f = v.get(prow)
            if f:
                nv = {}
                for row in set(v) | set(u):
                    w = pval * v.get(row, ring.zero) - f * u.get(row, ring.zero)
                    if w:
                        nv[row] = w
                v = _primitive(nv, ring)
        if v:
            prow = min(v)
            reduced.append((prow, v[prow], v))
            chosen.append(idx)
    return chosen


def _primitive(v, ring):
    if ring.name != "generic":
        from math import gcd
        g = 0
        for x in v.values():
            if isinstance(x, int):
                g = gcd(g, x)
            else:
                return v
        if g > 1:
            return {k: x // g for k, x in v.items()}
        return v
    from .exactq import LaurentPoly, laurent_gcd
    if not all(isinstance(x, LaurentPoly) for x in v.values()):
        return v
    g = None
    for x in v.values():
        g = x if g is None else laurent_gcd(g, x)
        if g.is_monomial() and abs(next(iter(g.coeffs.values()))) == 1:
            return v
    if g is None:
        return v
    return {k: x.exact_div(g) for k, x in v.items()}


def choose_lattice_basis(vecs, ring, order, rank, max_tries=400):
    """Pick ``rank`` candidates spanning the ring-lattice of all candidates.

    Tries the greedy choice first, then other subsets in lexicographic order.
    Returns ``(indices, coords, integral)``.
    """
    first = independent_subset(vecs, ring, order)
    tried = 0
    best = None
    for subset in _subsets_first(first, order, rank):
        tried += 1
        if tried > max_tries:
            break
        basis = [vecs[i] for i in subset]
        try:
            coords, integral = ff_solve(basis, vecs, ring)
        except ValueError:
            continue
        if best is None:
            best = (list(subset), coords, integral)
        if integral:
            return list(subset), coords, True
    return best


def _subsets_first(first, order, rank):
    yield tuple(first)
    for combo in combinations(order, rank):
        if list(combo) != list(first):
            yield combo


# -- rational row reduction

def rref_rank(rows):
    """Rank of a list of Fraction/int row vectors (lists)."""
    return len(row_basis(rows))


def row_basis(rows):
    """Echelon basis (list of (pivot, row)) of the row span over Q."""
    basis = []
    for row in rows:
        v = [Fraction(x) for x in row]
        for piv, b in basis:
            if v[piv]:
                f = v[piv]
                v = [x - f * y for x, y in zip(v, b)]
        nz = next((k for k, x in enumerate(v) if x), None)
        if nz is None:
            continue
        f = v[nz]
        v = [x / f for x in v]
        # keep reduced form
        new_basis = []
        for piv, b in basis:
            if b[nz]:
                g = b[nz]
                b = [x - g * y for x, y in zip(b, v)]
            new_basis.append((piv, b))
        new_basis.append((nz, v))
        basis = new_basis
    return basis


class RowSpace:
    """Incremental span over Q of sparse vectors ``{index: Fraction}``."""

    def __init__(self):
        self.pivots = {}  # pivot index -> normalised vector

    def reduce(self, v: dict) -> dict:
        v = {k: Fraction(x) for k, x in v.items() if x}
        for p in sorted(self.pivots):
            f = v.get(p)
            if f:
                for k, x in self.pivots[p].items():
                    w = v.get(k, 0) - f * x
                    if w:
                        v[k] = w
                    else:
                        v.pop(k, None)
        return v

    def add(self, v: dict) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        f = r[p]
        r = {k: x / f for k, x in r.items()}
        for q, u in list(self.pivots.items()):
            g = u.get(p)
            if g:
                for k, x in r.items():
                    w = u.get(k, 0) - g * x
                    if w:
                        u[k] = w
                    else:
                        u.pop(k, None)
        self.pivots[p] = r
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: dict):
        """Coefficients of v on the normalised pivot vectors, or None."""
        r = self.reduce(v)
        if r:
            return None
        vv = {k: Fraction(x) for k, x in v.items() if x}
        return {p: vv.get(p, Fraction(0)) for p in self.pivots}

    def __len__(self):
        return len(self.pivots)


# -- integer matrices (dense lists)

def int_det(m):
    n = len(m)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    assert det.denominator == 1
    return int(det)


def rat_inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        f = a[k][k]
        a[k] = [x / f for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                g = a[i][k]
                a[i] = [x - g * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def matvec(a, v):
    return tuple(sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a)))


def transpose(a):
    return [list(r) for r in zip(*a)] if a else []


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a):
    """Return (U, D, V) with U*a*V = D diagonal, U and V unimodular.

    Diagonal entries are nonnegative and each divides the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f*row src
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if d[i][t]:
                    f = d[i][t] // d[t][t]
                    add_row(t, i, -f)
                    if d[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if d[t][j]:
                    f = d[t][j] // d[t][t]
                    add_col(t, j, -f)
                    if d[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # divisibility condition
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if d[i][j] % d[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


def integer_kernel(a):
    """Saturated Z-basis (list of column tuples) of {x : a x = 0}."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    _, d, v = smith_normal_form(a)
    out = []
    for j in range(n):
        if j >= m or d[j][j] == 0:
            out.append(tuple(v[i][j] for i in range(n)))
    return out
