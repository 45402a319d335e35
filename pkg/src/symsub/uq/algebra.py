"""Words in divided powers, K_mu and idempotents 1_lambda.

Symbols are tuples: ``('E', i, n)``, ``('F', i, n)``, ``('K', mu)``,
``('1', lam)`` with i a node index, mu in Y and lam in X.  Every word is kept
in the canonical shape ``monomial * K_mu * 1_lam``: torus factors and
idempotents are commuted to the right (picking up q-powers and weight
shifts), adjacent equal divided powers are merged, K_mu 1_lam collapses to
q^<mu,lam> 1_lam and clashing idempotents give zero.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from ..exactq import LaurentPoly, RatFunc, ONE, at_one, q_pow, qbinom, unit_inverse
from ..rootdata import RootDatum


def E(i, n=1):
    return ("E", i, n)


def F(i, n=1):
    return ("F", i, n)


def K(mu):
    return ("K", tuple(mu))


def idem(lam):
    return ("1", tuple(lam))


def _is_zero_vec(v):
    return all(x == 0 for x in v)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _scale(v, c):
    return tuple(c * x for x in v)


def normalize_word(rd: RootDatum, word):
    """Return (coefficient, canonical word) or (0, None)."""
    coeff_exp = 0
    mono = []
    mu = None
    lam = None
    for sym in word:
        kind = sym[0]
        if kind in ("E", "F"):
            _, i, n = sym
            if n == 0:
                continue
            sgn = 1 if kind == "E" else -1
            if mu is not None:
                coeff_exp += sgn * n * rd.pair(mu, rd.roots[i])
            if lam is not None:
                lam = tuple(l - sgn * n * a for l, a in zip(lam, rd.roots[i]))
            mono.append(sym)
        elif kind == "K":
            if _is_zero_vec(sym[1]):
                continue
            mu = sym[1] if mu is None else _add(mu, sym[1])
        elif kind == "1":
            if lam is None:
                lam = sym[1]
            elif lam != sym[1]:
                return 0, None
        else:
            raise ValueError(f"unknown symbol {sym!r}")
    # merge adjacent equal divided powers
    merged = []
    coeff = ONE
    for sym in mono:
        if merged and merged[-1][0] == sym[0] and merged[-1][1] == sym[1]:
            a = merged[-1][2]
            b = sym[2]
            coeff = coeff * qbinom(a + b, a, rd.cartan.eps(sym[1]))
            merged[-1] = (sym[0], sym[1], a + b)
        else:
            merged.append(sym)
    tail = []
    if lam is not None:
        if mu is not None:
            coeff_exp += rd.pair(mu, lam)
        tail.append(("1", lam))
    elif mu is not None and not _is_zero_vec(mu):
        tail.append(("K", mu))
    if coeff_exp:
        coeff = coeff * q_pow(coeff_exp)
    return coeff, tuple(merged) + tuple(tail)


def _lift(a, b):
    """Coerce a Fraction meeting a q-dependent scalar into Q(q)."""
    if isinstance(a, Fraction) and isinstance(b, (LaurentPoly, RatFunc)):
        return RatFunc.coerce(a), b
    if isinstance(b, Fraction) and isinstance(a, (LaurentPoly, RatFunc)):
        return a, RatFunc.coerce(b)
    return a, b


def _cmul(a, b):
    a, b = _lift(a, b)
    return a * b


def _cadd(a, b):
    a, b = _lift(a, b)
    return a + b


def _smul(c, k):
    if isinstance(k, LaurentPoly):
        kc = k.constant()
        if kc is not None:
            return c * kc
    return _cmul(c, k)


def _simplify_coeff(c):
    if isinstance(c, RatFunc):
        lp = c.as_laurent()
        if lp is not None:
            c = lp
    if isinstance(c, LaurentPoly):
        k = c.constant()
        if k is not None:
            return k
    return c


class AlgebraElement:
    """Finite linear combination of canonical words."""

    __slots__ = ("rd", "terms")

    def __init__(self, rd: RootDatum, terms=None):
        self.rd = rd
        self.terms = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                self._accumulate(w, c)

    def _accumulate(self, word, c):
        if c == 0:
            return
        k, w = normalize_word(self.rd, word)
        if w is None:
            return
        c = _smul(c, k)
        old = self.terms.get(w)
        new = c if old is None else _cadd(old, c)
        new = _simplify_coeff(new)
        if new == 0:
            self.terms.pop(w, None)
        else:
            self.terms[w] = new

    @classmethod
    def word(cls, rd, *symbols, coeff=1):
        return cls(rd, {tuple(symbols): coeff})

    @classmethod
    def one(cls, rd):
        return cls(rd, {(): 1})

    def copy(self):
        out = AlgebraElement(self.rd)
        out.terms = dict(self.terms)
        return out

    def __add__(self, other):
        out = self.copy()
        for w, c in other.terms.items():
            out._accumulate(w, c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        if s == 0:
            return AlgebraElement(self.rd)
        out = AlgebraElement(self.rd)
        out.terms = {w: _simplify_coeff(_cmul(c, s)) for w, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        out = AlgebraElement(self.rd)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._accumulate(w1 + w2, _cmul(c1, c2))
        return out

    def __rmul__(self, s):
        return self.scale(s)

    def __pow__(self, n):
        out = AlgebraElement.one(self.rd)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("AlgebraElement is unhashable")

    def map_words(self, f: Callable) -> "AlgebraElement":
        """Apply a multiplicative map given on symbols (f(sym) -> element)."""
        out = AlgebraElement(self.rd)
        for w, c in self.terms.items():
            prod = AlgebraElement.one(self.rd)
            for sym in w:
                prod = prod * f(sym)
            for w2, c2 in prod.terms.items():
                out._accumulate(w2, _cmul(c, c2))
        return out

    def map_coeffs(self, f) -> "AlgebraElement":
        out = AlgebraElement(self.rd)
        for w, c in self.terms.items():
            out._accumulate(w, f(c))
        return out

    def at_one(self):
        return self.map_coeffs(lambda c: at_one(c))

    def degree_terms(self):
        """Yield (word, coeff, degree) with degree a tuple over nodes."""
        for w, c in self.terms.items():
            yield w, c, word_degree(self.rd, w)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _word_key(kv[0]))

    def __repr__(self):
        return f"AlgebraElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            parts.append(f"({c})*{word_str(self.rd, w)}")
        return " + ".join(parts)


def _word_key(w):
    return tuple((s[0], str(s[1:])) for s in w)


def word_str(rd, w):
    if not w:
        return "1"
    out = []
    for s in w:
        if s[0] in ("E", "F"):
            node = rd.nodes[s[1]]
            out.append(f"{s[0]}{node}" + (f"^({s[2]})" if s[2] != 1 else ""))
        elif s[0] == "K":
            out.append(f"K{list(s[1])}")
        else:
            out.append(f"1{list(s[1])}")
    return "".join(out)


def word_degree(rd, w):
    deg = [0] * rd.n
    for s in w:
        if s[0] == "E":
            deg[s[1]] += s[2]
        elif s[0] == "F":
            deg[s[1]] -= s[2]
    return tuple(deg)


def gen(rd, *symbols, coeff=1) -> AlgebraElement:
    return AlgebraElement.word(rd, *symbols, coeff=coeff)


def Ki(rd, i, power=1):
    """K_i^power = K_{power * eps_i * alpha_i^vee}."""
    eps = rd.cartan.eps(i)
    return K(tuple(power * eps * x for x in rd.coroots[i]))


# -- automorphisms on symbols

def omega(x: AlgebraElement) -> AlgebraElement:
    def f(sym):
        if sym[0] == "E":
            return gen(x.rd, ("F",) + sym[1:])
        if sym[0] == "F":
            return gen(x.rd, ("E",) + sym[1:])
        if sym[0] == "K":
            return gen(x.rd, K(_scale(sym[1], -1)))
        return gen(x.rd, idem(_scale(sym[1], -1)))
    return x.map_words(f)


def xi(x: AlgebraElement, t) -> AlgebraElement:
    """Scale each word by t(degree); t maps node index -> unit."""
    out = AlgebraElement(x.rd)
    for w, c in x.terms.items():
        s = 1
        for i, d in enumerate(word_degree(x.rd, w)):
            if d > 0:
                s = s * (t[i] ** d)
            elif d < 0:
                s = s * (unit_inverse(t[i]) ** (-d))
        out._accumulate(w, _smul(c, s))
    return out


def tau_tilde(x: AlgebraElement, tau, tau_X, tau_Y) -> AlgebraElement:
    """E_i^(n) -> E_{tau i}^(n), F likewise, 1_lam -> 1_{tau lam},
    K_mu -> K_{tau mu} with tau on Y the adjoint of tau on X."""
    def f(sym):
        if sym[0] in ("E", "F"):
            return gen(x.rd, (sym[0], tau[sym[1]], sym[2]))
        if sym[0] == "K":
            return gen(x.rd, K(tau_Y(sym[1])))
        return gen(x.rd, idem(tau_X(sym[1])))
    return x.map_words(f)


def braid_symbol(rd: RootDatum, i: int, sym) -> AlgebraElement:
    """Lusztig's T''_{i,+1} on a single symbol."""
    eps = rd.cartan.eps(i)
    kind = sym[0]
    if kind == "K":
        return gen(rd, K(rd.reflect_Y(i, sym[1])))
    if kind == "1":
        return gen(rd, idem(rd.reflect_X(i, sym[1])))
    _, j, n = sym
    if j == i:
        sign = -1 if n % 2 else 1
        if kind == "E":
            # T(E_i^(n)) = (-1)^n q_i^{-n(n-1)} F_i^(n) K_i^n
            return gen(rd, F(i, n), Ki(rd, i, n), coeff=q_pow(-eps * n * (n - 1)) * sign)
        return gen(rd, Ki(rd, i, -n), E(i, n), coeff=q_pow(eps * n * (n - 1)) * sign)
    c = -rd.cartan.cartan(i, j)
    out = AlgebraElement(rd)
    top = n * c
    for r in range(top + 1):
        sign = -1 if r % 2 else 1
        if kind == "E":
            w = (E(i, top - r), E(j, n), E(i, r))
            out._accumulate(w, q_pow(-eps * r) * sign)
        else:
            w = (F(i, r), F(j, n), F(i, top - r))
            out._accumulate(w, q_pow(eps * r) * sign)
    return out


def braid_T(x: AlgebraElement, i: int) -> AlgebraElement:
    return x.map_words(lambda s: braid_symbol(x.rd, i, s))


def braid_T_word(x: AlgebraElement, word) -> AlgebraElement:
    """T_w = T_{i1} ... T_{ik} for the word (i1, ..., ik)."""
    for i in reversed(tuple(word)):
        x = braid_T(x, i)
    return x


def pbw_vector(rd: RootDatum, word, exps) -> AlgebraElement:
    """E_{i1}^(c1) T_{i1}(E_{i2}^(c2)) ... T_{i1}...T_{i(k-1)}(E_{ik}^(ck))."""
    out = AlgebraElement.one(rd)
    for k, (i, c) in enumerate(zip(word, exps)):
        out = out * braid_T_word(gen(rd, E(i, c)), word[:k])
    return out


def divided_exp(rd, kind, i, a, nmax) -> AlgebraElement:
    """sum_{n <= nmax} a^n X_i^(n) for X in {E, F}."""
    out = AlgebraElement.one(rd)
    for n in range(1, nmax + 1):
        out = out + gen(rd, (kind, i, n), coeff=a ** n)
    return out
