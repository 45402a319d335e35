"""Exact arithmetic over Z[q, q^-1] and Q(q).

``LaurentPoly`` is an immutable sparse exponent map with zero coefficients
pruned.  ``RatFunc`` is a reduced fraction of Laurent polynomials.  Quantum
integers, factorials and binomials are built from these; binomials go
through exact division and raise on a remainder.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd
from typing import Union

from . import kernels

Scalar = Union[int, "LaurentPoly", "RatFunc"]


class LaurentPoly:
    __slots__ = ("_c", "_h")

    def __init__(self, coeffs=None):
        if coeffs is None:
            self._c = {}
        elif isinstance(coeffs, int):
            self._c = {0: coeffs} if coeffs else {}
        else:
            self._c = {int(e): int(c) for e, c in dict(coeffs).items() if c}
        self._h = None

    @classmethod
    def _raw(cls, d: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = d
        obj._h = None
        return obj

    @classmethod
    def q(cls, k: int = 1, c: int = 1) -> "LaurentPoly":
        return cls._raw({k: c} if c else {})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls._raw({0: x} if x else {})
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- structure
    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def valuation(self) -> int:
        return min(self._c)

    def degree(self) -> int:
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_unit(self) -> bool:
        return len(self._c) == 1 and abs(next(iter(self._c.values()))) == 1

    def constant(self):
        """Return the int value if constant, else None."""
        if not self._c:
            return 0
        if len(self._c) == 1 and 0 in self._c:
            return self._c[0]
        return None

    # -- arithmetic
    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            return LaurentPoly._raw(kernels.lp_add(self._c, other._c))
        if isinstance(other, int):
            return LaurentPoly._raw(kernels.lp_add(self._c, {0: other} if other else {}))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, LaurentPoly):
            return LaurentPoly._raw(kernels.lp_sub(self._c, other._c))
        if isinstance(other, int):
            return LaurentPoly._raw(kernels.lp_sub(self._c, {0: other} if other else {}))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return LaurentPoly._raw(kernels.lp_sub({0: other} if other else {}, self._c))
        return NotImplemented

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return LaurentPoly._raw(kernels.lp_mul(self._c, other._c))
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: c * other for e, c in self._c.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ArithmeticError("negative power of a non-unit Laurent polynomial")
            (e, c), = self._c.items()
            return LaurentPoly._raw({e * n: c ** (-n) if c == -1 else 1})
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        return RatFunc(self, other)

    def __rtruediv__(self, other):
        return RatFunc(other, self)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly._raw({e + k: c for e, c in self._c.items()})

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw({-e: c for e, c in self._c.items()})

    def substitute_power(self, k: int) -> "LaurentPoly":
        """q -> q^k."""
        if k == 0:
            return LaurentPoly.coerce(sum(self._c.values()))
        return LaurentPoly._raw({e * k: c for e, c in self._c.items()})

    def exact_div(self, other) -> "LaurentPoly":
        q = self.try_div(other)
        if q is None:
            raise ArithmeticError(f"{other} does not divide {self} in Z[q,q^-1]")
        return q

    def try_div(self, other):
        """Quotient in Z[q,q^-1], or None when the division is not exact."""
        other = LaurentPoly.coerce(other)
        if not other._c:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self._c:
            return ZERO
        if len(other._c) == 1:
            (e, c), = other._c.items()
            out = {}
            for k, v in self._c.items():
                qv, r = divmod(v, c)
                if r:
                    return None
                out[k - e] = qv
            return LaurentPoly._raw(out)
        va, vb = self.valuation(), other.valuation()
        a = _dense(self, va)
        b = _dense(other, vb)
        quo = _poly_divexact(a, b)
        if quo is None:
            return None
        return _from_dense(quo, va - vb)

    # -- evaluation
    def eval_at_one(self) -> int:
        return sum(self._c.values())

    def evaluate(self, x):
        """Evaluate at a nonzero int, Fraction or similar field element."""
        total = 0
        for e, c in self._c.items():
            total += c * (x ** e if e >= 0 else Fraction(1) / (x ** (-e)))
        return total

    def evaluate_mod(self, x: int, p: int) -> int:
        total = 0
        for e, c in self._c.items():
            total += c * pow(x, e, p)
        return total % p

    # -- comparison
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._c.items()))
        return self._h

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, c in sorted(self._c.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if mag == 1 else f"{mag}*{qpart}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self):
        return [[e, c] for e, c in sorted(self._c.items())]


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
Q = LaurentPoly._raw({1: 1})


# -- dense polynomial helpers (lists, low degree first)

def _dense(p: LaurentPoly, v: int) -> list:
    out = [0] * (p.degree() - v + 1)
    for e, c in p._c.items():
        out[e - v] = c
    return out


def _from_dense(a, shift: int) -> LaurentPoly:
    return LaurentPoly._raw({i + shift: c for i, c in enumerate(a) if c})


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divexact(a, b):
    a = list(a)
    _trim(a)
    b = _trim(list(b))
    if not a:
        return []
    if len(a) < len(b):
        return None
    lb = b[-1]
    nz = [(j, bj) for j, bj in enumerate(b) if bj]
    quo = [0] * (len(a) - len(b) + 1)
    for k in range(len(quo) - 1, -1, -1):
        top = a[k + len(b) - 1]
        if top:
            qk, r = divmod(top, lb)
            if r:
                return None
            quo[k] = qk
            for j, bj in nz:
                a[k + j] -= qk * bj
    if any(a):
        return None
    return quo


def _content(a) -> int:
    g = 0
    for c in a:
        g = igcd(g, c)
    return g


def _prem(a, b):
    """Pseudo-remainder of dense integer polynomials."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [lb * c for c in a]
        for j, bj in enumerate(b):
            a[shift + j] -= la * bj
        _trim(a)
    return a


def _poly_gcd(a, b):
    """Primitive gcd in Z[q] via the primitive remainder sequence."""
    a = _trim(list(a))
    b = _trim(list(b))
    if not a:
        return b
    if not b:
        return a
    ca, cb = _content(a), _content(b)
    g = igcd(ca, cb)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _trim(_prem(a, b))
        if not r:
            break
        cr = _content(r)
        a, b = b, [c // cr for c in r]
    if b[-1] < 0:
        b = [-c for c in b]
    return [g * c for c in b]


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd normalised to valuation 0 and positive leading coefficient."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    g = _poly_gcd(_dense(a, a.valuation()), _dense(b, b.valuation()))
    return _from_dense(g, 0)


class RatFunc:
    """Element of Q(q) as num/den with a canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, _reduce=True):
        num = LaurentPoly.coerce(num) if not isinstance(num, RatFunc) else num
        den = LaurentPoly.coerce(den) if not isinstance(den, RatFunc) else den
        if isinstance(num, RatFunc) or isinstance(den, RatFunc):
            a = num if isinstance(num, RatFunc) else RatFunc(num)
            b = den if isinstance(den, RatFunc) else RatFunc(den)
            num, den = a.num * b.den, a.den * b.num
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        if _reduce:
            num, den = _reduce_pair(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Fraction):
            return RatFunc(LaurentPoly.coerce(x.numerator), LaurentPoly.coerce(x.denominator))
        return RatFunc(LaurentPoly.coerce(x), ONE, _reduce=False)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def as_laurent(self):
        """The Laurent polynomial equal to self, or None."""
        return self.num.try_div(self.den)

    def __add__(self, other):
        if isinstance(other, Fraction):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            try:
                other = LaurentPoly.coerce(other)
            except TypeError:
                return NotImplemented
            return RatFunc(self.num + other * self.den, self.den)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Fraction):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            try:
                other = LaurentPoly.coerce(other)
            except TypeError:
                return NotImplemented
            return RatFunc(self.num * other, self.den)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den ** (-n), self.num ** (-n))
        return RatFunc(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly, Fraction)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def eval_at_one(self) -> Fraction:
        d = self.den.eval_at_one()
        if d == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at q=1")
        return Fraction(self.num.eval_at_one(), d)

    def bar(self):
        return RatFunc(self.num.bar(), self.den.bar())

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def _reduce_pair(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return ZERO, ONE
    if den.is_monomial():
        (e, c), = den._c.items()
        if c == 1 or c == -1:
            return (num.shift(-e) * c), ONE
    g = laurent_gcd(num, den)
    if g != ONE:
        num = num.exact_div(g)
        den = den.exact_div(g)
    # normalise den to valuation 0 with positive leading coefficient
    v = den.valuation()
    num, den = num.shift(-v), den.shift(-v)
    if den._c[den.degree()] < 0:
        num, den = -num, -den
    return num, den


# -- quantum integers

@lru_cache(maxsize=None)
def qint(n: int, eps: int = 1) -> LaurentPoly:
    """[n] in the variable q^eps."""
    if n == 0:
        return ZERO
    m = abs(n)
    sign = 1 if n > 0 else -1
    return LaurentPoly._raw({eps * (m - 1 - 2 * k): sign for k in range(m)})


@lru_cache(maxsize=None)
def qfact(n: int, eps: int = 1) -> LaurentPoly:
    if n < 0:
        raise ValueError("q-factorial of a negative integer")
    out = ONE
    for k in range(1, n + 1):
        out = out * qint(k, eps)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, d: int, eps: int = 1) -> LaurentPoly:
    """[n choose d] = [n][n-1]...[n-d+1] / [d]!, by exact division.

    The quotient is built one factor at a time, [n choose k] =
    [n choose k-1] [n-k+1] / [k], so every division is exact and small.
    """
    if d < 0:
        raise ValueError("q-binomial with negative lower index")
    if d == 0:
        return ONE
    return (qbinom(n, d - 1, eps) * qint(n - d + 1, eps)).exact_div(qint(d, eps))


def q_pow(k: int) -> LaurentPoly:
    return LaurentPoly._raw({k: 1})


# -- coefficient rings used by module builders

class GenericRing:
    """Z[q, q^-1] with Q(q) as the fallback for non-integral quotients."""

    name = "generic"

    zero = ZERO
    one = ONE

    @staticmethod
    def qint(n, eps=1):
        return qint(n, eps)

    @staticmethod
    def qfact(n, eps=1):
        return qfact(n, eps)

    @staticmethod
    def qpow(k):
        return q_pow(k)

    @staticmethod
    def from_int(n):
        return LaurentPoly.coerce(n)

    @staticmethod
    def try_div(a, b):
        if isinstance(a, RatFunc) or isinstance(b, RatFunc):
            r = RatFunc.coerce(a) / RatFunc.coerce(b)
            return r.as_laurent()
        return LaurentPoly.coerce(a).try_div(b)

    @staticmethod
    def field_div(a, b):
        r = RatFunc.coerce(a) / RatFunc.coerce(b)
        lp = r.as_laurent()
        return r if lp is None else lp

    @staticmethod
    def is_zero(a):
        return not a


class ClassicalRing:
    """Z with Q as fallback: the q = 1 shadow of ``GenericRing``."""

    name = "classical"

    zero = 0
    one = 1

    @staticmethod
    def qint(n, eps=1):
        return n

    @staticmethod
    def qfact(n, eps=1):
        out = 1
        for k in range(2, n + 1):
            out *= k
        return out

    @staticmethod
    def qpow(k):
        return 1

    @staticmethod
    def from_int(n):
        return n

    @staticmethod
    def try_div(a, b):
        r = Fraction(a) / Fraction(b)
        return int(r) if r.denominator == 1 else None

    @staticmethod
    def field_div(a, b):
        r = Fraction(a) / Fraction(b)
        return int(r) if r.denominator == 1 else r

    @staticmethod
    def is_zero(a):
        return a == 0


def at_one(x):
    """Specialise a scalar at q = 1 (int or Fraction result)."""
    if isinstance(x, LaurentPoly):
        return x.eval_at_one()
    if isinstance(x, RatFunc):
        v = x.eval_at_one()
        return int(v) if v.denominator == 1 else v
    if isinstance(x, (int, Fraction)):
        return x
    raise TypeError(f"cannot specialise {type(x).__name__}")


def unit_inverse(u):
    """Inverse of a unit of Z[q, q^-1] (+-q^k) or of +-1."""
    if isinstance(u, int):
        if u in (1, -1):
            return u
        raise ArithmeticError(f"{u} is not a unit")
    if isinstance(u, LaurentPoly) and u.is_unit():
        return u ** -1
    if isinstance(u, (RatFunc, Fraction)):
        return 1 / u
    raise ArithmeticError(f"{u} is not a unit")


def scalar_to_json(x):
    if isinstance(x, int):
        return x
    if isinstance(x, LaurentPoly):
        return {"laurent": x.to_json()}
    if isinstance(x, RatFunc):
        return {"num": x.num.to_json(), "den": x.den.to_json()}
    if isinstance(x, Fraction):
        return {"fraction": [x.numerator, x.denominator]}
    raise TypeError(type(x).__name__)
