"""Exact arithmetic in the formal variable q.

Three value types live here:

* :class:`LaurentPoly` -- finitely supported Laurent polynomials with
  rational coefficients.
* :class:`QSeries` -- Laurent series truncated above a fixed exponent.
* :class:`RatFunc` -- reduced quotients of Laurent polynomials.

>>> q_integer(2, 1)
LaurentPoly('q^-1 + q')
>>> q_factorial(3, 1).coeff(1)
Fraction(2, 1)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

DEFAULT_ORDER = 20


class QArithError(ValueError):
    pass


class NegativeN(QArithError):
    pass


class ZeroDenominator(QArithError):
    pass


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_e q^e`` with exact coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _frac(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    # constructors
    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, e: int, c=1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls({0: x})
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # inspection
    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def low(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no lowest term")
        return min(self._c)

    def high(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no highest term")
        return max(self._c)

    def at_one(self) -> Fraction:
        return sum(self._c.values(), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def nonnegative(self) -> bool:
        return all(v > 0 for v in self._c.values())

    # arithmetic
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({e: v * other for e, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: dict = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial():
                (e, v), = self._c.items()
                return LaurentPoly({-e * (-n): Fraction(1) / v ** (-n)})
            raise ValueError("only monomials have Laurent inverses")
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q^k``."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def subs_power(self, r: int) -> "LaurentPoly":
        """Substitute ``q -> q^r``."""
        return LaurentPoly._raw({e * r: v for e, v in self._c.items()})

    def divmod_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / other``; raises if the division leaves a remainder."""
        if other.is_zero():
            raise ZeroDenominator("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        rem = dict(self._c)
        lo_d, lead = other.low(), other._c[other.low()]
        hi_d = other.high()
        quot = {}
        while rem:
            lo = min(rem)
            if max(rem) - lo < hi_d - lo_d:
                raise QArithError("inexact Laurent division")
            k = lo - lo_d
            c = rem[lo] / lead
            quot[k] = c
            for e, v in other._c.items():
                s = rem.get(e + k, 0) - c * v
                if s:
                    rem[e + k] = s
                else:
                    rem.pop(e + k, None)
        return LaurentPoly(quot)

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in self.items():
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "q"
            else:
                mono = f"q^{e}"
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly('{self}')"

    # JSON
    def to_json(self) -> dict:
        return {str(e): str(v) for e, v in self.items()}

    @classmethod
    def from_json(cls, d: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(e): Fraction(v) for e, v in d.items()})


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.monomial(1)


def q_integer(n: int, r: int = 1) -> LaurentPoly:
    """``[n]`` for the variable ``q^r``."""
    if n < 0:
        raise NegativeN(f"q-integer of negative n={n}")
    return LaurentPoly({r * (n - 1 - 2 * k): 1 for k in range(n)})


def q_factorial(n: int, r: int = 1) -> LaurentPoly:
    if n < 0:
        raise NegativeN(f"q-factorial of negative n={n}")
    out = ONE
    for k in range(1, n + 1):
        out = out * q_integer(k, r)
    return out


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd of dense polynomials (coefficient lists, index = degree)."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            c = r[-1] / b[-1]
            off = len(r) - len(b)
            for k, v in enumerate(b):
                r[off + k] -= c * v
            trim(r)
        a, b = b, r
    lead = a[-1]
    return [v / lead for v in a]


def _dense(p: LaurentPoly) -> tuple[int, list[Fraction]]:
    lo = p.low()
    out = [Fraction(0)] * (p.high() - lo + 1)
    for e, v in p.items():
        out[e - lo] = v
    return lo, out


def _poly_div(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        c = a[-1] / b[-1]
        off = len(a) - len(b)
        q[off] = c
        for k, v in enumerate(b):
            a[off + k] -= c * v
        a.pop()
    if any(a):
        raise QArithError("inexact polynomial division")
    return q


class RatFunc:
    """Reduced fraction ``num / den`` of Laurent polynomials.

    The denominator is normalised to a polynomial with nonzero constant
    term equal to 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = LaurentPoly.coerce(num)
        den = ONE if den is None else LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        nlo, nd = _dense(num)
        dlo, dd = _dense(den)
        g = _poly_gcd(nd, dd)
        if len(g) > 1:
            nd = _poly_div(nd, g)
            dd = _poly_div(dd, g)
        c = dd[0]
        nd = [v / c for v in nd]
        dd = [v / c for v in dd]
        self.num = LaurentPoly({nlo - dlo + k: v for k, v in enumerate(nd)})
        self.den = LaurentPoly({k: v for k, v in enumerate(dd)})

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return cls(LaurentPoly.coerce(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    def __add__(self, other):
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc.coerce(other)
        if o.is_zero():
            raise ZeroDenominator("division by zero")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def bar(self) -> "RatFunc":
        return RatFunc(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFunc('{self}')"


class QSeries:
    """Laurent series known exactly on all exponents ``<= order``."""

    __slots__ = ("low", "order", "coeffs", "truncated")

    def __init__(self, coeffs: Mapping[int, object], order: int = DEFAULT_ORDER,
                 low: int | None = None, truncated: bool = False):
        c = {int(e): _frac(v) for e, v in coeffs.items() if e <= order and v}
        self.coeffs = c
        self.order = order
        if low is None:
            low = min(c) if c else order
        self.low = min(low, min(c)) if c else low
        self.truncated = truncated

    @classmethod
    def from_poly(cls, p: LaurentPoly, order: int = DEFAULT_ORDER) -> "QSeries":
        return cls(p.coeffs, order)

    def coeff(self, e: int) -> Fraction:
        if e > self.order:
            raise QArithError(f"exponent {e} beyond truncation order {self.order}")
        return self.coeffs.get(e, Fraction(0))

    def _join(self, other: "QSeries"):
        n = min(self.order, other.order)
        return n, self.truncated or other.truncated or self.order != other.order

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            other = QSeries.from_poly(other, self.order)
        n, flag = self._join(other)
        c = dict(self.coeffs)
        for e, v in other.coeffs.items():
            c[e] = c.get(e, 0) + v
        return QSeries(c, n, min(self.low, other.low), flag)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({e: -v for e, v in self.coeffs.items()}, self.order, self.low, self.truncated)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries({e: v * other for e, v in self.coeffs.items()}, self.order, self.low,
                           self.truncated)
        if isinstance(other, LaurentPoly):
            if other.is_zero():
                return QSeries({}, self.order, self.low, self.truncated)
            # multiplying by q^e with e > 0 loses nothing; e < 0 lowers the trusted order
            shift = min(0, other.low())
            order = self.order + shift
            c: dict = {}
            for e1, v1 in self.coeffs.items():
                for e2, v2 in other.items():
                    c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
            return QSeries(c, order, self.low + other.low(), self.truncated or shift < 0)
        n, flag = self._join(other)
        # exact through n requires both low bounds
        n = min(n, self.order + other.low, other.order + self.low)
        c = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                if e1 + e2 <= n:
                    c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return QSeries(c, n, self.low + other.low, flag or n < min(self.order, other.order))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            other = QSeries.from_poly(other, self.order)
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a = {e: v for e, v in self.coeffs.items() if e <= n}
        b = {e: v for e, v in other.coeffs.items() if e <= n}
        return a == b

    def __hash__(self):
        return hash((self.order, frozenset(self.coeffs.items())))

    def truncate(self, n: int) -> "QSeries":
        return QSeries(self.coeffs, min(n, self.order), self.low, self.truncated or n < self.order)

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly(self.coeffs)

    def __repr__(self):
        return f"QSeries({LaurentPoly(self.coeffs)} + O(q^{self.order + 1}))"


def series_expand(f, order: int = DEFAULT_ORDER) -> QSeries:
    """Expand a rational function as a Laurent series through ``q^order``.

    >>> series_expand(RatFunc(1, ONE - Q ** 2), 6).to_poly()
    LaurentPoly('1 + q^2 + q^4 + q^6')
    """
    f = RatFunc.coerce(f) if not isinstance(f, RatFunc) else f
    den = f.den
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    dlo = den.low()
    c0 = den.coeff(dlo)
    num = f.num
    if num.is_zero():
        return QSeries({}, order, order)
    # f = num * q^-dlo / (c0 + c1 q + ...)
    nlo = num.low() - dlo
    need = order - nlo  # number of terms of 1/den' needed, minus one
    inv = [Fraction(0)] * (need + 1)
    dd = [den.coeff(dlo + k) for k in range(den.high() - dlo + 1)]
    for k in range(need + 1):
        s = Fraction(1) if k == 0 else Fraction(0)
        for t in range(1, min(k, len(dd) - 1) + 1):
            s -= dd[t] * inv[k - t]
        inv[k] = s / c0
    c: dict = {}
    for e, v in num.items():
        for k, w in enumerate(inv):
            x = e - dlo + k
            if x > order:
                break
            if w:
                c[x] = c.get(x, 0) + v * w
    return QSeries(c, order, nlo)


def poly_sum(items: Iterable[LaurentPoly]) -> LaurentPoly:
    out = ZERO
    for p in items:
        out = out + p
    return out
