"""The negative half of the quantum group as a free algebra on the ``f_i``.

Elements are dictionaries from words (tuples of indices) to coefficients.
Relations are never imposed; the Serre ideal is recovered as the radical
of the bilinear forms, and :func:`weight_space_rank` measures the
quotient.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

from .cartan import BorcherdsCartanDatum, RootWeight, seq_form
from .qpoly import ONE, ZERO, LaurentPoly, RatFunc, q_factorial


class NotReal(ValueError):
    pass


class SameIndex(ValueError):
    pass


Word = tuple


class FExpr:
    """Linear combination of words ``f_{i_1} ... f_{i_n}``.

    Coefficients are :class:`LaurentPoly` or, after division by
    q-factorials, :class:`RatFunc`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Sequence[str], object] | None = None):
        t = {}
        for w, c in (terms or {}).items():
            if isinstance(c, int):
                c = LaurentPoly.const(c)
            if not _is_zero(c):
                w = tuple(w)
                t[w] = t[w] + c if w in t else c
                if _is_zero(t[w]):
                    del t[w]
        self.terms = t

    @classmethod
    def word(cls, w: Sequence[str], c=ONE) -> "FExpr":
        return cls({tuple(w): c})

    @classmethod
    def one(cls) -> "FExpr":
        return cls({(): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> set:
        return {RootWeight.of(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def __add__(self, other: "FExpr") -> "FExpr":
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t[w] + c if w in t else c
        return FExpr(t)

    def __neg__(self):
        return FExpr({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FExpr":
        return FExpr({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other: "FExpr") -> "FExpr":
        if not isinstance(other, FExpr):
            return self.scale(other)
        t: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                t[w] = t[w] + c if w in t else c
        return FExpr(t)

    def __eq__(self, other):
        return isinstance(other, FExpr) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "FExpr(0)"
        parts = [f"({c})*f[{''.join(w) or '1'}]" for w, c in sorted(self.terms.items())]
        return "FExpr(" + " + ".join(parts) + ")"


def _is_zero(c) -> bool:
    if isinstance(c, (LaurentPoly, RatFunc)):
        return c.is_zero()
    return c == 0


class TensorFExpr:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = {k: c for k, c in (terms or {}).items() if not _is_zero(c)}

    def __mul__(self, other: "TensorFExpr") -> "TensorFExpr":
        raise NotImplementedError("use tensor_product(datum, x, y)")

    def __eq__(self, other):
        return isinstance(other, TensorFExpr) and self.terms == other.terms

    def __repr__(self):
        return f"TensorFExpr({self.terms})"


def _qpow(e: int) -> LaurentPoly:
    return LaurentPoly.monomial(e)


def eprime_word(datum: BorcherdsCartanDatum, i: str, w: Word) -> dict:
    """``e_i'`` of a single word, as a dict word -> LaurentPoly."""
    return dict(_eprime_word(datum, i, tuple(w)))


@lru_cache(maxsize=None)
def _eprime_word(datum, i, w):
    out: dict = {}
    # e_i'(f_{w_0} ... f_{w_n}) = sum_k delta(i, w_k) q^{-sum_{l<k} (alpha_i, alpha_{w_l})} w with w_k removed
    shift = 0
    for k, j in enumerate(w):
        if j == i:
            rest = w[:k] + w[k + 1:]
            out[rest] = out.get(rest, ZERO) + _qpow(-shift)
        shift += datum.form(i, j)
    return tuple((k, v) for k, v in out.items() if v)


def eprime_apply(datum: BorcherdsCartanDatum, i: str, x: FExpr) -> FExpr:
    """Apply ``e_i'``.

    >>> from .presets import preset
    >>> eprime_apply(preset("sl2"), "i", FExpr.word("ii"))
    FExpr((q^-2 + 1)*f[i])
    """
    datum.pos(i)
    t: dict = {}
    for w, c in x.terms.items():
        for w2, v in _eprime_word(datum, i, w):
            t[w2] = t[w2] + c * v if w2 in t else c * v
    return FExpr(t)


def twisted_coproduct(datum: BorcherdsCartanDatum, x: FExpr) -> TensorFExpr:
    """The algebra map ``rho`` with ``rho(f_i) = f_i (x) 1 + 1 (x) f_i``."""
    out: dict = {}
    for w, c in x.terms.items():
        for (a, b), v in _coproduct_word(datum, tuple(w)):
            key = (a, b)
            out[key] = out[key] + c * v if key in out else c * v
    return TensorFExpr(out)


@lru_cache(maxsize=None)
def _coproduct_word(datum, w):
    terms = {((), ()): ONE}
    for j in w:
        nxt: dict = {}
        for (a, b), c in terms.items():
            # a letter moving to the left factor passes the right factor
            for key, v in (((a + (j,), b), c.shift(-seq_form(datum, b, (j,)))),
                           ((a, b + (j,)), c)):
                nxt[key] = nxt[key] + v if key in nxt else v
        terms = nxt
    return tuple((k, v) for k, v in terms.items() if v)


def tensor_product(datum: BorcherdsCartanDatum, x: TensorFExpr, y: TensorFExpr) -> TensorFExpr:
    """Twisted product ``(x1 (x) x2)(y1 (x) y2) = q^{-(|x2|,|y1|)} x1y1 (x) x2y2``."""
    out: dict = {}
    for (x1, x2), c in x.terms.items():
        for (y1, y2), d in y.terms.items():
            k = (x1 + y1, x2 + y2)
            v = c * d * _qpow(-seq_form(datum, x2, y1))
            out[k] = out[k] + v if k in out else v
    return TensorFExpr(out)


def kashiwara_form(datum: BorcherdsCartanDatum, x: FExpr, y: FExpr):
    """``(x, y)_K``; words of different weights pair to zero."""
    total = ZERO
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            v = _kform_words(datum, w1, w2)
            if v:
                total = total + c1 * c2 * v
    return total


@lru_cache(maxsize=None)
def _kform_words(datum, u, v) -> LaurentPoly:
    if len(u) != len(v):
        return ZERO
    if not v:
        return ONE
    if sorted(u) != sorted(v):
        return ZERO
    # (u, f_j v') = (e_j' u, v')
    j, rest = v[0], v[1:]
    out = ZERO
    for w, c in _eprime_word(datum, j, u):
        out = out + c * _kform_words(datum, w, rest)
    return out


def lusztig_form(datum: BorcherdsCartanDatum, x: FExpr, y: FExpr) -> RatFunc:
    total = RatFunc(ZERO)
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            v = _lform_words(datum, w1, w2)
            if not v.is_zero():
                total = total + v * c1 * c2
    return total


@lru_cache(maxsize=None)
def _lform_words(datum, u, v) -> RatFunc:
    if len(u) != len(v) or sorted(u) != sorted(v):
        return RatFunc(ZERO)
    if not v:
        return RatFunc(ONE)
    # (u, f_j v') = (e_j' u, v') / (1 - q_j^2)
    j, rest = v[0], v[1:]
    num = RatFunc(ZERO)
    for w, c in _eprime_word(datum, j, u):
        num = num + _lform_words(datum, w, rest) * c
    return num / (ONE - _qpow(2 * datum.r(j)))


def divided_power(datum: BorcherdsCartanDatum, i: str, n: int) -> FExpr:
    """``f_i^n / [n]_i!``; coefficients become rational functions when needed."""
    fact = q_factorial(n, datum.r(i))
    c = RatFunc(ONE, fact)
    return FExpr.word((i,) * n, c.num if c.is_laurent() else c)


def serre_element(datum: BorcherdsCartanDatum, i: str, j: str) -> FExpr:
    """The quantum Serre combination for a real ``i`` and ``j != i``."""
    if not datum.is_real(i):
        raise NotReal(f"index {i} is not real")
    if i == j:
        raise SameIndex("Serre element needs two distinct indices")
    datum.pos(j)
    m = 1 - datum.a(i, j)
    out = FExpr()
    for r in range(m + 1):
        term = divided_power(datum, i, r) * FExpr.word((j,)) * divided_power(datum, i, m - r)
        out = out + (term if r % 2 == 0 else -term)
    return out


def gram_matrix(datum: BorcherdsCartanDatum, nu: RootWeight, form: str = "kashiwara"):
    words = nu.sequences(datum)
    f = _kform_words if form == "kashiwara" else _lform_words
    return words, [[f(datum, u, v) for v in words] for u in words]


def laurent_rank(rows: list[list[LaurentPoly]]) -> int:
    """Rank over the fraction field by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = ONE
    col = 0
    while rank < n_rows and col < n_cols:
        piv = next((r for r in range(rank, n_rows) if not m[r][col].is_zero()), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, n_rows):
            for c in range(col + 1, n_cols):
                m[r][c] = (p * m[r][c] - m[r][col] * m[rank][c]).divmod_exact(prev)
            m[r][col] = ZERO
        prev = p
        rank += 1
        col += 1
    return rank


def weight_space_rank(datum: BorcherdsCartanDatum, nu: RootWeight) -> int:
    """Dimension of the weight space of weight ``-nu`` in the quotient by the form radical."""
    if nu.ht == 0:
        return 1
    _, g = gram_matrix(datum, nu)
    return laurent_rank(g)
