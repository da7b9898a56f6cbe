"""Quiver Hecke algebras of a Borcherds-Cartan datum.

Diagrams are read from bottom to top and products are written top first,
so ``a * b`` stacks ``a`` on top of ``b``.  Every element is expanded in the
basis ``x^u * tau_w * 1_j``: dots sit at the top, ``tau_w`` is the product of
crossings along the lexicographically smallest reduced word of ``w``, and
``1_j`` fixes the bottom (source) sequence.  The top (target) sequence is
``w(j)``.

Two relation presets are supported.  ``STANDARD`` uses the quadratic
relation that kills every double crossing of equal colours.  ``MODIFIED``
replaces it by ``(x_k^a + x_{k+1}^a)^2`` for imaginary non-isotropic colours
with ``a = -a_ii/2`` and by ``1`` for isotropic ones.

>>> from .presets import preset
>>> alg = KlrAlgebra(preset("sl2"))
>>> t = alg.tau(1, "ii")
>>> (t * t).is_zero()
True
"""

from __future__ import annotations

import sys
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cartan import BorcherdsCartanDatum, RootWeight
from .perms import (act_on_seq, all_perms, canonical_reduced_word, identity, inverse,
                    inversions, left_mul_simple, length, move_path)
from .qpoly import DEFAULT_ORDER, ONE, LaurentPoly, QSeries, RatFunc, series_expand


class Preset(Enum):
    STANDARD = "standard"
    MODIFIED = "modified"


class KlrError(ValueError):
    pass


class PresetMismatch(KlrError):
    pass


class HtCapExceeded(KlrError):
    pass


class WeightMismatch(KlrError):
    pass


class NotReal(KlrError):
    pass


class FuelExhausted(RuntimeError):
    pass


# Sign s in  tau_a tau_{a+1} tau_a - tau_{a+1} tau_a tau_{a+1} = s * sum_c x_a^c x_{a+2}^{m-1-c}
# on strands coloured (i, j, i).  Fixed by the faithful polynomial representation.
BRAID_SIGN = 1

DEFAULT_HT_CAP = 6


# --- polynomials in the dot variables: dict exponent tuple -> Fraction -------------------

def poly_add(p: dict, q: Mapping, c=1) -> dict:
    for u, v in q.items():
        s = p.get(u, 0) + c * v
        if s:
            p[u] = s
        else:
            p.pop(u, None)
    return p


def poly_mul(p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for u, a in p.items():
        for w, b in q.items():
            k = tuple(x + y for x, y in zip(u, w))
            s = out.get(k, 0) + a * b
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def monomial(n: int, exps: Mapping[int, int]) -> tuple:
    """Exponent tuple with ``exps`` keyed by 1-based strand position."""
    u = [0] * n
    for k, e in exps.items():
        u[k - 1] += e
    return tuple(u)


def swap_exps(u: tuple, k: int) -> tuple:
    u = list(u)
    u[k - 1], u[k] = u[k], u[k - 1]
    return tuple(u)


def divided_difference(u: tuple, k: int) -> dict:
    """``(f - s_k f) / (x_k - x_{k+1})`` for the monomial ``f = x^u``."""
    a, b = u[k - 1], u[k]
    if a == b:
        return {}
    sign = 1
    if a < b:
        a, b, sign = b, a, -1
    out = {}
    for t in range(a - b):
        w = list(u)
        w[k - 1] = b + t
        w[k] = a - 1 - t
        out[tuple(w)] = Fraction(sign)
    return out


# --- the algebra -----------------------------------------------------------------------

class KlrAlgebra:
    """Rewriting context for one datum and one relation preset.

    All memo tables live on the instance, so separate computations can use
    separate instances.
    """

    def __init__(self, datum: BorcherdsCartanDatum, preset: Preset | str = Preset.STANDARD,
                 orientation: Iterable[tuple[str, str]] | None = None,
                 ht_cap: int = DEFAULT_HT_CAP):
        self.datum = datum
        self.preset = Preset(preset)
        self.ht_cap = ht_cap
        # orientation: set of ordered pairs (i, j) meaning the edge i -> j
        if orientation is None:
            orient = {(i, j) for i in datum.indices for j in datum.indices
                      if i != j and datum.form(i, j) != 0 and datum.before(i, j)}
        else:
            orient = set()
            for i, j in orientation:
                orient.add((i, j))
            for i in datum.indices:
                for j in datum.indices:
                    if i != j and datum.form(i, j) != 0:
                        if ((i, j) in orient) == ((j, i) in orient):
                            raise KlrError(f"edge {i}-{j} needs exactly one orientation")
        self.orientation = frozenset(orient)
        self._T: dict = {}
        self._fuel = 0

    def __eq__(self, other):
        return (isinstance(other, KlrAlgebra) and self.datum == other.datum
                and self.preset == other.preset and self.orientation == other.orientation)

    def __hash__(self):
        return hash((self.datum, self.preset, self.orientation))

    # -- degrees ------------------------------------------------------------------
    def dot_degree(self, color: str) -> int:
        return 2 * self.datum.r(color)

    def crossing_degree(self, a: str, b: str) -> int:
        return -self.datum.form(a, b)

    def tau_degree(self, source: Sequence[str], w: tuple) -> int:
        return sum(-self.datum.form(source[p], source[s]) for p, s in inversions(w))

    def word_degree(self, source: Sequence[str], u: tuple, w: tuple) -> int:
        top = act_on_seq(w, source)
        return self.tau_degree(source, w) + sum(e * self.dot_degree(c) for e, c in zip(u, top))

    # -- local relations -----------------------------------------------------------
    def slides_with_correction(self, a: str, b: str) -> bool:
        """Whether dots passing a crossing of colours ``a, b`` leave a correction term."""
        return a == b and self.datum.is_real(a)

    def quadratic(self, k: int, seq: Sequence[str]) -> dict:
        """``tau_k^2 1_seq`` as a polynomial (dict exponents -> coefficient)."""
        n = len(seq)
        i, j = seq[k - 1], seq[k]
        d = self.datum
        if i == j:
            if d.is_real(i) or self.preset is Preset.STANDARD:
                return {}
            if d.is_isotropic(i):
                return {tuple([0] * n): Fraction(1)}
            a = -d.a(i, i) // 2
            # (x_k^a + x_{k+1}^a)^2 expanded
            out: dict = {}
            poly_add(out, {monomial(n, {k: 2 * a}): Fraction(1)})
            poly_add(out, {monomial(n, {k: a, k + 1: a}): Fraction(2)})
            poly_add(out, {monomial(n, {k + 1: 2 * a}): Fraction(1)})
            return out
        if d.form(i, j) == 0:
            return {tuple([0] * n): Fraction(1)}
        out = {}
        poly_add(out, {monomial(n, {k: -d.a(i, j)}): Fraction(1)})
        poly_add(out, {monomial(n, {k + 1: -d.a(j, i)}): Fraction(1)})
        return out

    def braid_defect(self, a: int, seq: Sequence[str]) -> dict:
        """``tau_a tau_{a+1} tau_a - tau_{a+1} tau_a tau_{a+1}`` on ``1_seq`` (a polynomial)."""
        i, j, k = seq[a - 1], seq[a], seq[a + 1]
        d = self.datum
        if not (i == k and i != j and d.is_real(i) and d.form(i, j) != 0):
            return {}
        m = -d.a(i, j)
        n = len(seq)
        return {monomial(n, {a: c, a + 2: m - 1 - c}): Fraction(BRAID_SIGN) for c in range(m)}

    # -- rewriting -----------------------------------------------------------------
    def _check_ht(self, n: int):
        if n > self.ht_cap:
            raise HtCapExceeded(f"height {n} exceeds cap {self.ht_cap}")

    def apply_items(self, items: Sequence, terms: Mapping) -> dict:
        """Left-multiply ``terms`` by a product of generators.

        ``items`` is read top first; each item is ``("t", k)`` for a crossing
        or ``("x", exps)`` for a dot monomial.  ``terms`` maps
        ``(source, u, w) -> coefficient``.
        """
        cur = dict(terms)
        for item in reversed(items):
            if item[0] == "t":
                cur = self._left_tau(item[1], cur)
            else:
                cur = self._left_dots(item[1], cur)
            if not cur:
                break
        return cur

    @staticmethod
    def _left_dots(exps: tuple, terms: Mapping) -> dict:
        out = {}
        for (j, u, w), c in terms.items():
            out[(j, tuple(x + y for x, y in zip(u, exps)), w)] = c
        return out

    def _left_tau(self, k: int, terms: Mapping) -> dict:
        out: dict = {}
        for (j, u, w), c in terms.items():
            top = act_on_seq(w, j)
            su = swap_exps(u, k)
            for (j2, u2, w2), c2 in self.T(k, w, j).items():
                key = (j2, tuple(x + y for x, y in zip(u2, su)), w2)
                _acc(out, key, c * c2)
            if self.slides_with_correction(top[k - 1], top[k]):
                for u2, c2 in divided_difference(u, k).items():
                    _acc(out, (j, u2, w), c * c2)
        return out

    def T(self, k: int, w: tuple, j: tuple) -> dict:
        """Normal form of ``tau_k * tau_w * 1_j`` (memoised)."""
        key = (k, w, j)
        hit = self._T.get(key)
        if hit is not None:
            return hit
        self._fuel += 1
        if self._fuel > 10 ** 7:
            raise FuelExhausted("rewriting did not terminate")
        n = len(w)
        zero = tuple([0] * n)
        sw = left_mul_simple(k, w)
        out: dict = {}
        if length(sw) > length(w):
            _acc(out, (j, zero, sw), Fraction(1))
            start = (k,) + canonical_reduced_word(w)
            self._add_path_corrections(out, start, canonical_reduced_word(sw), j, [])
        else:
            cw = canonical_reduced_word(w)
            rest = canonical_reduced_word(sw)
            mid = act_on_seq(sw, j)
            for u, c in self.quadratic(k, mid).items():
                _acc(out, (j, u, sw), c)
            # tau_{C(w)} = tau_k tau_{C(sw)} + corrections, so left-multiply those by tau_k
            self._add_path_corrections(out, cw, (k,) + rest, j, [("t", k)])
        self._T[key] = out
        return out

    def _add_path_corrections(self, out: dict, start: tuple, target: tuple, j: tuple, prefix: list):
        """Add ``prefix * (tau_start - tau_target) * 1_j`` to ``out``."""
        n = len(j)
        for before, _after, (kind, p) in move_path(start, target):
            if kind == "swap":
                continue
            a, b, _ = before[p:p + 3]
            low = min(a, b)
            below = before[p + 3:]
            mid = act_on_seq(_word_perm(below, n), j)
            defect = self.braid_defect(low, mid)
            if not defect:
                continue
            sign = 1 if a == low else -1
            above_items = [("t", x) for x in before[:p]]
            below_items = [("t", x) for x in below]
            base = {(j, tuple([0] * n), identity(n)): Fraction(1)}
            lower = self.apply_items(below_items, base)
            for mono, c in defect.items():
                res = self.apply_items(prefix + above_items + [("x", mono)], lower)
                for key, v in res.items():
                    _acc(out, key, sign * c * v)

    # -- element constructors -----------------------------------------------------
    def element(self, terms: Mapping) -> "KlrElement":
        return KlrElement(self, terms)

    def idempotent(self, seq: Sequence[str]) -> "KlrElement":
        seq = tuple(seq)
        n = len(seq)
        return KlrElement(self, {(seq, tuple([0] * n), identity(n)): Fraction(1)})

    def x(self, k: int, seq: Sequence[str], power: int = 1) -> "KlrElement":
        seq = tuple(seq)
        n = len(seq)
        return KlrElement(self, {(seq, monomial(n, {k: power}), identity(n)): Fraction(1)})

    def tau(self, k: int, seq: Sequence[str]) -> "KlrElement":
        """``tau_k 1_seq`` where ``seq`` is the source sequence."""
        seq = tuple(seq)
        n = len(seq)
        return KlrElement(self, self.T(k, identity(n), seq))

    def basis_element(self, source: Sequence[str], u: Sequence[int], w: tuple) -> "KlrElement":
        return KlrElement(self, {(tuple(source), tuple(u), tuple(w)): Fraction(1)})

    def word(self, items: Sequence, source: Sequence[str]) -> "KlrElement":
        """Normal form of a product of generators applied to ``1_source``.

        ``items`` entries: ``("t", k)``, ``("x", k)`` or ``("x", k, power)``.
        """
        source = tuple(source)
        n = len(source)
        self._check_ht(n)
        conv = []
        for it in items:
            if it[0] == "t":
                conv.append(("t", it[1]))
            else:
                conv.append(("x", monomial(n, {it[1]: it[2] if len(it) > 2 else 1})))
        base = {(source, tuple([0] * n), identity(n)): Fraction(1)}
        return KlrElement(self, self.apply_items(conv, base))

    def polynomial(self, seq: Sequence[str], poly: Mapping[tuple, object]) -> "KlrElement":
        seq = tuple(seq)
        n = len(seq)
        return KlrElement(self, {(seq, tuple(u), identity(n)): Fraction(c) for u, c in poly.items()})

    # -- products -----------------------------------------------------------------
    def multiply(self, a: "KlrElement", b: "KlrElement") -> "KlrElement":
        if a.alg != b.alg:
            raise PresetMismatch("elements belong to different algebras")
        by_source: dict = {}
        for (j, u, w), c in a.terms.items():
            by_source.setdefault(j, []).append((u, w, c))
        out: dict = {}
        for (j, u, w), c in b.terms.items():
            top = act_on_seq(w, j)
            for ua, wa, ca in by_source.get(top, ()):
                items = [("x", ua)] + [("t", k) for k in canonical_reduced_word(wa)]
                res = self.apply_items(items, {(j, u, w): c * ca})
                for key, v in res.items():
                    _acc(out, key, v)
        return KlrElement(self, out)

    def psi(self, a: "KlrElement") -> "KlrElement":
        out: dict = {}
        for (j, u, w), c in a.terms.items():
            top = act_on_seq(w, j)
            n = len(j)
            items = [("t", k) for k in reversed(canonical_reduced_word(w))] + [("x", u)]
            base = {(top, tuple([0] * n), identity(n)): c}
            for key, v in self.apply_items(items, base).items():
                _acc(out, key, v)
        return KlrElement(self, out)

    # -- combinatorics -----------------------------------------------------------
    def sequences(self, nu: RootWeight) -> list[tuple[str, ...]]:
        if nu.ht > self.ht_cap:
            raise HtCapExceeded(f"height {nu.ht} exceeds cap {self.ht_cap}")
        return nu.sequences(self.datum)

    def basis_words(self, target: Sequence[str], source: Sequence[str], degree: int):
        """All basis words ``x^u tau_w 1_source`` with ``w(source) = target`` of a given degree."""
        target, source = tuple(target), tuple(source)
        n = len(source)
        out = []
        for w in all_perms(n):
            if act_on_seq(w, source) != target:
                continue
            rest = degree - self.tau_degree(source, w)
            weights = [self.dot_degree(c) for c in target]
            for u in _exponent_vectors(weights, rest):
                out.append((source, u, w))
        return out

    def graded_dim_pair(self, i: Sequence[str], j: Sequence[str], order: int = DEFAULT_ORDER) -> QSeries:
        """Graded dimension of ``1_i R 1_j`` as a truncated series."""
        i, j = tuple(i), tuple(j)
        if sorted(i) != sorted(j):
            raise WeightMismatch(f"{i} and {j} have different weights")
        return series_expand(self.graded_dim_ratfunc(i, j), order)

    def graded_dim_ratfunc(self, i: Sequence[str], j: Sequence[str]) -> RatFunc:
        i, j = tuple(i), tuple(j)
        if sorted(i) != sorted(j):
            raise WeightMismatch(f"{i} and {j} have different weights")
        num = LaurentPoly()
        for w in all_perms(len(j)):
            if act_on_seq(w, j) == i:
                num = num + LaurentPoly.monomial(self.tau_degree(j, w))
        den = ONE
        for c in i:
            den = den * (ONE - LaurentPoly.monomial(2 * self.datum.r(c)))
        return RatFunc(num, den)

    def nilhecke_idempotent(self, i: str, n: int) -> "KlrElement":
        if not self.datum.is_real(i):
            raise NotReal(f"{i} is not a real index")
        seq = (i,) * n
        w0 = tuple(range(n - 1, -1, -1))
        u = tuple(n - 1 - k for k in range(n))
        return self.basis_element(seq, u, w0)


def _word_perm(word: Sequence[int], n: int) -> tuple:
    w = identity(n)
    for k in reversed(word):
        w = left_mul_simple(k, w)
    return w


def _acc(d: dict, key, v):
    s = d.get(key, 0) + v
    if s:
        d[key] = s
    else:
        d.pop(key, None)


def _exponent_vectors(weights: Sequence[int], total: int):
    """Exponent vectors ``u`` with ``sum u_k * weights_k == total``."""
    if total < 0:
        return
    if not weights:
        if total == 0:
            yield ()
        return
    w0 = weights[0]
    for e in range(total // w0 + 1):
        for rest in _exponent_vectors(weights[1:], total - e * w0):
            yield (e,) + rest


class KlrElement:
    """Finite linear combination of basis words ``x^u tau_w 1_j``."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: KlrAlgebra, terms: Mapping):
        self.alg = alg
        self.terms = {k: Fraction(v) for k, v in terms.items() if v}

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "KlrElement") -> "KlrElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return KlrElement(self.alg, out)

    def __neg__(self):
        return KlrElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, KlrElement):
            return self.alg.multiply(self, other)
        return KlrElement(self.alg, {k: v * other for k, v in self.terms.items()})

    def __rmul__(self, other):
        return KlrElement(self.alg, {k: v * other for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, KlrElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def psi(self) -> "KlrElement":
        return self.alg.psi(self)

    def degrees(self) -> set:
        return {self.alg.word_degree(j, u, w) for (j, u, w) in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sources(self) -> set:
        return {j for (j, _, _) in self.terms}

    def targets(self) -> set:
        return {act_on_seq(w, j) for (j, _, w) in self.terms}

    def to_json(self) -> list:
        out = []
        for (j, u, w), c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            out.append({"target": "".join(act_on_seq(w, j)) if all(len(x) == 1 for x in j)
                        else list(act_on_seq(w, j)),
                        "exponents": list(u),
                        "reduced_word": list(canonical_reduced_word(w)),
                        "coefficient": str(c)})
        return out

    def __repr__(self):
        if not self.terms:
            return "KlrElement(0)"
        parts = []
        for (j, u, w), c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            dots = "*".join(f"x{k + 1}^{e}" if e > 1 else f"x{k + 1}" for k, e in enumerate(u) if e)
            taus = "*".join(f"t{k}" for k in canonical_reduced_word(w))
            body = "*".join(p for p in (dots, taus) if p) or "1"
            parts.append(f"{c}*{body}[{''.join(j)}]")
        return "KlrElement(" + " + ".join(parts) + ")"


sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
