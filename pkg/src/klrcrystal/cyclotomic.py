"""Cyclotomic quotients, computed one degree at a time.

The ideal generated by ``x_1^{lambda_{j_1}} 1_j`` is a left ideal spanned by
``x^u * (tau_sigma * g)`` where ``g`` runs over ``x_1^{lambda} tau_w 1_s``.
Nilpotency witnesses ``x_k^N 1_t`` in the ideal bound the top degree of the
quotient, which makes the finite-dimensionality claim checkable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from flint import fmpq_mat, fmpq_poly

from . import linalg as la
from .cartan import DominantWeight, RootWeight, weight_pairing
from .klr import KlrAlgebra, KlrElement, Preset, _exponent_vectors, monomial
from .modules import (GradedModule, NotCertified, char_key, forget_tail, head, hom_space,
                      is_irreducible, normalize_char)
from .perms import act_on_seq, all_perms, canonical_reduced_word, identity
from .qpoly import LaurentPoly

DEFAULT_DEGREE_CAP = 40


class DegreeCapExceeded(RuntimeError):
    pass


class UncertifiedAlgebra(RuntimeError):
    pass


class CertificateNotFound(RuntimeError):
    pass


@dataclass
class NilpotencyCertificate:
    """``exponents[(t, k)] = N`` with ``x_k^N 1_t`` in the ideal (``N = 0``: ``1_t`` itself)."""
    exponents: dict
    witnesses: dict = field(default_factory=dict)
    certified: bool = True

    def to_json(self) -> dict:
        return {"".join(t) + f":{k}": n for (t, k), n in sorted(self.exponents.items())}


def _add_terms(out: dict, terms: Mapping, scale=1):
    for k, v in terms.items():
        s = out.get(k, 0) + v * scale
        if s:
            out[k] = s
        else:
            out.pop(k, None)


class CycloAlgebra:
    """``R^lambda(nu)`` for the relation preset of ``alg``."""

    def __init__(self, alg: KlrAlgebra, lam: DominantWeight, nu: RootWeight,
                 degree_cap: int = DEFAULT_DEGREE_CAP):
        self.alg = alg
        self.lam = lam.check(alg.datum)
        self.nu = nu
        self.n = nu.ht
        self.degree_cap = degree_cap
        self.seqs = alg.sequences(nu)
        self._words: dict = {}
        self._ideal: dict = {}
        self._h: dict = {}
        self.certificate = self._certify()
        self.certified = self.certificate.certified
        self.top_degree = self._top_degree() if self.certified else None

    # -- words -------------------------------------------------------------------------------
    def word_degree(self, word) -> int:
        s, u, w = word
        return self.alg.word_degree(s, u, w)

    def min_degree(self, s) -> int:
        return min(self.alg.tau_degree(s, w) for w in all_perms(self.n))

    def words(self, s: tuple, d: int) -> tuple[list, dict]:
        key = (s, d)
        hit = self._words.get(key)
        if hit is None:
            ws = []
            for t in self.seqs:
                ws.extend(self.alg.basis_words(t, s, d))
            hit = (ws, {w: a for a, w in enumerate(ws)})
            self._words[key] = hit
        return hit

    # -- ideal -------------------------------------------------------------------------------
    def _ideal_generators(self, s: tuple) -> list:
        """Homogeneous elements ``tau_sigma x_1^lambda tau_w 1_s`` (terms, target, degree)."""
        hit = self._h.get(s)
        if hit is not None:
            return hit
        n = self.n
        out = []
        for w in all_perms(n):
            top = act_on_seq(w, s)
            lam1 = self.lam[top[0]] if n else 0
            base = {(s, monomial(n, {1: lam1}) if n else (), w): Fraction(1)}
            for sigma in all_perms(n):
                items = [("t", k) for k in canonical_reduced_word(sigma)]
                terms = self.alg.apply_items(items, base)
                if not terms:
                    continue
                deg = self.word_degree(next(iter(terms)))
                out.append((terms, act_on_seq(sigma, top), deg))
        self._h[s] = out
        return out

    def ideal(self, s: tuple, d: int) -> tuple[fmpq_mat, list]:
        """Echelon basis (with pivots) of the degree ``d`` part of ``J 1_s``."""
        key = (s, d)
        hit = self._ideal.get(key)
        if hit is not None:
            return hit
        ws, index = self.words(s, d)
        rows = []
        for terms, target, deg in self._ideal_generators(s):
            weights = [self.alg.dot_degree(c) for c in target]
            for u in _exponent_vectors(weights, d - deg):
                row = {}
                for (j, u2, w2), c in terms.items():
                    row[index[(j, tuple(a + b for a, b in zip(u, u2)), w2)]] = c
                rows.append(row)
        if not n_rows(rows):
            hit = (fmpq_mat(0, len(ws)), [])
        else:
            hit = la.rref_sparse(rows, len(ws))
        self._ideal[key] = hit
        return hit

    def in_ideal(self, terms: Mapping) -> bool:
        return not self.reduce(terms)

    def _certify(self) -> NilpotencyCertificate:
        n = self.n
        exps: dict = {}
        for t in self.seqs:
            ident = identity(n)
            if self.in_ideal({(t, tuple([0] * n), ident): Fraction(1)}):
                for k in range(1, n + 1):
                    exps[(t, k)] = 0
                continue
            for k in range(1, n + 1):
                step = self.alg.dot_degree(t[k - 1])
                found = None
                e = 1
                while e * step <= self.degree_cap:
                    if self.in_ideal({(t, monomial(n, {k: e}), ident): Fraction(1)}):
                        found = e
                        break
                    e += 1
                if found is None:
                    # one missing witness already leaves the quotient uncertified
                    return NilpotencyCertificate(exps, certified=False)
                exps[(t, k)] = found
        return NilpotencyCertificate(exps, certified=True)

    def _top_degree(self) -> int:
        """Largest degree a surviving word can have, from the nilpotency exponents."""
        best = None
        for s in self.seqs:
            for w in all_perms(self.n):
                t = act_on_seq(w, s)
                ns = [self.certificate.exponents[(t, k)] for k in range(1, self.n + 1)]
                if any(v == 0 for v in ns):
                    continue
                d = self.alg.tau_degree(s, w) + sum((v - 1) * self.alg.dot_degree(c) for v, c in zip(ns, t))
                best = d if best is None else max(best, d)
        if self.n == 0:
            return 0
        return best if best is not None else -10 ** 9

    # -- quotient ----------------------------------------------------------------------------
    def quotient_words(self, s: tuple, d: int) -> list:
        ws, _ = self.words(s, d)
        _, piv = self.ideal(s, d)
        ps = set(piv)
        return [w for a, w in enumerate(ws) if a not in ps]

    def degrees(self, s: tuple) -> range:
        if not self.certified:
            raise UncertifiedAlgebra("nilpotency certificate incomplete")
        return range(self.min_degree(s), self.top_degree + 1)

    def reduce(self, terms: Mapping) -> dict:
        """Normal form modulo the ideal: a dict over surviving words."""
        groups: dict = {}
        for word, c in terms.items():
            d = self.word_degree(word)
            groups.setdefault((word[0], d), {})[word] = c
        out = {}
        for (s, d), part in groups.items():
            ws, index = self.words(s, d)
            basis, piv = self.ideal(s, d)
            vec = la.from_sparse(1, len(ws), {(0, index[w]): c for w, c in part.items()})
            red = la.reduce_mod(vec, basis, piv)
            for a in range(len(ws)):
                v = red[0, a]
                if v:
                    out[ws[a]] = la.to_fraction(v)
        return out

    @cached_property
    def basis(self) -> list:
        """Surviving words, ordered by source, degree and word."""
        if self.n == 0:
            return [((), (), ())]
        out = []
        for s in self.seqs:
            for d in self.degrees(s):
                out.extend(self.quotient_words(s, d))
        return out

    def graded_dim(self) -> LaurentPoly:
        acc: dict = {}
        for w in self.basis:
            d = self.word_degree(w) if self.n else 0
            acc[d] = acc.get(d, 0) + 1
        return LaurentPoly(acc)

    def is_zero(self) -> bool:
        return not self.basis

    def dim(self) -> int:
        return len(self.basis)

    def regular_module(self) -> GradedModule:
        """``R^lambda(nu)`` as a left module over itself."""
        alg, n = self.alg, self.n
        basis = self.basis
        index = {w: a for a, w in enumerate(basis)}
        if n == 0:
            return GradedModule(alg, 0, [((), 0)], {}, ())
        labels = [(act_on_seq(w[2], w[0]), self.word_degree(w)) for w in basis]
        gens = {}
        dim = len(basis)
        for k in range(1, n + 1):
            e = {}
            for a, (s, u, w) in enumerate(basis):
                u2 = list(u)
                u2[k - 1] += 1
                for word, c in self.reduce({(s, tuple(u2), w): Fraction(1)}).items():
                    e[(index[word], a)] = c
            gens[("x", k)] = la.from_sparse(dim, dim, e)
        for k in range(1, n):
            e = {}
            for a, word0 in enumerate(basis):
                res = alg.apply_items([("t", k)], {word0: Fraction(1)})
                for word, c in self.reduce(res).items():
                    e[(index[word], a)] = c
            gens[("t", k)] = la.from_sparse(dim, dim, e)
        return GradedModule(alg, n, labels, gens, (n,))

    def report(self) -> dict:
        return {
            "lambda": dict(self.lam.values),
            "nu": dict(self.nu.coords),
            "graded_dim": self.graded_dim().to_json() if self.certified else None,
            "top_degree": self.top_degree,
            "certified": self.certified,
            "nilpotency": self.certificate.to_json(),
        }


def n_rows(rows) -> int:
    return sum(1 for r in rows if r)


# --- caches ---------------------------------------------------------------------------------

_CACHE: dict = {}


def cyclo(alg: KlrAlgebra, lam: DominantWeight, nu: RootWeight,
          degree_cap: int = DEFAULT_DEGREE_CAP) -> CycloAlgebra:
    key = (alg, tuple(sorted(lam.values.items())), tuple(sorted(nu.coords.items())), degree_cap)
    hit = _CACHE.get(key)
    if hit is None:
        hit = CycloAlgebra(alg, lam, nu, degree_cap)
        _CACHE[key] = hit
    return hit


def ideal_degreewise(alg: KlrAlgebra, lam: DominantWeight, nu: RootWeight,
                     degree_cap: int = DEFAULT_DEGREE_CAP) -> CycloAlgebra:
    return cyclo(alg, lam, nu, degree_cap)


def nilpotency_certificate(c: CycloAlgebra) -> NilpotencyCertificate:
    if not c.certified:
        raise CertificateNotFound(f"no nilpotency witness below degree {c.degree_cap}")
    return c.certificate


# --- functors -------------------------------------------------------------------------------

def _generator_terms(alg: KlrAlgebra, key, source: tuple) -> tuple[dict, tuple]:
    """Normal form of a generator ``x_k 1_p`` or ``tau_k 1_p``, padded by one strand."""
    kind, k = key
    n = len(source)
    if kind == "x":
        return alg.x(k, source).terms, source
    el = alg.tau(k, source)
    return el.terms, source[:k - 1] + (source[k], source[k - 1]) + source[k + 1:]


def f_functor(m: GradedModule, i: str, lam: DominantWeight, with_action: bool = True) -> GradedModule:
    """``R^lambda(nu+i) 1_{nu,i} (x)_{R^lambda(nu)} M``, computed degree by degree."""
    alg = m.alg
    nu = m.weight if m.n else RootWeight()
    big = cyclo(alg, lam, nu + RootWeight({i: 1}))
    n = m.n
    # B-words grouped by source p (p in Seq(nu)): words with source p + (i,)
    b_by_p: dict = {}
    for w in big.basis:
        p = w[0][:n]
        b_by_p.setdefault(p, []).append(w)
    # tensor basis V = sum_p B_{p i} (x) M_p, blocked by (target of b, total degree)
    vindex: dict = {}
    vlabels: list = []
    for p, bs in b_by_p.items():
        for b in bs:
            tb = act_on_seq(b[2], b[0])
            db = big.word_degree(b)
            for a in m.components.get(p, ()):
                vindex[(b, a)] = len(vlabels)
                vlabels.append((tb, db + m.labels[a][1]))
    blocks: dict = {}
    for x, lab in enumerate(vlabels):
        blocks.setdefault(lab, []).append(x)
    rels: dict = {}  # block label -> list of sparse rows (global coords)

    def add_rel(row: dict):
        row = {x: v for x, v in row.items() if v}
        if not row:
            return
        lab = vlabels[next(iter(row))]
        rels.setdefault(lab, []).append(row)

    gens_nu = [k for k in m.gens]
    for key in gens_nu:
        g = m.gens[key]
        for p in m.components:
            gterms, p2 = _generator_terms(alg, key, p + (i,))
            p_target = p2[:n]
            for b in b_by_p.get(p_target, ()):
                # b * a, computed in R(nu + i) then reduced
                prod = alg.multiply(alg.element({b: 1}), alg.element(gterms))
                red = big.reduce(prod.terms)
                for a in m.components[p]:
                    row: dict = {}
                    for w2, c in red.items():
                        x = vindex.get((w2, a))
                        if x is not None:
                            row[x] = row.get(x, 0) + c
                    for a2 in m.components.get(p_target, ()):
                        v = g[a2, a]
                        if v:
                            x = vindex[(b, a2)]
                            row[x] = row.get(x, 0) - la.to_fraction(v)
                    add_rel(row)
    # quotient per block
    keep: list = []
    red_data: dict = {}
    for lab, xs in blocks.items():
        local = {x: t for t, x in enumerate(xs)}
        rows = rels.get(lab, [])
        if rows:
            mat = la.from_sparse(len(rows), len(xs), {(r, local[x]): v for r, row in enumerate(rows) for x, v in row.items()})
            basis, piv = la.rref(mat)
        else:
            basis, piv = fmpq_mat(0, len(xs)), []
        red_data[lab] = (xs, local, basis, piv)
        ps = set(piv)
        keep.extend(xs[t] for t in range(len(xs)) if t not in ps)
    keep.sort()
    out_index = {x: a for a, x in enumerate(keep)}
    labels = [vlabels[x] for x in keep]
    dim = len(keep)
    gens = {}
    if with_action and dim:
        inv = {v: k for k, v in vindex.items()}
        for kind, k in [("x", k) for k in range(1, n + 2)] + [("t", k) for k in range(1, n + 1)]:
            e: dict = {}
            for col, x in enumerate(keep):
                b, a = inv[x]
                if kind == "x":
                    s, u, w = b
                    u2 = list(u)
                    u2[k - 1] += 1
                    res = big.reduce({(s, tuple(u2), w): Fraction(1)})
                else:
                    res = big.reduce(alg.apply_items([("t", k)], {b: Fraction(1)}))
                vec: dict = {}
                for w2, c in res.items():
                    vec[vindex[(w2, a)]] = c
                for r, c in _reduce_tensor(vec, vlabels, red_data).items():
                    e[(out_index[r], col)] = c
            gens[(kind, k)] = la.from_sparse(dim, dim, e)
    return GradedModule(alg, n + 1, labels, gens, (n + 1,))


def _reduce_tensor(vec: dict, vlabels, red_data) -> dict:
    by_block: dict = {}
    for x, c in vec.items():
        by_block.setdefault(vlabels[x], {})[x] = c
    out = {}
    for lab, part in by_block.items():
        xs, local, basis, piv = red_data[lab]
        v = la.from_sparse(1, len(xs), {(0, local[x]): c for x, c in part.items()})
        r = la.reduce_mod(v, basis, piv)
        for t in range(len(xs)):
            c = r[0, t]
            if c:
                out[xs[t]] = la.to_fraction(c)
    return out


def e_functor(m: GradedModule, i: str) -> GradedModule:
    return forget_tail(m, i)


def cyclo_functors(m: GradedModule, i: str, lam: DominantWeight):
    return e_functor(m, i), f_functor(m, i, lam)


@dataclass
class Sl2Report:
    mu: int
    lhs: LaurentPoly
    rhs: LaurentPoly
    case: str

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def sl2_dim_check(m: GradedModule, i: str, lam: DominantWeight) -> Sl2Report:
    """Graded-dimension shadow of the categorified sl2 relation on ``m``."""
    alg = m.alg
    d = alg.datum
    nu = m.weight if m.n else RootWeight()
    mu = weight_pairing(d, nu, i, lam)
    qi = d.r(i)
    fm = f_functor(m, i, lam, with_action=False)
    ef = LaurentPoly({})
    for s, deg in fm.labels:
        if s[-1] == i:
            ef = ef + LaurentPoly.monomial(deg)
    em = e_functor(m, i)
    fe = f_functor(em, i, lam, with_action=False).graded_dim() if not em.is_zero() else LaurentPoly()
    dim_m = m.graded_dim()
    shift = LaurentPoly.monomial(-d.a(i, i) * qi)
    if mu >= 0:
        corr = sum((LaurentPoly.monomial(2 * k * qi) for k in range(mu)), LaurentPoly())
        return Sl2Report(mu, ef, shift * fe + corr * dim_m, "i")
    corr = sum((LaurentPoly.monomial((-2 * k - 2) * qi) for k in range(-mu)), LaurentPoly())
    return Sl2Report(mu, shift * fe, ef + corr * dim_m, "ii")


# --- simple modules of a finite-dimensional quotient -------------------------------------------

def _singular_endomorphism(m: GradedModule, endos: list):
    dim = m.dim
    for c in endos:
        r = la.rank(c)
        if 0 < r < dim:
            return c
    # try c_a - t c_b with a rational eigenvalue of c_b^{-1} c_a
    for b in endos:
        if la.rank(b) != dim:
            continue
        binv = b.inv()
        for a in endos:
            p = (binv * a).charpoly()
            for fac, _ in p.factor()[1]:
                if fac.degree() == 1:
                    t = -fac[0] / fac[1]
                    c = a - b * t
                    if 0 < la.rank(c) < dim:
                        return c
    return None


def find_simple(m: GradedModule) -> GradedModule:
    """A simple submodule of a semisimple module."""
    cur = m
    while True:
        if is_irreducible(cur):
            return cur
        endos = hom_space(cur, cur, 0)
        c = _singular_endomorphism(cur, endos)
        if c is None:
            raise NotCertified("could not split a semisimple module over the rationals")
        cur = cur.submodule(la.span(c.transpose()))


def simple_constituents(m: GradedModule) -> list:
    """Irreducible modules (up to shift) occurring in the head of ``m``, one per class."""
    h, _ = head(m)
    found = []
    while not h.is_zero():
        s = find_simple(h)
        found.append(s)
        span_rows = []
        lo = h.low_degree() - max(d for _, d in s.labels)
        hi = max(d for _, d in h.labels) - s.low_degree()
        for sh in range(lo, hi + 1):
            for f in hom_space(s, h, sh):
                span_rows.append(f.transpose())
        iso = la.span(la.vstack(span_rows, h.dim))
        h = h.quotient(iso)
    return sorted(found, key=lambda s: char_key(normalize_char(s.character())))


def irreducibles(c: CycloAlgebra) -> list:
    if c.is_zero():
        return []
    return simple_constituents(c.regular_module())


# --- nilpotency checks ---------------------------------------------------------------------

@dataclass
class NilpotencyReport:
    index: str
    b: int
    exponent: int | None
    bound: int

    @property
    def ok(self) -> bool:
        return self.exponent is not None and self.exponent <= self.bound

    def to_json(self) -> dict:
        return {"index": self.index, "b": self.b, "exponent": self.exponent, "bound": self.bound}


def x2_nilpotency_check(alg: KlrAlgebra, i: str, b: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> NilpotencyReport:
    """Nilpotency of ``x_2`` in ``R(2i) / (x_1^b)`` for imaginary ``i``."""
    d = alg.datum
    if d.is_real(i):
        raise ValueError(f"{i} is a real index")
    if alg.preset is not Preset.MODIFIED:
        raise ValueError("this check concerns the modified relations")
    a = -d.a(i, i) // 2
    bound = b if d.is_isotropic(i) else b + 2 * a * b
    c = CycloAlgebra(alg, DominantWeight({i: b}), RootWeight({i: 2}), degree_cap)
    exp = c.certificate.exponents.get(((i, i), 2))
    return NilpotencyReport(i, b, exp, bound)


# --- special elements ------------------------------------------------------------------------

def _poly_term(n, exps: dict, c=1):
    return {monomial(n, exps): Fraction(c)}


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for u, c in a.items():
        for v, e in b.items():
            k = tuple(x + y for x, y in zip(u, v))
            out[k] = out.get(k, 0) + c * e
    return {k: v for k, v in out.items() if v}


def _poly_add(*ps) -> dict:
    out: dict = {}
    for p in ps:
        for k, v in p.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def intertwiner(alg: KlrAlgebra, nu: RootWeight, k: int) -> KlrElement:
    """The element ``g_k`` of the algebra at weight ``nu`` (all sequences summed)."""
    d = alg.datum
    out: dict = {}
    n = nu.ht
    for s in alg.sequences(nu):
        a, b = s[k - 1], s[k]
        if d.a(a, b) <= 0:
            _add_terms(out, alg.tau(k, s).terms)
        elif a == b and d.is_real(a):
            diff = _poly_add(_poly_term(n, {k: 1}), _poly_term(n, {k + 1: 1}, -1))
            _add_terms(out, alg.polynomial(s, diff).terms)
            sq = _poly_mul(diff, diff)
            _add_terms(out, (alg.polynomial(s, sq) * alg.tau(k, s)).terms, -1)
    return KlrElement(alg, out)


def _factor_products(alg, lam, i, seq_full, pos_i, others):
    """Shared product for the elements ``A`` and ``B``."""
    d = alg.datum
    n1 = len(seq_full)
    p = _poly_term(n1, {pos_i: lam[i]})
    for k, c in others:
        if c != i and d.a(i, c) != 0:
            p = _poly_mul(p, _poly_add(_poly_term(n1, {pos_i: -d.a(i, c)}),
                                       _poly_term(n1, {k: -d.a(c, i)})))
        elif c == i and d.is_imaginary(i) and not d.is_isotropic(i):
            a = -d.a(i, i) // 2
            f = _poly_add(_poly_term(n1, {pos_i: a}), _poly_term(n1, {k: a}))
            p = _poly_mul(p, _poly_mul(f, f))
    return p


def element_a(alg: KlrAlgebra, lam: DominantWeight, nu: RootWeight, i: str) -> KlrElement:
    out: dict = {}
    n = nu.ht
    for s in alg.sequences(nu) if n else [()]:
        full = (i,) + s
        p = _factor_products(alg, lam, i, full, 1, [(k + 1, s[k - 1]) for k in range(1, n + 1)])
        _add_terms(out, alg.polynomial(full, p).terms)
    return KlrElement(alg, out)


def element_b(alg: KlrAlgebra, lam: DominantWeight, nu: RootWeight, i: str) -> KlrElement:
    out: dict = {}
    n = nu.ht
    for s in alg.sequences(nu) if n else [()]:
        full = s + (i,)
        p = _factor_products(alg, lam, i, full, n + 1, [(k, s[k - 1]) for k in range(1, n + 1)])
        _add_terms(out, alg.polynomial(full, p).terms)
    return KlrElement(alg, out)


def mirror(a: KlrElement) -> KlrElement:
    """Left-right reflection of diagrams: reverses sequences and strand positions."""
    out: dict = {}
    alg = a.alg
    for (j, u, w), c in a.terms.items():
        n = len(j)
        word = [("x", tuple(reversed(u)))] + [("t", n - k) for k in canonical_reduced_word(w)]
        res = alg.apply_items(word, {(tuple(reversed(j)), tuple([0] * n), identity(n)): c})
        _add_terms(out, res)
    return KlrElement(alg, out)


def special_elements(alg: KlrAlgebra, lam: DominantWeight, nu: RootWeight, i: str) -> dict:
    if alg.preset is not Preset.MODIFIED:
        raise ValueError("special elements are defined for the modified relations")
    full = nu + RootWeight({i: 1})
    gs = [intertwiner(alg, full, k) for k in range(1, full.ht)]
    a = element_a(alg, lam, nu, i)
    b = element_b(alg, lam, nu, i)

    def comp_degrees(el):
        out = {}
        for (j, u, w) in el.terms:
            out.setdefault(j, set()).add(alg.word_degree(j, u, w))
        return out

    return {"g": gs, "A": a, "B": b,
            "degrees": {"g": [comp_degrees(g) for g in gs], "A": comp_degrees(a), "B": comp_degrees(b)}}
