"""Finite-dimensional graded modules given by explicit matrices.

A module stores one basis vector per row of ``labels``; each label is a
pair ``(sequence, degree)``.  Generators act on column vectors through
exact rational matrices keyed by ``("x", k)`` and ``("t", k)``.  A module
over a Young-type subalgebra records its composition ``comp``; crossings at
the block boundaries are then absent.

Basis vectors are kept sorted by ``(sequence, degree)``, so every graded
subspace has a reduced echelon basis made of homogeneous vectors.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from flint import fmpq_mat

from . import linalg as la
from .cartan import RootWeight
from .klr import KlrAlgebra, Preset
from .perms import (act_on_seq, canonical_reduced_word, identity, inverse, parabolic_factor,
                    shuffles)
from .qpoly import LaurentPoly, q_factorial


class ModuleError(ValueError):
    pass


class NotCertified(RuntimeError):
    pass


def gen_keys(n: int, comp: Sequence[int]) -> list[tuple]:
    bounds = set()
    acc = 0
    for c in comp[:-1]:
        acc += c
        bounds.add(acc)
    keys = [("x", k) for k in range(1, n + 1)]
    keys += [("t", k) for k in range(1, n) if k not in bounds]
    return keys


class GradedModule:
    def __init__(self, alg: KlrAlgebra, n: int, labels: Sequence[tuple], gens: Mapping[tuple, fmpq_mat],
                 comp: Sequence[int] | None = None, _sorted: bool = False, tags: Sequence | None = None):
        self.alg = alg
        self.n = n
        self.comp = tuple(comp) if comp is not None else ((n,) if n else ())
        labels = [(tuple(s), int(d)) for s, d in labels]
        gens = dict(gens)
        if not _sorted:
            order = sorted(range(len(labels)), key=lambda a: self._label_key(labels[a]))
            if order != list(range(len(labels))):
                labels = [labels[a] for a in order]
                gens = {k: la.select(g, order, order) for k, g in gens.items()}
                if tags is not None:
                    tags = [tags[a] for a in order]
        self.labels = labels
        # optional provenance of basis vectors, e.g. (coset, inner index) after induction
        self.tags = list(tags) if tags is not None else None
        dim = len(labels)
        for k in gen_keys(n, self.comp):
            if k not in gens:
                gens[k] = la.zeros(dim, dim)
        self.gens = gens

    def _label_key(self, lab):
        pos = self.alg.datum.pos
        return (tuple(pos(c) for c in lab[0]), lab[1])

    # -- basic data -----------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def blocks(self) -> dict:
        out: dict = {}
        for a, lab in enumerate(self.labels):
            out.setdefault(lab, []).append(a)
        return out

    @cached_property
    def components(self) -> dict:
        out: dict = {}
        for a, (s, _) in enumerate(self.labels):
            out.setdefault(s, []).append(a)
        return out

    @property
    def weight(self) -> RootWeight:
        if not self.labels:
            return RootWeight()
        return RootWeight.of(self.labels[0][0])

    def gen_list(self) -> list[fmpq_mat]:
        return [self.gens[k] for k in gen_keys(self.n, self.comp)]

    def character(self) -> dict:
        out: dict = {}
        for s, d in self.labels:
            out[s] = out.get(s, LaurentPoly()) + LaurentPoly.monomial(d)
        return out

    def graded_dim(self) -> LaurentPoly:
        return sum((LaurentPoly.monomial(d) for _, d in self.labels), LaurentPoly())

    def low_degree(self) -> int:
        return min(d for _, d in self.labels)

    def is_zero(self) -> bool:
        return not self.labels

    def __repr__(self):
        return f"GradedModule(dim={self.dim}, n={self.n}, comp={self.comp})"

    # -- evaluation helpers ---------------------------------------------------------
    def word_matrix(self, items: Sequence) -> fmpq_mat:
        """Matrix of a product of generators (top first); dots given as exponent tuples."""
        m = la.eye(self.dim)
        for it in items:
            if it[0] == "t":
                m = m * self.gens[("t", it[1])]
            else:
                for k, e in enumerate(it[1]):
                    for _ in range(e):
                        m = m * self.gens[("x", k + 1)]
        return m

    def poly_matrix(self, poly: Mapping[tuple, object]) -> fmpq_mat:
        out = la.zeros(self.dim, self.dim)
        for u, c in poly.items():
            out = out + self.word_matrix([("x", u)]) * la.to_fmpq(c)
        return out

    def restrict_cols(self, m: fmpq_mat, seq) -> fmpq_mat:
        idx = self.components.get(tuple(seq), [])
        return la.select(m, range(self.dim), idx)

    # -- transformations ------------------------------------------------------------
    def shift(self, s: int) -> "GradedModule":
        """``M{s}``: degrees raised by ``s``."""
        return GradedModule(self.alg, self.n, [(q, d + s) for q, d in self.labels], self.gens,
                            self.comp, _sorted=True)

    def normalized(self) -> tuple["GradedModule", int]:
        """Shift so that the lowest degree is 0; returns the module and the shift applied."""
        if self.is_zero():
            return self, 0
        s = -self.low_degree()
        return self.shift(s), s

    def dual(self) -> "GradedModule":
        """Contragredient dual: transposed action, negated degrees.

        The basis order is kept, so row vectors of the dual pair with column vectors here.
        """
        return GradedModule(self.alg, self.n, [(q, -d) for q, d in self.labels],
                            {k: g.transpose() for k, g in self.gens.items()}, self.comp, _sorted=True)

    def subquotient(self, sub: fmpq_mat, quot: fmpq_mat | None = None) -> "GradedModule":
        """Module on ``sub / quot`` where both are echelon row spaces of graded submodules."""
        sub = la.span(sub)
        if quot is None or quot.nrows() == 0:
            basis, piv = la.rref(sub)
            keep_rows = list(range(basis.nrows()))
            labels = [self.labels[p] for p in piv]
            gens = {}
            for k, g in self.gens.items():
                img = basis * g.transpose()
                gens[k] = la.coordinates(basis, piv, img).transpose()
            return GradedModule(self.alg, self.n, labels, gens, self.comp)
        qb, qpiv = la.rref(quot)
        # reduce sub modulo quot and pick a complement basis
        red = la.span(la.reduce_mod(sub, qb, qpiv))
        cb, cpiv = la.rref(red)
        labels = [self.labels[p] for p in cpiv]
        gens = {}
        for k, g in self.gens.items():
            img = la.reduce_mod(cb * g.transpose(), qb, qpiv)
            gens[k] = la.coordinates(cb, cpiv, img).transpose()
        return GradedModule(self.alg, self.n, labels, gens, self.comp)

    def submodule(self, rows: fmpq_mat) -> "GradedModule":
        return self.subquotient(rows)

    def quotient(self, rows: fmpq_mat) -> "GradedModule":
        return self.subquotient(la.eye(self.dim), rows)

    def restrict_comp(self, comp: Sequence[int]) -> "GradedModule":
        if sum(comp) != self.n:
            raise ModuleError("composition does not match the number of strands")
        keys = set(gen_keys(self.n, comp))
        return GradedModule(self.alg, self.n, self.labels,
                            {k: g for k, g in self.gens.items() if k in keys}, comp, _sorted=True)

    def component_filter(self, keep) -> "GradedModule":
        idx = [a for a, (s, _) in enumerate(self.labels) if keep(s)]
        return GradedModule(self.alg, self.n, [self.labels[a] for a in idx],
                            {k: la.select(g, idx, idx) for k, g in self.gens.items()}, self.comp,
                            _sorted=True)

    # -- relations ------------------------------------------------------------------
    def check_relations(self) -> list[str]:
        """Evaluate every local relation; returns a list of violations (empty when valid)."""
        out: list[str] = []
        alg = self.alg
        present = set(self.gens)
        dim = self.dim
        one = la.eye(dim)
        for (kind, k), g in self.gens.items():
            for a, (s, d) in enumerate(self.labels):
                for b in range(dim):
                    v = g[b, a]
                    if not v:
                        continue
                    s2, d2 = self.labels[b]
                    if kind == "x":
                        want = (s, d + alg.dot_degree(s[k - 1]))
                    else:
                        sw = s[:k - 1] + (s[k], s[k - 1]) + s[k + 1:]
                        want = (sw, d + alg.crossing_degree(s[k - 1], s[k]))
                    if (s2, d2) != want:
                        out.append(f"{kind}{k} maps {s},{d} to {s2},{d2}")
                        break
        xs = [k for (kind, k) in present if kind == "x"]
        ts = sorted(k for (kind, k) in present if kind == "t")
        for a in xs:
            for b in xs:
                if a < b and not la.is_zero(self.gens[("x", a)] * self.gens[("x", b)]
                                            - self.gens[("x", b)] * self.gens[("x", a)]):
                    out.append(f"dots x{a}, x{b} do not commute")
        for seq in self.components:
            for k in ts:
                t = self.gens[("t", k)]
                ii, jj = seq[k - 1], seq[k]
                corr = one if alg.slides_with_correction(ii, jj) else la.zeros(dim, dim)
                xk, xk1 = self.gens[("x", k)], self.gens[("x", k + 1)]
                lhs = self.restrict_cols(t * xk - xk1 * t - corr, seq)
                if not la.is_zero(lhs):
                    out.append(f"dot slide tau{k} x{k} on {seq}")
                lhs = self.restrict_cols(xk * t - t * xk1 - corr, seq)
                if not la.is_zero(lhs):
                    out.append(f"dot slide x{k} tau{k} on {seq}")
                for a in xs:
                    if a not in (k, k + 1):
                        xa = self.gens[("x", a)]
                        if not la.is_zero(self.restrict_cols(t * xa - xa * t, seq)):
                            out.append(f"distant dot x{a} tau{k} on {seq}")
                q = self.poly_matrix(alg.quadratic(k, seq))
                if not la.is_zero(self.restrict_cols(t * t - q, seq)):
                    out.append(f"quadratic relation tau{k}^2 on {seq}")
                for k2 in ts:
                    if k2 > k + 1:
                        t2 = self.gens[("t", k2)]
                        if not la.is_zero(self.restrict_cols(t * t2 - t2 * t, seq)):
                            out.append(f"distant crossings tau{k}, tau{k2} on {seq}")
                if k + 1 in ts:
                    t2 = self.gens[("t", k + 1)]
                    lhs = t * t2 * t - t2 * t * t2 - self.poly_matrix(alg.braid_defect(k, seq))
                    if not la.is_zero(self.restrict_cols(lhs, seq)):
                        out.append(f"braid relation at {k} on {seq}")
        return out


# --- constructors ---------------------------------------------------------------------

def unit_module(alg: KlrAlgebra) -> GradedModule:
    """The one-dimensional module over the algebra with no strands."""
    return GradedModule(alg, 0, [((), 0)], {}, ())


def one_strand(alg: KlrAlgebra, i: str) -> GradedModule:
    alg.datum.pos(i)
    return GradedModule(alg, 1, [((i,), 0)], {("x", 1): la.zeros(1, 1)}, (1,))


def zero_module(alg: KlrAlgebra, n: int, comp=None) -> GradedModule:
    return GradedModule(alg, n, [], {}, comp)


def _kron_left(g: fmpq_mat, m: int) -> dict:
    """Sparse entries of ``g (x) I_m``."""
    out = {}
    for a in range(g.nrows()):
        for b in range(g.ncols()):
            v = g[a, b]
            if v:
                for c in range(m):
                    out[(a * m + c, b * m + c)] = v
    return out


def _kron_right(m: int, g: fmpq_mat) -> dict:
    """Sparse entries of ``I_m (x) g``."""
    out = {}
    n = g.nrows()
    for a in range(g.nrows()):
        for b in range(g.ncols()):
            v = g[a, b]
            if v:
                for c in range(m):
                    out[(c * n + a, c * n + b)] = v
    return out


def outer(mods: Sequence[GradedModule]) -> GradedModule:
    """External tensor product, a module over the Young-type subalgebra."""
    mods = [m for m in mods if m.n or m.dim != 1] if len(mods) > 1 else list(mods)
    if not mods:
        raise ModuleError("empty tensor product")
    cur = mods[0]
    for nxt in mods[1:]:
        cur = _outer2(cur, nxt)
    return cur


def _outer2(a: GradedModule, b: GradedModule) -> GradedModule:
    if a.alg != b.alg:
        from .klr import PresetMismatch
        raise PresetMismatch("modules over different algebras")
    if a.n == 0:
        return b.shift(a.labels[0][1]) if a.dim == 1 else _outer_general(a, b)
    if b.n == 0:
        return a.shift(b.labels[0][1]) if b.dim == 1 else _outer_general(a, b)
    return _outer_general(a, b)


def _outer_general(a: GradedModule, b: GradedModule) -> GradedModule:
    n = a.n + b.n
    labels = [(sa + sb, da + db) for sa, da in a.labels for sb, db in b.labels]
    dim = len(labels)
    gens = {}
    for (kind, k), g in a.gens.items():
        gens[(kind, k)] = la.from_sparse(dim, dim, _kron_left(g, b.dim))
    for (kind, k), g in b.gens.items():
        gens[(kind, k + a.n)] = la.from_sparse(dim, dim, _kron_right(a.dim, g))
    return GradedModule(a.alg, n, labels, gens, a.comp + b.comp)


class _CosetRewriter:
    """Rewrites ``tau_{C(w)} 1_s`` as ``sum P * tau_{C(u)}`` with ``P`` in the Young subalgebra
    and ``u`` a minimal right coset representative."""

    def __init__(self, alg: KlrAlgebra, comp: tuple):
        self.alg = alg
        self.comp = comp
        self._memo: dict = {}

    def conv(self, w: tuple, s: tuple) -> dict:
        """Returns ``{(u, dots, sigma): coefficient}``."""
        key = (w, s)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        n = len(w)
        zero = tuple([0] * n)
        sigma, u = parabolic_factor(w, self.comp)
        out: dict = {(u, zero, sigma): Fraction(1)}
        corr: dict = {}
        target = canonical_reduced_word(sigma) + canonical_reduced_word(u)
        self.alg._add_path_corrections(corr, canonical_reduced_word(w), target, s, [])
        for (_, d, w2), c in corr.items():
            for (u2, d2, s2), c2 in self.conv(w2, s).items():
                k = (u2, tuple(x + y for x, y in zip(d, d2)), s2)
                v = out.get(k, 0) + c * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        self._memo[key] = out
        return out


def _gen_item(key, n):
    kind, k = key
    if kind == "t":
        return ("t", k)
    u = [0] * n
    u[k - 1] = 1
    return ("x", tuple(u))


def _gen_target(key, seq):
    kind, k = key
    if kind == "x":
        return seq
    return seq[:k - 1] + (seq[k], seq[k - 1]) + seq[k + 1:]


def induce_parabolic(x: GradedModule) -> GradedModule:
    """Induction from the Young-type subalgebra of ``x.comp`` to the full algebra."""
    alg, n, comp = x.alg, x.n, x.comp
    if len(comp) <= 1:
        return GradedModule(alg, n, x.labels, x.gens, (n,) if n else (), _sorted=True,
                            tags=[(identity(n), a) for a in range(x.dim)])
    cosets = shuffles(comp)
    rw = _CosetRewriter(alg, comp)
    xcomps = x.components
    labels = []
    index = {}
    for w in cosets:
        for a, (s, d) in enumerate(x.labels):
            index[(w, a)] = len(labels)
            labels.append((act_on_seq(w, s), d + alg.tau_degree(s, w)))
    dim = len(labels)
    zero = tuple([0] * n)
    ident = identity(n)
    mat_cache: dict = {}

    def psi_parabolic(dots, sigma):
        key = (dots, sigma)
        m = mat_cache.get(key)
        if m is None:
            items = [("t", k) for k in reversed(canonical_reduced_word(sigma))] + [("x", dots)]
            m = x.word_matrix(items)
            mat_cache[key] = m
        return m

    gens = {}
    for key in gen_keys(n, (n,)):
        entries: dict = {}
        item = _gen_item(key, n)
        for w in cosets:
            winv_word = canonical_reduced_word(inverse(w))
            for j, cols in xcomps.items():
                top = act_on_seq(w, j)
                src = _gen_target(key, top)
                items = [("t", k) for k in winv_word] + [item]
                res = alg.apply_items(items, {(src, zero, ident): Fraction(1)})
                for (_, u, om), c in res.items():
                    for (uc, d, sigma), c2 in rw.conv(om, src).items():
                        dots = tuple(p + q for p, q in zip(u, d))
                        m = psi_parabolic(dots, sigma)
                        w2 = inverse(uc)
                        coef = la.to_fmpq(c * c2)
                        for a in cols:
                            col = index[(w, a)]
                            for b in range(x.dim):
                                v = m[b, a]
                                if v:
                                    row = index[(w2, b)]
                                    entries[(row, col)] = entries.get((row, col), 0) + coef * v
        gens[key] = la.from_sparse(dim, dim, entries)
    return GradedModule(alg, n, labels, gens, (n,), tags=list(index))


def coinduce_parabolic(x: GradedModule) -> GradedModule:
    """Coinduction ``HOM(1 R, x)`` over the Young-type subalgebra of ``x.comp``.

    Basis ``f_{u,y}`` with ``f_{u,y}(tau_{C(u)} 1_s) = y`` for the minimal right
    coset representatives ``u``; the action is ``(z f)(m) = f(m z)``.
    """
    alg, n, comp = x.alg, x.n, x.comp
    if len(comp) <= 1:
        return GradedModule(alg, n, x.labels, x.gens, (n,) if n else (), _sorted=True)
    reps = [inverse(w) for w in shuffles(comp)]
    rw = _CosetRewriter(alg, comp)
    labels = []
    index = {}
    for u in reps:
        uinv = inverse(u)
        for a, (t, d) in enumerate(x.labels):
            s = act_on_seq(uinv, t)
            index[(u, a)] = len(labels)
            labels.append((s, d - alg.tau_degree(s, u)))
    dim = len(labels)
    zero = tuple([0] * n)
    ident = identity(n)
    sources = sorted({lab[0] for lab in labels})
    mat_cache: dict = {}

    def parabolic(dots, sigma):
        key = (dots, sigma)
        m = mat_cache.get(key)
        if m is None:
            items = [("x", dots)] + [("t", k) for k in canonical_reduced_word(sigma)]
            m = x.word_matrix(items)
            mat_cache[key] = m
        return m

    gens = {}
    for key in gen_keys(n, (n,)):
        entries: dict = {}
        item = _gen_item(key, n)
        for s in sources:
            zs = _gen_target(key, s)
            for u2 in reps:
                # (z f)(tau_{C(u2)} 1_{zs}) = f(tau_{C(u2)} z 1_s)
                items = [("t", k) for k in canonical_reduced_word(u2)] + [item]
                res = alg.apply_items(items, {(s, zero, ident): Fraction(1)})
                for (_, d0, om), c in res.items():
                    for (uc, d, sigma), c2 in rw.conv(om, s).items():
                        dots = tuple(p + q for p, q in zip(d0, d))
                        m = parabolic(dots, sigma)
                        coef = la.to_fmpq(c * c2)
                        for a in x.components.get(act_on_seq(uc, s), []):
                            col = index[(uc, a)]
                            for b in range(x.dim):
                                v = m[b, a]
                                if v:
                                    row = index[(u2, b)]
                                    entries[(row, col)] = entries.get((row, col), 0) + coef * v
        gens[key] = la.from_sparse(dim, dim, entries)
    return GradedModule(alg, n, labels, gens, (n,))


def induce(*mods: GradedModule) -> GradedModule:
    """``Ind(M_1 (x) ... (x) M_r)``."""
    return induce_parabolic(outer(mods))


def coinduce(*mods: GradedModule) -> GradedModule:
    return coinduce_parabolic(outer(mods))


def restrict(m: GradedModule, comp: Sequence[int]) -> GradedModule:
    """Restriction to the Young-type subalgebra; ``comp`` is a composition of the strand count."""
    return m.restrict_comp(tuple(comp))


def restrict_weights(m: GradedModule, nus: Sequence[RootWeight]) -> GradedModule:
    """``1_{nu_1, ..., nu_r} M`` as a module over the corresponding Young-type subalgebra."""
    comp = tuple(nu.ht for nu in nus)

    def keep(s):
        p = 0
        for nu, c in zip(nus, comp):
            if RootWeight.of(s[p:p + c]) != nu:
                return False
            p += c
        return True

    return m.restrict_comp(comp).component_filter(keep)


def delta_in(m: GradedModule, i: str, n: int) -> GradedModule:
    """The summand whose sequences end in ``i^n``, over ``R(nu - n i) (x) R(n i)``."""
    if n == 0:
        return m
    tail = (i,) * n
    if n > m.n:
        return zero_module(m.alg, m.n, (0, m.n))
    return m.restrict_comp((m.n - n, n)).component_filter(lambda s: s[m.n - n:] == tail)


def forget_tail(m: GradedModule, i: str, n: int = 1) -> GradedModule:
    """``e_i^n M``: sequences ending in ``i^n``, viewed over the first ``N - n`` strands."""
    keep_n = m.n - n
    if keep_n < 0:
        return zero_module(m.alg, 0)
    tail = (i,) * n
    idx = [a for a, (s, _) in enumerate(m.labels) if s[keep_n:] == tail]
    labels = [(m.labels[a][0][:keep_n], m.labels[a][1]) for a in idx]
    keys = gen_keys(keep_n, (keep_n,) if keep_n else ())
    gens = {k: la.select(m.gens[k], idx, idx) for k in keys}
    return GradedModule(m.alg, keep_n, labels, gens, (keep_n,) if keep_n else ())


def forget_head(m: GradedModule, i: str, n: int = 1) -> GradedModule:
    """``e_i^{vee n} M``: sequences starting with ``i^n``, viewed over the last strands."""
    keep_n = m.n - n
    if keep_n < 0:
        return zero_module(m.alg, 0)
    head = (i,) * n
    idx = [a for a, (s, _) in enumerate(m.labels) if s[:n] == head]
    labels = [(m.labels[a][0][n:], m.labels[a][1]) for a in idx]
    gens = {}
    for kind, k in gen_keys(keep_n, (keep_n,) if keep_n else ()):
        gens[(kind, k)] = la.select(m.gens[(kind, k + n)], idx, idx)
    return GradedModule(m.alg, keep_n, labels, gens, (keep_n,) if keep_n else ())


def simple_tower(alg: KlrAlgebra, i: str, n: int) -> GradedModule:
    """The irreducible module ``V(i^n)`` with lowest degree ``-n(n-1)r_i/2`` for real ``i``."""
    if n == 0:
        return unit_module(alg)
    if not alg.datum.is_real(i):
        seq = (i,) * n
        keys = gen_keys(n, (n,))
        return GradedModule(alg, n, [(seq, 0)], {k: la.zeros(1, 1) for k in keys}, (n,))
    if n == 1:
        return one_strand(alg, i)
    m = induce(*[one_strand(alg, i)] * n)
    return m.shift(n * (n - 1) * alg.datum.r(i) // 2)


def direct_sum(a: GradedModule, b: GradedModule) -> GradedModule:
    dim = a.dim + b.dim
    gens = {}
    for k in set(a.gens) | set(b.gens):
        e = {}
        if k in a.gens:
            g = a.gens[k]
            for r in range(a.dim):
                for c in range(a.dim):
                    if g[r, c]:
                        e[(r, c)] = g[r, c]
        if k in b.gens:
            g = b.gens[k]
            for r in range(b.dim):
                for c in range(b.dim):
                    if g[r, c]:
                        e[(a.dim + r, a.dim + c)] = g[r, c]
        gens[k] = la.from_sparse(dim, dim, e)
    return GradedModule(a.alg, a.n, a.labels + b.labels, gens, a.comp)


# --- characters -----------------------------------------------------------------------

def character(m: GradedModule) -> dict:
    return m.character()


def char_shift(ch: Mapping, s: int) -> dict:
    return {k: v.shift(s) for k, v in ch.items()}


def char_low(ch: Mapping) -> int:
    return min(v.low() for v in ch.values() if v)


def normalize_char(ch: Mapping) -> dict:
    ch = {k: v for k, v in ch.items() if v}
    if not ch:
        return {}
    return char_shift(ch, -char_low(ch))


def char_key(ch: Mapping) -> tuple:
    """Hashable canonical form of a character."""
    return tuple(sorted((s, tuple(v.items())) for s, v in ch.items() if v))


def char_add(a: Mapping, b: Mapping) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, LaurentPoly()) + v
    return {k: v for k, v in out.items() if v}


def char_scale(ch: Mapping, p: LaurentPoly) -> dict:
    return {k: v * p for k, v in ch.items() if v * p}


def char_bar(ch: Mapping) -> dict:
    return {k: v.bar() for k, v in ch.items()}


def char_to_json(ch: Mapping) -> list:
    return [{"sequence": "".join(s), "dim": v.to_json()} for s, v in sorted(ch.items())]


def char_from_json(entries) -> dict:
    return {tuple(e["sequence"]): LaurentPoly.from_json(e["dim"]) for e in entries}


# --- socle, head, irreducibility ---------------------------------------------------------

def _avoiding_submodule(m: GradedModule, block_idx: Sequence[int]) -> fmpq_mat:
    """Largest submodule whose coordinates in ``block_idx`` all vanish (echelon rows)."""
    funcs = la.from_sparse(len(block_idx), m.dim, {(a, b): 1 for a, b in enumerate(block_idx)})
    orb = la.orbit(funcs, m.gen_list())
    return la.annihilator(orb, m.dim)


def _hom_orbit(m: GradedModule, cols: Sequence[int], blocks: Sequence[Sequence[int]]) -> list:
    """Span of ``a * iota_B`` over words ``a``; iota includes the coordinates ``cols`` into ``m``.

    Elements are returned as ``dim x len(cols)`` matrices.
    """
    b = len(cols)
    dim = m.dim
    pos = {c: t for t, c in enumerate(cols)}
    starts = []
    for blk in blocks:
        e = {}
        for c in blk:
            e[(0, pos[c] * dim + c)] = 1
        starts.append(la.from_sparse(1, dim * b, e))
    gens = m.gen_list()
    # action on flattened (column-major over copies) vectors: each copy by g
    big = []
    for g in gens:
        e = {}
        gt = g.transpose()
        for r in range(dim):
            for c in range(dim):
                v = gt[r, c]
                if v:
                    for t in range(b):
                        e[(t * dim + r, t * dim + c)] = v
        big.append(la.from_sparse(dim * b, dim * b, e))
    orb = la.orbit(la.vstack(starts, dim * b), big)
    out = []
    for r in range(orb.nrows()):
        mat = fmpq_mat(dim, b)
        for t in range(b):
            for c in range(dim):
                v = orb[r, t * dim + c]
                if v:
                    mat[c, t] = v
        out.append(mat)
    return out


def _corner(m: GradedModule):
    """Blocks whose joint avoiding submodule is zero, plus the corner algebra on them."""
    order = sorted(m.blocks.items(), key=lambda kv: (len(kv[1]), -kv[0][1], m._label_key(kv[0])))
    chosen = []
    avoid = None
    for _, idx in order:
        p = _avoiding_submodule(m, idx)
        avoid = p if avoid is None else la.intersect(avoid, p)
        chosen.append(idx)
        if avoid.nrows() == 0:
            break
    cols = sorted(c for blk in chosen for c in blk)
    homs = _hom_orbit(m, cols, chosen)
    corner = [la.select(h, cols, range(len(cols))) for h in homs]
    corner = _span_mats(corner)
    return cols, chosen, corner


def _span_mats(mats: list) -> list:
    if not mats:
        return []
    r, c = mats[0].nrows(), mats[0].ncols()
    flat = la.span(la.from_rows([list(mm.entries()) for mm in mats]))
    return [fmpq_mat(r, c, [flat[a, b] for b in range(r * c)]) for a in range(flat.nrows())]


def _trace_radical(alg_basis: list) -> list:
    """Jacobson radical of a matrix algebra via the trace form (characteristic zero)."""
    k = len(alg_basis)
    if k == 0:
        return []
    gram = fmpq_mat(k, k)
    for a in range(k):
        for b in range(a, k):
            p = alg_basis[a] * alg_basis[b]
            t = sum((p[c, c] for c in range(p.nrows())), la.to_fmpq(0))
            gram[a, b] = t
            gram[b, a] = t
    ker = la.nullspace(gram)
    out = []
    for r in range(ker.nrows()):
        acc = None
        for a in range(k):
            v = ker[r, a]
            if v:
                acc = alg_basis[a] * v if acc is None else acc + alg_basis[a] * v
        out.append(acc)
    return out


class SocleResult:
    def __init__(self, rows: fmpq_mat, simple: bool, corner_dim: int):
        self.rows = rows
        self.simple = simple
        self.corner_dim = corner_dim


def socle_rows(m: GradedModule) -> SocleResult:
    """Graded socle of ``m`` as echelon rows, with a flag telling whether it is simple.

    The algorithm picks coordinate blocks ``B`` such that every nonzero
    submodule meets ``B``; then the socle is generated by the socle of the
    corner algebra ``e A e`` acting on ``e M``.
    """
    if m.is_zero():
        return SocleResult(la.zeros(0, 0), False, 0)
    cols, chosen, corner = _corner(m)
    b = len(cols)
    rad = _trace_radical(corner)
    if rad:
        soc_small = la.nullspace(la.vstack(rad, b))
    else:
        soc_small = la.eye(b)
    # split into homogeneous pieces and embed
    pos = {c: t for t, c in enumerate(cols)}
    pieces = []
    for blk in chosen:
        sel = [pos[c] for c in blk]
        mask = {(t, t): 1 for t in sel}
        proj = soc_small * la.from_sparse(b, b, mask)
        pieces.append(proj)
    local = la.span(la.vstack(pieces, b))
    emb = la.from_sparse(b, m.dim, {(t, c): 1 for t, c in enumerate(cols)})
    gen_rows = local * emb
    soc = la.orbit(gen_rows, [g.transpose() for g in m.gen_list()])
    simple = _is_absolutely_simple(corner, local)
    return SocleResult(soc, simple, len(corner))


def _is_absolutely_simple(corner: list, local: fmpq_mat) -> bool:
    """Burnside test: the corner algebra restricted to ``local`` is a full matrix algebra."""
    d = local.nrows()
    if d == 0:
        return False
    if d == 1:
        return True
    basis, piv = la.rref(local)
    acts = []
    for e in corner:
        img = basis * e.transpose()
        acts.append(list(la.coordinates(basis, piv, img).entries()))
    return la.rank(la.from_rows(acts)) == d * d


def socle(m: GradedModule) -> GradedModule:
    return m.submodule(socle_rows(m).rows)


def radical_rows(m: GradedModule) -> tuple[fmpq_mat, bool]:
    """Radical of ``m`` (echelon rows) and whether the head is simple."""
    res = socle_rows(m.dual())
    return la.annihilator(res.rows, m.dim), res.simple


def head(m: GradedModule) -> tuple[GradedModule, bool]:
    """Head ``M / rad M`` together with the flag "head is absolutely irreducible"."""
    if m.is_zero():
        return m, False
    rad, simple = radical_rows(m)
    return m.quotient(rad), simple


def is_irreducible(m: GradedModule) -> bool:
    if m.is_zero():
        return False
    res = socle_rows(m)
    return res.simple and res.rows.nrows() == m.dim


def end_degree_zero(m: GradedModule) -> int:
    return hom_dim(m, m, 0)


# --- homomorphisms ------------------------------------------------------------------------

def hom_space(src: GradedModule, dst: GradedModule, shift: int = 0) -> list:
    """Basis of degree-``shift`` module maps ``src -> dst`` as ``dst.dim x src.dim`` matrices."""
    unknowns = []
    uidx = {}
    for (s, d), cols in src.blocks.items():
        rows = dst.blocks.get((s, d + shift), [])
        for r in rows:
            for c in cols:
                uidx[(r, c)] = len(unknowns)
                unknowns.append((r, c))
    nu = len(unknowns)
    if nu == 0:
        return []
    eqs = []
    keys = [k for k in src.gens if k in dst.gens]
    for k in keys:
        gs, gd = src.gens[k], dst.gens[k]
        # (gd X - X gs)[r, c] = sum_t gd[r, t] X[t, c] - sum_t X[r, t] gs[t, c]
        gd_col: dict = {}
        for r in range(dst.dim):
            for t in range(dst.dim):
                v = gd[r, t]
                if v:
                    gd_col.setdefault(t, []).append((r, v))
        gs_row: dict = {}
        for t in range(src.dim):
            for c in range(src.dim):
                v = gs[t, c]
                if v:
                    gs_row.setdefault(t, []).append((c, v))
        acc: dict = {}
        for (t, c), x in uidx.items():
            for r, v in gd_col.get(t, ()):
                eq = acc.setdefault((r, c), {})
                eq[x] = eq.get(x, 0) + v
        for (r, t), x in uidx.items():
            for c, v in gs_row.get(t, ()):
                eq = acc.setdefault((r, c), {})
                eq[x] = eq.get(x, 0) - v
        for eq in acc.values():
            eq = {x: v for x, v in eq.items() if v}
            if eq:
                eqs.append(eq)
    if eqs:
        sys_m = la.from_sparse(len(eqs), nu, {(a, x): v for a, eq in enumerate(eqs) for x, v in eq.items()})
        ker = la.nullspace(sys_m)
    else:
        ker = la.eye(nu)
    out = []
    for a in range(ker.nrows()):
        mat = fmpq_mat(dst.dim, src.dim)
        for x, (r, c) in enumerate(unknowns):
            v = ker[a, x]
            if v:
                mat[r, c] = v
        out.append(mat)
    return out


def hom_dim(src: GradedModule, dst: GradedModule, shift: int = 0) -> int:
    return len(hom_space(src, dst, shift))


def graded_hom_dim(src: GradedModule, dst: GradedModule) -> LaurentPoly:
    """``sum_s dim Hom(src{s}, dst) q^s`` -- degree ``s`` maps raise degrees by ``s``."""
    if src.is_zero() or dst.is_zero():
        return LaurentPoly()
    lo = dst.low_degree() - max(d for _, d in src.labels)
    hi = max(d for _, d in dst.labels) - src.low_degree()
    out = {}
    for s in range(lo, hi + 1):
        k = hom_dim(src, dst, s)
        if k:
            out[s] = k
    return LaurentPoly(out)


def iso_up_to_shift(m: GradedModule, n: GradedModule, irreducible: bool = True):
    """Integer ``s`` with ``n = m{s}`` or ``None``."""
    if m.dim != n.dim or m.n != n.n:
        return None
    if m.is_zero():
        return 0
    s = n.low_degree() - m.low_degree()
    if normalize_char(m.character()) != normalize_char(n.character()):
        return None
    if irreducible:
        return s
    for h in hom_space(m, n, s):
        if la.rank(h) == m.dim:
            return s
    # a random combination is invertible if any element of the space is
    homs = hom_space(m, n, s)
    if not homs:
        return None
    acc = homs[0]
    for k, h in enumerate(homs[1:], start=2):
        acc = acc + h * k
    return s if la.rank(acc) == m.dim else None
