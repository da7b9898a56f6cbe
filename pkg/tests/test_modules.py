"""Graded modules, induction, heads and socles.

Radicals are cross-checked against a slow route: close the generators and
idempotents under multiplication to get the image algebra ``A``, find its
radical as the kernel of the trace form, then ``rad M = rad(A) M`` and
``soc M = {v : rad(A) v = 0}``.
"""

import itertools

import pytest
from flint import fmpq_mat

from klrcrystal import KlrAlgebra, Preset, RootWeight, preset
from klrcrystal import linalg as la
from klrcrystal.cartan import seq_form
from klrcrystal.modules import (char_bar, coinduce, forget_head, forget_tail, graded_hom_dim, head, hom_dim,
                                induce, is_irreducible, iso_up_to_shift, one_strand, radical_rows,
                                simple_tower, socle_rows, unit_module)
from klrcrystal.qpoly import LaurentPoly


def image_algebra(m):
    n = m.dim
    gens = m.gen_list() + [la.from_sparse(n, n, {(a, a): 1 for a in idx}) for idx in m.components.values()]

    def flat(x):
        return fmpq_mat(1, n * n, x.entries())

    mats = [la.eye(n)]
    basis = la.span(flat(mats[0]))
    frontier = list(mats)
    while frontier:
        fresh = []
        for x in frontier:
            for g in gens:
                y = g * x
                if not la.contains(basis, flat(y)):
                    basis = la.span(la.vstack([basis, flat(y)], n * n))
                    fresh.append(y)
        frontier = fresh
    return [fmpq_mat(n, n, [basis[r, c] for c in range(n * n)]) for r in range(basis.nrows())]


def trace(x):
    return sum((x[a, a] for a in range(x.nrows())), 0)


def trace_radical(alg_basis):
    k = len(alg_basis)
    gram = la.from_rows([[trace(x * y) for y in alg_basis] for x in alg_basis])
    ker = la.nullspace(gram)
    out = []
    for r in range(ker.nrows()):
        acc = alg_basis[0] * 0
        for c in range(k):
            if ker[r, c]:
                acc = acc + alg_basis[c] * ker[r, c]
        out.append(acc)
    return out


def slow_radical_and_socle(m):
    n = m.dim
    rad = trace_radical(image_algebra(m))
    if not rad:
        return la.zeros(0, n), la.eye(n)
    images = la.span(la.vstack([r.transpose() for r in rad], n))
    soc = la.nullspace(la.vstack(rad, n))
    return images, soc


def modules():
    out = []
    sl2 = KlrAlgebra(preset("sl2"))
    out.append(("sl2 i.i", induce(one_strand(sl2, "i"), one_strand(sl2, "i"))))
    r2 = KlrAlgebra(preset("rank2"))
    i, j = one_strand(r2, "i"), one_strand(r2, "j")
    out.append(("rank2 i.j", induce(i, j)))
    out.append(("rank2 i.j.i", induce(i, j, i)))
    out.append(("rank2 i.i.j", induce(i, i, j)))
    out.append(("rank2 coind j.i.i", coinduce(j, i, i)))
    for pr in Preset:
        mx = KlrAlgebra(preset("mixed"), pr)
        out.append((f"mixed/{pr.value} j.i.j", induce(one_strand(mx, "j"), one_strand(mx, "i"), one_strand(mx, "j"))))
        im = KlrAlgebra(preset("imaginary"), pr)
        v = one_strand(im, "i")
        out.append((f"imaginary/{pr.value} i.i.i", induce(v, v, v)))
        iso = KlrAlgebra(preset("isotropic"), pr)
        w = one_strand(iso, "i")
        out.append((f"isotropic/{pr.value} i.i", induce(w, w)))
    return out


MODULES = modules()


@pytest.mark.parametrize("name,m", MODULES, ids=[n for n, _ in MODULES])
def test_radical_and_socle_match_the_trace_form_route(name, m):
    rad, soc = slow_radical_and_socle(m)
    got_rad, _ = radical_rows(m)
    assert la.span(got_rad) == rad
    assert la.span(socle_rows(m).rows) == soc


@pytest.mark.parametrize("name,m", MODULES, ids=[n for n, _ in MODULES])
def test_induced_modules_satisfy_the_relations(name, m):
    assert m.check_relations() == []


def test_isotropic_modified_pair_splits():
    alg = KlrAlgebra(preset("isotropic"), Preset.MODIFIED)
    v = one_strand(alg, "i")
    m = induce(v, v)
    rad, simple = radical_rows(m)
    assert rad.nrows() == 0 and not simple


def shuffle_character(datum, ch_m, ch_n):
    """Quantum shuffle of two characters, one interleaving at a time."""
    out = {}
    for (u, pu), (v, pv) in itertools.product(ch_m.items(), ch_n.items()):
        n = len(u) + len(v)
        for pos in itertools.combinations(range(n), len(v)):
            word, ui, vi, shift = [], 0, 0, 0
            for p in range(n):
                if p in pos:
                    # the strand from v crosses every remaining strand of u
                    shift -= sum(seq_form(datum, (v[vi],), (c,)) for c in u[ui:])
                    word.append(v[vi])
                    vi += 1
                else:
                    word.append(u[ui])
                    ui += 1
            key = tuple(word)
            out[key] = out.get(key, LaurentPoly()) + (pu * pv).shift(shift)
    return {k: p for k, p in out.items() if p}


@pytest.mark.parametrize("name,a,b", [("rank2", "i", "j"), ("rank2", "ij", "i"), ("mixed", "ji", "j"),
                                      ("sl2", "i", "ii"), ("orthogonal", "ij", "i")])
def test_induction_character_is_the_quantum_shuffle(name, a, b):
    alg = KlrAlgebra(preset(name))

    def build(word):
        mods = [one_strand(alg, c) for c in word]
        return mods[0] if len(mods) == 1 else induce(*mods)

    m, n = build(a), build(b)
    assert induce(m, n).character() == shuffle_character(alg.datum, m.character(), n.character())


def test_dual_is_an_involution_and_bars_characters():
    alg = KlrAlgebra(preset("rank2"))
    m = induce(one_strand(alg, "i"), one_strand(alg, "j"), one_strand(alg, "i"))
    dd = m.dual().dual()
    assert dd.labels == m.labels and all(dd.gens[k] == m.gens[k] for k in m.gens)
    assert m.dual().character() == char_bar(m.character())


def test_restrictions_pick_tails_and_heads():
    alg = KlrAlgebra(preset("rank2"))
    m = induce(one_strand(alg, "i"), one_strand(alg, "j"))
    tail = forget_tail(m, "j")
    assert set(tail.character()) == {("i",)}
    assert set(forget_head(m, "j").character()) == {("i",)}
    assert forget_tail(m, "i", 2).is_zero()


def test_homs_and_shift_detection():
    alg = KlrAlgebra(preset("sl2"))
    v2 = simple_tower(alg, "i", 2)
    assert is_irreducible(v2)
    assert hom_dim(v2, v2, 0) == 1
    assert graded_hom_dim(v2, v2) == LaurentPoly.const(1)
    assert iso_up_to_shift(v2, v2.shift(3)) == 3
    ind = induce(one_strand(alg, "i"), one_strand(alg, "i"))
    assert iso_up_to_shift(v2, ind) is not None
    h, simple = head(ind)
    assert simple and h.dim == 2


def test_unit_module_is_simple():
    alg = KlrAlgebra(preset("mixed"))
    u = unit_module(alg)
    assert u.dim == 1 and is_irreducible(u)
    assert RootWeight() == u.weight
