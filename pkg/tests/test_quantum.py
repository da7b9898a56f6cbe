"""The negative half against a presentation by generators and relations.

The oracle builds the free algebra on the ``f_i`` modulo the quantum Serre
relations (real ``i``) and the commutation relations (``a_ij = 0``), with
``q`` specialised to a generic rational number.
"""

import itertools
from fractions import Fraction

import pytest
import sympy as sp

from klrcrystal import preset
from klrcrystal.cartan import RootWeight
from klrcrystal.presets import ALL_PRESETS
from klrcrystal.quantum import (FExpr, eprime_apply, gram_matrix, kashiwara_form, laurent_rank, lusztig_form,
                                serre_element, weight_space_rank)
from klrcrystal.qpoly import LaurentPoly, RatFunc

Q0 = Fraction(3, 7)


def qint(n, r):
    x = Q0 ** r
    return (x ** n - x ** -n) / (x - 1 / x)


def qbinom(m, k, r):
    out = Fraction(1)
    for t in range(k):
        out *= qint(m - t, r) / qint(t + 1, r)
    return out


def relations(d):
    rels = []
    for i in d.indices:
        for j in d.indices:
            if i == j:
                continue
            if d.is_real(i):
                m = 1 - d.a(i, j)
                rels.append({(i,) * (m - k) + (j,) + (i,) * k: (-1) ** k * qbinom(m, k, d.r(i))
                             for k in range(m + 1)})
            elif d.a(i, j) == 0:
                rels.append({(i, j): Fraction(1), (j, i): Fraction(-1)})
    return rels


def presented_dim(d, nu):
    words = nu.sequences(d)
    index = {w: a for a, w in enumerate(words)}
    rows = []
    for rel in relations(d):
        content = RootWeight.of(next(iter(rel)))
        rest = nu - content
        if not rest.nonnegative:
            continue
        for left_len in range(rest.ht + 1):
            for left in itertools.product(d.indices, repeat=left_len):
                for right in itertools.product(d.indices, repeat=rest.ht - left_len):
                    if RootWeight.of(left + right) != rest:
                        continue
                    row = [0] * len(words)
                    for w, c in rel.items():
                        row[index[left + w + right]] += c
                    rows.append(row)
    rank = sp.Matrix(rows).rank() if rows else 0
    return len(words) - rank


def weights(d, top):
    for n in range(1, top + 1):
        for combo in itertools.combinations_with_replacement(d.indices, n):
            yield RootWeight.of(combo)


@pytest.mark.parametrize("name", ALL_PRESETS)
def test_weight_space_rank_matches_presentation(name):
    d = preset(name)
    for nu in weights(d, 4):
        assert weight_space_rank(d, nu) == presented_dim(d, nu), nu


def test_a2_counts_kostant_partitions():
    d = preset("rank2")
    # positive roots i, j, i+j
    expect = {(1, 1): 2, (2, 1): 2, (1, 2): 2, (2, 2): 3, (3, 1): 2}
    for (a, b), n in expect.items():
        assert weight_space_rank(d, RootWeight({"i": a, "j": b})) == n


@pytest.mark.parametrize("name", ["rank2", "mixed"])
def test_serre_elements_lie_in_the_radical(name):
    d = preset(name)
    s = serre_element(d, "i", "j")
    nu = next(iter(s.weights()))
    for w in nu.sequences(d):
        assert kashiwara_form(d, s, FExpr.word(w)).is_zero()
        assert lusztig_form(d, s, FExpr.word(w)).is_zero()


@pytest.mark.parametrize("name", ["sl2", "rank2", "imaginary", "mixed", "orthogonal"])
def test_two_forms_have_equal_rank(name):
    d = preset(name)
    for nu in weights(d, 3):
        _, k = gram_matrix(d, nu, "kashiwara")
        _, lz = gram_matrix(d, nu, "lusztig")
        # clear the (1 - q^2) denominators of the Lusztig form before ranking
        den = LaurentPoly.const(1)
        for row in lz:
            for x in row:
                den = den * x.den if not (RatFunc(den) / x.den).is_laurent() else den
        lz_poly = [[(x * den).num for x in row] for row in lz]
        assert laurent_rank(k) == laurent_rank(lz_poly), nu


def test_forms_are_symmetric():
    d = preset("mixed")
    nu = RootWeight({"i": 2, "j": 1})
    _, g = gram_matrix(d, nu, "lusztig")
    n = len(g)
    assert all(g[a][b] == g[b][a] for a in range(n) for b in range(n))


def test_eprime_is_a_twisted_derivation():
    d = preset("rank2")
    # e'_i(f_j f_i) = q_i^{-a_ij} f_j
    out = eprime_apply(d, "i", FExpr.word(("j", "i")))
    assert out == FExpr.word(("j",), LaurentPoly.monomial(-d.form("i", "j")))
