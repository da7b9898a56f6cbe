"""The polynomial representation of the modified algebra.

A vector is a dictionary ``sequence -> polynomial`` where polynomials are
dictionaries from exponent tuples to rationals.  Crossings act by divided
differences on equal real colours, by a doubled dot factor on equal
imaginary non-isotropic colours, and by a plain swap (possibly times an
oriented edge factor) otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .klr import KlrAlgebra, KlrElement, Preset, divided_difference, monomial, poly_add, poly_mul, swap_exps
from .perms import canonical_reduced_word


class StandardPresetUnsupported(ValueError):
    pass


PolyVector = dict


def _swap_poly(f: Mapping, k: int) -> dict:
    return {swap_exps(u, k): c for u, c in f.items()}


def tau_action(alg: KlrAlgebra, k: int, seq: tuple, f: Mapping) -> tuple[tuple, dict]:
    """``tau_k`` applied to ``f`` in the summand of ``seq``; returns (new sequence, polynomial)."""
    d = alg.datum
    n = len(seq)
    a, b = seq[k - 1], seq[k]
    new = seq[:k - 1] + (b, a) + seq[k + 1:]
    if a == b and d.is_real(a):
        out: dict = {}
        for u, c in f.items():
            poly_add(out, divided_difference(u, k), c)
        return seq, out
    sf = _swap_poly(f, k)
    if a == b and not d.is_isotropic(a):
        e = -d.a(a, a) // 2
        factor = {monomial(n, {k: e}): Fraction(1)}
        poly_add(factor, {monomial(n, {k + 1: e}): Fraction(1)})
        return seq, poly_mul(factor, sf)
    if d.form(a, b) == 0 or (b, a) in alg.orientation:
        return new, sf
    # edge a -> b; in the new sequence position k carries colour b
    factor = {monomial(n, {k: -d.a(b, a)}): Fraction(1)}
    poly_add(factor, {monomial(n, {k + 1: -d.a(a, b)}): Fraction(1)})
    return new, poly_mul(factor, sf)


def poly_rep_apply(alg: KlrAlgebra, a: KlrElement, f: Mapping[tuple, Mapping]) -> dict:
    """Act by ``a`` on a vector of the polynomial representation."""
    if alg.preset is not Preset.MODIFIED:
        raise StandardPresetUnsupported("the polynomial representation needs the modified preset")
    out: dict = {}
    for (j, u, w), c in a.terms.items():
        g = f.get(j)
        if not g:
            continue
        seq, cur = j, dict(g)
        for k in reversed(canonical_reduced_word(w)):
            seq, cur = tau_action(alg, k, seq, cur)
        cur = {tuple(x + y for x, y in zip(v, u)): val * c for v, val in cur.items()}
        poly_add(out.setdefault(seq, {}), cur)
    return {s: p for s, p in out.items() if p}


def apply_items(alg: KlrAlgebra, items, seq: tuple, f: Mapping) -> tuple[tuple, dict]:
    """Act by a generator word (top first) directly, without normal forms."""
    cur = dict(f)
    for it in reversed(items):
        if it[0] == "t":
            seq, cur = tau_action(alg, it[1], seq, cur)
        else:
            exps = it[1]
            cur = {tuple(x + y for x, y in zip(v, exps)): c for v, c in cur.items()}
    return seq, cur
