"""Exact rational linear algebra on top of ``flint.fmpq_mat``.

Subspaces are stored as matrices in reduced row echelon form whose rows
span the subspace.  Module elements are column vectors, so a subspace
``W`` is carried to ``g(W)`` by ``W * g^T``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from flint import fmpq, fmpq_mat


def to_fmpq(c) -> fmpq:
    if isinstance(c, fmpq):
        return c
    if isinstance(c, Fraction):
        return fmpq(c.numerator, c.denominator)
    return fmpq(c)


def to_fraction(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def zeros(r: int, c: int) -> fmpq_mat:
    return fmpq_mat(r, c)


def eye(n: int) -> fmpq_mat:
    m = fmpq_mat(n, n)
    for k in range(n):
        m[k, k] = 1
    return m


def from_sparse(r: int, c: int, entries: Mapping[tuple[int, int], object]) -> fmpq_mat:
    m = fmpq_mat(r, c)
    for (a, b), v in entries.items():
        if v:
            m[a, b] = to_fmpq(v)
    return m


def from_rows(rows: Sequence[Sequence], ncols: int | None = None) -> fmpq_mat:
    if not rows:
        return fmpq_mat(0, ncols or 0)
    nc = len(rows[0])
    flat = [to_fmpq(v) for row in rows for v in row]
    return fmpq_mat(len(rows), nc, flat)


def vstack(mats: Iterable[fmpq_mat], ncols: int) -> fmpq_mat:
    entries: list = []
    nr = 0
    for m in mats:
        if m.nrows():
            entries.extend(m.entries())
            nr += m.nrows()
    return fmpq_mat(nr, ncols, entries) if nr else fmpq_mat(0, ncols)


def select_rows(m: fmpq_mat, rows: Sequence[int]) -> fmpq_mat:
    nc = m.ncols()
    out = fmpq_mat(len(rows), nc)
    for a, r in enumerate(rows):
        for b in range(nc):
            v = m[r, b]
            if v:
                out[a, b] = v
    return out


def select(m: fmpq_mat, rows: Sequence[int], cols: Sequence[int]) -> fmpq_mat:
    out = fmpq_mat(len(rows), len(cols))
    for a, r in enumerate(rows):
        for b, c in enumerate(cols):
            v = m[r, c]
            if v:
                out[a, b] = v
    return out


def is_zero(m: fmpq_mat) -> bool:
    return not any(m.entries())


def nonzero_rows(m: fmpq_mat) -> list[int]:
    nc = m.ncols()
    return [r for r in range(m.nrows()) if any(m[r, c] for c in range(nc))]


def rref(m: fmpq_mat) -> tuple[fmpq_mat, list[int]]:
    """Nonzero rows of the reduced echelon form, with their pivot columns."""
    if m.nrows() == 0:
        return fmpq_mat(0, m.ncols()), []
    r, rank = m.rref()
    nc = m.ncols()
    pivots = []
    for a in range(rank):
        for b in range(nc):
            if r[a, b]:
                pivots.append(b)
                break
    return select_rows(r, range(rank)), pivots


def rref_sparse(rows: Iterable[Mapping[int, object]], ncols: int) -> tuple[fmpq_mat, list[int]]:
    """Same result as :func:`rref` for rows given as ``{column: value}`` dicts.

    Much faster when rows have few entries, as monomial spans do.
    """
    piv: dict[int, dict] = {}
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v}
        while row:
            hits = [c for c in row if c in piv]
            if not hits:
                break
            c = min(hits)
            f = row[c]
            for k, v in piv[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            continue
        lead = min(row)
        inv = 1 / row[lead]
        piv[lead] = {k: v * inv for k, v in row.items()}
    order = sorted(piv)
    # back substitution, highest pivot first, so every row ends up reduced
    for c in reversed(order):
        row = piv[c]
        for k in sorted(k for k in row if k != c and k in piv):
            if k not in row:
                continue
            f = row[k]
            for kk, v in piv[k].items():
                nv = row.get(kk, 0) - f * v
                if nv:
                    row[kk] = nv
                else:
                    row.pop(kk, None)
    out = fmpq_mat(len(order), ncols)
    for a, c in enumerate(order):
        for k, v in piv[c].items():
            out[a, k] = to_fmpq(v)
    return out, order


def span(m: fmpq_mat) -> fmpq_mat:
    return rref(m)[0]


def rank(m: fmpq_mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def nullspace(m: fmpq_mat) -> fmpq_mat:
    """Rows spanning ``{x : m x = 0}``, in reduced echelon form."""
    nc = m.ncols()
    r, piv = rref(m)
    free = [c for c in range(nc) if c not in set(piv)]
    out = fmpq_mat(len(free), nc)
    for a, f in enumerate(free):
        out[a, f] = 1
        for row, p in enumerate(piv):
            v = r[row, f]
            if v:
                out[a, p] = -v
    return span(out) if free else out


def orbit(w: fmpq_mat, gens_t: Sequence[fmpq_mat]) -> fmpq_mat:
    """Smallest subspace containing the rows of ``w`` and stable under each ``g``.

    ``gens_t`` holds the transposes ``g^T``.
    """
    cur = span(w)
    nc = w.ncols()
    frontier = cur
    while frontier.nrows():
        imgs = [frontier * gt for gt in gens_t]
        new = span(vstack([cur] + imgs, nc))
        if new.nrows() == cur.nrows():
            return cur
        # only images of fresh directions need to be pushed further
        frontier = complement_rows(new, cur)
        cur = new
    return cur


def complement_rows(big: fmpq_mat, small: fmpq_mat) -> fmpq_mat:
    """Rows of ``big`` (echelon) whose pivots are not pivots of ``small`` (echelon)."""
    if small.nrows() == 0:
        return big
    _, sp = rref(small)
    _, bp = rref(big)
    keep = [a for a, p in enumerate(bp) if p not in set(sp)]
    return select_rows(big, keep)


def contains(space: fmpq_mat, vecs: fmpq_mat) -> bool:
    if vecs.nrows() == 0:
        return True
    return rank(vstack([space, vecs], space.ncols())) == rank(space)


def intersect(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat:
    nc = a.ncols()
    if a.nrows() == 0 or b.nrows() == 0:
        return fmpq_mat(0, nc)
    # x = s a = t b  <=>  (s, -t) in left kernel of [a; b]
    stacked = vstack([a, b], nc)
    ker = nullspace(stacked.transpose())
    if ker.nrows() == 0:
        return fmpq_mat(0, nc)
    coeffs = select(ker, range(ker.nrows()), range(a.nrows()))
    return span(coeffs * a)


def annihilator(w: fmpq_mat, n: int) -> fmpq_mat:
    """Rows spanning ``{x : w x = 0}`` in a space of dimension ``n``."""
    if w.nrows() == 0:
        return eye(n)
    return nullspace(w)


def coordinates(basis: fmpq_mat, pivots: Sequence[int], vecs: fmpq_mat) -> fmpq_mat:
    """Coordinates (as rows) of row vectors ``vecs`` lying in the span of an echelon ``basis``."""
    return select(vecs, range(vecs.nrows()), pivots)


def reduce_mod(vecs: fmpq_mat, basis: fmpq_mat, pivots: Sequence[int]) -> fmpq_mat:
    """Reduce rows of ``vecs`` modulo the echelon ``basis``."""
    if basis.nrows() == 0:
        return vecs
    c = select(vecs, range(vecs.nrows()), pivots)
    return vecs - c * basis
