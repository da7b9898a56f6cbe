"""Symmetric group combinatorics.

Permutations are tuples in one-line notation on ``0..n-1``: ``w[p]`` is the
image of ``p``.  Simple reflections are numbered ``1..n-1``; ``s_k`` swaps
``k-1`` and ``k``.  A word ``[k1, ..., km]`` is read top to bottom and
stands for ``s_k1 * ... * s_km`` (the rightmost letter acts first).

>>> canonical_reduced_word((2, 1, 0))
(1, 2, 1)
>>> length((2, 1, 0))
3
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import combinations, permutations
from typing import Sequence

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    """``a * b``, so ``b`` acts first."""
    return tuple(a[x] for x in b)


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for p, x in enumerate(w):
        out[x] = p
    return tuple(out)


def simple(n: int, k: int) -> Perm:
    w = list(range(n))
    w[k - 1], w[k] = w[k], w[k - 1]
    return tuple(w)


def left_mul_simple(k: int, w: Perm) -> Perm:
    """``s_k * w``: swap the values ``k-1`` and ``k``."""
    a, b = k - 1, k
    return tuple(b if x == a else a if x == b else x for x in w)


def right_mul_simple(w: Perm, k: int) -> Perm:
    """``w * s_k``: swap the entries in positions ``k-1`` and ``k``."""
    w = list(w)
    w[k - 1], w[k] = w[k], w[k - 1]
    return tuple(w)


def length(w: Perm) -> int:
    n = len(w)
    return sum(1 for p in range(n) for s in range(p + 1, n) if w[p] > w[s])


def inversions(w: Perm) -> list[tuple[int, int]]:
    n = len(w)
    return [(p, s) for p in range(n) for s in range(p + 1, n) if w[p] > w[s]]


def is_left_descent(k: int, w: Perm) -> bool:
    inv = inverse(w)
    return inv[k - 1] > inv[k]


def word_to_perm(word: Sequence[int], n: int) -> Perm:
    w = identity(n)
    for k in reversed(word):
        w = left_mul_simple(k, w)
    return w


@lru_cache(maxsize=None)
def canonical_reduced_word(w: Perm) -> tuple[int, ...]:
    """Lexicographically smallest reduced word of ``w``."""
    out = []
    while True:
        inv = inverse(w)
        k = next((k for k in range(1, len(w)) if inv[k - 1] > inv[k]), None)
        if k is None:
            return tuple(out)
        out.append(k)
        w = left_mul_simple(k, w)


def act_on_seq(w: Perm, seq: Sequence) -> tuple:
    """The sequence ``w(seq)`` with ``w(seq)[w[p]] = seq[p]``."""
    out = [None] * len(seq)
    for p, x in enumerate(seq):
        out[w[p]] = x
    return tuple(out)


def _moves(word: tuple[int, ...]):
    """Words reachable by one commutation or braid move, with the move."""
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if abs(a - b) > 1:
            yield word[:p] + (b, a) + word[p + 2:], ("swap", p)
    for p in range(len(word) - 2):
        a, b, c = word[p:p + 3]
        if a == c and abs(a - b) == 1:
            yield word[:p] + (b, a, b) + word[p + 3:], ("braid", p)


@lru_cache(maxsize=None)
def _tree(target: tuple[int, ...]) -> dict:
    """BFS tree on reduced words rooted at ``target``: word -> (next word, move)."""
    parent = {target: None}
    queue = deque([target])
    while queue:
        w = queue.popleft()
        for v, _ in _moves(w):
            if v not in parent:
                # move applied to v leads back towards w; recompute it from v's side
                mv = next(m for u, m in _moves(v) if u == w)
                parent[v] = (w, mv)
                queue.append(v)
    return parent


def move_path(start: tuple[int, ...], target: tuple[int, ...]) -> list[tuple[tuple, tuple, tuple]]:
    """Moves turning reduced word ``start`` into ``target``.

    Each entry is ``(word_before, word_after, move)``.  The two words must
    represent the same permutation.
    """
    start, target = tuple(start), tuple(target)
    if start == target:
        return []
    tree = _tree(target)
    if start not in tree:
        raise ValueError(f"{start} and {target} are not reduced words of one permutation")
    out = []
    w = start
    while w != target:
        nxt, mv = tree[w]
        out.append((w, nxt, mv))
        w = nxt
    return out


def reduced_words(w: Perm) -> set:
    return set(_tree(canonical_reduced_word(w)))


def parabolic_blocks(comp: Sequence[int]) -> list[range]:
    out, start = [], 0
    for c in comp:
        out.append(range(start, start + c))
        start += c
    return out


def in_parabolic(w: Perm, comp: Sequence[int]) -> bool:
    return all(w[p] in b for b in parabolic_blocks(comp) for p in b)


def parabolic_factor(w: Perm, comp: Sequence[int]) -> tuple[Perm, Perm]:
    """Write ``w = sigma * u`` with ``sigma`` in the Young subgroup and ``u^-1``
    increasing on every block (``u`` minimal in its right coset)."""
    winv = inverse(w)
    uinv = list(range(len(w)))
    for b in parabolic_blocks(comp):
        vals = sorted(winv[p] for p in b)
        for p, v in zip(b, vals):
            uinv[p] = v
    uinv = tuple(uinv)
    sigma = compose(w, uinv)
    return sigma, inverse(uinv)


def shuffles(comp: Sequence[int]) -> list[Perm]:
    """Minimal length left coset representatives: permutations increasing on each block."""
    n = sum(comp)
    out = []

    def rec(block_idx, remaining, current):
        if block_idx == len(comp):
            out.append(tuple(current))
            return
        b = parabolic_blocks(comp)[block_idx]
        for chosen in combinations(sorted(remaining), comp[block_idx]):
            for p, v in zip(b, chosen):
                current[p] = v
            rec(block_idx + 1, remaining - set(chosen), current)

    rec(0, set(range(n)), [0] * n)
    return sorted(out, key=lambda w: (length(w), w))


def all_perms(n: int) -> list[Perm]:
    return sorted(permutations(range(n)), key=lambda w: (length(w), w))
