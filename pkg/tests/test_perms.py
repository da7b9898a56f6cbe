import math
from itertools import permutations

import pytest

from klrcrystal.perms import (act_on_seq, all_perms, canonical_reduced_word, compose, identity, inverse, length,
                              parabolic_factor, reduced_words, shuffles, word_to_perm)


@pytest.mark.parametrize("n", range(1, 6))
def test_reduced_words_rebuild_their_permutation(n):
    for w in permutations(range(n)):
        word = canonical_reduced_word(w)
        assert len(word) == length(w)
        assert word_to_perm(word, n) == w


def test_all_reduced_words_of_the_longest_element_of_s3():
    assert reduced_words((2, 1, 0)) == {(1, 2, 1), (2, 1, 2)}


@pytest.mark.parametrize("comp", [(1, 1), (2, 1), (1, 2), (2, 2), (1, 1, 1), (3, 1), (2, 1, 1)])
def test_shuffles_count_is_the_multinomial(comp):
    sh = shuffles(comp)
    n = sum(comp)
    assert len(sh) == math.factorial(n) // math.prod(math.factorial(k) for k in comp)
    assert sh[0] == identity(n)
    # one longest shuffle, of length sum over pairs of blocks
    top = sum(comp[a] * comp[b] for a in range(len(comp)) for b in range(a + 1, len(comp)))
    assert [length(w) for w in sh].count(top) == 1 and max(length(w) for w in sh) == top


@pytest.mark.parametrize("comp", [(2, 1), (1, 2, 1), (2, 2)])
def test_parabolic_factorisation(comp):
    n = sum(comp)
    for w in all_perms(n):
        sigma, u = parabolic_factor(w, comp)
        assert compose(sigma, u) == w
        assert length(w) == length(sigma) + length(u)


def test_action_on_sequences():
    w = (2, 0, 1)
    assert act_on_seq(w, "abc") == ("b", "c", "a")
    assert act_on_seq(inverse(w), act_on_seq(w, "abc")) == tuple("abc")
    assert act_on_seq(compose(w, w), "abc") == act_on_seq(w, act_on_seq(w, "abc"))
