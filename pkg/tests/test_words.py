from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chenfliess.series import Series
from chenfliess.words import all_words, format_word, reduced_unshuffle, shuffle_words, unshuffle

from conftest import vseries, words


def brute_shuffle(u, v):
    """Enumerate every interleaving by choosing the positions of u."""
    n = len(u) + len(v)
    out = {}
    for pos in combinations(range(n), len(u)):
        w, iu, iv = [], 0, 0
        for k in range(n):
            if k in pos:
                w.append(u[iu])
                iu += 1
            else:
                w.append(v[iv])
                iv += 1
        out[tuple(w)] = out.get(tuple(w), 0) + 1
    return out


def test_shuffle_examples():
    assert shuffle_words((), (1, 0)) == {(1, 0): 1}
    assert shuffle_words((1,), (1,)) == {(1, 1): 2}
    assert shuffle_words((1, 1), (1,)) == {(1, 1, 1): 3}
    assert shuffle_words((0,), (1,)) == {(0, 1): 1, (1, 0): 1}


@given(words(2, 0, 4), words(2, 0, 4))
def test_shuffle_matches_interleavings(u, v):
    got = shuffle_words(u, v)
    assert got == brute_shuffle(u, v)
    assert sum(got.values()) == comb(len(u) + len(v), len(u))


@given(words(2, 0, 3), words(2, 0, 3), words(2, 0, 3))
def test_shuffle_words_commutative_associative(u, v, w):
    assert shuffle_words(u, v) == shuffle_words(v, u)

    def lift(poly, z):
        acc = {}
        for a, k in poly.items():
            for b, j in shuffle_words(a, z).items():
                acc[b] = acc.get(b, 0) + k * j
        return acc

    left = lift(shuffle_words(u, v), w)
    right = {}
    for b, k in shuffle_words(v, w).items():
        for c, j in shuffle_words(u, b).items():
            right[c] = right.get(c, 0) + k * j
    assert left == right


def test_unshuffle_examples():
    assert unshuffle(()) == [(((), ()), 1)]
    assert dict(unshuffle((1, 2))) == {
        ((1, 2), ()): 1, ((1,), (2,)): 1, ((2,), (1,)): 1, ((), (1, 2)): 1,
    }
    assert dict(unshuffle((1, 1))) == {((1, 1), ()): 1, ((1,), (1,)): 2, ((), (1, 1)): 1}
    assert dict(reduced_unshuffle((1, 1))) == {((1,), (1,)): 2}


def test_unshuffle_is_dual_to_shuffle_exhaustively():
    for w in all_words(1, 5):
        terms = dict(unshuffle(w))
        assert sum(terms.values()) == 2 ** len(w)
        for (a, b), k in terms.items():
            assert shuffle_words(a, b)[w] == k
        # every pair whose shuffle hits w appears
        for n in range(len(w) + 1):
            for a in all_words(1, n, min_len=n):
                for b in all_words(1, len(w) - n, min_len=len(w) - n):
                    assert shuffle_words(a, b).get(w, 0) == terms.get((a, b), 0)


def test_left_shift_examples():
    c = Series(1, 3, {(1, 0): 5})
    assert c.left_shift((1,)) == Series(1, 2, {(0,): 5})
    assert c.left_shift(()) == c
    assert Series(1, 3, {(1,): 3}).left_shift((0,)) == Series.zero(1, 2)


@given(st.data())
def test_left_shift_is_a_derivation(data):
    m = data.draw(st.integers(1, 2))
    c = data.draw(vseries(m, 4, dim=1))[0]
    d = data.draw(vseries(m, 4, dim=1))[0]
    i = data.draw(st.integers(0, m))
    lhs = c.shuffle(d).left_shift((i,))
    rhs = c.left_shift((i,)).shuffle(d.truncate(3)) + c.truncate(3).shuffle(d.left_shift((i,)))
    assert lhs == rhs


def test_format_word():
    assert format_word(()) == "1"
    assert format_word((0, 1, 1)) == "x0 x1^2"


def test_all_words_counts():
    assert len(list(all_words(2, 3))) == 1 + 3 + 9 + 27
    assert list(all_words(1, 2, min_len=2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_check_word_rejects_bad_letter():
    from chenfliess.words import check_word

    with pytest.raises(ValueError):
        check_word((0, 3), 2)
