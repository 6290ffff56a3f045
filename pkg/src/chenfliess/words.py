"""Words over the alphabet {x0, ..., xm} and their shuffle combinatorics.

A word is a tuple of letter indices; ``()`` is the empty word. Letter 0 is the
drift letter x0.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product
from typing import Iterator, Tuple

Word = Tuple[int, ...]

EMPTY: Word = ()


def word_key(w: Word) -> tuple[int, Word]:
    """Canonical order: by length, then lexicographically."""
    return (len(w), w)


def all_words(m: int, max_len: int, min_len: int = 0) -> Iterator[Word]:
    """All words over letters 0..m with ``min_len <= len <= max_len``, canonically ordered."""
    for n in range(min_len, max_len + 1):
        yield from product(range(m + 1), repeat=n)


def check_word(w: Word, m: int) -> None:
    for letter in w:
        if not 0 <= letter <= m:
            raise ValueError(f"letter x{letter} not in alphabet x0..x{m}")


@lru_cache(maxsize=1 << 16)
def _shuffle(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    # u⧢v = a(u'⧢v) + b(u⧢v')
    acc: Counter[Word] = Counter()
    for w, k in _shuffle(u[1:], v):
        acc[(u[0],) + w] += k
    for w, k in _shuffle(u, v[1:]):
        acc[(v[0],) + w] += k
    return tuple(sorted(acc.items(), key=lambda item: word_key(item[0])))


def shuffle_words(u: Word, v: Word) -> dict[Word, int]:
    """Shuffle product of two words as ``{word: multiplicity}``.

    >>> shuffle_words((0,), (1,))
    {(0, 1): 1, (1, 0): 1}
    """
    return dict(_shuffle(tuple(u), tuple(v)))


@lru_cache(maxsize=1 << 14)
def _unshuffle(w: Word) -> tuple[tuple[tuple[Word, Word], int], ...]:
    acc: Counter[tuple[Word, Word]] = Counter()
    n = len(w)
    # every subset of positions goes left, its complement right
    for mask in range(1 << n):
        left = tuple(w[i] for i in range(n) if mask >> i & 1)
        right = tuple(w[i] for i in range(n) if not mask >> i & 1)
        acc[(left, right)] += 1
    return tuple(sorted(acc.items(), key=lambda item: (word_key(item[0][0]), word_key(item[0][1]))))


def unshuffle(w: Word) -> list[tuple[tuple[Word, Word], int]]:
    """Unshuffle coproduct of ``w`` as a list of ``((left, right), multiplicity)``.

    Multiplicities sum to ``2**len(w)``.
    """
    return list(_unshuffle(tuple(w)))


def reduced_unshuffle(w: Word) -> list[tuple[tuple[Word, Word], int]]:
    """Unshuffle terms with both sides non-empty."""
    return [(pair, k) for pair, k in _unshuffle(tuple(w)) if pair[0] and pair[1]]


def format_word(w: Word, sep: str = " ") -> str:
    """``(0, 1, 1)`` -> ``"x0 x1^2"``; the empty word renders as ``"1"``."""
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        run = j - i
        parts.append(f"x{w[i]}" if run == 1 else f"x{w[i]}^{run}")
        i = j
    return sep.join(parts)
