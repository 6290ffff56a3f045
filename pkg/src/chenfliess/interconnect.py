"""Interconnection products of generating series.

compose       c ∘ d   cascade F_c[F_d[u]]
mixed_compose c ↰ d   F_c[u . F_d[u]]
star          c ⋆ d = d ⧢ (c ↰ d)
star_inverse  inverse in the group of purely improper series under ⋆
feedback      c @ d   closed loop y = F_c[v . F_d[y]]

Letter x_i (i >= 1) of the left operand's alphabet is tied to component i of
the right operand; only sizes are checked.
"""
from __future__ import annotations

from fractions import Fraction

from .series import (
    DomainError,
    Series,
    ShapeError,
    VectorSeries,
    require_purely_improper,
    shuffle,
    shuffle_inverse,
)
from .words import Word


def _sum_words(c: Series, value_of, m: int, n: int) -> Series:
    acc: dict[Word, Fraction] = {}
    for w, a in c.coeffs.items():
        if len(w) > n:
            continue
        for u, b in value_of(w).coeffs.items():
            acc[u] = acc.get(u, 0) + a * b
    return Series._raw(m, n, {u: b for u, b in acc.items() if b})


def compose(c: VectorSeries, d: VectorSeries) -> VectorSeries:
    """Composition product ``c ∘ d``.

    ``c`` lives over an alphabet with ``d.dim + 1`` letters; the result lives
    over ``d``'s alphabet with ``c.dim`` components.
    """
    if c.m != d.dim:
        raise ShapeError(
            f"left operand has letters x0..x{c.m} but right operand has {d.dim} components"
        )
    m = d.m
    n = min(c.trunc, d.trunc)
    one = Series.constant(m, n)
    memo: dict[Word, Series] = {(): one}

    def psi(w: Word) -> Series:
        # psi_d(x_i w)(1) = x0 (d_i ⧢ psi_d(w)(1)), with d_0 = 1
        if w in memo:
            return memo[w]
        tail = psi(w[1:])
        i = w[0]
        inner = tail if i == 0 else d[i - 1].truncate(n).shuffle(tail)
        memo[w] = val = inner.prepend(0)
        return val

    return VectorSeries(_sum_words(cj, psi, m, n) for cj in c)


def mixed_compose(c: VectorSeries, d: VectorSeries) -> VectorSeries:
    """Multiplicative mixed composition ``c ↰ d``; ``d`` has one component per input letter."""
    if c.m != d.m:
        raise ShapeError(f"alphabet mismatch: x0..x{c.m} vs x0..x{d.m}")
    if d.dim != d.m:
        raise ShapeError(f"right operand needs {d.m} components, has {d.dim}")
    m = c.m
    n = min(c.trunc, d.trunc)
    memo: dict[Word, Series] = {(): Series.constant(m, n)}

    def arrow(w: Word) -> Series:
        if w in memo:
            return memo[w]
        tail = arrow(w[1:])
        i = w[0]
        inner = tail if i == 0 else d[i - 1].truncate(n).shuffle(tail)
        memo[w] = val = inner.prepend(i)
        return val

    return VectorSeries(_sum_words(cj, arrow, m, n) for cj in c)


def _check_group_shape(c: VectorSeries) -> None:
    if c.m < 1:
        raise ShapeError("the feedback group needs at least one input letter")
    if c.dim != c.m:
        raise ShapeError(f"series over x0..x{c.m} must have {c.m} components, has {c.dim}")


def star(c: VectorSeries, d: VectorSeries) -> VectorSeries:
    """Multiplicative composition product ``c ⋆ d = d ⧢ (c ↰ d)``."""
    _check_group_shape(c)
    _check_group_shape(d)
    if c.m != d.m:
        raise ShapeError(f"alphabet mismatch: x0..x{c.m} vs x0..x{d.m}")
    return shuffle(d, mixed_compose(c, d))


def star_inverse_iterates(d: VectorSeries) -> list[VectorSeries]:
    """Picard iterates ``e_0 = 1``, ``e_{k+1} = d^{⧢-1} ↰ e_k`` up to stabilisation."""
    _check_group_shape(d)
    require_purely_improper(d)
    dinv = shuffle_inverse(d)
    e = VectorSeries.ones(d.m, d.trunc, d.dim)
    iterates = [e]
    # each step fixes at least one more degree, so N+1 steps reach the fixed point
    for _ in range(d.trunc + 1):
        nxt = mixed_compose(dinv, e)
        iterates.append(nxt)
        if nxt == e:
            break
        e = nxt
    return iterates


def star_inverse(d: VectorSeries) -> VectorSeries:
    """Inverse of a purely improper series in the group ``(., ⋆, 1)``."""
    return star_inverse_iterates(d)[-1]


def feedback(c: VectorSeries, d: VectorSeries) -> VectorSeries:
    """Multiplicative dynamic feedback product ``c ↰ (d^{⧢-1} ∘ c)^{⋆-1}``.

    ``c`` has ``q`` components over x0..xm; ``d`` has ``m`` components over an
    alphabet of ``q + 1`` letters and must be purely improper.
    """
    if c.m < 1 or c.dim < 1:
        raise ShapeError("plant needs at least one input and one output")
    if d.m != c.dim:
        raise ShapeError(f"feedback series must be over x0..x{c.dim}, is over x0..x{d.m}")
    if d.dim != c.m:
        raise ShapeError(f"feedback series needs {c.m} components, has {d.dim}")
    require_purely_improper(d, "feedback series")
    n = min(c.trunc, d.trunc)
    c, d = c.truncate(n), d.truncate(n)
    return mixed_compose(c, star_inverse(compose(shuffle_inverse(d), c)))


def feedback_residual(c: VectorSeries, d: VectorSeries, e: VectorSeries) -> VectorSeries:
    """``e - c ↰ (d ∘ e)``; zero exactly when ``e`` is the closed-loop series."""
    return e - mixed_compose(c, compose(d, e))


__all__ = [
    "DomainError",
    "ShapeError",
    "compose",
    "feedback",
    "feedback_residual",
    "mixed_compose",
    "star",
    "star_inverse",
    "star_inverse_iterates",
]
