"""Linearised coproducts and the pre-Lie products they dualise.

On proper polynomial vectors ``c = Σ c_j e_j`` (one component per input letter):

    x_i e_j ◁ d   = g(x_i) d_i e_j
    x_i c ◁ d     = x_i (c ◁ d) + g(x_i) (c ⧢_i d)        with d_0 = 0

The default ``g`` fixes x1..xm and kills x0.  ``c • d = c ◁ d + c ⧢ d`` and
``c ⋄ d = c ◁_g d + c ⧢ d``.  ``mathring_rho`` is computed by its own
recursion on coordinate functions and pairs with ``◁`` under the default g.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from .hopf import Coord, Tensor, monomial, theta
from .series import DomainError, Series, ShapeError, VectorSeries, shuffle
from .words import Word, reduced_unshuffle


@dataclass(frozen=True)
class EndoG:
    """Endomorphism of span{x0..xm}; ``matrix[i][j]`` is the x_j coefficient of g(x_i)."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(a) for a in row) for row in self.matrix)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ShapeError("g must be a square (m+1)x(m+1) matrix")
        object.__setattr__(self, "matrix", rows)

    @property
    def m(self) -> int:
        return len(self.matrix) - 1

    @classmethod
    def default(cls, m: int) -> EndoG:
        return cls(tuple(tuple(int(i == j and i > 0) for j in range(m + 1)) for i in range(m + 1)))

    @classmethod
    def from_json(cls, doc) -> EndoG:
        rows = doc["matrix"] if isinstance(doc, dict) else doc
        try:
            return cls(tuple(tuple(Fraction(str(a)) for a in row) for row in rows))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed g matrix: {exc}") from exc

    @classmethod
    def load(cls, path: str) -> EndoG:
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def image(self, i: int) -> dict[int, Fraction]:
        return {j: a for j, a in enumerate(self.matrix[i]) if a}

    def image_series(self, i: int, trunc: int) -> Series:
        return Series(self.m, trunc, {(j,): a for j, a in self.image(i).items()})


def is_admissible(g: EndoG) -> bool:
    """True when the block on letters x1..xm is diagonal, i.e. g(x_i) = α_i x_i + β_i x_0."""
    return all(
        not g.matrix[i][j]
        for i in range(1, g.m + 1)
        for j in range(1, g.m + 1)
        if i != j
    )


# -- linearised coproducts --------------------------------------------------


class VTensor(Tensor):
    """Tensor of two single coordinate functions."""

    @classmethod
    def from_pairs(cls, pairs: Mapping[tuple[Coord, Coord], int | Fraction]) -> VTensor:
        acc: dict[tuple, Fraction] = defaultdict(Fraction)
        for (a, b), v in pairs.items():
            acc[(monomial(a), monomial(b))] += v
        return cls(acc)

    def pairs(self) -> dict[tuple[Coord, Coord], Fraction]:
        return {(k[0][0], k[1][0]): v for k, v in self.terms.items()}


@lru_cache(maxsize=None)
def _mrho(a: Coord) -> tuple:
    j, w = a
    if len(w) <= 1:
        return ()
    k, eta = w[0], w[1:]
    inner = dict(_mrho(Coord(j, eta)))
    acc: dict[tuple[Coord, Coord], Fraction] = defaultdict(Fraction)
    if k == 0:
        for (left, right), v in inner.items():
            acc[(theta(0, left), right)] += v
        return tuple((key, v) for key, v in acc.items() if v)
    for (left, right), v in inner.items():
        acc[(theta(k, left), right)] += v
    for (u, v), mult in reduced_unshuffle(eta):
        acc[(Coord(j, (k,) + u), Coord(k, v))] += mult
    acc[(Coord(j, (k,)), Coord(k, eta))] += 1
    return tuple((key, v) for key, v in acc.items() if v)


def mathring_rho(a: Coord) -> VTensor:
    """Linearised coaction; ``ρ̊(a^i_η)(c ⊗ d) = (c ◁ d)_i(η)``."""
    if not a.word:
        raise ShapeError("ρ̊ is defined on coordinates of positive degree")
    return VTensor.from_pairs(dict(_mrho(Coord(a.j, tuple(a.word)))))


def mathring_delta_shuffle(a: Coord) -> VTensor:
    """Reduced unshuffle ``Σ a^j_{η'} ⊗ a^j_{η''}`` with both words non-empty."""
    return VTensor.from_pairs(
        {(Coord(a.j, u), Coord(a.j, v)): k for (u, v), k in reduced_unshuffle(tuple(a.word))}
    )


def mathring_delta(a: Coord) -> VTensor:
    """``Δ̊ = ρ̊ + Δ̊_⧢``; pairs with the product ``•``."""
    return VTensor((mathring_rho(a) + mathring_delta_shuffle(a)).terms)


# -- dual products ------------------------------------------------------------


def _check_proper_pair(c: VectorSeries, d: VectorSeries, g: EndoG) -> int:
    if c.m != d.m or g.m != c.m:
        raise ShapeError(f"alphabet mismatch: x0..x{c.m}, x0..x{d.m}, g on x0..x{g.m}")
    for name, v in (("left", c), ("right", d)):
        if v.dim != v.m:
            raise ShapeError(f"{name} operand needs {v.m} components, has {v.dim}")
        for j, a in enumerate(v.constant_terms, 1):
            if a:
                raise DomainError(f"{name} operand is not proper: component {j} has constant term {a}")
    return min(c.trunc, d.trunc)


def triangle(c: VectorSeries, d: VectorSeries, g: EndoG | None = None) -> VectorSeries:
    """``c ◁_g d``; any g is accepted here, admissibility only matters for pre-Lie claims."""
    g = g or EndoG.default(c.m)
    n = _check_proper_pair(c, d, g)
    m = c.m
    zero = Series.zero(m, n)
    gx = [g.image_series(i, n) for i in range(m + 1)]
    memo: dict[Word, Series] = {}

    def tri(w: Word) -> Series:
        # value of (w e_j) ◁ d, independent of j
        if not w:
            return zero
        if w in memo:
            return memo[w]
        i, rest = w[0], w[1:]
        out = tri(rest).prepend(i)
        if i:
            out = out + gx[i].cat(Series.word(m, n, rest).shuffle(d[i - 1].truncate(n)))
        memo[w] = out
        return out

    comps = []
    for cj in c:
        acc = zero
        for w, a in cj:
            if len(w) <= n:
                acc = acc + tri(w) * a
        comps.append(acc)
    return VectorSeries(comps)


def bullet(c: VectorSeries, d: VectorSeries) -> VectorSeries:
    """``c • d = c ◁ d + c ⧢ d`` with the default g."""
    return triangle(c, d) + shuffle(c, d)


def diamond(c: VectorSeries, d: VectorSeries, g: EndoG) -> VectorSeries:
    """``c ⋄ d = c ◁_g d + c ⧢ d``; g must be admissible."""
    if not is_admissible(g):
        raise DomainError("g is not admissible: the x1..xm block must be diagonal")
    return triangle(c, d, g) + shuffle(c, d)


Product = Callable[[VectorSeries, VectorSeries], VectorSeries]


def lie_bracket(product: Product, a: VectorSeries, b: VectorSeries) -> VectorSeries:
    return product(a, b) - product(b, a)


def associator(product: Product, a: VectorSeries, b: VectorSeries, c: VectorSeries) -> VectorSeries:
    """``(a b) c - a (b c)``; right pre-Lie means this is symmetric in b and c."""
    return product(product(a, b), c) - product(a, product(b, c))


def pre_lie_defect(product: Product, a: VectorSeries, b: VectorSeries, c: VectorSeries) -> VectorSeries:
    return associator(product, a, b, c) - associator(product, a, c, b)


def basis_vectors(m: int, trunc: int, max_len: int) -> list[VectorSeries]:
    """All ``w e_j`` with 1 <= |w| <= max_len."""
    from .words import all_words

    out = []
    for j in range(m):
        for w in all_words(m, max_len, min_len=1):
            comps = [{} for _ in range(m)]
            comps[j] = {w: 1}
            out.append(VectorSeries.from_dicts(m, trunc, comps))
    return out


def find_pre_lie_counterexample(
    g: EndoG, max_len: int = 2, trunc: int | None = None
) -> tuple[VectorSeries, VectorSeries, VectorSeries] | None:
    """First basis triple violating the right pre-Lie identity for ``◁_g``, or None."""
    trunc = 3 * max_len + 3 if trunc is None else trunc
    basis = basis_vectors(g.m, trunc, max_len)
    prod = lambda x, y: triangle(x, y, g)  # noqa: E731
    for a in basis:
        for b in basis:
            for c in basis:
                if any(pre_lie_defect(prod, a, b, c)):
                    return a, b, c
    return None


__all__ = [
    "EndoG",
    "VTensor",
    "associator",
    "basis_vectors",
    "bullet",
    "diamond",
    "find_pre_lie_counterexample",
    "is_admissible",
    "lie_bracket",
    "mathring_delta",
    "mathring_delta_shuffle",
    "mathring_rho",
    "pre_lie_defect",
    "triangle",
]
