"""Truncated noncommutative formal power series with exact rational coefficients.

``Series`` is a single series over the alphabet x0..xm, exact on all words of
length at most ``trunc``. ``VectorSeries`` stacks several of them.  Binary
operations on operands of different truncation work at the smaller one, which
is the largest degree to which the result is still exact.
"""
from __future__ import annotations

import enum
import math
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .words import EMPTY, Word, _shuffle, check_word, word_key

Number = Union[int, Fraction]

SIGMA = Fraction(1, 2)


class ShapeError(ValueError):
    """Operands disagree in alphabet size, dimension, or index range."""


class DomainError(ValueError):
    """An operation's algebraic precondition fails (e.g. a zero constant term)."""


def _clean(coeffs: Mapping[Word, Number], trunc: int) -> dict[Word, Fraction]:
    out = {}
    for w, a in coeffs.items():
        if a and len(w) <= trunc:
            out[tuple(w)] = Fraction(a)
    return out


class Series:
    """A series ``sum c(w) w`` over letters 0..m, truncated at word length ``trunc``.

    Instances are immutable. Coefficients are read with ``c[w]`` (zero when
    absent); ``c.coeffs`` gives the sparse support.
    """

    __slots__ = ("m", "trunc", "_coeffs")

    def __init__(self, m: int, trunc: int, coeffs: Mapping[Word, Number] | None = None):
        if m < 0 or trunc < 0:
            raise ShapeError("alphabet size and truncation must be non-negative")
        self.m = m
        self.trunc = trunc
        self._coeffs = _clean(coeffs or {}, trunc)
        for w in self._coeffs:
            check_word(w, m)

    @classmethod
    def _raw(cls, m: int, trunc: int, coeffs: dict[Word, Fraction]) -> Series:
        # trusted constructor: coeffs already clean
        obj = cls.__new__(cls)
        obj.m, obj.trunc, obj._coeffs = m, trunc, coeffs
        return obj

    @classmethod
    def constant(cls, m: int, trunc: int, value: Number = 1) -> Series:
        return cls(m, trunc, {EMPTY: value})

    @classmethod
    def word(cls, m: int, trunc: int, w: Sequence[int], coeff: Number = 1) -> Series:
        return cls(m, trunc, {tuple(w): coeff})

    @classmethod
    def zero(cls, m: int, trunc: int) -> Series:
        return cls._raw(m, trunc, {})

    @property
    def coeffs(self) -> Mapping[Word, Fraction]:
        return self._coeffs

    def __getitem__(self, w: Sequence[int]) -> Fraction:
        return self._coeffs.get(tuple(w), Fraction(0))

    def __iter__(self) -> Iterator[tuple[Word, Fraction]]:
        """Support in canonical (length, lex) order."""
        for w in sorted(self._coeffs, key=word_key):
            yield w, self._coeffs[w]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @property
    def constant_term(self) -> Fraction:
        return self[EMPTY]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (self.m, self.trunc, self._coeffs) == (other.m, other.trunc, other._coeffs)

    def __hash__(self) -> int:
        return hash((self.m, self.trunc, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        from .textio import format_component

        return f"Series(m={self.m}, N={self.trunc}, {format_component(self)})"

    def _check(self, other: Series) -> int:
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if self.m != other.m:
            raise ShapeError(f"alphabet mismatch: x0..x{self.m} vs x0..x{other.m}")
        return min(self.trunc, other.trunc)

    def truncate(self, n: int) -> Series:
        n = min(n, self.trunc)
        return Series._raw(self.m, n, {w: a for w, a in self._coeffs.items() if len(w) <= n})

    def __add__(self, other: Series) -> Series:
        n = self._check(other)
        acc = defaultdict(Fraction)
        for src in (self._coeffs, other._coeffs):
            for w, a in src.items():
                if len(w) <= n:
                    acc[w] += a
        return Series._raw(self.m, n, {w: a for w, a in acc.items() if a})

    def __neg__(self) -> Series:
        return Series._raw(self.m, self.trunc, {w: -a for w, a in self._coeffs.items()})

    def __sub__(self, other: Series) -> Series:
        return self + (-other)

    def scale(self, k: Number) -> Series:
        k = Fraction(k)
        if not k:
            return Series.zero(self.m, self.trunc)
        return Series._raw(self.m, self.trunc, {w: k * a for w, a in self._coeffs.items()})

    def __mul__(self, k: Number) -> Series:
        if isinstance(k, Series):
            raise TypeError("use shuffle() or cat() to multiply two series")
        return self.scale(k)

    __rmul__ = __mul__

    def shuffle(self, other: Series) -> Series:
        n = self._check(other)
        acc: dict[Word, Fraction] = defaultdict(Fraction)
        right = sorted(other._coeffs.items(), key=lambda kv: len(kv[0]))
        for u, a in self._coeffs.items():
            budget = n - len(u)
            for v, b in right:
                if len(v) > budget:
                    break
                ab = a * b
                for w, k in _shuffle(u, v):
                    acc[w] += k * ab
        return Series._raw(self.m, n, {w: a for w, a in acc.items() if a})

    def cat(self, other: Series) -> Series:
        n = self._check(other)
        acc: dict[Word, Fraction] = defaultdict(Fraction)
        for u, a in self._coeffs.items():
            for v, b in other._coeffs.items():
                if len(u) + len(v) <= n:
                    acc[u + v] += a * b
        return Series._raw(self.m, n, {w: a for w, a in acc.items() if a})

    def prepend(self, letter: int) -> Series:
        """Left catenation by a single letter, ``x_letter . c``."""
        check_word((letter,), self.m)
        n = self.trunc
        return Series._raw(self.m, n, {(letter,) + w: a for w, a in self._coeffs.items() if len(w) < n})

    def left_shift(self, p: Sequence[int]) -> Series:
        p = tuple(p)
        check_word(p, self.m)
        k = len(p)
        if k > self.trunc:
            raise ShapeError(f"shift by a word of length {k} exceeds truncation {self.trunc}")
        return Series._raw(self.m, self.trunc - k, {w[k:]: a for w, a in self._coeffs.items() if w[:k] == p})

    def shuffle_inverse(self) -> Series:
        alpha = self.constant_term
        if not alpha:
            raise DomainError("series has zero constant term")
        # c^{-1} = alpha^{-1} sum_k (-c'/alpha)^{⧢k}; (c')^{⧢k} has valuation >= k
        q = Series._raw(self.m, self.trunc, {w: -a / alpha for w, a in self._coeffs.items() if w})
        term = Series.constant(self.m, self.trunc)
        total = term
        for _ in range(self.trunc):
            term = term.shuffle(q)
            if not term:
                break
            total = total + term
        return total.scale(1 / alpha)

    @property
    def valuation(self) -> float | int:
        """Length of the shortest word in the support; ``math.inf`` for zero."""
        if not self._coeffs:
            return math.inf
        return min(len(w) for w in self._coeffs)

    def natural_part(self) -> Series:
        return Series._raw(self.m, self.trunc, {w: a for w, a in self._coeffs.items() if not any(w)})

    def forced_part(self) -> Series:
        return Series._raw(self.m, self.trunc, {w: a for w, a in self._coeffs.items() if any(w)})


class StructuralKind(enum.Enum):
    PROPER = "proper"
    NON_PROPER = "non-proper"
    PURELY_IMPROPER = "purely improper"


class VectorSeries:
    """An ``l``-tuple of series sharing alphabet and truncation."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Series]):
        comps = tuple(components)
        if not comps:
            raise ShapeError("a vector series needs at least one component")
        m = comps[0].m
        if any(c.m != m for c in comps):
            raise ShapeError("components use different alphabets")
        n = min(c.trunc for c in comps)
        self.components = tuple(c if c.trunc == n else c.truncate(n) for c in comps)

    @classmethod
    def from_dicts(cls, m: int, trunc: int, dicts: Iterable[Mapping[Word, Number]]) -> VectorSeries:
        return cls(Series(m, trunc, d) for d in dicts)

    @classmethod
    def ones(cls, m: int, trunc: int, dim: int) -> VectorSeries:
        """The shuffle unit (1, ..., 1)."""
        return cls(Series.constant(m, trunc) for _ in range(dim))

    @classmethod
    def zero(cls, m: int, trunc: int, dim: int) -> VectorSeries:
        return cls(Series.zero(m, trunc) for _ in range(dim))

    @classmethod
    def scalar(cls, c: Series) -> VectorSeries:
        return cls((c,))

    @property
    def m(self) -> int:
        return self.components[0].m

    @property
    def trunc(self) -> int:
        return self.components[0].trunc

    @property
    def dim(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, j: int) -> Series:
        """0-based component access; ``c[0]`` is component 1."""
        return self.components[j]

    def __iter__(self) -> Iterator[Series]:
        return iter(self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorSeries):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        from .textio import format_series

        return f"VectorSeries(m={self.m}, N={self.trunc}, {format_series(self)!r})"

    def _check(self, other: VectorSeries) -> None:
        if not isinstance(other, VectorSeries):
            raise TypeError(f"expected VectorSeries, got {type(other).__name__}")
        if self.dim != other.dim:
            raise ShapeError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.m != other.m:
            raise ShapeError(f"alphabet mismatch: x0..x{self.m} vs x0..x{other.m}")

    def map(self, f) -> VectorSeries:
        return VectorSeries(f(c) for c in self.components)

    def __add__(self, other: VectorSeries) -> VectorSeries:
        self._check(other)
        return VectorSeries(a + b for a, b in zip(self, other))

    def __sub__(self, other: VectorSeries) -> VectorSeries:
        self._check(other)
        return VectorSeries(a - b for a, b in zip(self, other))

    def __neg__(self) -> VectorSeries:
        return self.map(lambda c: -c)

    def __mul__(self, k: Number) -> VectorSeries:
        if isinstance(k, (Series, VectorSeries)):
            raise TypeError("use shuffle() to multiply two series")
        return self.map(lambda c: c.scale(k))

    __rmul__ = __mul__

    def truncate(self, n: int) -> VectorSeries:
        return self.map(lambda c: c.truncate(n))

    @property
    def constant_terms(self) -> tuple[Fraction, ...]:
        return tuple(c.constant_term for c in self.components)


def _as_vector(c: Series | VectorSeries) -> VectorSeries:
    return VectorSeries.scalar(c) if isinstance(c, Series) else c


def shuffle(c: VectorSeries, d: VectorSeries) -> VectorSeries:
    """Componentwise shuffle product."""
    c._check(d)
    return VectorSeries(a.shuffle(b) for a, b in zip(c, d))


def adorned_shuffle(c: VectorSeries, d: VectorSeries, k: int) -> VectorSeries:
    """``(c ⧢_k d)_j = c_j ⧢ d_k`` with ``k`` 1-based."""
    if c.m != d.m:
        raise ShapeError(f"alphabet mismatch: x0..x{c.m} vs x0..x{d.m}")
    if not 1 <= k <= d.dim:
        raise ShapeError(f"adornment index {k} outside 1..{d.dim}")
    dk = d[k - 1]
    return c.map(lambda cj: cj.shuffle(dk))


def cat(c: Series, d: Series) -> Series:
    return c.cat(d)


def left_shift(p: Sequence[int], c: Series) -> Series:
    """``p^{-1}(c)(q) = c(pq)``; the result is truncated at ``N - |p|``."""
    return c.left_shift(p)


def shuffle_inverse(c: VectorSeries) -> VectorSeries:
    for j, a in enumerate(c.constant_terms, 1):
        if not a:
            raise DomainError(f"component {j} has zero constant term")
    return c.map(Series.shuffle_inverse)


def valuation(c: Series | VectorSeries) -> float | int:
    return min(s.valuation for s in _as_vector(c))


def ultrametric_distance(c: VectorSeries, d: VectorSeries) -> Fraction:
    """``sigma ** val(c - d)`` with ``sigma = 1/2``; zero when ``c == d`` to truncation."""
    v = valuation(c - d)
    return Fraction(0) if v == math.inf else SIGMA**v


def natural_forced_split(c: VectorSeries) -> tuple[VectorSeries, VectorSeries]:
    return c.map(Series.natural_part), c.map(Series.forced_part)


def structural_kind(c: Series | VectorSeries) -> StructuralKind:
    consts = _as_vector(c).constant_terms
    if all(consts):
        return StructuralKind.PURELY_IMPROPER
    if not any(consts):
        return StructuralKind.PROPER
    return StructuralKind.NON_PROPER


def require_purely_improper(c: VectorSeries, what: str = "series") -> None:
    for j, a in enumerate(c.constant_terms, 1):
        if not a:
            raise DomainError(f"{what}: component {j} has zero constant term")
