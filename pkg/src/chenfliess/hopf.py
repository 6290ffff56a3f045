"""Coordinate functions a^j_η and the Hopf algebra they generate.

``Coord(j, w)`` reads coefficient ``w`` of component ``j`` (1-based).  Products
of coordinates are commutative, so a ``Monomial`` is a sorted tuple of them;
``a^j_1`` is identified with the unit and never stored in a monomial.

Coproducts:

* ``delta_shuffle``  dual to the componentwise shuffle product
* ``rho``            coaction dual to ``↰``
* ``delta_star``     dual to ``⋆``, built as (id ⊗ ⊙)(ρ ⊗ id) Δ_⧢

Evaluating a tensor on ``(c, d)`` multiplies the coordinate values of ``c``
in the left factor by those of ``d`` in the right factor; the pairing with
the corresponding product of series holds when ``d`` (and, for ``Δ``, also
``c``) has all constant terms equal to one.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .series import DomainError, ShapeError, VectorSeries
from .words import Word, all_words, unshuffle, word_key


class Coord(NamedTuple):
    j: int
    word: Word

    @property
    def degree(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        w = "".join(f"x{i}" for i in self.word) or "1"
        return f"a[{self.j}:{w}]"


Monomial = tuple  # tuple[Coord, ...], sorted, unit coordinates removed

UNIT: Monomial = ()


def _coord_key(a: Coord) -> tuple:
    return (a.j, word_key(a.word))


def monomial(*coords: Coord) -> Monomial:
    return tuple(sorted((Coord(a.j, tuple(a.word)) for a in coords if a.word), key=_coord_key))


def mono_mul(p: Monomial, q: Monomial) -> Monomial:
    if not p:
        return q
    if not q:
        return p
    return tuple(sorted(p + q, key=_coord_key))


def mono_degree(p: Monomial) -> int:
    return sum(len(a.word) for a in p)


def format_monomial(p: Monomial) -> str:
    if not p:
        return "1"
    out = []
    i = 0
    while i < len(p):
        k = i
        while k < len(p) and p[k] == p[i]:
            k += 1
        out.append(str(p[i]) if k - i == 1 else f"{p[i]}^{k - i}")
        i = k
    return "·".join(out)


def _fmt_coeff(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def _format_terms(items: Iterable[tuple[str, Fraction]]) -> str:
    parts = []
    for body, a in items:
        mag = abs(a)
        text = body if mag == 1 else f"{_fmt_coeff(mag)} {body}"
        if body == "1" and mag != 1:
            text = _fmt_coeff(mag)
        if not parts:
            parts.append(text if a > 0 else f"-{text}")
        else:
            parts.append(("+ " if a > 0 else "- ") + text)
    return " ".join(parts) if parts else "0"


class HElem:
    """A rational linear combination of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int | Fraction] | None = None):
        self.terms: dict[Monomial, Fraction] = {
            k: Fraction(v) for k, v in (terms or {}).items() if v
        }

    @classmethod
    def one(cls) -> HElem:
        return cls({UNIT: 1})

    @classmethod
    def coord(cls, j: int, word: Sequence[int]) -> HElem:
        return cls({monomial(Coord(j, tuple(word))): 1})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: HElem) -> HElem:
        acc = defaultdict(Fraction, self.terms)
        for k, v in other.terms.items():
            acc[k] += v
        return HElem(acc)

    def __neg__(self) -> HElem:
        return HElem({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: HElem) -> HElem:
        return self + (-other)

    def __mul__(self, other) -> HElem:
        if isinstance(other, HElem):
            acc: dict[Monomial, Fraction] = defaultdict(Fraction)
            for p, a in self.terms.items():
                for q, b in other.terms.items():
                    acc[mono_mul(p, q)] += a * b
            return HElem(acc)
        k = Fraction(other)
        return HElem({p: k * a for p, a in self.terms.items()})

    __rmul__ = __mul__

    def degrees(self) -> set[int]:
        return {mono_degree(p) for p in self.terms}

    def __repr__(self) -> str:
        return f"HElem({self})"

    def __str__(self) -> str:
        items = sorted(self.terms.items(), key=lambda kv: (mono_degree(kv[0]), [_coord_key(a) for a in kv[0]]))
        return _format_terms((format_monomial(p), a) for p, a in items)


class Tensor:
    """A rational combination of ``k``-fold tensors of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, int | Fraction] | None = None):
        self.terms: dict[tuple, Fraction] = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def unit(cls, arity: int = 2) -> Tensor:
        return cls({(UNIT,) * arity: 1})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: Tensor) -> Tensor:
        acc = defaultdict(Fraction, self.terms)
        for k, v in other.terms.items():
            acc[k] += v
        return Tensor(acc)

    def __neg__(self) -> Tensor:
        return Tensor({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: Tensor) -> Tensor:
        return self + (-other)

    def __mul__(self, other) -> Tensor:
        """Factorwise product for tensors, scaling for numbers."""
        if isinstance(other, Tensor):
            acc: dict[tuple, Fraction] = defaultdict(Fraction)
            for p, a in self.terms.items():
                for q, b in other.terms.items():
                    acc[tuple(mono_mul(x, y) for x, y in zip(p, q))] += a * b
            return Tensor(acc)
        k = Fraction(other)
        return Tensor({p: k * a for p, a in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Tensor({self})"

    def __str__(self) -> str:
        def key(kv):
            return tuple((mono_degree(p), [_coord_key(a) for a in p]) for p in kv[0])

        items = sorted(self.terms.items(), key=key)
        return _format_terms((" ⊗ ".join(format_monomial(p) for p in k), a) for k, a in items)


HTensor = Tensor


def tensor_apply(t: Tensor, maps: Sequence[Callable[[Monomial], Tensor]]) -> Tensor:
    """Apply one linear map per tensor factor and concatenate the results."""
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    for key, a in t.terms.items():
        pieces = [f(p) for f, p in zip(maps, key)]
        for combo in product(*(pc.terms.items() for pc in pieces)):
            k = sum((kk for kk, _ in combo), ())
            v = a
            for _, b in combo:
                v *= b
            acc[k] += v
    return Tensor(acc)


def identity_map(p: Monomial) -> Tensor:
    return Tensor({(p,): 1})


def product_map(p: Monomial, q: Monomial) -> Monomial:
    return mono_mul(p, q)


def multiply_tensor(t: Tensor) -> HElem:
    """Collapse a tensor with ``⊙``."""
    acc: dict[Monomial, Fraction] = defaultdict(Fraction)
    for key, a in t.terms.items():
        p = UNIT
        for q in key:
            p = mono_mul(p, q)
        acc[p] += a
    return HElem(acc)


def theta(k: int, a: Coord, m: int | None = None) -> Coord:
    """``θ_k(a^j_η) = a^j_{x_k η}``; ``m`` bounds the letter index when given."""
    if k < 0 or (m is not None and k > m):
        raise ShapeError(f"letter index {k} out of range")
    return Coord(a.j, (k,) + tuple(a.word))


# -- generator-level coproducts, memoised ---------------------------------


@lru_cache(maxsize=None)
def _delta_shuffle_gen(a: Coord) -> tuple:
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    for (u, v), k in unshuffle(a.word):
        acc[(monomial(Coord(a.j, u)), monomial(Coord(a.j, v)))] += k
    return tuple(acc.items())


def delta_shuffle_v(a: Coord) -> dict[tuple[Coord, Coord], int]:
    """Unshuffle lifted to coordinates, keeping ``a^j_1`` factors as coordinates."""
    return {(Coord(a.j, u), Coord(a.j, v)): k for (u, v), k in unshuffle(a.word)}


@lru_cache(maxsize=None)
def _rho_v(a: Coord) -> tuple:
    """ρ(a) with the left factor kept as a coordinate (possibly a^j_1)."""
    j, w = a
    if not w:
        return (((a, UNIT), Fraction(1)),)
    k, eta = w[0], w[1:]
    inner = Coord(j, eta)
    if k == 0:
        return tuple(((theta(0, left), right), c) for (left, right), c in _rho_v(inner))
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    for (u, v), mult in unshuffle(eta):
        extra = monomial(Coord(k, v))
        for (left, right), c in _rho_v(Coord(j, u)):
            acc[(theta(k, left), mono_mul(right, extra))] += mult * c
    return tuple((key, c) for key, c in acc.items() if c)


@lru_cache(maxsize=None)
def _rho_gen(a: Coord) -> tuple:
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    for (left, right), c in _rho_v(a):
        acc[(monomial(left), right)] += c
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _delta_star_gen(a: Coord) -> tuple:
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    for (u, v), mult in unshuffle(a.word):
        extra = monomial(Coord(a.j, v))
        for (left, right), c in _rho_gen(Coord(a.j, u)):
            acc[(left, mono_mul(right, extra))] += mult * c
    return tuple((k, c) for k, c in acc.items() if c)


def _extend(gen: Callable[[Coord], tuple]) -> Callable[[HElem | Coord | Monomial], Tensor]:
    def on_monomial(p: Monomial) -> Tensor:
        t = Tensor.unit(2)
        for a in p:
            t = t * Tensor(dict(gen(a)))
        return t

    def apply(h: HElem | Coord | Monomial) -> Tensor:
        if isinstance(h, Coord):
            h = HElem({monomial(h): 1})
        elif isinstance(h, tuple):
            h = HElem({h: 1})
        acc = Tensor()
        for p, a in h.terms.items():
            acc = acc + on_monomial(p) * a
        return acc

    return apply


delta_shuffle = _extend(_delta_shuffle_gen)
delta_shuffle.__doc__ = "Coproduct dual to the shuffle product, multiplicative on monomials."
rho = _extend(_rho_gen)
rho.__doc__ = "Coaction dual to the mixed composition product ``↰``."
delta_star = _extend(_delta_star_gen)
delta_star.__doc__ = "Coproduct dual to the group product ``⋆``."


def reduced(t: Tensor, h: HElem) -> Tensor:
    """``Δ'(h) = Δ(h) - h ⊗ 1 - 1 ⊗ h``."""
    acc = defaultdict(Fraction, t.terms)
    for p, a in h.terms.items():
        acc[(p, UNIT)] -= a
        acc[(UNIT, p)] -= a
    # the counit part of a unit term was subtracted twice
    if UNIT in h.terms:
        acc[(UNIT, UNIT)] += h.terms[UNIT]
    return Tensor(acc)


def counit(h: HElem) -> Fraction:
    return h.terms.get(UNIT, Fraction(0))


# -- antipode ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _antipode_gen(a: Coord) -> HElem:
    h = HElem({monomial(a): 1})
    out = -h
    for (left, right), c in reduced(delta_star(h), h).terms.items():
        out = out - _antipode_mono(left) * HElem({right: c})
    return out


def _antipode_mono(p: Monomial) -> HElem:
    out = HElem.one()
    for a in p:
        out = out * _antipode_gen(a)
    return out


def antipode(h: HElem | Coord) -> HElem:
    """Antipode of (ℋ, Δ), via S(a) = -a - Σ S(a') ⊙ a'' on generators."""
    if isinstance(h, Coord):
        h = HElem({monomial(h): 1})
    out = HElem()
    for p, a in h.terms.items():
        out = out + _antipode_mono(p) * a
    return out


# -- evaluation --------------------------------------------------------------


def _eval_monomial(p: Monomial, c: VectorSeries) -> Fraction:
    v = Fraction(1)
    for a in p:
        if not 1 <= a.j <= c.dim:
            raise ShapeError(f"coordinate {a} refers to component {a.j} of a {c.dim}-vector")
        v *= c[a.j - 1][a.word]
    return v


def evaluate(h: HElem, c: VectorSeries) -> Fraction:
    """Value of ``h`` at ``c`` with every ``a^j_1`` read as one."""
    return sum((a * _eval_monomial(p, c) for p, a in h.terms.items()), Fraction(0))


def pair(t: Tensor, *series: VectorSeries) -> Fraction:
    """Evaluate a tensor factorwise on ``series`` and sum."""
    total = Fraction(0)
    for key, a in t.terms.items():
        if len(key) != len(series):
            raise ShapeError(f"tensor of arity {len(key)} paired with {len(series)} series")
        v = a
        for p, c in zip(key, series):
            v *= _eval_monomial(p, c)
        total += v
    return total


def in_group(c: VectorSeries) -> bool:
    """Membership in M^m: every constant term equals one."""
    return all(a == 1 for a in c.constant_terms)


def eval_character(h: HElem, c: VectorSeries) -> Fraction:
    if not in_group(c):
        raise DomainError("character evaluation needs every constant term equal to 1")
    return evaluate(h, c)


def star_inverse_via_antipode(c: VectorSeries) -> VectorSeries:
    """⋆-inverse of ``c`` in M^m read off the antipode: ``a^j_η(c^{⋆-1}) = S(a^j_η)(c)``."""
    if c.dim != c.m:
        raise ShapeError(f"series over x0..x{c.m} must have {c.m} components, has {c.dim}")
    if not in_group(c):
        raise DomainError("antipode route needs every constant term equal to 1")
    comps = []
    for j in range(1, c.dim + 1):
        d = {(): Fraction(1)}
        for w in all_words(c.m, c.trunc, min_len=1):
            v = evaluate(antipode(Coord(j, w)), c)
            if v:
                d[w] = v
        comps.append(d)
    return VectorSeries.from_dicts(c.m, c.trunc, comps)


def parse_coord(text: str, m: int) -> Coord:
    """``"1:x1x1"`` -> ``Coord(1, (1, 1))``."""
    from .textio import ParseError, parse_word

    head, sep, tail = text.partition(":")
    if not sep or not head.strip().isdigit():
        raise ParseError("coordinate must look like j:WORD", 0, text)
    j = int(head)
    if not 1 <= j <= m:
        raise ShapeError(f"component index {j} outside 1..{m}")
    return Coord(j, parse_word(tail, m))
