"""Series expressions and the JSON series file format.

Grammar::

    series    := component (';' component)*
    component := ['+'|'-'] term (('+'|'-') term)*
    term      := coeff? word?          (at least one of the two)
    coeff     := integer | integer '/' integer | decimal
    word      := letter+               letters may be separated by whitespace
    letter    := 'x' index ['^' power]

``x1^3`` expands to ``x1 x1 x1``.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .series import Series, ShapeError, VectorSeries
from .words import Word, format_word


class ParseError(ValueError):
    """Malformed series text; ``pos`` is the 0-based character offset."""

    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}")


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d*)?|\.\d+)
  | (?P<letter>x(?P<index>\d+))
  | (?P<op>[-+;/^])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = mt.lastgroup
        if kind == "index":
            kind = "letter"
        if kind != "ws":
            toks.append((kind, mt.group(), pos))
        pos = mt.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, m: int, trunc: int):
        self.text = text
        self.m = m
        self.trunc = trunc
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, pos: int | None = None) -> ParseError:
        return ParseError(msg, self.peek()[2] if pos is None else pos, self.text)

    def series(self) -> list[dict[Word, Fraction]]:
        comps = [self.component()]
        while self.peek()[1] == ";":
            self.take()
            comps.append(self.component())
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return comps

    def component(self) -> dict[Word, Fraction]:
        acc: dict[Word, Fraction] = {}
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            w, a = self.term()
            acc[w] = acc.get(w, Fraction(0)) + sign * a
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                continue
            break
        return {w: a for w, a in acc.items() if a}

    def term(self) -> tuple[Word, Fraction]:
        kind, val, pos = self.peek()
        coeff = None
        if kind == "num":
            self.take()
            coeff = Fraction(val)
            if self.peek()[1] == "/":
                self.take()
                kind2, den, pos2 = self.take()
                if kind2 != "num" or "." in den:
                    raise self.error("expected integer denominator", pos2)
                if "." in val:
                    raise self.error("decimal numerator in a ratio", pos)
                if int(den) == 0:
                    raise self.error("zero denominator", pos2)
                coeff = Fraction(int(val), int(den))
        word: list[int] = []
        while self.peek()[0] == "letter":
            _, lv, lpos = self.take()
            idx = int(lv[1:])
            if idx > self.m:
                raise ParseError(f"letter {lv} outside alphabet x0..x{self.m}", lpos, self.text)
            power = 1
            if self.peek()[1] == "^":
                self.take()
                kind3, pw, ppos = self.take()
                if kind3 != "num" or not pw.isdigit():
                    raise self.error("expected integer exponent", ppos)
                power = int(pw)
            word.extend([idx] * power)
        if coeff is None and not word:
            raise self.error("expected a coefficient or a word", pos)
        if len(word) > self.trunc:
            raise ParseError(
                f"word of length {len(word)} exceeds truncation {self.trunc}", pos, self.text
            )
        return tuple(word), Fraction(1) if coeff is None else coeff


def parse_series(text: str, m: int, trunc: int) -> VectorSeries:
    """Parse ``text`` into a vector series over x0..xm truncated at ``trunc``.

    >>> parse_series("1 - x1", 1, 3)[0].coeffs == {(): 1, (1,): -1}
    True
    """
    comps = _Parser(text, m, trunc).series()
    return VectorSeries.from_dicts(m, trunc, comps)


def parse_word(text: str, m: int) -> Word:
    """Parse a bare word such as ``x1x0`` or ``x1^2 x0``; ``1`` or empty is the empty word."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    p = _Parser(text, m, 10**9)
    w, a = p.term()
    if a != 1 or p.peek()[0] != "end":
        raise ParseError("expected a word", p.peek()[2], text)
    return w


def _format_coeff(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def format_component(c: Series) -> str:
    parts: list[str] = []
    for w, a in c:
        mag = abs(a)
        if not w:
            body = _format_coeff(mag)
        elif mag == 1:
            body = format_word(w)
        else:
            body = f"{_format_coeff(mag)} {format_word(w)}"
        if not parts:
            parts.append(body if a > 0 else f"-{body}")
        else:
            parts.append(("+ " if a > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def format_series(c: Series | VectorSeries) -> str:
    """Canonical text: terms by (degree, lex), repeated letters folded into powers."""
    if isinstance(c, Series):
        return format_component(c)
    return " ; ".join(format_component(s) for s in c)


def series_to_json(c: VectorSeries) -> dict[str, Any]:
    return {
        "alphabet_inputs": c.m,
        "trunc_degree": c.trunc,
        "components": [
            [{"word": list(w), "coeff": _format_coeff(a)} for w, a in s] for s in c
        ],
    }


def series_from_json(doc: dict[str, Any]) -> VectorSeries:
    try:
        m = int(doc["alphabet_inputs"])
        n = int(doc["trunc_degree"])
        comps = []
        for comp in doc["components"]:
            d: dict[Word, Fraction] = {}
            for term in comp:
                w = tuple(int(i) for i in term["word"])
                d[w] = d.get(w, Fraction(0)) + Fraction(str(term["coeff"]))
            comps.append(d)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed series document: {exc}", 0) from exc
    for d in comps:
        for w in d:
            if len(w) > n:
                raise ShapeError(f"word {list(w)} longer than trunc_degree {n}")
    try:
        return VectorSeries.from_dicts(m, n, comps)
    except ShapeError:
        raise
    except ValueError as exc:
        raise ParseError(f"malformed series document: {exc}", 0) from exc


def dumps(c: VectorSeries) -> str:
    return json.dumps(series_to_json(c), indent=2)


def loads(text: str) -> VectorSeries:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from exc
    return series_from_json(doc)
