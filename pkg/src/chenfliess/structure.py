"""Class and relative degree of a scalar series.

Both indices are read off the forced part (words containing a letter other
than x0).  At truncation N they describe the stored support only; a series
whose forced part vanishes up to N has class "infinity at truncation N".
"""
from __future__ import annotations

import math
from typing import NamedTuple, Optional

from .series import Series, ShapeError, VectorSeries


class ClassResult(NamedTuple):
    r: float | int  # math.inf when the forced part is zero up to trunc_degree
    trunc_degree: int

    @property
    def is_infinite(self) -> bool:
        return self.r == math.inf

    def __str__(self) -> str:
        return f"inf (at truncation {self.trunc_degree})" if self.is_infinite else str(self.r)


def _scalar(c: Series | VectorSeries) -> Series:
    if isinstance(c, VectorSeries):
        if c.dim != 1:
            raise ShapeError("class and relative degree are defined for scalar series")
        return c[0]
    return c


def _leading_drift(w) -> int:
    k = 0
    while k < len(w) and w[k] == 0:
        k += 1
    return k


def class_of(c: Series | VectorSeries) -> ClassResult:
    """Largest r with supp(c_F) inside x0^{r-1} X^+."""
    c = _scalar(c)
    forced = [w for w in c.coeffs if any(w)]
    if not forced:
        return ClassResult(math.inf, c.trunc)
    # a forced word x0^k x_i ... lies in x0^{r-1}X^+ exactly for r <= k+1
    return ClassResult(min(_leading_drift(w) for w in forced) + 1, c.trunc)


def relative_degree(c: Series | VectorSeries) -> Optional[int]:
    """r when c has class r and x0^{r-1} x1 is in supp(c_F); otherwise None."""
    c = _scalar(c)
    cls = class_of(c)
    if cls.is_infinite:
        return None
    r = int(cls.r)
    if c[(0,) * (r - 1) + (1,)]:
        return r
    return None
