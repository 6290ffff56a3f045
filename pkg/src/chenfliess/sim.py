"""Numerical Chen-Fliess evaluation on a uniform grid.

Iterated integrals use the cumulative trapezoid rule and are memoised by word
suffix, since ``F_{x_i w}`` only needs ``F_w``.  Letter x0 integrates the
constant signal 1.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .interconnect import feedback
from .series import ShapeError, VectorSeries
from .words import Word


@dataclass(frozen=True)
class Signal:
    """``m`` channels sampled at ``steps + 1`` equally spaced points on [0, T]."""

    T: float
    samples: np.ndarray  # shape (m, steps + 1)

    def __post_init__(self):
        arr = np.atleast_2d(np.asarray(self.samples, dtype=float))
        if arr.shape[1] < 2:
            raise ValueError("a signal needs at least one step")
        if not self.T > 0:
            raise ValueError("duration must be positive")
        object.__setattr__(self, "samples", arr)

    @property
    def m(self) -> int:
        return self.samples.shape[0]

    @property
    def steps(self) -> int:
        return self.samples.shape[1] - 1

    @property
    def h(self) -> float:
        return self.T / self.steps

    @property
    def t(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.steps + 1)

    def __call__(self, s: float) -> np.ndarray:
        """Piecewise linear interpolation of every channel at time ``s``."""
        return np.array([np.interp(s, self.t, ch) for ch in self.samples])

    @classmethod
    def from_function(cls, f: Callable[[np.ndarray], np.ndarray], T: float, steps: int, m: int = 1) -> Signal:
        t = np.linspace(0.0, T, steps + 1)
        vals = np.broadcast_to(np.asarray(f(t), dtype=float), (m, steps + 1))
        return cls(T, np.array(vals))

    @classmethod
    def constant(cls, value: float, T: float, steps: int, m: int = 1) -> Signal:
        return cls(T, np.full((m, steps + 1), float(value)))

    @classmethod
    def sine(cls, amplitude: float, T: float, steps: int, m: int = 1) -> Signal:
        return cls.from_function(lambda t: amplitude * np.sin(t), T, steps, m)

    def to_csv(self, path: str) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["t"] + [f"u{i}" for i in range(1, self.m + 1)])
            for k, tk in enumerate(self.t):
                w.writerow([repr(float(tk))] + [repr(float(x)) for x in self.samples[:, k]])

    @classmethod
    def from_csv(cls, path: str) -> Signal:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        if not rows or not rows[0] or rows[0][0].strip() != "t":
            raise ValueError("signal CSV must start with a header t,u1,...,um")
        data = np.array([[float(x) for x in r] for r in rows[1:] if r], dtype=float)
        if data.ndim != 2 or data.shape[0] < 2 or data.shape[1] < 2:
            raise ValueError("signal CSV needs at least two samples and one channel")
        t = data[:, 0]
        if abs(t[0]) > 1e-12:
            raise ValueError("signal CSV must start at t = 0")
        if not np.allclose(np.diff(t), t[-1] / (len(t) - 1), rtol=1e-6, atol=1e-12):
            raise ValueError("signal CSV must use a uniform time grid")
        return cls(float(t[-1]), data[:, 1:].T.copy())


@dataclass(frozen=True)
class SimConfig:
    trunc_degree: int
    picard_tol: float = 1e-12
    max_picard_iters: int = 200

    def __post_init__(self):
        if not self.picard_tol > 0:
            raise ValueError("picard_tol must be positive")
        if self.trunc_degree < 0 or self.max_picard_iters < 1:
            raise ValueError("trunc_degree must be >= 0 and max_picard_iters >= 1")


class PicardDivergence(RuntimeError):
    """Closed-loop iteration failed to converge; carries the last iterate."""

    def __init__(self, msg: str, trajectory: np.ndarray, iterations: int, changes: list[float]):
        super().__init__(msg)
        self.trajectory = trajectory
        self.iterations = iterations
        self.changes = changes


class _Integrals:
    def __init__(self, u: Signal):
        self.u = u
        self.memo: dict[Word, np.ndarray] = {(): np.ones(u.steps + 1)}

    def __call__(self, w: Word) -> np.ndarray:
        out = self.memo.get(w)
        if out is not None:
            return out
        i = w[0]
        if i > self.u.m:
            raise ShapeError(f"letter x{i} needs input channel {i}, signal has {self.u.m}")
        inner = self(w[1:])
        integrand = inner if i == 0 else self.u.samples[i - 1] * inner
        out = cumulative_trapezoid(integrand, dx=self.u.h, initial=0.0)
        self.memo[w] = out
        return out


def iterated_integral(w: Word, u: Signal) -> np.ndarray:
    """``F_w[u]`` at the grid points."""
    return _Integrals(u)(tuple(w))


def eval_fliess(c: VectorSeries, u: Signal) -> np.ndarray:
    """Outputs ``y_j(t) = Σ c_j(w) F_w[u](t)``, one row per component."""
    if c.m != u.m:
        raise ShapeError(f"series over x0..x{c.m} driven by a {u.m}-channel signal")
    F = _Integrals(u)
    out = np.zeros((c.dim, u.steps + 1))
    for j, cj in enumerate(c):
        for w, a in cj:
            out[j] += float(a) * F(w)
    return out


@dataclass
class ClosedLoopResult:
    trajectory: np.ndarray
    iterations: int
    changes: list[float] = field(default_factory=list)


def closed_loop_sim(c: VectorSeries, d: VectorSeries, v: Signal, cfg: SimConfig) -> ClosedLoopResult:
    """Solve ``y = F_c[v · F_d[y]]`` by Picard iteration in the sup norm."""
    if d.m != c.dim or d.dim != c.m:
        raise ShapeError("feedback series must map the plant's outputs back to its inputs")
    if v.m != c.m:
        raise ShapeError(f"plant has {c.m} inputs, signal has {v.m} channels")
    y = eval_fliess(c, v)
    changes: list[float] = []
    for k in range(1, cfg.max_picard_iters + 1):
        fd = eval_fliess(d, Signal(v.T, y))
        nxt = eval_fliess(c, Signal(v.T, v.samples * fd))
        change = float(np.max(np.abs(nxt - y))) if y.size else 0.0
        changes.append(change)
        y = nxt
        if not math.isfinite(change):
            raise PicardDivergence("closed-loop iterate is no longer finite", y, k, changes)
        if change < cfg.picard_tol:
            return ClosedLoopResult(y, k, changes)
        if len(changes) >= 4 and changes[-1] > changes[-2] > changes[-3] > changes[-4]:
            raise PicardDivergence(
                f"closed-loop iteration diverging: change grew for 3 iterations (last {change:.3g})",
                y, k, changes,
            )
    raise PicardDivergence(
        f"closed-loop iteration did not reach tolerance {cfg.picard_tol:g} in "
        f"{cfg.max_picard_iters} iterations",
        y, cfg.max_picard_iters, changes,
    )


@dataclass
class FeedbackReport:
    sup_error: float
    per_degree_errors: dict[int, float]
    picard_iters: int
    reference_sup: float

    def as_dict(self) -> dict:
        return {
            "sup_error": self.sup_error,
            "per_degree_errors": {str(k): v for k, v in self.per_degree_errors.items()},
            "picard_iters": self.picard_iters,
            "reference_sup": self.reference_sup,
        }


def validate_feedback(c: VectorSeries, d: VectorSeries, v: Signal, cfg: SimConfig) -> FeedbackReport:
    """Compare the simulated closed loop with the truncated symbolic feedback series."""
    loop = closed_loop_sim(c, d, v, cfg)
    n = cfg.trunc_degree
    e = feedback(c.truncate(min(n, c.trunc)), d.truncate(min(n, d.trunc)))
    errs = {
        k: float(np.max(np.abs(eval_fliess(e.truncate(k), v) - loop.trajectory)))
        for k in range(1, e.trunc + 1)
    }
    sup = errs.get(e.trunc, float(np.max(np.abs(eval_fliess(e, v) - loop.trajectory))))
    return FeedbackReport(sup, errs, loop.iterations, float(np.max(np.abs(loop.trajectory))))
