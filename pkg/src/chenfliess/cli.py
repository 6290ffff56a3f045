"""Command-line front end.

Series operands come from positional expressions followed by ``--in`` JSON
files, in that order.  Results go to stdout (or ``--out``), diagnostics to
stderr.  Exit status: 0 ok, 1 domain or shape error, 2 parse or usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

import numpy as np

from . import hopf, prelie, sim, structure
from .interconnect import compose, feedback, mixed_compose, star, star_inverse
from .series import DomainError, ShapeError, VectorSeries, shuffle, shuffle_inverse
from .textio import ParseError, format_series, loads, parse_series, series_to_json


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("-m", type=int, required=True, help="number of input letters x1..xm")
    p.add_argument("-N", type=int, required=True, help="truncation degree")
    p.add_argument("--in", dest="infiles", action="append", default=[], metavar="FILE",
                   help="read a series operand from a JSON file (repeatable)")
    p.add_argument("--out", metavar="FILE", help="write the result here instead of stdout")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("exprs", nargs="*", metavar="SERIES", help="series expressions")
    return p


def _signal_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--signal", metavar="CSV", help="input signal with header t,u1,...,um")
    p.add_argument("--sine", type=float, metavar="AMP", help="use AMP*sin(t) on every channel")
    p.add_argument("--T", type=float, default=0.2, help="duration for --sine")
    p.add_argument("--steps", type=int, default=2000, help="grid steps for --sine")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chenfliess", description="Truncated Chen-Fliess series calculus.")
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    common = _common()

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_, description=help_)

    add("shuffle", "shuffle product c ⧢ d")
    add("shuffle-inv", "shuffle inverse of a purely improper series")
    add("cat", "catenation product, componentwise")
    add("compose", "composition c ∘ d (c is read over x0..x<dim d>)")
    add("mixed-compose", "multiplicative mixed composition c ↰ d")
    add("star", "group product c ⋆ d")
    p = add("star-inv", "inverse in the ⋆ group")
    p.add_argument("--method", choices=("fixedpoint", "antipode"), default="fixedpoint")
    add("feedback", "multiplicative feedback product (d is read over x0..x<dim c>)")
    add("class", "class of a scalar series")
    add("reldeg", "relative degree of a scalar series")
    p = add("coproduct", "coproduct of a coordinate function")
    p.add_argument("--kind", choices=("shuffle", "star", "rho", "rho-lin"), default="star")
    p.add_argument("--coord", required=True, metavar="j:WORD")
    p = add("antipode", "antipode of a coordinate function")
    p.add_argument("--coord", required=True, metavar="j:WORD")
    p = add("prelie", "pre-Lie products of proper polynomial vectors")
    p.add_argument("--op", choices=("triangle", "bullet", "diamond"), default="bullet")
    p.add_argument("--g", metavar="FILE", help="JSON (m+1)x(m+1) matrix for g")
    p = add("simulate", "evaluate F_c[u] on a time grid")
    _signal_flags(p)
    p = add("validate-feedback", "compare closed-loop simulation with the symbolic feedback series")
    _signal_flags(p)
    p.add_argument("--tol", type=float, default=1e-12, help="Picard tolerance")
    p.add_argument("--max-iters", type=int, default=200)
    return parser


# -- operands ------------------------------------------------------------------


def _sources(args) -> list[tuple[str, str]]:
    out = [("expr", e) for e in args.exprs]
    for path in args.infiles:
        with open(path, encoding="utf-8") as fh:
            out.append(("json", fh.read()))
    return out


def _load(src: tuple[str, str], m: int, n: int) -> VectorSeries:
    kind, text = src
    if kind == "expr":
        return parse_series(text, m, n)
    c = loads(text)
    if c.m != m:
        raise ShapeError(f"series file is over x0..x{c.m}, expected x0..x{m}")
    if c.trunc < n:
        raise ShapeError(f"series file is truncated at {c.trunc}, below -N {n}")
    return c.truncate(n)


def _operands(args, count: int) -> list[tuple[str, str]]:
    srcs = _sources(args)
    if len(srcs) != count:
        raise _UsageError(f"{args.cmd} takes {count} series operand(s), got {len(srcs)}")
    return srcs


def _series_args(args, count: int) -> list[VectorSeries]:
    return [_load(s, args.m, args.N) for s in _operands(args, count)]


def _signal(args, m: int) -> sim.Signal:
    if args.signal:
        u = sim.Signal.from_csv(args.signal)
        if u.m != m:
            raise ShapeError(f"signal has {u.m} channels, expected {m}")
        return u
    if args.sine is None:
        raise _UsageError("give --signal CSV or --sine AMP")
    return sim.Signal.sine(args.sine, args.T, args.steps, m)


# -- rendering -----------------------------------------------------------------


def _coord_json(a: hopf.Coord) -> dict:
    return {"j": a.j, "word": list(a.word)}


def _tensor_json(t: hopf.Tensor) -> list:
    return [
        {"coeff": str(v), "factors": [[_coord_json(a) for a in p] for p in key]}
        for key, v in sorted(t.terms.items(), key=lambda kv: str(kv[0]))
    ]


def _render(result, fmt: str) -> str:
    if isinstance(result, VectorSeries):
        return json.dumps(series_to_json(result), indent=2) if fmt == "json" else format_series(result)
    if isinstance(result, hopf.Tensor):
        return json.dumps({"tensor": _tensor_json(result)}, indent=2) if fmt == "json" else str(result)
    if isinstance(result, hopf.HElem):
        if fmt == "json":
            terms = [{"coeff": str(v), "factors": [_coord_json(a) for a in p]} for p, v in result.terms.items()]
            return json.dumps({"element": terms}, indent=2)
        return str(result)
    if isinstance(result, dict):
        return json.dumps(result, indent=2) if fmt == "json" else "\n".join(f"{k}: {v}" for k, v in result.items())
    return str(result)


def _grid_output(t: np.ndarray, y: np.ndarray, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"t": t.tolist(), "y": y.tolist()})
    lines = ["t," + ",".join(f"y{j}" for j in range(1, y.shape[0] + 1))]
    for k in range(len(t)):
        lines.append(",".join(repr(float(x)) for x in (t[k], *y[:, k])))
    return "\n".join(lines)


# -- commands ------------------------------------------------------------------


def _execute(args) -> str:
    cmd, m, n, fmt = args.cmd, args.m, args.N, args.format
    if m < 0 or n < 0:
        raise _UsageError("-m and -N must be non-negative")

    if cmd in ("shuffle", "mixed-compose", "star", "cat"):
        c, d = _series_args(args, 2)
        if cmd == "cat":
            if c.dim != d.dim:
                raise ShapeError(f"catenation needs equal dimensions, got {c.dim} and {d.dim}")
            return _render(VectorSeries(a.cat(b) for a, b in zip(c, d)), fmt)
        op = {"shuffle": shuffle, "mixed-compose": mixed_compose, "star": star}[cmd]
        return _render(op(c, d), fmt)

    if cmd == "compose":
        sc, sd = _operands(args, 2)
        d = _load(sd, m, n)
        c = _load(sc, d.dim, n)
        return _render(compose(c, d), fmt)

    if cmd == "feedback":
        sc, sd = _operands(args, 2)
        c = _load(sc, m, n)
        d = _load(sd, c.dim, n)
        return _render(feedback(c, d), fmt)

    if cmd == "shuffle-inv":
        (c,) = _series_args(args, 1)
        return _render(shuffle_inverse(c), fmt)

    if cmd == "star-inv":
        (c,) = _series_args(args, 1)
        if args.method == "antipode":
            from .series import require_purely_improper

            require_purely_improper(c)
            return _render(hopf.star_inverse_via_antipode(c), fmt)
        return _render(star_inverse(c), fmt)

    if cmd == "class":
        (c,) = _series_args(args, 1)
        r = structure.class_of(c)
        if fmt == "json":
            return json.dumps({"class": "inf" if r.is_infinite else r.r, "trunc_degree": r.trunc_degree})
        return str(r)

    if cmd == "reldeg":
        (c,) = _series_args(args, 1)
        r = structure.relative_degree(c)
        if fmt == "json":
            return json.dumps({"relative_degree": r})
        return "none" if r is None else str(r)

    if cmd in ("coproduct", "antipode"):
        _operands(args, 0)
        a = hopf.parse_coord(args.coord, m)
        if len(a.word) > n:
            raise ShapeError(f"word of length {len(a.word)} exceeds truncation {n}")
        if cmd == "antipode":
            return _render(hopf.antipode(a), fmt)
        if args.kind == "rho-lin":
            if not a.word:
                raise DomainError("the linearised coaction needs a non-empty word")
            return _render(prelie.mathring_rho(a), fmt)
        f = {"shuffle": hopf.delta_shuffle, "star": hopf.delta_star, "rho": hopf.rho}[args.kind]
        return _render(f(a), fmt)

    if cmd == "prelie":
        c, d = _series_args(args, 2)
        g = prelie.EndoG.load(args.g) if args.g else prelie.EndoG.default(m)
        if args.op == "triangle":
            return _render(prelie.triangle(c, d, g), fmt)
        if args.op == "diamond":
            return _render(prelie.diamond(c, d, g), fmt)
        if args.g:
            raise _UsageError("--g applies to triangle and diamond only")
        return _render(prelie.bullet(c, d), fmt)

    if cmd == "simulate":
        (c,) = _series_args(args, 1)
        u = _signal(args, m)
        return _grid_output(u.t, sim.eval_fliess(c, u), fmt)

    if cmd == "validate-feedback":
        sc, sd = _operands(args, 2)
        c = _load(sc, m, n)
        d = _load(sd, c.dim, n)
        u = _signal(args, m)
        cfg = sim.SimConfig(n, args.tol, args.max_iters)
        report = sim.validate_feedback(c, d, u, cfg)
        return _render(report.as_dict(), fmt)

    raise _UsageError(f"unknown command {cmd}")  # pragma: no cover


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = _execute(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (_UsageError, ParseError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except (DomainError, ShapeError, sim.PicardDivergence, ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
