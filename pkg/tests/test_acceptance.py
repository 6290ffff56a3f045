"""Acceptance gate: one test and one summary line per criterion."""
import functools
import io
import random
import time
from itertools import product
from math import factorial

from chenfliess import hopf
from chenfliess.cli import run
from chenfliess.hopf import Coord, Tensor, delta_star, monomial, rho, star_inverse_via_antipode
from chenfliess.interconnect import feedback, feedback_residual, mixed_compose, star_inverse
from chenfliess.prelie import EndoG, VTensor, find_pre_lie_counterexample, is_admissible, mathring_rho, pre_lie_defect, triangle
from chenfliess.series import VectorSeries
from chenfliess.sim import Signal, SimConfig, validate_feedback
from chenfliess.structure import class_of, relative_degree
from chenfliess.textio import parse_series

from conftest import ACCEPTANCE_LINES


def criterion(num, title):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper():
            t0 = time.perf_counter()
            try:
                detail = fn()
            except BaseException as exc:
                ACCEPTANCE_LINES.append(f"FAIL [{num}] {title}: {type(exc).__name__}: {exc}")
                print(ACCEPTANCE_LINES[-1])
                raise
            dt = time.perf_counter() - t0
            ACCEPTANCE_LINES.append(f"PASS [{num}] {title} ({dt:.2f}s){': ' + detail if detail else ''}")
            print(ACCEPTANCE_LINES[-1])

        return wrapper

    return deco


def P(text, m=1, n=5):
    return parse_series(text, m, n)


def a(j, *w):
    return Coord(j, tuple(w))


def T(*terms):
    acc = Tensor()
    for k, left, right in terms:
        acc = acc + Tensor({(monomial(*left), monomial(*right)): k})
    return acc


def V(*terms):
    acc = {}
    for k, left, right in terms:
        acc[(left, right)] = acc.get((left, right), 0) + k
    return VTensor.from_pairs(acc)


@criterion(1, "star inverse of 1 - x1 at N=4, fixed point and antipode")
def test_criterion_1_antipode_example():
    for cache in (hopf._antipode_gen, hopf._delta_star_gen, hopf._rho_gen, hopf._rho_v):
        cache.cache_clear()
    expected = [1, 1, 3, 15, 105]
    timings = []
    for method in ("fixedpoint", "antipode"):
        out, err = io.StringIO(), io.StringIO()
        t0 = time.perf_counter()
        code = run(["star-inv", "-m", "1", "-N", "4", "1 - x1", "--method", method], out, err)
        timings.append(time.perf_counter() - t0)
        assert code == 0, err.getvalue()
        got = parse_series(out.getvalue(), 1, 4)[0]
        assert [got[(1,) * k] for k in range(5)] == expected
        assert len(got) == 5
    c = P("1 - x1", n=4)
    assert star_inverse(c) == star_inverse_via_antipode(c)
    assert max(timings) < 1.0
    return f"max runtime {max(timings):.3f}s"


@criterion(2, "class and relative degree examples")
def test_criterion_2_class_examples():
    assert class_of(P("1 + x0 x1^2 + x0^2 x1")).r == 2
    assert relative_degree(P("1 + x0^2 + x0 x1 + x0^2 x1")) == 2


@criterion(3, "mixed composition examples at N=5")
def test_criterion_3_mixed_composition():
    d = P("1 + x1")
    assert mixed_compose(P("1 + x0 x1^2 + x0^2 x1"), d) == P(
        "1 + x0 x1^2 + 3 x0 x1^3 + 3 x0 x1^4 + x0^2 x1 + x0^2 x1^2"
    )
    assert mixed_compose(P("1 + x0^2 + x0 x1 + x0^2 x1"), d) == P(
        "1 + x0^2 + x0 x1 + x0 x1^2 + x0^2 x1 + x0^2 x1^2"
    )


@criterion(4, "feedback example with fixed-point certificate at N=5")
def test_criterion_4_feedback_example():
    c = P("x1")
    d = P(" + ".join(f"{factorial(k)} x1^{k}" for k in range(6)).replace("1 x1^0", "1"))
    e = feedback(c, d)
    got = [e[0][w] for w in ((1,), (1, 0, 1), (1, 0, 1, 0, 1), (1, 0, 0, 1, 1))]
    assert got == [1, 1, 3, 4]
    assert not any(feedback_residual(c, d, e))
    return f"support size {len(e[0])}"


@criterion(5, "rho, Delta and linearised rho tables (m=2)")
def test_criterion_5_coproduct_tables():
    idx = (1, 2)
    n = 0
    for i in idx:
        assert rho(a(i, 0)) == T((1, [a(i, 0)], []))
        assert rho(a(i, 0, 0)) == T((1, [a(i, 0, 0)], []))
        assert delta_star(a(i, 0)) == T((1, [a(i, 0)], []), (1, [], [a(i, 0)]))
        assert delta_star(a(i, 0, 0)) == T((1, [a(i, 0, 0)], []), (2, [a(i, 0)], [a(i, 0)]), (1, [], [a(i, 0, 0)]))
        assert mathring_rho(a(i, 0, 0)) == VTensor()
        assert mathring_rho(a(i, 0, 0, 0)) == VTensor()
        n += 6
    for i, j in product(idx, idx):
        assert rho(a(j, i)) == T((1, [a(j, i)], []))
        assert rho(a(j, 0, i)) == T((1, [a(j, 0, i)], []))
        assert rho(a(j, i, 0)) == T((1, [a(j, i, 0)], []), (1, [a(j, i)], [a(i, 0)]))
        assert delta_star(a(j, i)) == T((1, [a(j, i)], []), (1, [], [a(j, i)]))
        assert delta_star(a(j, 0, i)) == T(
            (1, [a(j, 0, i)], []), (1, [a(j, 0)], [a(j, i)]), (1, [a(j, i)], [a(j, 0)]), (1, [], [a(j, 0, i)])
        )
        assert delta_star(a(j, i, 0)) == T(
            (1, [a(j, i, 0)], []), (1, [a(j, i)], [a(i, 0)]), (1, [a(j, i)], [a(j, 0)]),
            (1, [a(j, 0)], [a(j, i)]), (1, [], [a(j, i, 0)]),
        )
        assert mathring_rho(a(j, i, 0)) == V((1, a(j, i), a(i, 0)))
        assert mathring_rho(a(j, 0, i)) == VTensor()
        n += 8
    for i, j, k in product(idx, idx, idx):
        assert rho(a(k, i, j)) == T((1, [a(k, i, j)], []), (1, [a(k, i)], [a(i, j)]))
        assert delta_star(a(k, i, j)) == T(
            (1, [a(k, i, j)], []), (1, [a(k, i)], [a(i, j)]), (1, [a(k, i)], [a(k, j)]),
            (1, [a(k, j)], [a(k, i)]), (1, [], [a(k, i, j)]),
        )
        assert mathring_rho(a(k, i, j)) == V((1, a(k, i), a(i, j)))
        assert mathring_rho(a(k, 0, i, j)) == V((1, a(k, 0, i), a(i, j)))
        n += 4
    # three-letter linearised entry, read with the middle letter equal to the first
    for k, j, l in product(idx, (0, 1, 2), idx):
        i = k
        assert mathring_rho(a(l, k, i, j)) == V(
            (1, a(l, k), a(k, i, j)), (2, a(l, k, i), a(k, j)), (1, a(l, k, j), a(k, i))
        )
        n += 1
    return f"{n} index instances"


@criterion(6, "antipode route equals fixed-point inverse on 50 random members of M^m")
def test_criterion_6_oracle_equivalence():
    rnd = random.Random(2024)
    t0 = time.perf_counter()
    for _ in range(50):
        m, n = rnd.randint(1, 2), rnd.randint(1, 4)
        comps = []
        for _ in range(m):
            d = {(): 1}
            for _ in range(rnd.randint(0, 4)):
                w = tuple(rnd.randrange(m + 1) for _ in range(rnd.randint(1, n)))
                d[w] = d.get(w, 0) + rnd.randint(-5, 5)
            comps.append(d)
        c = VectorSeries.from_dicts(m, n, comps)
        assert star_inverse_via_antipode(c) == star_inverse(c)
    dt = time.perf_counter() - t0
    assert dt < 30
    return f"{dt:.2f}s"


@criterion(7, "property suites, 200 random instances each")
def test_criterion_7_property_suites():
    import test_hopf
    import test_interconnect
    import test_prelie
    import test_series
    import test_structure

    suites = [
        test_series.test_shuffle_algebra_laws,
        test_interconnect.test_distributivity,
        test_interconnect.test_mixed_associativity,
        test_interconnect.test_right_action,
        test_interconnect.test_group_axioms,
        test_interconnect.test_feedback_certificate_and_group_action,
        test_prelie.test_pre_lie_identity,
        test_prelie.test_leibniz_law,
        test_structure.test_class_invariant_under_mixed_composition,
        test_structure.test_class_invariant_under_feedback,
    ]
    for fn in suites:
        fn()
    for m in (1, 2):
        test_hopf.test_coassociativity_and_coaction(m)
        test_hopf.test_antipode_axiom(m)
    return f"{len(suites)} random suites + Hopf identities on all generators of degree <= 4"


@criterion(8, "closed-loop simulation vs symbolic feedback series")
def test_criterion_8_numeric_closure():
    t0 = time.perf_counter()
    v = Signal.sine(0.5, 0.2, 2000)
    rep = validate_feedback(P("x1"), P("1 - x1"), v, SimConfig(5))
    dt = time.perf_counter() - t0
    assert rep.sup_error <= 1e-3
    assert rep.per_degree_errors[5] < rep.per_degree_errors[2]
    assert dt < 10
    return f"err(N=5)={rep.sup_error:.2e}, err(N=2)={rep.per_degree_errors[2]:.2e}"


@criterion(9, "inadmissible g rejected with an explicit pre-Lie counterexample")
def test_criterion_9_negative_control():
    g = EndoG(((0, 0, 0), (0, 1, 1), (0, 0, 1)))
    assert not is_admissible(g)
    triple = find_pre_lie_counterexample(g, max_len=2)
    assert triple is not None
    assert any(pre_lie_defect(lambda s, t: triangle(s, t, g), *triple))
    return "witness " + " | ".join(str(x) for x in triple)
