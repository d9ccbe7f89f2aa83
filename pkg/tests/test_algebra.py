import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from theoremine.algebra import (
    AscendingChain,
    Polynomial,
    initials_product,
    parse_polynomial,
    prem_chain,
    pseudo_divide,
    real_roots_univariate,
    ritt_wu_charset,
    squarefree_split,
)

V3 = ("x", "y", "z")


def P(text, vars=V3):
    return parse_polynomial(text, vars)


def random_poly(rng, vars=V3, max_deg=4, max_terms=5):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(rng.randint(0, max_deg // 2) for _ in vars)
        terms[mono] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return Polynomial(vars, terms)


# -- ring arithmetic -----------------------------------------------------------


def test_additive_inverse():
    f = P("3*x^2*y - 2*z + 1/2")
    assert (f + (-f)).is_zero()


def test_multiplicative_identity():
    f = P("x*y - 7*z^3")
    assert f * Polynomial.const(V3, 1) == f


def test_expand_difference_of_squares():
    # oracle: expand (x+y)(x-y) by hand -> x^2 - y^2
    assert P("x + y") * P("x - y") == P("x^2 - y^2")


def test_mixed_variable_orders_rejected():
    f = Polynomial.var(("x", "y"), "x")
    g = Polynomial.var(("y", "x"), "x")
    with pytest.raises(ValueError):
        f + g


def test_format_parse_roundtrip():
    rng = random.Random(5)
    for _ in range(50):
        f = random_poly(rng)
        assert parse_polynomial(f.format(), V3) == f


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_eval_is_ring_homomorphism(a, b, c):
    f = P("x^2*y - 3*z + 1")
    g = P("x - y*z")
    vals = {"x": Fraction(a), "y": Fraction(b), "z": Fraction(c)}
    assert (f * g).eval(vals) == f.eval(vals) * g.eval(vals)
    assert (f + g).eval(vals) == f.eval(vals) + g.eval(vals)


# -- pseudo-division -----------------------------------------------------------


def test_pseudo_divide_exact_case():
    f = P("x^2*y - 1")
    q, r, s = pseudo_divide(f, f, "y")
    assert r.is_zero()
    # I^s * f = q * f  with q = I^s for some s
    assert q * f == f.initial().pow(s) * f


def test_pseudo_divide_nothing_to_reduce():
    f = P("x + 1")
    g = P("y^2 + x")
    q, r, s = pseudo_divide(f, g, "y")
    assert q.is_zero() and r == f and s == 0


def test_pseudo_divide_rejects_degree_zero():
    with pytest.raises(ValueError):
        pseudo_divide(P("x"), P("y"), "x")


def test_pseudo_division_identity_randomized():
    # oracle: expand I^s*f and q*g + r independently and compare
    rng = random.Random(42)
    for _ in range(200):
        f = random_poly(rng)
        g = random_poly(rng)
        v = rng.choice(V3)
        if g.degree(v) < 1:
            continue
        q, r, s = pseudo_divide(f, g, v)
        I = g.leading_coefficient(v)
        assert I.pow(s) * f == q * g + r
        assert r.degree(v) < g.degree(v)
        assert s <= max(f.degree(v) - g.degree(v) + 1, 0)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_pseudo_division_identity_hypothesis(data):
    mono = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
    coeff = st.fractions(min_value=-5, max_value=5).filter(lambda c: c != 0)
    polys = st.dictionaries(mono, coeff, min_size=1, max_size=4).map(lambda t: Polynomial(V3, t))
    f = data.draw(polys)
    g = data.draw(polys)
    v = data.draw(st.sampled_from(V3))
    if g.degree(v) < 1:
        return
    q, r, s = pseudo_divide(f, g, v)
    assert g.leading_coefficient(v).pow(s) * f == q * g + r


# -- characteristic sets ---------------------------------------------------------


def test_charset_single_polynomial():
    c = ritt_wu_charset([P("x^2 - 1")])
    assert len(c) == 1 and c.polys[0] == P("x^2 - 1")


def test_charset_inconsistent_system_yields_constant_chain():
    # oracle: x=1 and x=-1 cannot hold together; reduction leaves constant 2
    c = ritt_wu_charset([P("x - 1"), P("x + 1")])
    assert c.is_constant()


def test_charset_already_triangular():
    f1, f2 = P("y - x"), P("z - y")
    c = ritt_wu_charset([f1, f2])
    assert c.class_vars() == ["y", "z"]
    assert prem_chain(f1, c).is_zero() and prem_chain(f2, c).is_zero()


def test_charset_reduces_all_inputs_randomized():
    rng = random.Random(7)
    done = 0
    while done < 30:
        polys = [random_poly(rng, max_deg=2, max_terms=3) for _ in range(3)]
        if any(p.is_zero() for p in polys):
            continue
        chain = ritt_wu_charset(polys)
        done += 1
        if chain.is_constant():
            continue
        order = [chain.polys[0].vars.index(v) for v in chain.class_vars()]
        assert order == sorted(order) and len(set(order)) == len(order)
        for p in polys:
            assert prem_chain(p, chain).is_zero()


def test_initials_product():
    chain = ritt_wu_charset([P("x*y - 1")])
    assert initials_product(chain) == P("x")
    c2 = ritt_wu_charset([P("y - x"), P("z - y")])
    assert initials_product(c2).is_constant()
    # three-element chain: product equals the expanded product of initials
    c3 = AscendingChain([P("x^2 - 2"), P("x*y - 1"), P("y*z^2 - x")])
    assert initials_product(c3) == P("x") * P("y")


# -- zero containment (numeric direction of Zero(P/I) = Zero(C/I)) -------------


def test_zero_containment_numeric():
    rng = random.Random(11)
    checked = 0
    while checked < 25:
        polys = [random_poly(rng, max_deg=2, max_terms=3) for _ in range(2)]
        if any(p.is_zero() for p in polys):
            continue
        try:
            chain = ritt_wu_charset(polys)
        except Exception:
            continue
        if chain.is_constant():
            continue
        sol = _solve_chain_numeric(chain, rng)
        if sol is None:
            continue
        checked += 1
        for p in polys:
            val = abs(p.eval_float(sol))
            scale = max(1.0, p.monomial_magnitudes(sol))
            assert val / scale < 1e-6


def _solve_chain_numeric(chain, rng):
    vars = chain.polys[0].vars
    leading = chain.class_vars()
    sol = {v: float(rng.randint(-10, 10)) for v in vars if v not in leading}
    for p in chain:
        v = p.class_var()
        coeffs = {}
        for d, c in p.coeffs_in(v).items():
            coeffs[d] = c.eval_float({u: sol.get(u, 0.0) for u in vars})
        deg = max(coeffs)
        if abs(coeffs.get(deg, 0.0)) < 1e-9:
            return None
        import numpy as np

        roots = np.roots([coeffs.get(d, 0.0) for d in range(deg, -1, -1)])
        real = [r.real for r in roots if abs(r.imag) < 1e-9]
        if not real:
            return None
        sol[v] = float(rng.choice(real))
    return sol


# -- real root isolation ---------------------------------------------------------


def test_sqrt_two_roots():
    roots = real_roots_univariate(P("x^2 - 2"), precision=1e-10)
    assert len(roots) == 2
    assert abs(roots[0] + 2 ** 0.5) < 1e-9 and abs(roots[1] - 2 ** 0.5) < 1e-9


def test_no_real_roots():
    assert real_roots_univariate(P("x^2 + 1")) == []


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        real_roots_univariate(Polynomial.zero(V3))


def test_planted_roots_recovered():
    rng = random.Random(3)
    for _ in range(20):
        planted = sorted(rng.sample(range(-8, 9), rng.randint(1, 6)))
        f = Polynomial.const(V3, 1)
        for r in planted:
            f = f * P(f"x - {r}" if r >= 0 else f"x + {-r}")
        roots = real_roots_univariate(f, precision=1e-10)
        assert len(roots) == len(planted)
        for got, want in zip(roots, planted):
            assert abs(got - want) < 1e-8


def test_multiplicities_collapsed():
    roots = real_roots_univariate(P("x^2 - 2*x + 1"))
    assert len(roots) == 1 and abs(roots[0] - 1) < 1e-9


# -- square-free splitting -------------------------------------------------------


def test_squarefree_perfect_square():
    chain = AscendingChain([P("x^2 - 2*x + 1")])
    out = squarefree_split(chain)
    assert len(out) == 1 and out[0].polys[0].primitive_part() == P("x - 1")


def test_squarefree_rational_split():
    chain = AscendingChain([P("x^2 - 1")])
    out = squarefree_split(chain)
    polys = {c.polys[0].primitive_part().format() for c in out}
    assert polys == {"x - 1", "x + 1"}


def test_squarefree_irreducible_quadratic_unchanged():
    chain = AscendingChain([P("x^2 - 2")])
    out = squarefree_split(chain)
    assert len(out) == 1 and out[0].polys[0].primitive_part() == P("x^2 - 2")


def test_squarefree_components_cover_solutions():
    # numeric sampling obligation: components, unioned, contain the
    # solutions of the original chain
    chain = AscendingChain([P("x^2 - 4"), P("x*y - 2")])
    comps = squarefree_split(chain)
    for x in (2.0, -2.0):
        y = 2.0 / x
        covered = any(
            all(abs(p.eval_float({"x": x, "y": y, "z": 0.0})) < 1e-9 for p in comp)
            for comp in comps
        )
        assert covered
