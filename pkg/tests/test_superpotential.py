import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from mirrorkit.exact_poly import LaurentPolynomial, compositions, multinomial
from mirrorkit.superpotential import (
    DiscClass,
    SolverConfig,
    build_W,
    build_W_cl,
    build_W_hat,
    covering_pullback,
    critical_points,
    disc_counts,
    hessian_at_symmetric_point,
    hessian_determinant,
    reduce_product_relation,
    verify_count_identity,
    y_vars,
)


def sympy_W(n):
    ys = sympy.symbols(y_vars(n))
    return ys, (1 + sum(ys)) ** (n + 1) / sympy.Mul(*ys) - sympy.factorial(n + 1)


def from_sympy(expr, variables):
    syms = sympy.symbols(variables)
    num, den = sympy.fraction(sympy.together(sympy.expand(expr)))
    den_poly = sympy.Poly(den, *syms)
    assert len(den_poly.terms()) == 1
    (dexp, dcoef), = den_poly.terms()
    out = {}
    for exp, c in sympy.Poly(sympy.expand(num), *syms).terms():
        e = tuple(a - b for a, b in zip(exp, dexp))
        out[e] = Fraction(int(sympy.numer(c / dcoef)), int(sympy.denom(c / dcoef)))
    return LaurentPolynomial(variables, out)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_build_W_matches_sympy_expansion(n):
    ys, expr = sympy_W(n)
    assert build_W(n) == from_sympy(expr, y_vars(n))


def test_W_examples():
    y1 = LaurentPolynomial.gens(("y1",))[0]
    assert build_W(1) == y1 + y1**-1
    assert build_W(1)([1]) == 2
    assert build_W(2).coefficient((-1, -1)) == 1
    assert build_W_cl(1) == build_W(1)
    y1, y2 = LaurentPolynomial.gens(y_vars(2))
    assert build_W_cl(2) == y1 + y2 + (y1 * y2) ** -1
    assert build_W_hat(3) == build_W(3) + 24


def test_pullback_n1_by_hand():
    (y,) = LaurentPolynomial.gens(("y1",))
    assert covering_pullback(1) == (1 + y**2) ** 2 * y**-2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pullback_equals_power_of_W_cl(n):
    assert covering_pullback(n) == build_W_cl(n) ** (n + 1)


def test_rejects_bad_n():
    with pytest.raises(ValueError):
        build_W(0)


def test_disc_class_properties():
    c = DiscClass((1, 1, 1))
    assert c.is_spherical and c.maslov == 6 and c.n == 2
    assert not DiscClass((2, 1, 0)).is_spherical
    with pytest.raises(ValueError):
        DiscClass((2, -1))


def test_disc_count_examples():
    t1 = disc_counts(1)
    assert (t1[(2, 0)], t1[(0, 2)], t1[(1, 1)]) == (1, 1, 0)
    t2 = disc_counts(2)
    assert t2[(2, 1, 0)] == 3 and t2[(1, 1, 1)] == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_disc_count_total(n):
    assert disc_counts(n).total() == (n + 1) ** (n + 1) - math.factorial(n + 1)
    assert all(sum(c.alpha) == n + 1 for c in disc_counts(n).rows)


@pytest.mark.parametrize("n", range(1, 6))
def test_count_identity(n):
    ok, residual = verify_count_identity(n)
    assert ok and residual.is_zero()


def test_count_identity_detects_tampering():
    n = 2
    vs = ("z0", "z1", "z2")
    table = disc_counts(n)
    lhs = LaurentPolynomial(vs, [(c.alpha, m) for c, m in table.rows.items()])
    rhs = sum(LaurentPolynomial.gens(vs), LaurentPolynomial(vs)) ** 3 - 6
    bumped = lhs + LaurentPolynomial.monomial(vs, (1, 1, 1))
    assert reduce_product_relation(lhs - rhs).is_zero()
    assert not reduce_product_relation(bumped - rhs).is_zero()


def test_product_relation_reduction():
    vs = ("z0", "z1")
    p = LaurentPolynomial(vs, {(3, 1): 2, (1, 1): 5, (0, 4): 1})
    assert reduce_product_relation(p) == LaurentPolynomial(vs, {(2, 0): 2, (0, 0): 5, (0, 4): 1})


def test_critical_values_n1_and_shifted_convention():
    rep = critical_points(1)
    assert np.allclose(rep.values, [0, 4], atol=1e-8)
    assert np.allclose(rep.w_values, [-2, 2], atol=1e-8)
    assert rep.symmetric_value == 4


def test_critical_values_n2_against_sympy():
    ys, expr = sympy_W(2)
    w_hat = expr + 6
    sols = sympy.solve([sympy.numer(sympy.together(sympy.diff(w_hat, y))) for y in ys], ys, dict=True)
    exact = set()
    for s in sols:
        if all(s.get(y, y) != 0 for y in ys):
            v = sympy.simplify(w_hat.subs(s))
            if v.free_symbols:
                # positive-dimensional degenerate locus; its value is constant
                v = sympy.simplify(v.subs({y: sympy.Rational(1, 3) for y in v.free_symbols}))
            exact.add(complex(v))
    rep = critical_points(2)
    assert len(rep.values) == len(exact) == 2
    for v in rep.values:
        assert min(abs(v - e) for e in exact) < 1e-8


@pytest.mark.parametrize("n", range(1, 5))
def test_reported_points_are_critical(n):
    rep = critical_points(n, SolverConfig(starts=16, seed=5))
    assert not rep.diverged
    for p in rep.points:
        assert p.relative_grad_norm < rep.config.newton_tol
    j = rep.to_json()
    assert j["critical_values_W"][1][0] == pytest.approx((n + 1) ** (n + 1) - math.factorial(n + 1))


@pytest.mark.parametrize("n", range(1, 8))
def test_symmetric_value_is_exact(n):
    assert build_W_hat(n)([1] * n) == (n + 1) ** (n + 1)


def test_hessian_small_cases():
    assert hessian_at_symmetric_point(1) == [[2]]
    assert hessian_at_symmetric_point(2) == [[18, -9], [-9, 18]]


@pytest.mark.parametrize("n", range(1, 6))
def test_hessian_matches_sympy(n):
    ys, expr = sympy_W(n)
    h = sympy.hessian(expr, ys).subs({y: 1 for y in ys})
    assert [[sympy.Rational(x) for x in row] for row in hessian_at_symmetric_point(n)] == h.tolist()
    assert hessian_determinant(n) == h.det() != 0
