"""Truncated series: product, composition, reversion, exp, binomial powers."""

import pytest

from jetpoisson import series as ts
from jetpoisson.coeffpoly import LaurentPoly, param, x_var, y_var


def xs(n, letter_var=x_var):
    return ts.make(("u",), (n,), {(i,): LaurentPoly.var(letter_var(i)) for i in range(1, n + 1)})


def test_product_basics():
    x = xs(3)
    assert ts.mul(x, ts.zero(("u",), (3,))).is_zero()
    u = ts.formal_var("u", 3)
    assert ts.mul(u, u).coeffs == {(2,): LaurentPoly.one()}


def test_product_lowest_terms_of_derivative_pair():
    # x'(u) x'(v) begins with x1^2 + 2 x1 x2 (u + v)
    n = 3
    space, bounds = ("u", "v"), (n, n)
    xp_u = ts.lift(ts.derivative(xs(n + 1), "u"), space, bounds)
    x_v = ts.make(("v",), (n + 1,), {(i,): LaurentPoly.var(x_var(i)) for i in range(1, n + 2)})
    xp_v = ts.lift(ts.derivative(x_v, "v"), space, bounds)
    prod = ts.mul(xp_u, xp_v)
    x1, x2 = LaurentPoly.var(x_var(1)), LaurentPoly.var(x_var(2))
    assert prod.coeff((0, 0)) == x1 * x1
    assert prod.coeff((1, 0)) == 2 * x1 * x2
    assert prod.coeff((0, 1)) == 2 * x1 * x2


def test_compose_identity_and_known_coefficients():
    x = xs(3)
    u = ts.formal_var("u", 3)
    assert ts.compose(x, u).coeffs == x.coeffs
    y = ts.make(("u",), (3,), {(i,): LaurentPoly.var(y_var(i)) for i in range(1, 4)})
    z = ts.compose(x, y)
    x1, x2, x3 = (LaurentPoly.var(x_var(i)) for i in range(1, 4))
    y1, y2, y3 = (LaurentPoly.var(y_var(i)) for i in range(1, 4))
    assert z.coeff((2,)) == x1 * y2 + x2 * y1 ** 2
    assert z.coeff((3,)) == x1 * y3 + 2 * x2 * y1 * y2 + x3 * y1 ** 3


def test_compose_rejects_plain_constant_term():
    outer = xs(3)
    inner = ts.make(("u",), (3,), {(0,): LaurentPoly.one(), (1,): LaurentPoly.one()})
    with pytest.raises(ts.NonNilpotentConstantTerm):
        ts.compose(outer, inner)


def test_compose_associativity_symbolic():
    n = 6
    from jetpoisson.coeffpoly import z_var

    a, b, c = xs(n), xs(n, y_var), xs(n, z_var)
    left = ts.compose(ts.compose(a, b), c)
    right = ts.compose(a, ts.compose(b, c))
    assert left.coeffs == right.coeffs


def test_chain_rule():
    n = 5
    a, b = xs(n), xs(n, y_var)
    lhs = ts.derivative(ts.compose(a, b), "u")
    rhs = ts.mul(ts.truncate(ts.compose(ts.derivative(a, "u"), b), (n - 1,)),
                 ts.truncate(ts.derivative(b, "u"), (n - 1,)))
    assert lhs.coeffs == rhs.coeffs


def test_derivative_examples():
    x = xs(3)
    d = ts.derivative(x, "u")
    x1, x2, x3 = (LaurentPoly.var(x_var(i)) for i in range(1, 4))
    assert d.coeff((0,)) == x1 and d.coeff((1,)) == 2 * x2 and d.coeff((2,)) == 3 * x3
    # d/du of u v (u - v) = v (2u - v)
    phi = ts.make(("u", "v"), (3, 3), {(2, 1): LaurentPoly.one(), (1, 2): -LaurentPoly.one()})
    dphi = ts.derivative(phi, "u")
    assert dphi.coeff((1, 1)) == LaurentPoly.const(2)
    assert dphi.coeff((0, 2)) == LaurentPoly.const(-1)


def test_comp_inverse_is_two_sided_and_matches_forward_substitution():
    # oracle first: the defining property under composition, then the closed
    # forms obtained from it by hand
    x = xs(5)
    inv = ts.comp_inverse(x, 5)
    u = ts.formal_var("u", 5)
    assert ts.compose(x, inv).coeffs == u.coeffs
    assert ts.compose(inv, x).coeffs == u.coeffs
    x1, x2, x3 = (LaurentPoly.var(x_var(i)) for i in range(1, 4))
    two = ts.comp_inverse(ts.make(("u",), (2,), {(1,): x1, (2,): x2}), 2)
    assert two.coeff((1,)) == x1 ** -1
    assert two.coeff((2,)) == -(x2 * x1 ** -3)
    three = ts.comp_inverse(ts.make(("u",), (3,), {(1,): x1, (2,): x2, (3,): x3}), 3)
    assert three.coeff((3,)) == (2 * x2 ** 2 - x1 * x3) * x1 ** -5


def test_comp_inverse_requires_unit_linear_coefficient():
    bad = ts.make(("u",), (3,), {(1,): LaurentPoly.var(x_var(2))})
    with pytest.raises(ts.NotInvertible):
        ts.comp_inverse(bad, 3)
    with pytest.raises(ts.NotInvertible):
        ts.comp_inverse(ts.make(("u",), (3,), {(2,): LaurentPoly.one()}), 3)


def test_exp_and_inverse_relation():
    lam = LaurentPoly.var(param("lam"))
    a = ts.make(("u",), (3,), {(1,): lam})
    e = ts.exp(a)
    assert e.coeff((0,)) == LaurentPoly.one()
    assert e.coeff((1,)) == lam
    assert e.coeff((2,)) == lam * lam / 2
    assert e.coeff((3,)) == lam * lam * lam / 6
    against = ts.mul(e, ts.exp(ts.scale(a, -1)))
    assert against.coeffs == ts.const(1, ("u",), (3,)).coeffs
    assert ts.exp(ts.zero(("u",), (4,))).coeffs == ts.const(1, ("u",), (4,)).coeffs
    with pytest.raises(ts.NonzeroConstantTerm):
        ts.exp(ts.const(1, ("u",), (3,)))


def test_binomial_power_coefficients():
    lam = param("lam")
    w = ts.make(("u",), (4,), {(1,): LaurentPoly.var(x_var(2))})
    base = ts.add(ts.const(1, ("u",), (4,)), w)
    p = ts.binomial_power(base, lam)
    lam_p = LaurentPoly.var(lam)
    x2 = LaurentPoly.var(x_var(2))
    assert p.coeff((1,)) == lam_p * x2
    assert p.coeff((2,)) == lam_p * (lam_p - 1) / 2 * x2 ** 2
    one = ts.binomial_power(ts.const(1, ("u",), (4,)), lam)
    assert one.coeffs == ts.const(1, ("u",), (4,)).coeffs
    with pytest.raises(ts.NonUnitConstantTerm):
        ts.binomial_power(w, lam)


def test_mixed_bounds_take_minimum():
    a = ts.make(("u",), (5,), {(5,): LaurentPoly.one(), (1,): LaurentPoly.one()})
    b = ts.make(("u",), (2,), {(1,): LaurentPoly.one()})
    assert ts.mul(a, b).bounds == (2,)
    with pytest.raises(ts.VarMismatch):
        ts.mul(a, ts.make(("v",), (2,), {}))
