"""Canonical-form kernel: worked examples and algebraic properties."""
import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptskdv.grassnum import Grassmann
from ptskdv.supercalc import reference as R
from ptskdv.symcore import (
    FIELD, Atom, Coef, Exponent, Expr, I, MalformedExpression, PoleError, const, equals_zero, eta, evaluate,
    f, formal, mul, nilpotent_power, normalize, param, substitute, theta, to_latex, to_text, u,
    x_derivative, xi,
)
from ptskdv.symcore.coeff import MINUS_I

from strategies import expressions, monomials

EPS = Exponent.of("eps")


# worked examples -----------------------------------------------------------------

def test_theta_squared_vanishes():
    assert (theta() * theta()).is_zero


def test_transposing_odd_jets_flips_sign():
    assert xi(1) * xi() == -(xi() * xi(1))


def test_formal_exponents_add():
    assert formal(u(1), EPS) * formal(u(1), -1) == formal(u(1), EPS - 1)


def test_odd_anticommutator_and_even_commutator():
    assert (mul(xi(), xi(1)) + mul(xi(1), xi())).is_zero
    assert (mul(u(), xi()) - mul(xi(), u())).is_zero


def test_three_odd_atoms_signs_consistent_over_all_orderings():
    atoms = [theta(), eta(), xi(2)]
    ref = atoms[0] * atoms[1] * atoms[2]
    for perm in itertools.permutations(range(3)):
        inversions = sum(1 for i, j in itertools.combinations(perm, 2) if i > j)
        prod = atoms[perm[0]] * atoms[perm[1]] * atoms[perm[2]]
        assert prod == ref * (-1) ** inversions
    # the mixed example with an even factor between the odd ones
    assert mul(theta(), eta() * u()) == -(eta() * theta() * u())


def test_x_derivative_examples():
    assert x_derivative(u() ** 2) == 2 * u() * u(1)
    assert x_derivative(formal(u(1), EPS)) == EPS.coef() * formal(u(1), EPS - 1) * I * u(2)
    assert x_derivative(xi() * xi(1)) == xi() * xi(2)


def test_nilpotent_power_examples():
    lhs = nilpotent_power(I * u(1) + I * eta() * xi(2), EPS)
    assert lhs == formal(u(1), EPS) + EPS.coef() * formal(u(1), EPS - 1) * I * eta() * xi(2)
    c = Fraction(3, 7)
    assert nilpotent_power(const(1) + eta(1) * eta(2) * c, EPS) == 1 + EPS.coef() * c * eta(1) * eta(2)
    assert nilpotent_power(I * u(1), 1) == I * u(1)


def test_substitute_examples():
    assert substitute(u(1), {"u": u() + eta() * xi(1)}) == u(1) + eta() * xi(2)
    ut = Atom(FIELD, "u", 0, 1)
    kdv = 6 * u() * u(1) - u(3)
    assert substitute(u(1, 1), {ut: kdv}, prolong=True) == 6 * u(1) ** 2 + 6 * u() * u(2) - u(4)
    assert substitute(xi(), {"xi": I * xi()}) == I * xi()


def test_equals_zero_examples():
    e = Coef.of("eps")
    assert equals_zero(Expr.coerce(e / (1 + e)) - Expr.coerce(e) * Expr.coerce((1 + e) ** -1))
    # second-order closed form against two applications of d/dx on -i (i f_x)^eps
    assert equals_zero(R.deformed_printed(2) - x_derivative(formal(f(1), EPS) * MINUS_I))
    assert not equals_zero(u() - u(1))


def test_inverse_needs_formal_power():
    with pytest.raises(MalformedExpression):
        formal(xi(1), EPS)
    with pytest.raises(MalformedExpression):
        formal(Expr(), EPS)


def test_pole_reported_on_evaluation():
    c = Coef.of(1) / (1 + Coef.of("eps"))
    with pytest.raises(PoleError):
        c.evaluate({"eps": -1})


def test_renderings_are_stable():
    e = 6 * u() * u(1) - u(3) + I * param("lam") * xi() * xi(2)
    assert to_text(e) == to_text(normalize(e))
    assert to_text(e) == "6*u*u_x - u_xxx + i*lam*xi*xi_xx"
    assert r"\lambda" in to_latex(e)


# properties ----------------------------------------------------------------------

@settings(max_examples=1000)
@given(expressions())
def test_normalize_idempotent(e):
    assert normalize(normalize(e)) == normalize(e)


@given(st.lists(monomials(), min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_sum_independent_of_term_order(terms, rnd):
    shuffled = list(terms)
    rnd.shuffle(shuffled)
    assert sum(terms, Expr()) == sum(shuffled, Expr())


@given(st.integers(0, 1), st.integers(0, 1), st.data())
def test_graded_commutativity(pa, pb, data):
    a = data.draw(expressions(parity=pa))
    b = data.draw(expressions(parity=pb))
    assert (a * b - (-1) ** (pa * pb) * (b * a)).is_zero


@given(expressions(), expressions(), expressions())
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(expressions(), expressions())
def test_distributivity(a, b):
    c = u(1) + xi()
    assert c * (a + b) == c * a + c * b


@given(expressions(), expressions(parity=0))
def test_leibniz_rule(a, b):
    assert x_derivative(a * b) == x_derivative(a) * b + a * x_derivative(b)


@given(monomials(), st.sampled_from([xi(), xi(2), theta(), eta()]))
def test_repeated_odd_atom_vanishes(m, odd):
    assert (odd * m * odd).is_zero


@given(st.sampled_from([EPS, Exponent.of(Fraction(1, 3)), Exponent.of(-2)]),
       st.sampled_from([EPS - 1, Exponent.of(Fraction(5, 2)), Exponent.of(1)]))
def test_power_law(g, h):
    assert formal(u(1), g) * formal(u(1), h) == formal(u(1), g + h)


def _poly_jets(coef, x, order):
    """Values of u and its x-derivatives for the cubic u = sum coef_k x^k."""
    p = np.polynomial.Polynomial(coef)
    return {Atom(FIELD, "u", k, 0): complex(p.deriv(k)(x)) if k else complex(p(x)) for k in range(order + 1)}


@settings(max_examples=60)
@given(st.lists(st.floats(-2, 2), min_size=4, max_size=4), st.floats(-0.3, 0.3),
       st.sampled_from([0.5, 1.5, 2.5, 3.0, -0.5]))
def test_power_derivative_matches_finite_difference(coef, x0, g):
    coef[1] = coef[1] + (3 if coef[1] >= 0 else -3)  # |u_x| >= 1.26 on the window
    B = formal(u(1), g)
    dB = x_derivative(B)
    h = 1e-5
    num = (evaluate(B, _poly_jets(coef, x0 + h, 3)).body - evaluate(B, _poly_jets(coef, x0 - h, 3)).body) / (2 * h)
    ana = evaluate(dB, _poly_jets(coef, x0, 3)).body
    assert abs(num - ana) <= 1e-6 * max(1.0, abs(ana))


def test_evaluation_matches_grassmann_power():
    # N=2: (i u_x)^eps with u_x = a + b e1e2
    a, b, eps = 1.3, 0.7, 2.5
    ux = Grassmann.scalar(a, 2) + Grassmann.generator(0, 2) * Grassmann.generator(1, 2) * b
    lhs = evaluate(formal(u(1), eps), {Atom(FIELD, "u", 1, 0): ux})
    rhs_body = (1j * a) ** eps
    assert np.isclose(lhs.body, rhs_body)
    assert np.isclose(lhs.coeffs[3], eps * (1j * a) ** (eps - 1) * 1j * b)
