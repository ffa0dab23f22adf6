"""Hypothesis strategies for random graded expressions and Grassmann elements."""
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from ptskdv.grassnum import Grassmann
from ptskdv.symcore import Coef, Exponent, Expr, I, eta, f, formal, param, theta, u, xi

EVEN_ATOMS = [u(k) for k in range(4)] + [f(k) for k in range(3)]
ODD_ATOMS = [xi(k) for k in range(4)] + [theta(), eta(1), eta(2)]
COEFS = [Expr.coerce(1), Expr.coerce(-2), Expr.coerce(Fraction(1, 3)), Expr.coerce(I),
         param("eps"), param("lam"), 1 + param("eps")]
EXPONENTS = [Exponent.of("eps"), Exponent.of(Fraction(1, 2)), Exponent.of("eps") - 1, Exponent.of(-1)]
FORMAL_BASES = [u(1), f(1)]

# component jets only, for evaluation and PT (no theta or eta)
COMPONENT_EVEN = [u(k) for k in range(4)]
COMPONENT_ODD = [xi(k) for k in range(4)]


@st.composite
def monomials(draw, parity=None, odd_atoms=ODD_ATOMS, even_atoms=EVEN_ATOMS, with_formal=True):
    c = draw(st.sampled_from(COEFS))
    evens = draw(st.lists(st.sampled_from(even_atoms), max_size=3))
    n_odd = draw(st.integers(0, 3))
    if parity is not None and n_odd % 2 != parity:
        n_odd = n_odd + 1 if n_odd < 3 else n_odd - 1
    odds = draw(st.lists(st.sampled_from(odd_atoms), min_size=n_odd, max_size=n_odd))
    out = c
    for a in evens:
        out = out * a
    if with_formal and draw(st.booleans()):
        out = out * formal(draw(st.sampled_from(FORMAL_BASES)), draw(st.sampled_from(EXPONENTS)))
    for a in odds:
        out = out * a
    return out


@st.composite
def expressions(draw, parity=None, **kw):
    terms = draw(st.lists(monomials(parity=parity, **kw), min_size=1, max_size=3))
    out = Expr()
    for t in terms:
        out = out + t
    return out


def component_expressions(parity=None):
    """Expressions in u, xi jets and formal powers of u_x (PT and evaluation friendly)."""
    return expressions(parity=parity, odd_atoms=COMPONENT_ODD, even_atoms=COMPONENT_EVEN)


@st.composite
def grassmann_elements(draw, n=None, parity=None, body_floor=None):
    n = draw(st.integers(0, 4)) if n is None else n
    seed = draw(st.integers(0, 2**32 - 1))
    a = Grassmann.random(np.random.default_rng(seed), n, parity)
    if body_floor is not None:
        a.coeffs[0] = a.coeffs[0] + body_floor * (1 if a.coeffs[0].real >= 0 else -1)
    return a


def param_values(seed=0):
    rng = np.random.default_rng(seed)
    return {k: float(rng.uniform(0.3, 2.7)) for k in ("lam", "eps", "kap", "mu", "nu")}


__all__ = ["COEFS", "Coef", "component_expressions", "expressions", "grassmann_elements", "monomials", "param_values"]
