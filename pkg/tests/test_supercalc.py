"""Superspace calculus, model catalog, transformations and variational tools."""
from fractions import Fraction

import pytest
from hypothesis import given, settings

from ptskdv.supercalc import (
    FAMILIES, PHI, D_family, SuperfieldExpr, UnknownModel, UnsupportedTransform, berezin_integrate, build_model,
    component_model, deformed_partial, euler_operator, hamiltonian_flow, hamiltonian_superdensity,
    is_total_x_derivative, pt_invariant, pt_transform, super_D, super_D_eps, susy_invariant, susy_transform,
    variational_derivative,
)
from ptskdv.supercalc import reference as R
from ptskdv.supercalc.models import lhs_atom
from ptskdv.supercalc.variational import super_sign
from ptskdv.symcore import (
    Exponent, Expr, I, eta, formal, jet, subs_params, substitute, superjet, theta, u, x_derivative, xi,
)
from ptskdv.symcore.coeff import MINUS_I

from strategies import component_expressions, expressions

EPS = Exponent.of("eps")


def dp(g, n=1):
    return deformed_partial("u", g, n)


# superfield operators ------------------------------------------------------------

def test_super_D_examples():
    assert super_D(PHI) == u() + theta() * xi(1)
    assert super_D(super_D(PHI)) == xi(1) + theta() * u(1)
    assert super_D(theta()) == 1


def test_superfield_decomposition():
    s = SuperfieldExpr.from_expr(PHI)
    assert s.body == xi() and s.theta_part == u()
    assert s.expr == PHI


def test_deformed_partial_examples():
    f1 = jet("f", 1)
    assert deformed_partial("f", 1, 1) == f1
    assert deformed_partial("f", EPS, 2) == R.deformed_printed(2)
    # eps = -1/2: the third order is (i/2)(i f_x)^(-1/2) times the Schwarzian derivative
    half = Fraction(-1, 2)
    bracket = deformed_partial("f", half, 3) * formal(f1, Fraction(1, 2)) * (-2 * I)
    assert bracket == R.schwarzian()


def test_super_D_eps_examples():
    assert super_D_eps(PHI, EPS) == u() + theta() * R.dxi(EPS, 1)
    assert super_D_eps(PHI, 1) == super_D(PHI)
    assert super_D_eps(super_D_eps(PHI, EPS), EPS) == R.dxi(EPS, 1) + theta() * dp(EPS)


def test_family_examples():
    assert D_family(PHI, "bosonic", EPS, 2) == xi(1) + theta() * dp(EPS)
    assert D_family(PHI, "check", EPS, 3) == dp(EPS) + I * theta() * EPS.coef() * dp(EPS - 1) * xi(2)
    expected6 = theta() * dp(EPS, 3) + I * EPS.coef() * (dp(EPS - 1, 2) * xi(2) + dp(EPS - 1) * xi(3))
    assert D_family(PHI, "check", EPS, 6) == expected6


# the check family is defined at orders 1, 2, 3 and 6 only
@pytest.mark.parametrize("family,n", [(fam, n) for fam in FAMILIES if fam != "plain" for n in range(1, 7)
                                      if not (fam == "check" and n in (4, 5))])
def test_family_collapses_at_eps_one(family, n):
    assert D_family(PHI, family, 1, n) == super_D(PHI, n)


@settings(max_examples=200)
@given(expressions())
def test_D_squared_is_x_derivative(e):
    assert super_D(e, 2) == x_derivative(e)


def test_kdvn_identities_only_undeformed():
    X = PHI * super_D(PHI)
    assert super_D(X, 2) == super_D(PHI, 2) * super_D(PHI) + PHI * super_D(PHI, 3)
    assert super_D(PHI, 2) * super_D(PHI) == super_D(PHI) * super_D(PHI, 2)
    for g in (EPS, Exponent.of(2)):
        F1 = D_family(PHI, "check", g, 1)
        lhs = super_D(PHI * F1, 2)
        assert not (lhs - D_family(PHI, "check", g, 2) * F1 - PHI * D_family(PHI, "check", g, 3)).is_zero


def test_berezin_examples():
    assert berezin_integrate(theta() * u()) == u()
    assert berezin_integrate(u()).is_zero
    assert berezin_integrate(hamiltonian_superdensity()) == R.hamiltonian_density()


# models ------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["skdv", "zs", "xx", "flow"])
def test_component_expansions_match_reference(name):
    m = component_model(name)
    ref = {"skdv": R.skdv, "zs": R.zs, "xx": R.xx, "flow": R.flow}[name]()
    for var in ("u", "xi"):
        assert m.equations[var] == ref[var], var


def test_components_are_evolutionary_and_graded():
    for name in ("skdv", "zs", "xx", "flow"):
        m = component_model(name)
        assert m.equations["u"].parity() == 0 and m.equations["xi"].parity() == 1
        for e in m.equations.values():
            assert all(a.t == 0 for a in e.atoms())


def test_undeformed_limits():
    zs1 = build_model("zs", eps=1, kap=1, mu=1, nu=1)
    assert zs1.equals(build_model("kdvn"))
    assert component_model("flow", eps=1).equals(component_model("skdv", lam=2))
    sym = build_model("zs")
    assert sym.subs({"eps": 1, "kap": 1, "mu": 1, "nu": 1}).equals(build_model("kdvn"))


def test_unknown_model():
    with pytest.raises(UnknownModel):
        build_model("kdv5")


def test_to_dict_shape():
    d = component_model("skdv", lam=Fraction(3)).to_dict()
    assert d["model"] == "skdv" and d["form"] == "component"
    assert set(d["equations"]) == {"u_t", "xi_t"}


# PT --------------------------------------------------------------------------

def test_pt_examples():
    assert pt_transform(u(1)) == -u(1)
    assert pt_transform(formal(u(1), EPS)) == formal(u(1), EPS)
    assert pt_transform(xi()) == I * xi()
    assert pt_transform(I * u()) == MINUS_I * u()


@pytest.mark.parametrize("name", ["skdv", "kdvn", "zs", "xx", "flow"])
def test_models_pt_invariant(name):
    assert pt_invariant(build_model(name)).invariant
    assert pt_invariant(component_model(name)).invariant


def test_pt_detects_noninvariance():
    from ptskdv.supercalc.models import ModelSystem
    m = ModelSystem("heat", "components", {"u": u(2), "xi": xi(2)}, {})
    assert not pt_invariant(m).invariant


def test_pt_rejects_negated_base():
    with pytest.raises(UnsupportedTransform):
        pt_transform(formal(u(2), Fraction(1, 2)))


@settings(max_examples=200)
@given(component_expressions())
def test_pt_involution(e):
    assert pt_transform(pt_transform(e)) == e


# SUSY ------------------------------------------------------------------------

def test_susy_examples():
    assert susy_transform(u()) == u() + eta() * xi(1)
    g = EPS.coef()
    assert susy_transform(dp(EPS)) == dp(EPS) + I * eta() * g * dp(EPS - 1) * xi(2)


def test_susy_matrix_undeformed_and_deformed():
    assert susy_invariant(component_model("skdv")).invariant
    assert susy_invariant(component_model("zs", eps=1, kap=1, mu=1, nu=1)).invariant
    rep = susy_invariant(component_model("zs", lam=Fraction(3, 2), eps=2, kap=1, mu=1, nu=1))
    assert not rep.invariant
    assert rep.numeric["u"] > 1e-6 or rep.numeric["xi"] > 1e-6


def test_xx_u_equation_invariant():
    rep = susy_invariant(component_model("xx"))
    assert rep.residuals["u"].is_zero


def test_flow_susy_invariant():
    assert susy_invariant(component_model("flow")).invariant


# variational -------------------------------------------------------------------

def test_total_derivative_examples():
    ok, w = is_total_x_derivative(u() * u(1))
    assert ok and w == u() ** 2 * Fraction(1, 2)
    assert is_total_x_derivative(u() ** 2) == (False, None)


def test_hamiltonian_susy_variation_witness():
    h = R.hamiltonian_density()
    delta = susy_transform(h) - h
    ok, w = is_total_x_derivative(delta)
    assert ok
    assert x_derivative(eta() * R.susy_witness()) == delta


@settings(max_examples=100)
@given(component_expressions(parity=0))
def test_euler_annihilates_total_derivatives(e):
    d = x_derivative(e)
    assert euler_operator(d, "u").is_zero and euler_operator(d, "xi").is_zero
    ok, w = is_total_x_derivative(d)
    assert ok and x_derivative(w) == d


def test_euler_operator_on_kdv_density():
    # E_u(u^3 + u_x^2 / 2) = 3u^2 - u_xx
    assert euler_operator(u() ** 3 + u(1) ** 2 * Fraction(1, 2), "u") == 3 * u() ** 2 - u(2)


def test_super_sign_period_four():
    assert [super_sign(k) for k in range(8)] == [1, 1, -1, -1, 1, 1, -1, -1]


def test_cubic_term_flow():
    m = hamiltonian_flow(superjet(0) * superjet(1) ** 2)
    assert m.equations["Phi"] == 4 * super_D(PHI) * super_D(PHI, 2) + 2 * PHI * super_D(PHI, 3)


def test_hamiltonian_chain():
    m = hamiltonian_flow(hamiltonian_superdensity(), name="flow")
    assert m.equals(build_model("flow"))
    comps = component_model("flow")
    assert comps.equations["u"] == R.flow()["u"]
    lim = hamiltonian_flow(hamiltonian_superdensity(1))
    assert lim.equals(build_model("kdvn", lam=2))


def test_variational_derivative_of_cubic():
    P0, P1, P2 = superjet(0), superjet(1), superjet(2)
    assert variational_derivative(P0 * P1 ** 2) == 3 * P1 ** 2 - 2 * P0 * P2


def test_bosonic_limit_of_flow():
    ueq = component_model("flow").equations["u"]
    bos = substitute(ueq, {"xi": Expr()})
    assert bos == 6 * u() * u(1) - dp(EPS, 3)


def test_lhs_atom():
    assert lhs_atom("u").t == 1 and lhs_atom("u").x == 0


def test_subs_params_on_model():
    e = component_model("zs").equations["u"]
    assert subs_params(e, {"lam": 0, "eps": 1, "kap": 1}) == 6 * u() * u(1) - u(3)
