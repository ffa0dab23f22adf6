"""Verification suites: every symbolic identity of the construction as a named check."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .supercalc import (
    PHI, D_family, berezin_integrate, build_model, component_model, deformed_partial, hamiltonian_flow,
    hamiltonian_superdensity, is_total_x_derivative, pt_density_check, pt_invariant, pt_transform, super_D,
    super_D_eps, susy_invariant, susy_transform, to_components,
)
from .supercalc import reference as R
from .supercalc.models import ModelSystem
from .supercalc.transforms import numeric_residual
from .symcore import (
    Coef, Exponent, Expr, MalformedExpression, eta, formal, jet, substitute, superjet, to_text, u, x_derivative, xi,
)
from .symcore.coeff import I

SUITES = ("derivatives", "tables", "pt", "susy", "hamiltonian")


@dataclass
class Check:
    id: str
    passed: bool
    expectation: str
    residual: str = ""
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        d = {"id": self.id, "status": "pass" if self.passed else "fail", "expectation": self.expectation}
        if not self.passed:
            d["residual"] = self.residual
        return d


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self, metadata: dict | None = None) -> dict:
        d = {
            "suite": self.suite,
            "status": "pass" if self.passed else "fail",
            "n_checks": len(self.checks),
            "n_failed": sum(not c.passed for c in self.checks),
            "checks": [c.to_dict() for c in self.checks],
        }
        meta = dict(metadata or {})
        meta["wall_time_s"] = {c.id: round(c.wall_time, 6) for c in self.checks}
        d["metadata"] = meta
        return d

    def summary(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.id}" for c in self.checks]
        lines.append(f"{self.suite}: {len(self.checks) - sum(not c.passed for c in self.checks)}/{len(self.checks)} passed")
        return "\n".join(lines)


def _zero(expr: Expr):
    return expr.is_zero, "" if expr.is_zero else to_text(expr)


def _nonzero(expr: Expr):
    return not expr.is_zero, "residual vanished identically" if expr.is_zero else ""


def _run(checks: list, cid: str, expectation: str, fn):
    t0 = time.perf_counter()
    try:
        ok, residual = fn()
    except (MalformedExpression, ValueError, ZeroDivisionError) as exc:
        ok, residual = False, f"{exc.__class__.__name__}: {exc}"
    checks.append(Check(cid, bool(ok), expectation, residual, time.perf_counter() - t0))


# derivatives -----------------------------------------------------------------------

def suite_derivatives() -> list:
    out: list = []
    f1 = jet("f", 1)
    _run(out, "deformed-derivative/order-1-at-eps-1-is-ordinary", "d_{x,1} f = f_x",
         lambda: _zero(deformed_partial("f", 1, 1) - f1))
    for n, label in ((2, "order-2"), (3, "order-3"), (4, "order-4")):
        _run(out, f"deformed-derivative/{label}-closed-form-as-printed",
             f"d^{n}_(x,eps) f equals the printed closed form (symbolic eps)",
             lambda n=n: _zero(deformed_partial("f", "eps", n) - R.deformed_printed(n)))
    _run(out, "deformed-derivative/order-4-closed-form-with-corrected-middle-term",
         "d^4_(x,eps) f equals the closed form with 3(eps-1) f_xx f_xxx / f_x^2",
         lambda: _zero(deformed_partial("f", "eps", 4) - R.deformed_fourth_corrected()))

    def schwarz():
        half = Fraction(-1, 2)
        # bracket = d^3 f / (-i eps (i f_x)^eps)
        bracket = deformed_partial("f", half, 3) * formal(f1, Fraction(1, 2)) * (I * Coef.of(-2))
        return _zero(bracket - R.schwarzian())
    _run(out, "deformed-derivative/order-3-bracket-is-schwarzian-at-eps-minus-half",
         "bracket of the third-order form at eps=-1/2 is f_xxx/f_x - 3/2 (f_xx/f_x)^2", schwarz)

    def undeformed(n):
        return lambda: _zero(deformed_partial("f", 1, n) - jet("f", n))
    for n in (2, 3, 4):
        _run(out, f"deformed-derivative/order-{n}-at-eps-1-is-ordinary", f"d^{n}_(x,1) f = d_x^{n} f", undeformed(n))

    def shift(n, expected):
        def fn():
            lhs = susy_transform(deformed_partial("u", "eps", n))
            return _zero(lhs - deformed_partial("u", "eps", n) - eta() * expected)
        return fn
    e = Exponent.of("eps")
    ie = I * e.coef()
    _run(out, "deformed-derivative/susy-shift-order-1",
         "SUSY: d_{x,eps} u -> d_{x,eps} u + i eta eps d_{x,eps-1} u xi_xx",
         shift(1, deformed_partial("u", e - 1, 1) * xi(2) * ie))
    _run(out, "deformed-derivative/susy-shift-order-3",
         "SUSY: d^3_{x,eps} u shifts by i eta eps (d^3 u xi_xx + 2 d^2 u xi_xxx + d u xi_xxxx) at eps-1",
         shift(3, (deformed_partial("u", e - 1, 3) * xi(2) + deformed_partial("u", e - 1, 2) * xi(3) * 2
                   + deformed_partial("u", e - 1, 1) * xi(4)) * ie))
    return out


# tables ------------------------------------------------------------------------------

def _identity_residual(family: str, eps) -> Expr:
    """F^2(Phi F Phi) - F^2 Phi F Phi - Phi F^3 Phi for the plain, bosonic or check family.

    The bf and fermionic second powers need d_{x,eps} of the odd body of
    Phi F Phi, which is outside the deformed derivative's domain.
    """
    F1 = D_family(PHI, family, eps, 1)
    X = PHI * F1
    lhs = super_D_eps(super_D(X), eps) if family == "bosonic" else super_D(X, 2)
    return lhs - D_family(PHI, family, eps, 2) * F1 - PHI * D_family(PHI, family, eps, 3)


def suite_tables() -> list:
    out: list = []
    for fam in ("plain", "bf", "fermionic", "bosonic", "check"):
        for n in range(1, 7):
            expected = R.family_table(fam, n)
            if expected is None:
                continue
            _run(out, f"superderivative-table/{fam}/order-{n}", f"{fam} family, n={n}, acting on Phi",
                 lambda fam=fam, n=n, expected=expected: _zero(D_family(PHI, fam, "eps", n) - expected))
        if fam != "plain":
            _run(out, f"superderivative-table/{fam}/collapses-to-plain-at-eps-1",
                 f"{fam} family at eps=1 equals D^n on Phi for n <= 6",
                 lambda fam=fam: _zero(sum((D_family(PHI, fam, 1, n) - super_D(PHI, n) for n in range(1, 7)), Expr())))
    _run(out, "superderivative/D-squared-is-d-x", "D(D Phi) = Phi_x",
         lambda: _zero(super_D(PHI, 2) - x_derivative(PHI)))
    _run(out, "kdvn-identity/product-rule-holds-undeformed", "D^2(Phi D Phi) = D^2 Phi D Phi + Phi D^3 Phi",
         lambda: _zero(_identity_residual("plain", 1)))
    _run(out, "kdvn-identity/even-odd-commute", "D^2 Phi D Phi = D Phi D^2 Phi",
         lambda: _zero(super_D(PHI, 2) * super_D(PHI) - super_D(PHI) * super_D(PHI, 2)))
    for fam in ("bosonic", "check"):
        _run(out, f"kdvn-identity/product-rule-fails-{fam}-symbolic-eps",
             f"the product identity breaks for the {fam} family at symbolic eps",
             lambda fam=fam: _nonzero(_identity_residual(fam, "eps")))
        _run(out, f"kdvn-identity/product-rule-fails-{fam}-eps-2",
             f"the product identity breaks for the {fam} family at eps=2",
             lambda fam=fam: _nonzero(_identity_residual(fam, 2)))
        _run(out, f"kdvn-identity/product-rule-holds-{fam}-eps-1",
             f"the product identity holds for the {fam} family at eps=1",
             lambda fam=fam: _zero(_identity_residual(fam, 1)))
    return out


# PT ----------------------------------------------------------------------------------

def _random_expr(rng) -> Expr:
    """Small random expression mixing jets, theta, eta, powers and complex coefficients."""
    pool = [u(0), u(1), u(2), xi(0), xi(1), xi(2), R.theta(), u(0, 1), xi(1, 1),
            formal(u(1), "eps"), formal(u(1), Exponent.of("eps") - 1), formal(u(3), "mu")]
    e = Expr()
    for _ in range(rng.integers(1, 5)):
        term = Expr.coerce(Coef.of(complex(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)))))
        for _ in range(rng.integers(1, 4)):
            term = term * pool[rng.integers(len(pool))]
        e = e + term
    return e


def _pt_model(name: str, m: ModelSystem, expectation: str, out: list):
    _run(out, f"pt/{name}", expectation, lambda: (lambda r: (r.invariant, "" if r.invariant else to_text(r.residual)))(pt_invariant(m)))


def suite_pt() -> list:
    out: list = []
    _run(out, "pt/u_x-flips-sign", "PT(u_x) = -u_x", lambda: _zero(pt_transform(u(1)) + u(1)))
    _run(out, "pt/deformed-power-invariant", "PT((i u_x)^eps) = (i u_x)^eps",
         lambda: _zero(pt_transform(formal(u(1), "eps")) - formal(u(1), "eps")))
    comp = {
        "skdv-components": ModelSystem("skdv", "component", R.skdv()),
        "zs-components": ModelSystem("zs", "component", R.zs()),
        "xx-components": ModelSystem("xx", "component", R.xx()),
        "flow-components": ModelSystem("flow", "component", R.flow()),
    }
    for name, m in comp.items():
        _pt_model(name, m, f"{name}: PT maps each equation to a phase times itself (all parameters symbolic)", out)
    for name in ("skdv", "kdvn", "zs", "xx", "flow"):
        _pt_model(f"{name}-superfield", build_model(name), f"superfield form of {name} is PT-invariant", out)
    _run(out, "pt/hamiltonian-superdensity", "PT maps the superfield density to a phase times itself",
         lambda: (lambda r: (r.invariant, to_text(r.residual)))(pt_density_check(hamiltonian_superdensity())))
    _run(out, "pt/hamiltonian-component-density", "component Hamiltonian density is PT-invariant",
         lambda: (lambda r: (r.invariant, to_text(r.residual)))(pt_density_check(R.hamiltonian_density())))
    _run(out, "pt/second-derivative-flow-not-invariant", "u_t = u_xx, xi_t = xi_xx is not PT-invariant",
         lambda: (lambda r: (not r.invariant, ""))(pt_invariant(ModelSystem("heat", "component", {"u": u(2), "xi": xi(2)}))))

    def involution():
        rng = np.random.default_rng(1234)
        bad = Expr()
        for _ in range(200):
            e = _random_expr(rng)
            r = pt_transform(pt_transform(e)) - e
            if not r.is_zero:
                bad = r
                break
        return _zero(bad)
    _run(out, "pt/involution-on-200-random-expressions", "PT(PT(e)) = e", involution)
    return out


# SUSY --------------------------------------------------------------------------------

def _susy_check(out, cid, expectation, m, want_invariant: bool, eq=None):
    def fn():
        r = susy_invariant(m)
        res = r.residuals if eq is None else {eq: r.residuals[eq]}
        zero = all(v.is_zero for v in res.values())
        if want_invariant:
            return zero, "" if zero else "; ".join(f"{k}: {to_text(v)}" for k, v in res.items())
        if zero:
            return False, "variation vanished on shell"
        num = max(numeric_residual(v, {}, seed=7) for v in res.values() if not v.is_zero)
        return num > 1e-8, f"numeric residual {num:.3e}"
    _run(out, cid, expectation, fn)


def suite_susy() -> list:
    out: list = []
    _susy_check(out, "susy/skdv-components-invariant", "sKdV components invariant for symbolic lam",
                component_model("skdv"), True)
    _susy_check(out, "susy/zs-components-invariant-undeformed", "zs components invariant at eps=kap=mu=nu=1",
                component_model("zs", eps=1, kap=1, mu=1, nu=1), True)
    for p in ("eps", "kap", "mu", "nu"):
        vals = {"eps": 1, "kap": 1, "mu": 1, "nu": 1}
        vals[p] = 2
        _susy_check(out, f"susy/zs-components-not-invariant-{p}-2",
                    f"zs components not invariant with {p}=2 (symbolic and numeric residual nonzero)",
                    component_model("zs", **vals), False)
    xxm = component_model("xx")
    _susy_check(out, "susy/xx-u-equation-invariant", "u-equation of the xx model is invariant", xxm, True, "u")
    _susy_check(out, "susy/xx-xi-equation-not-invariant", "xi-equation of the xx model is not invariant",
                xxm, False, "xi")

    def density():
        h = R.hamiltonian_density()
        var = susy_transform(h) - h
        ok, W = is_total_x_derivative(var)
        if not ok:
            return False, "variation is not annihilated by the Euler operators"
        witness = eta() * R.susy_witness()
        return _zero(W - witness) if W is not None else (False, "no antiderivative found")
    _run(out, "susy/hamiltonian-variation-is-total-derivative",
         "SUSY variation of the Hamiltonian density is eta d_x(xi u^2 - i/(1+eps) (i u_x)^eps xi_x)", density)
    return out


# Hamiltonian -------------------------------------------------------------------------

def suite_hamiltonian() -> list:
    out: list = []
    H = hamiltonian_superdensity()
    _run(out, "hamiltonian/berezin-integral-of-superdensity", "int dtheta of the superdensity is the component density",
         lambda: _zero(berezin_integrate(H) - R.hamiltonian_density()))
    flow = hamiltonian_flow(H)
    _run(out, "hamiltonian/flow-superfield-form", "D(delta H/delta Phi) equals the catalogued flow equation",
         lambda: _zero(flow.equations["Phi"] - build_model("flow").equations["Phi"]))

    def components():
        c = to_components(flow)
        ref = R.flow()
        return _zero((c.equations["u"] - ref["u"]) + (c.equations["xi"] - ref["xi"]))
    _run(out, "hamiltonian/flow-components", "components of the flow equal the hand-typed u_t, xi_t", components)

    def cubic_part():
        f = hamiltonian_flow(superjet(0) * superjet(1) ** 2)
        expected = super_D(PHI) * super_D(PHI, 2) * 4 + PHI * super_D(PHI, 3) * 2
        return _zero(f.equations["Phi"] - expected)
    _run(out, "hamiltonian/cubic-term-flow", "Phi (D Phi)^2 alone generates 4 D Phi D^2 Phi + 2 Phi D^3 Phi", cubic_part)
    _run(out, "hamiltonian/flow-at-eps-1-is-kdvn-lam-2", "flow at eps=1 equals kdvn with lam=2",
         lambda: _zero(hamiltonian_flow(hamiltonian_superdensity(1)).equations["Phi"]
                       - build_model("kdvn", lam=2).equations["Phi"]))
    _run(out, "hamiltonian/flow-at-eps-1-components-are-skdv-lam-2", "flow components at eps=1 equal sKdV with lam=2",
         lambda: _zero(sum((component_model("flow", eps=1).equations[k] - R.skdv(2)[k] for k in ("u", "xi")), Expr())))
    _run(out, "hamiltonian/symbolic-flow-specialized-to-eps-1", "substituting eps=1 into the symbolic flow gives sKdV lam=2",
         lambda: _zero(sum((component_model("flow").subs({"eps": 1}).equations[k] - R.skdv(2)[k] for k in ("u", "xi")), Expr())))

    def bosonic_limit():
        ru = substitute(R.flow()["u"], {"xi": 0})
        return _zero(ru - (u() * u(1) * 6 - deformed_partial("u", "eps", 3)))
    _run(out, "hamiltonian/bosonic-limit", "xi -> 0 in the flow gives u_t = 6 u u_x - d^3_{x,eps} u", bosonic_limit)
    return out


SUITE_FUNCS = {
    "derivatives": suite_derivatives,
    "tables": suite_tables,
    "pt": suite_pt,
    "susy": suite_susy,
    "hamiltonian": suite_hamiltonian,
}


def run_suite(name: str) -> VerificationReport:
    if name == "all":
        rep = VerificationReport("all")
        for s in SUITES:
            rep.checks.extend(SUITE_FUNCS[s]())
        return rep
    if name not in SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}; expected all or one of {', '.join(SUITES)}")
    return VerificationReport(name, SUITE_FUNCS[name]())
