"""Catalog of (deformed) supersymmetric KdV systems.

Every model is assembled in superfield form from the operator families of
:mod:`ptskdv.supercalc.superfield` acting on ``Phi = xi + theta*u``; the
component system is read off with :func:`to_components`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..symcore import DEFJET, FIELD, Atom, Coef, Expr, Exponent, MalformedExpression, subs_params, to_text
from ..symcore.coeff import I, PARAMS
from .superfield import PHI, D_family, SuperfieldExpr, check_cubed, super_D

MODELS = ("skdv", "kdvn", "zs", "xx", "flow")

REQUIRED = {
    "skdv": ("lam",),
    "kdvn": ("lam",),
    "zs": ("lam", "eps", "kap", "mu", "nu"),
    "xx": ("lam", "eps"),
    "flow": ("eps",),
}


class UnknownModel(KeyError):
    pass


@dataclass(frozen=True)
class ModelSystem:
    """Evolution equations in superfield form ``{"Phi": R}`` or component form ``{"u": R_u, "xi": R_xi}``."""

    name: str
    form: str
    equations: dict
    params: dict = field(default_factory=dict)

    def subs(self, values: dict) -> "ModelSystem":
        values = {k: _literal(v) for k, v in values.items() if v is not None}
        eqs = {k: subs_params(v, values) for k, v in self.equations.items()}
        params = dict(self.params)
        params.update(values)
        return ModelSystem(self.name, self.form, eqs, params)

    def __sub__(self, other: "ModelSystem") -> dict:
        if self.form != other.form:
            raise ValueError("cannot compare systems in different forms")
        return {k: self.equations[k] - other.equations[k] for k in self.equations}

    def equals(self, other: "ModelSystem") -> bool:
        return all(r.is_zero for r in (self - other).values())

    def to_dict(self) -> dict:
        eqs = {f"{k}_t": to_text(v) for k, v in self.equations.items()}
        return {
            "model": self.name,
            "form": self.form,
            "params": {k: _param_text(v) for k, v in sorted(self.params.items())},
            "equations": eqs,
        }


def _literal(v):
    if isinstance(v, str):
        return v
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10**9)
    return Fraction(v)


def _param_text(v) -> str:
    return v if isinstance(v, str) else str(v)


def resolve_params(name: str, params: dict | None) -> dict:
    """Fill missing required parameters with their symbols; reject foreign ones."""
    if name not in REQUIRED:
        raise UnknownModel(f"unknown model {name!r}; expected one of {MODELS}")
    params = dict(params or {})
    extra = set(params) - set(REQUIRED[name])
    if extra - set(PARAMS):
        raise ValueError(f"unknown parameter(s) {sorted(extra - set(PARAMS))}")
    if extra:
        raise ValueError(f"model {name} does not take parameter(s) {sorted(extra)}")
    out = {}
    for p in REQUIRED[name]:
        v = params.get(p)
        out[p] = p if v is None else _literal(v)
    return out


def _c(v) -> Coef:
    return Coef.of(v)


def _exp(v) -> Exponent:
    return Exponent.of(v)


def superfield_rhs(name: str, params: dict) -> Expr:
    p = params
    D = super_D
    Phi = PHI
    if name == "skdv":
        lam = _c(p["lam"])
        return (-D(Phi, 6) + D(Phi * D(Phi), 2) * lam
                + D(Phi) * D(Phi, 2) * (6 - 2 * lam))
    if name == "kdvn":
        lam = _c(p["lam"])
        return (-D(Phi, 6) + D(Phi) * D(Phi, 2) * 6 + Phi * D(Phi, 3) * lam
                - D(Phi) * D(Phi, 2) * lam)
    if name == "zs":
        lam = _c(p["lam"])
        eps, kap, mu, nu = (_exp(p[k]) for k in ("eps", "kap", "mu", "nu"))

        def Dt(g, n):
            return D_family(Phi, "bosonic", g, n)
        return (-Dt(eps, 6) + Dt(kap, 1) * Dt(kap, 2) * 6 + Phi * Dt(mu, 3) * lam
                - Dt(nu, 1) * Dt(nu, 2) * lam)
    if name == "xx":
        lam = _c(p["lam"])
        eps = _exp(p["eps"])
        return (-D_family(Phi, "check", eps, 6) + D(Phi) * D(Phi, 2) * 6
                + Phi * D(Phi, 3) * lam - D(Phi) * D(Phi, 2) * lam)
    if name == "flow":
        eps = _exp(p["eps"])
        inv = (eps.coef() + 1).inverse()
        inner = D(Phi, 2) * check_cubed(Phi, eps - 1)
        return (D(Phi) * D(Phi, 2) * 4 + Phi * D(Phi, 3) * 2
                - (D_family(Phi, "check", eps, 6) + D(inner, 4) * (I * eps.coef())) * inv)
    raise UnknownModel(f"unknown model {name!r}; expected one of {MODELS}")


def build_model(name: str, **params) -> ModelSystem:
    """Superfield-form system; omitted parameters stay symbolic."""
    p = resolve_params(name, params)
    return ModelSystem(name, "superfield", {"Phi": superfield_rhs(name, p)}, p)


def to_components(m: ModelSystem) -> ModelSystem:
    """theta-coefficient of Phi_t gives u_t, the body gives xi_t."""
    if m.form == "component":
        return m
    sf = SuperfieldExpr.from_expr(m.equations["Phi"])
    for part in (sf.body, sf.theta_part):
        if any(a.kind not in (FIELD, DEFJET) for a in part.atoms()):
            raise MalformedExpression("component equations must be free of theta, eta and superfield atoms")
    return ModelSystem(m.name, "component", {"u": sf.theta_part, "xi": sf.body}, dict(m.params))


def component_model(name: str, **params) -> ModelSystem:
    return to_components(build_model(name, **params))


def lhs_atom(var: str) -> Atom:
    return Atom(FIELD, var, 0, 1)
