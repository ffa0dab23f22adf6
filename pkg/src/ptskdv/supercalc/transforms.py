"""PT and SUSY transformations and the invariance checkers built on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..grassnum import Grassmann
from ..symcore import (
    FIELD, SUPER, THETA, Atom, Coef, Expr, atom_parity, eta, evaluate, formal, substitute,
    to_text, u, xi,
)
from ..symcore.coeff import I, ONE, i_power
from ..symcore.expr import _base_expr, _rebuild
from .models import ModelSystem, lhs_atom, to_components


class UnsupportedTransform(ValueError):
    pass


@dataclass
class TransformReport:
    """Outcome of an invariance check; ``residuals`` holds one Expr per equation."""

    invariant: bool
    residuals: dict
    context: str
    numeric: dict = field(default_factory=dict)

    @property
    def residual(self) -> Expr:
        out = Expr()
        for r in self.residuals.values():
            out = out + r
        return out

    def to_dict(self) -> dict:
        d = {
            "invariant": self.invariant,
            "context": self.context,
            "residual": {k: to_text(v) for k, v in self.residuals.items()},
        }
        if self.numeric:
            d["numeric_residual"] = {k: float(v) for k, v in self.numeric.items()}
        return d


# PT ------------------------------------------------------------------------------

def _pt_atom(a: Atom) -> Expr:
    if a.kind == THETA:
        return Expr.atom(a) * I
    if a.kind == FIELD:
        sign = -1 if (a.x + a.t) % 2 else 1
        c = Coef.of(sign) * (I if a.name == "xi" else ONE)
        return Expr.atom(a) * c
    if a.kind == SUPER:
        # D -> -iD, Phi -> i Phi, t -> -t
        c = i_power(-a.x) * I * Coef.of(-1 if a.t % 2 else 1)
        return Expr.atom(a) * c
    raise UnsupportedTransform(f"PT is not defined on {a}")


def pt_transform(e):
    """Anti-linear PT map on an Expr or a ModelSystem.

    Jets pick up (-1)**(x+t), xi -> i xi, theta -> i theta, coefficients are
    conjugated.  A power (i P)**g maps to (i P')**g with P' = -PT(P); the
    base must be invariant unless g is a literal integer.
    """
    if isinstance(e, ModelSystem):
        return ModelSystem(e.name, e.form, {k: pt_transform(v) for k, v in e.equations.items()}, e.params)
    memo: dict = {}

    def atom_map(a):
        if a not in memo:
            memo[a] = _pt_atom(a)
        return memo[a]

    def base_map(b, g):
        P = _base_expr(b)
        P2 = -pt_transform(P)
        if P2 == P:
            return formal(b, g)
        if g.is_int():
            return formal(P2, g) if not P2.is_zero else Expr()
        raise UnsupportedTransform(f"PT maps the base {to_text(P)} to {to_text(P2)}, not to itself")

    return _rebuild(e, atom_map, base_map, coef_map=Coef.conjugate)


def _ratio(a: Expr, b: Expr):
    """c with a == c*b for a nonzero b, else None."""
    if b.is_zero:
        return None
    key = next(iter(b.terms))
    if key not in a.terms:
        return None
    c = a.terms[key] / b.terms[key]
    return c if a == b * c else None


def pt_phase(lhs: Expr) -> Coef:
    c = _ratio(pt_transform(lhs), lhs)
    if c is None:
        raise UnsupportedTransform(f"{to_text(lhs)} is not a PT eigen-expression")
    return c


def _lhs(m: ModelSystem, var: str) -> Expr:
    if var == "Phi":
        return PHI_T
    return Expr.atom(lhs_atom(var))


PHI_T = xi(0, 1) + Expr.atom(Atom(THETA, "theta")) * u(0, 1)


def pt_invariant(m: ModelSystem) -> TransformReport:
    """Residual PT(lhs - rhs) - c (lhs - rhs), where PT(lhs) = c lhs."""
    residuals = {}
    for var, rhs in m.equations.items():
        lhs = _lhs(m, var)
        c = pt_phase(lhs)
        eq = lhs - rhs
        residuals[var] = pt_transform(eq) - eq * c
    ok = all(r.is_zero for r in residuals.values())
    return TransformReport(ok, residuals, f"PT on {m.form} form of {m.name}")


def pt_density_check(h: Expr) -> TransformReport:
    """PT invariance of a density (superfield densities pick up the phase of theta)."""
    c = pt_phase(h) if not h.is_zero else ONE
    r = pt_transform(h) - h * c
    return TransformReport(r.is_zero, {"density": r}, f"PT on density with phase {c}")


# SUSY ----------------------------------------------------------------------------

def susy_transform(e: Expr) -> Expr:
    """u -> u + eta xi_x, xi -> xi + eta u, prolonged to every jet."""
    et = eta()
    return substitute(e, {"u": u() + et * xi(1), "xi": xi() + et * u()})


def on_shell(e: Expr, m: ModelSystem) -> Expr:
    """Eliminate u_t, xi_t and their x-derivatives with the equations of motion."""
    rules = {lhs_atom(v): r for v, r in m.equations.items()}
    return substitute(e, rules, prolong=True)


def susy_residuals(m: ModelSystem) -> dict:
    m = to_components(m)
    out = {}
    for var, rhs in m.equations.items():
        lhs = Expr.atom(lhs_atom(var))
        out[var] = on_shell(susy_transform(lhs), m) - susy_transform(rhs)
    return out


def susy_invariant(m: ModelSystem, numeric_check: bool = True, params: dict | None = None,
                   seed: int = 0) -> TransformReport:
    """On-shell first-order SUSY variation of each component equation.

    When the symbolic residual is nonzero it is also evaluated at random
    jets, so a non-invariance claim never rests on the normal form alone.
    """
    residuals = susy_residuals(m)
    ok = all(r.is_zero for r in residuals.values())
    numeric = {}
    if not ok and numeric_check:
        for k, r in residuals.items():
            numeric[k] = numeric_residual(r, params or {}, seed=seed)
    return TransformReport(ok, residuals, f"SUSY on-shell variation of {m.name}", numeric)


def numeric_residual(e: Expr, params: dict, seed: int = 0, n_generators: int | None = None) -> float:
    """max |coefficient| of ``e`` evaluated at random rational jets.

    Even jets get random nonzero rationals p/q (so powers have an invertible
    body); odd atoms get random odd elements of Lambda_N.
    """
    if e.is_zero:
        return 0.0
    rng = np.random.default_rng(seed)
    atoms = e.atoms()
    odd = sorted((a for a in atoms if atom_parity(a)), key=str)
    n = n_generators if n_generators is not None else min(8, max(2, len(odd) + 1))
    values = {}
    for a in sorted(atoms, key=str):
        if atom_parity(a):
            values[a] = Grassmann.random(rng, n, parity=1)
        else:
            p, q = rng.integers(1, 10, size=2)
            values[a] = float(rng.choice([-1, 1]) * Fraction(int(p), int(q)))
    free = {p: 1.0 + 0.5 * (j + 1) for j, p in enumerate(sorted(e.free_params()))}
    free.update(params)
    g = evaluate(e, values, free, n_generators=n)
    return float(np.max(np.abs(g.coeffs)))
