"""Superfields and the plain and deformed superderivatives.

Two representations coexist.  The component expansion writes a superfield
explicitly in ``theta`` (``Phi = xi + theta*u``); the abstract form uses
superfield atoms ``D**k Phi`` (see :func:`ptskdv.symcore.superjet`).  The
superderivative acts on both: it is the odd derivation with ``D theta = 1``,
``D J = theta * J_x`` on component jets and ``D(D**k Phi) = D**(k+1) Phi``.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..symcore import (
    DEFJET, FIELD, SUPER, THETA, Atom, Expr, Exponent, MalformedExpression, derivation, power,
    substitute, theta, u, x_derivative, xi,
)
from ..symcore.coeff import I, MINUS_I

FAMILIES = ("plain", "bf", "fermionic", "bosonic", "check")

PHI = xi() + theta() * u()


@dataclass(frozen=True)
class SuperfieldExpr:
    """``body + theta * theta_part`` with both parts free of theta."""

    body: Expr
    theta_part: Expr

    @classmethod
    def from_expr(cls, e: Expr) -> "SuperfieldExpr":
        t = d_theta(e)
        return cls(e - theta() * t, t)

    @property
    def expr(self) -> Expr:
        return self.body + theta() * self.theta_part


def _d_rule(a: Atom):
    if a.kind == THETA:
        return Expr.coerce(1)
    if a.kind == FIELD:
        return theta() * Expr.atom(a._replace(x=a.x + 1))
    if a.kind == DEFJET:
        return theta() * Expr.atom(a._replace(x=a.x + 1))
    if a.kind == SUPER:
        return Expr.atom(a._replace(x=a.x + 1))
    return None


def super_D(e: Expr, n: int = 1) -> Expr:
    """Apply D = theta d_x + d_theta (left derivative in theta) n times."""
    for _ in range(n):
        e = derivation(e, _d_rule, odd=True)
    return e


def d_theta(e: Expr) -> Expr:
    return derivation(e, lambda a: Expr.coerce(1) if a.kind == THETA else None, odd=True)


def _check_component(e: Expr):
    if any(a.kind == SUPER for a in e.atoms()):
        raise MalformedExpression("deformed superderivatives act on component expansions only")


def deformed_x(A: Expr, eps) -> Expr:
    """d_{x,eps} A = -i (i A_x)**eps on a theta-free expression.

    The map is not linear.  For odd arguments only the bare fermion is
    supported; its image is the opaque jet d_{x,eps} xi.
    """
    eps = Exponent.of(eps)
    if eps == Exponent(1):
        return x_derivative(A)
    if A.parity() == 1:
        if len(A.terms) == 1:
            (key, c), = A.terms.items()
            evens, formals, odds = key
            if not evens and not formals and len(odds) == 1 and odds[0].kind == FIELD and odds[0].x == 0:
                a = odds[0]
                return Expr.atom(Atom(DEFJET, a.name, 1, a.t, eps)) * c
        raise MalformedExpression("deformed derivative of an odd expression other than a bare fermion")
    if A.parity() is None:
        raise MalformedExpression("deformed derivative of an inhomogeneous expression")
    Ax = x_derivative(A)
    if Ax.is_zero:
        return Expr()
    return power(Ax * I, eps) * MINUS_I


def deformed_partial(f, eps, n: int = 1) -> Expr:
    """d^n_{x,eps} f = d_x**(n-1) d_{x,eps} f; ``f`` is a field name or an expression."""
    A = Expr.atom(Atom(FIELD, f)) if isinstance(f, str) else f
    if n == 0:
        return A
    return x_derivative(deformed_x(A, eps), n - 1)


def super_D_eps(e: Expr, eps) -> Expr:
    """D_eps = theta d_{x,eps} + d_theta on a component superfield."""
    _check_component(e)
    sf = SuperfieldExpr.from_expr(e)
    return theta() * deformed_x(sf.body, eps) + sf.theta_part


def check_cubed(e: Expr, eps) -> Expr:
    """-i (i D**3 e)**eps, the order-three operator of the check family."""
    return power(super_D(e, 3) * I, eps) * MINUS_I


def D_family(e: Expr, family: str, eps, n: int) -> Expr:
    """n-th power of a superderivative family applied to ``e``.

    plain      D**n
    bf         D_eps for n=1, D**(n-2) D_eps D_eps for n >= 2
    fermionic  D**(n-1) D_eps
    bosonic    D for n=1, D**(n-2) (D_eps D) for n >= 2
    check      D**n for n <= 2, D**(n-3) [-i (i D**3)**eps] for n >= 3
    """
    if n < 1:
        raise ValueError("superderivative order must be positive")
    if family == "plain":
        return super_D(e, n)
    if family == "bf":
        if n == 1:
            return super_D_eps(e, eps)
        return super_D(super_D_eps(super_D_eps(e, eps), eps), n - 2)
    if family == "fermionic":
        return super_D(super_D_eps(e, eps), n - 1)
    if family == "bosonic":
        if n == 1:
            return super_D(e)
        return super_D(super_D_eps(super_D(e), eps), n - 2)
    if family == "check":
        if n <= 2:
            return super_D(e, n)
        return super_D(check_cubed(e, eps), n - 3)
    raise ValueError(f"unknown superderivative family {family!r}; expected one of {FAMILIES}")


def berezin_integrate(e: Expr) -> Expr:
    """Integral over theta: picks the theta coefficient (abstract atoms are expanded first)."""
    return SuperfieldExpr.from_expr(expand_superjets(e)).theta_part


def superjet_components(k: int, t: int = 0) -> Expr:
    """Component expansion of D**k Phi (time derivatives commute with D)."""
    m = k // 2
    if k % 2 == 0:
        out = xi(m) + theta() * u(m)
    else:
        out = u(m) + theta() * xi(m + 1)
    from ..symcore import t_derivative
    return t_derivative(out, t) if t else out


def expand_superjets(e: Expr) -> Expr:
    """Replace every abstract atom D**k Phi by its theta expansion."""
    rules = {a: superjet_components(a.x, a.t) for a in e.atoms() if a.kind == SUPER}
    if not rules:
        return e
    return substitute(e, rules)
