"""Euler operators, total-derivative detection and the super-Hamiltonian flow."""
from __future__ import annotations

from ..symcore import DEFJET, ETA, FIELD, SUPER, Atom, Expr, Exponent, partial, x_derivative
from ..symcore.coeff import MINUS_I
from ..symcore.expr import _base_expr, MalformedExpression
from .models import ModelSystem
from .superfield import expand_superjets, super_D

COMPONENT_FIELDS = ("u", "xi", "f")


def _jet_orders(e: Expr, kind=FIELD) -> dict:
    """name -> highest x-order among atoms of the given kind."""
    out: dict = {}
    for a in e.atoms():
        if a.kind == DEFJET:
            raise MalformedExpression("Euler operators do not act on opaque deformed jets")
        if a.kind == kind and a.t == 0:
            out[a.name] = max(out.get(a.name, 0), a.x)
    return out


def euler_operator(e: Expr, name: str) -> Expr:
    """E_v(e) = sum_k (-x_derivative)**k (de/dv_k), with left derivatives for odd v."""
    top = _jet_orders(e).get(name)
    out = Expr()
    if top is None:
        return out
    for k in range(top + 1):
        d = partial(e, Atom(FIELD, name, k))
        if not d.is_zero:
            out = out + x_derivative(d, k) * (-1 if k % 2 else 1)
    return out


def _monomial_degree(key) -> Exponent | None:
    """Scaling degree under v -> s*v for every component field (eta is inert)."""
    evens, formals, odds = key
    deg = Exponent()
    for a, m in evens:
        if a.kind == FIELD:
            deg = deg + m
    for a in odds:
        if a.kind == FIELD:
            deg = deg + 1
    for b, g in formals:
        p = _homogeneous_degree(_base_expr(b))
        if p is None:
            return None
        deg = deg + g * p
    return deg


def _homogeneous_degree(e: Expr):
    degs = {_monomial_degree(k) for k in e.terms}
    if len(degs) != 1 or None in degs:
        return None
    d = degs.pop()
    return d.literal if d.is_literal else None


def _split_by_degree(e: Expr):
    parts: dict = {}
    for key, c in e.terms.items():
        d = _monomial_degree(key)
        if d is None:
            return None
        parts.setdefault(d, {})[key] = c
    return {d: Expr(t) for d, t in parts.items()}


def _antiderivative(e: Expr) -> Expr | None:
    """W with x_derivative(W) = e via the scaling homotopy on each homogeneous part."""
    parts = _split_by_degree(e)
    if parts is None:
        return None
    W = Expr()
    for d, ed in parts.items():
        if not d:
            return None
        acc = Expr()
        for name, top in _jet_orders(ed).items():
            for k in range(1, top + 1):
                A = partial(ed, Atom(FIELD, name, k))
                if A.is_zero:
                    continue
                for j in range(k):
                    acc = acc + Expr.atom(Atom(FIELD, name, k - 1 - j)) * x_derivative(A, j) * (-1 if j % 2 else 1)
        W = W + acc * d.coef().inverse()
    return W


def is_total_x_derivative(e: Expr) -> tuple[bool, Expr | None]:
    """True when every component Euler operator annihilates ``e``; the witness W has W_x = e."""
    if any(a.kind not in (FIELD, ETA) for a in e.atoms()):
        raise MalformedExpression("total-derivative test needs a theta-free component density")
    for name in _jet_orders(e):
        if not euler_operator(e, name).is_zero:
            return False, None
    W = _antiderivative(e)
    if W is not None and not (x_derivative(W) - e).is_zero:
        W = None
    return True, W


def super_sign(k: int) -> int:
    """(+, +, -, -) period-4 signs of the superspace Euler operator."""
    return -1 if (k * (k - 1) // 2) % 2 else 1


def variational_derivative(H: Expr) -> Expr:
    """delta H / delta Phi = sum_k s_k D**k (d H / d(D**k Phi)) for an abstract superfield density."""
    top = _jet_orders(H, SUPER).get("Phi")
    if top is None:
        raise MalformedExpression("density must be written in the superfield atoms D**k Phi")
    for a in H.atoms():
        if a.kind not in (SUPER,):
            raise MalformedExpression(f"density contains the non-superfield atom {a}")
    out = Expr()
    for k in range(top + 1):
        d = partial(H, Atom(SUPER, "Phi", k))
        if not d.is_zero:
            out = out + super_D(d, k) * super_sign(k)
    return out


def hamiltonian_flow(H: Expr, params: dict | None = None, name: str = "hamiltonian") -> ModelSystem:
    """Phi_t = D (delta H / delta Phi) as a superfield-form system on Phi = xi + theta u."""
    R = super_D(variational_derivative(H))
    return ModelSystem(name, "superfield", {"Phi": expand_superjets(R)}, dict(params or {}))


def hamiltonian_superdensity(eps="eps") -> Expr:
    """Phi (D Phi)^2 + 1/(1+eps) D^2 Phi * [-i (i D^3 Phi)^eps] in superfield atoms."""
    from ..symcore import formal, superjet
    eps = Exponent.of(eps)
    inv = (eps.coef() + 1).inverse()
    return (superjet(0) * superjet(1) ** 2
            + superjet(2) * formal(Atom(SUPER, "Phi", 3), eps) * (MINUS_I * inv))
