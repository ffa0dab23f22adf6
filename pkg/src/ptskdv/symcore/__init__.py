"""Canonical-form arithmetic for graded symbolic expressions."""
from .coeff import ONE, ZERO, I, Coef, Exponent, PoleError
from .evaluate import evaluate
from .expr import (
    DEFJET, ETA, FIELD, SUPER, THETA, Atom, Expr, MalformedExpression, atom_parity, binomial,
    conjugate_coefficients, derivation, equals_zero, formal, normalize, partial, power,
    subs_params, substitute, t_derivative, x_derivative,
)
from .render import to_latex, to_text


def jet(name: str, x: int = 0, t: int = 0) -> Expr:
    return Expr.atom(Atom(FIELD, name, x, t))


def u(x: int = 0, t: int = 0) -> Expr:
    return jet("u", x, t)


def xi(x: int = 0, t: int = 0) -> Expr:
    return jet("xi", x, t)


def f(x: int = 0, t: int = 0) -> Expr:
    return jet("f", x, t)


def theta() -> Expr:
    return Expr.atom(Atom(THETA, "theta"))


def eta(k: int = 1) -> Expr:
    return Expr.atom(Atom(ETA, "eta", k))


def superjet(k: int = 0, t: int = 0) -> Expr:
    """D**k Phi as an abstract superfield atom."""
    return Expr.atom(Atom(SUPER, "Phi", k, t))


def const(value) -> Expr:
    return Expr.coerce(value)


def param(name: str) -> Expr:
    return Expr.coerce(Coef.of(name))


def mul(a, b) -> Expr:
    return Expr.coerce(a) * Expr.coerce(b)


nilpotent_power = power

__all__ = [
    "Atom", "Coef", "Exponent", "Expr", "I", "MalformedExpression", "ONE", "PoleError", "ZERO",
    "DEFJET", "ETA", "FIELD", "SUPER", "THETA", "atom_parity", "binomial", "const",
    "conjugate_coefficients", "derivation", "equals_zero", "eta", "evaluate", "f", "formal", "jet",
    "mul", "nilpotent_power", "normalize", "param", "partial", "power", "subs_params", "substitute",
    "superjet", "t_derivative", "theta", "to_latex", "to_text", "u", "x_derivative", "xi",
]
