"""Component equations written out by hand, term by term.

These are independent oracles: they are typed in from the literature in
terms of deformed derivatives and never pass through the superfield
machinery, so comparing them with :func:`models.to_components` tests the
operator families end to end.
"""
from __future__ import annotations

from fractions import Fraction

from ..symcore import DEFJET, Atom, Coef, Exponent, Expr, formal, jet, theta, u, x_derivative, xi
from ..symcore.coeff import I, MINUS_I
from .superfield import deformed_partial


def dp(eps, n: int = 1, fld: str = "u") -> Expr:
    return deformed_partial(fld, eps, n)


def _args(lam, *exps):
    return (Coef.of(lam),) + tuple(Exponent.of(e) for e in exps)


def skdv(lam="lam") -> dict:
    (lam,) = _args(lam)
    return {
        "u": -u(3) + u() * u(1) * 6 - xi() * xi(2) * lam,
        "xi": -xi(3) + xi(1) * u() * (6 - lam) + xi() * u(1) * lam,
    }


def zs(lam="lam", eps="eps", kap="kap", mu="mu", nu="nu") -> dict:
    lam, eps, kap, mu, nu = _args(lam, eps, kap, mu, nu)
    return {
        "u": (-dp(eps, 3) + u() * dp(kap) * 6 - xi() * xi(2) * lam
              + u() * (dp(mu) - dp(nu)) * lam),
        "xi": -xi(3) + u() * xi(1) * 6 + (xi() * dp(mu) - u() * xi(1)) * lam,
    }


def check6_theta_free(eps="eps") -> Expr:
    """The theta-free part of the sixth check-family power on Phi."""
    eps = Exponent.of(eps)
    return (dp(eps - 1, 2) * xi(2) + dp(eps - 1) * xi(3)) * (I * eps.coef())


def xx(lam="lam", eps="eps") -> dict:
    lam, eps = _args(lam, eps)
    return {
        "u": -dp(eps, 3) + u() * u(1) * 6 - xi() * xi(2) * lam,
        "xi": -check6_theta_free(eps) + u() * xi(1) * (6 - lam) + xi() * u(1) * lam,
    }


def flow(eps="eps") -> dict:
    (eps,) = _args(0, eps)[1:]
    e = eps.coef()
    inv = (e + 1).inverse()
    em2 = eps - 2
    em1 = eps - 1
    bracket = (dp(em2, 3) * xi(1) * xi(2) + dp(em2, 2) * xi(1) * xi(3)
               + x_derivative(dp(em2) * xi(1) * xi(3)))
    return {
        "u": u() * u(1) * 6 - dp(eps, 3) - xi() * xi(2) * 2 + bracket * ((e - e * e) * inv),
        "xi": (u() * xi(1) * 4 + xi() * u(1) * 2
               - (dp(em1, 2) * xi(2) * 3 + dp(em1) * xi(3) * 2 + dp(em1, 3) * xi(1)) * (I * e * inv)),
    }


def hamiltonian_density(eps="eps") -> Expr:
    """u^3 - 2 xi xi_x u - (i u_x)^(eps+1)/(1+eps) - eps/(1+eps) (i u_x)^(eps-1) xi_x xi_xx."""
    eps = Exponent.of(eps)
    e = eps.coef()
    inv = (e + 1).inverse()
    return (u() ** 3 - xi() * xi(1) * u() * 2 - formal(u(1), eps + 1) * inv
            - formal(u(1), eps - 1) * xi(1) * xi(2) * (e * inv))


def susy_witness(eps="eps") -> Expr:
    """xi u^2 + i^(eps-1)/(1+eps) u_x^eps xi_x, with i^(eps-1) u_x^eps = -i (i u_x)^eps."""
    eps = Exponent.of(eps)
    inv = (eps.coef() + 1).inverse()
    return xi() * u() ** 2 + formal(u(1), eps) * xi(1) * (MINUS_I * inv)


def _over_fx(fld="f") -> Expr:
    """1/f_x written as i (i f_x)^(-1) so it merges with other powers of i f_x."""
    return formal(jet(fld, 1), -1) * I


def deformed_printed(n: int, eps="eps", fld="f") -> Expr:
    """Closed forms of d^n_{x,eps} f for n = 2, 3, 4 exactly as they appear in print."""
    eps = Exponent.of(eps)
    e = eps.coef()
    r = _over_fx(fld)
    f2, f3, f4 = (jet(fld, k) for k in (2, 3, 4))
    pre = formal(jet(fld, 1), eps) * (MINUS_I * e)
    if n == 2:
        bracket = f2 * r
    elif n == 3:
        bracket = f3 * r + (f2 * r) ** 2 * (e - 1)
    elif n == 4:
        bracket = ((f2 * r) ** 3 * (2 + e * (e - 3)) + (f2 * r) ** 2 * f3 * (e - 1) * 3
                   + f4 * r)
    else:
        raise ValueError("printed closed forms exist for n = 2, 3, 4")
    return pre * bracket


def deformed_fourth_corrected(eps="eps", fld="f") -> Expr:
    """Fourth order with the middle term 3(eps-1) f_xx f_xxx / f_x^2."""
    eps = Exponent.of(eps)
    e = eps.coef()
    r = _over_fx(fld)
    f2, f3, f4 = (jet(fld, k) for k in (2, 3, 4))
    bracket = (f2 * r) ** 3 * (2 + e * (e - 3)) + f2 * f3 * r * r * (e - 1) * 3 + f4 * r
    return formal(jet(fld, 1), eps) * (MINUS_I * e) * bracket


def schwarzian(fld="f") -> Expr:
    """f_xxx/f_x - (3/2) (f_xx/f_x)^2."""
    r = _over_fx(fld)
    return jet(fld, 3) * r - (jet(fld, 2) * r) ** 2 * Coef.of(Fraction(3, 2))


def dxi(eps, n: int) -> Expr:
    """The opaque deformed fermion jet d^n_{x,eps} xi (an ordinary jet at eps = 1)."""
    eps = Exponent.of(eps)
    if eps == Exponent(1):
        return xi(n)
    return Expr.atom(Atom(DEFJET, "xi", n, 0, eps))


def family_table(family: str, n: int, eps="eps"):
    """Action of the n-th power of a superderivative family on Phi, from the general table lines.

    Returns None where no line is displayed (check family, n = 4, 5).
    """
    eps = Exponent.of(eps)
    th = theta()
    m = (n + 1) // 2
    odd = n % 2 == 1
    if family == "plain":
        return th * xi(m) + u(m - 1) if odd else th * u(m) + xi(m)
    if family == "bf":
        return th * dxi(eps, m) + dp(eps, m - 1) if odd else th * dp(eps, m) + dxi(eps, m)
    if family == "fermionic":
        return th * dxi(eps, m) + u(m - 1) if odd else th * u(m) + dxi(eps, m)
    if family == "bosonic":
        return th * xi(m) + dp(eps, m - 1) if odd else th * dp(eps, m) + xi(m)
    if family == "check":
        if n <= 2:
            return family_table("plain", n, eps)
        if n == 3:
            return dp(eps) + th * dp(eps - 1) * xi(2) * (I * eps.coef())
        if n == 6:
            return th * dp(eps, 3) + check6_theta_free(eps)
        return None
    raise ValueError(f"unknown family {family!r}")
