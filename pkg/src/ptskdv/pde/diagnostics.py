"""Conserved-quantity diagnostics."""
from __future__ import annotations

import numpy as np

from ..grassnum import Grassmann, g_pow
from ..symcore import PoleError
from .grid import Grid, tail_fraction
from .rhs import FieldState, dx

COLUMNS = ("t", "mass", "momentum", "H_eps_real", "H_eps_imag", "max_u", "tail_fraction")


def hamiltonian_density(u: Grassmann, xi: Grassmann, eps: float, grid: Grid) -> Grassmann:
    """u^3 - 2 xi xi_x u - (i u_x)^(eps+1)/(1+eps) - eps/(1+eps) (i u_x)^(eps-1) xi_x xi_xx, pointwise."""
    if eps == -1:
        raise PoleError("the Hamiltonian density has a pole at eps = -1")
    ux = dx(u, grid)
    iux = ux * 1j
    h = u * u * u - g_pow(iux, eps + 1) * (1 / (1 + eps))
    if u.n >= 2:
        x1 = dx(xi, grid)
        x2 = dx(xi, grid, 2)
        h = h - xi * x1 * u * 2
        if eps:
            h = h - g_pow(iux, eps - 1) * x1 * x2 * (eps / (1 + eps))
    return h


def evaluate_H(state: FieldState, eps: float, grid: Grid, full: bool = False):
    """Rectangle-rule integral of the density; the body by default, every channel with ``full``."""
    h = hamiltonian_density(state.u, state.xi, eps, grid)
    total = grid.integrate(h.coeffs)
    return total if full else complex(total[0])


def mass(state: FieldState, grid: Grid) -> float:
    return float(np.real(grid.integrate(state.u.body)))


def momentum(state: FieldState, grid: Grid) -> float:
    return float(np.real(grid.integrate(state.u.body ** 2)))


def diagnostics_row(state: FieldState, eps: float, grid: Grid) -> dict:
    H = evaluate_H(state, eps, grid)
    return {
        "t": float(state.t),
        "mass": mass(state, grid),
        "momentum": momentum(state, grid),
        "H_eps_real": float(H.real),
        "H_eps_imag": float(H.imag),
        "max_u": float(np.max(np.abs(state.u.body))),
        "tail_fraction": tail_fraction(state.u.body, grid),
    }


def relative_drift(values, floor: float = 1e-12) -> float:
    """max |v - v0| / |v0|; absolute when |v0| is below ``floor``."""
    values = np.asarray(values)
    ref = np.abs(values[0])
    return float(np.max(np.abs(values - values[0])) / (ref if ref > floor else 1.0))
