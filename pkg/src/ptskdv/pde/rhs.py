"""Right-hand sides of the component systems on Lambda_N-valued periodic fields."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..grassnum import Grassmann, g_pow
from .grid import Grid, project, spectral_dx

SIM_MODELS = ("skdv", "zs", "xx", "flow")
MODEL_PARAMS = {
    "skdv": ("lam",),
    "zs": ("lam", "eps", "kap", "mu", "nu"),
    "xx": ("lam", "eps"),
    "flow": ("eps",),
}


@dataclass
class FieldState:
    """u (even) and xi (odd) as Grassmann arrays with coeffs of shape (2**N, n_points)."""

    t: float
    u: Grassmann
    xi: Grassmann

    @property
    def n_generators(self) -> int:
        return self.u.n

    def copy(self) -> "FieldState":
        return FieldState(self.t, Grassmann(self.u.coeffs.copy(), self.u.n), Grassmann(self.xi.coeffs.copy(), self.xi.n))

    def check_parity(self, atol=1e-12):
        if self.u.odd_part().coeffs.size and np.max(np.abs(self.u.odd_part().coeffs), initial=0) > atol:
            raise ValueError("u must be Grassmann-even")
        if np.max(np.abs(self.xi.even_part().coeffs), initial=0) > atol:
            raise ValueError("xi must be Grassmann-odd")


def dx(a: Grassmann, grid: Grid, order: int = 1) -> Grassmann:
    return Grassmann(spectral_dx(a.coeffs, grid, order), a.n)


def deformed_dx_numeric(u: Grassmann, eps: float, grid: Grid, n: int = 1) -> Grassmann:
    """d_x**(n-1) [-i (i u_x)**eps] with the principal branch, pointwise in Lambda_N.

    Raises SingularPowerError (with the grid index) when a non-integer or
    negative power meets a zero body of u_x.
    """
    if n < 1:
        raise ValueError("deformed derivative order must be >= 1")
    if eps == 1:
        return dx(u, grid, n)
    w = g_pow(dx(u, grid) * 1j, eps) * (-1j)
    return dx(w, grid, n - 1)


class _Terms:
    """Cache of derivatives and deformed derivatives of the current state."""

    def __init__(self, state: FieldState, grid: Grid):
        self.u, self.xi, self.grid = state.u, state.xi, grid
        self.N = state.n_generators
        self._cache: dict = {}

    def ux(self, k: int) -> Grassmann:
        key = ("u", k)
        if key not in self._cache:
            self._cache[key] = self.u if k == 0 else dx(self.u, self.grid, k)
        return self._cache[key]

    def xix(self, k: int) -> Grassmann:
        key = ("xi", k)
        if key not in self._cache:
            self._cache[key] = self.xi if k == 0 else dx(self.xi, self.grid, k)
        return self._cache[key]

    def dp(self, eps: float, n: int = 1) -> Grassmann:
        """Deformed derivative, reusing the pointwise power across orders."""
        if eps == 1:
            return self.ux(n)
        key = ("dp", float(eps))
        if key not in self._cache:
            self._cache[key] = g_pow(self.ux(1) * 1j, eps) * (-1j)
        return dx(self._cache[key], self.grid, n - 1)

    @property
    def fermions(self) -> bool:
        return self.N >= 1

    @property
    def bilinears(self) -> bool:
        return self.N >= 2


def _skdv(T: _Terms, lam):
    u, u1, u3 = T.ux(0), T.ux(1), T.ux(3)
    du = -u3 + u * u1 * 6
    dxi = Grassmann.zeros(T.N, u.shape)
    if T.fermions:
        xi, x1, x2, x3 = (T.xix(k) for k in range(4))
        if T.bilinears and lam:
            du = du - xi * x2 * lam
        dxi = -x3 + x1 * u * (6 - lam) + xi * u1 * lam
    return du, dxi


def _zs(T: _Terms, lam, eps, kap, mu, nu):
    u = T.ux(0)
    du = -T.dp(eps, 3) + u * T.dp(kap) * 6
    if lam:
        du = du + u * (T.dp(mu) - T.dp(nu)) * lam
    dxi = Grassmann.zeros(T.N, u.shape)
    if T.fermions:
        xi, x1, x2, x3 = (T.xix(k) for k in range(4))
        if T.bilinears and lam:
            du = du - xi * x2 * lam
        dxi = -x3 + u * x1 * 6
        if lam:
            dxi = dxi + (xi * T.dp(mu) - u * x1) * lam
    return du, dxi


def _xx(T: _Terms, lam, eps):
    u, u1 = T.ux(0), T.ux(1)
    du = -T.dp(eps, 3) + u * u1 * 6
    dxi = Grassmann.zeros(T.N, u.shape)
    if T.fermions:
        xi, x1, x2, x3 = (T.xix(k) for k in range(4))
        if T.bilinears and lam:
            du = du - xi * x2 * lam
        dxi = (-(T.dp(eps - 1, 2) * x2 + T.dp(eps - 1) * x3) * (1j * eps)
               + u * x1 * (6 - lam) + xi * u1 * lam)
    return du, dxi


def _flow(T: _Terms, eps):
    u, u1 = T.ux(0), T.ux(1)
    du = u * u1 * 6 - T.dp(eps, 3)
    dxi = Grassmann.zeros(T.N, u.shape)
    if T.fermions:
        xi, x1, x2, x3 = (T.xix(k) for k in range(4))
        c = (eps - eps * eps) / (1 + eps)
        if T.bilinears:
            du = du - xi * x2 * 2
            if c:
                inner = T.dp(eps - 2) * x1 * x3
                du = du + (T.dp(eps - 2, 3) * x1 * x2 + T.dp(eps - 2, 2) * x1 * x3 + dx(inner, T.grid)) * c
        dxi = (u * x1 * 4 + xi * u1 * 2
               - (T.dp(eps - 1, 2) * x2 * 3 + T.dp(eps - 1) * x3 * 2 + T.dp(eps - 1, 3) * x1) * (1j * eps / (1 + eps)))
    return du, dxi


_RHS = {"skdv": _skdv, "zs": _zs, "xx": _xx, "flow": _flow}


def rhs_raw(model: str, params: dict, state: FieldState, grid: Grid):
    """Time derivatives (du, dxi) exactly as the component equations read, without filtering."""
    if model not in _RHS:
        raise ValueError(f"unknown model {model!r}; expected one of {SIM_MODELS}")
    args = [float(params[p]) for p in MODEL_PARAMS[model]]
    return _RHS[model](_Terms(state, grid), *args)


def rhs(model: str, params: dict, state: FieldState, grid: Grid):
    """Dealiased time derivatives: the 2/3-rule projection is applied to both equations."""
    du, dxi = rhs_raw(model, params, state, grid)
    return (Grassmann(project(du.coeffs, grid), du.n), Grassmann(project(dxi.coeffs, grid), dxi.n))
