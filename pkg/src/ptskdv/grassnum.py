"""Finite Grassmann algebra Lambda_N with complex floating-point coefficients.

An element stores ``2**N`` coefficients indexed by generator-subset bitmask.
Coefficients may carry trailing array dimensions, so a whole periodic grid of
Lambda_N values is a single :class:`Grassmann` with ``coeffs.shape ==
(2**N, n_points)``; all operations act pointwise along the trailing axes.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_GENERATORS = 8
SINGULAR_RTOL = 1e-12


class SingularPowerError(ArithmeticError):
    """Non-integer or negative power of an element whose body vanishes."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def basis_sign(s: int, t: int) -> int:
    """Sign of e_S e_T = sign * e_{S|T} for disjoint S, T (0 if they overlap)."""
    if s & t:
        return 0
    inversions = 0
    for j in range(MAX_GENERATORS):
        if t >> j & 1:
            inversions += popcount(s >> (j + 1))
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def _product_table(n: int):
    """For each left mask s: the disjoint right masks t, the targets s|t and the signs."""
    table = []
    for s in range(1 << n):
        ts = [t for t in range(1 << n) if not s & t]
        table.append((s, np.array(ts), np.array([s | t for t in ts]),
                      np.array([basis_sign(s, t) for t in ts], dtype=float)))
    return table


@lru_cache(maxsize=None)
def _parity_masks(n: int):
    masks = np.arange(1 << n)
    odd = np.array([popcount(int(m)) % 2 for m in masks], dtype=bool)
    return ~odd, odd


class Grassmann:
    """Element (or array of elements) of Lambda_N."""

    __array_priority__ = 100

    def __init__(self, coeffs, n: int):
        if not 0 <= n <= MAX_GENERATORS:
            raise ValueError(f"number of generators must be in [0, {MAX_GENERATORS}], got {n}")
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape[0] != 1 << n:
            raise ValueError(f"expected {1 << n} coefficient channels, got {coeffs.shape[0]}")
        self.coeffs = coeffs
        self.n = n

    # constructors ----------------------------------------------------------------
    @classmethod
    def scalar(cls, value, n: int) -> "Grassmann":
        value = np.asarray(value, dtype=complex)
        coeffs = np.zeros((1 << n,) + value.shape, dtype=complex)
        coeffs[0] = value
        return cls(coeffs, n)

    @classmethod
    def generator(cls, j: int, n: int, shape=()) -> "Grassmann":
        if not 0 <= j < n:
            raise ValueError(f"generator index {j} out of range for N={n}")
        coeffs = np.zeros((1 << n,) + tuple(shape), dtype=complex)
        coeffs[1 << j] = 1.0
        return cls(coeffs, n)

    @classmethod
    def zeros(cls, n: int, shape=()) -> "Grassmann":
        return cls(np.zeros((1 << n,) + tuple(shape), dtype=complex), n)

    @classmethod
    def random(cls, rng, n: int, parity: int | None = None, shape=(), scale=1.0) -> "Grassmann":
        coeffs = scale * (rng.standard_normal((1 << n,) + tuple(shape))
                          + 1j * rng.standard_normal((1 << n,) + tuple(shape)))
        el = cls(coeffs, n)
        if parity == 0:
            return el.even_part()
        if parity == 1:
            return el.odd_part()
        return el

    def coerce(self, other) -> "Grassmann":
        if isinstance(other, Grassmann):
            if other.n != self.n:
                raise ValueError(f"mismatched generator counts {self.n} and {other.n}")
            return other
        return Grassmann.scalar(np.broadcast_to(np.asarray(other, dtype=complex), self.shape), self.n)

    # structure -----------------------------------------------------------------------
    @property
    def shape(self):
        return self.coeffs.shape[1:]

    @property
    def body(self):
        return self.coeffs[0]

    def soul(self) -> "Grassmann":
        coeffs = self.coeffs.copy()
        coeffs[0] = 0
        return Grassmann(coeffs, self.n)

    def even_part(self) -> "Grassmann":
        even, _ = _parity_masks(self.n)
        coeffs = self.coeffs.copy()
        coeffs[~even] = 0
        return Grassmann(coeffs, self.n)

    def odd_part(self) -> "Grassmann":
        _, odd = _parity_masks(self.n)
        coeffs = self.coeffs.copy()
        coeffs[~odd] = 0
        return Grassmann(coeffs, self.n)

    def parity(self, atol=0.0) -> int | None:
        even, odd = _parity_masks(self.n)
        has_even = np.any(np.abs(self.coeffs[even]) > atol)
        has_odd = np.any(np.abs(self.coeffs[odd]) > atol)
        if has_even and has_odd:
            return None
        return 1 if has_odd else 0

    def __getitem__(self, idx):
        if not isinstance(idx, tuple):
            idx = (idx,)
        return Grassmann(self.coeffs[(slice(None),) + idx], self.n)

    # arithmetic ------------------------------------------------------------------------
    def __add__(self, other):
        other = self.coerce(other)
        return Grassmann(self.coeffs + other.coeffs, self.n)

    __radd__ = __add__

    def __neg__(self):
        return Grassmann(-self.coeffs, self.n)

    def __sub__(self, other):
        other = self.coerce(other)
        return Grassmann(self.coeffs - other.coeffs, self.n)

    def __rsub__(self, other):
        return self.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Grassmann):
            return Grassmann(self.coeffs * np.asarray(other, dtype=complex), self.n)
        return g_mul(self, other)

    def __rmul__(self, other):
        return Grassmann(np.asarray(other, dtype=complex) * self.coeffs, self.n)

    def __truediv__(self, other):
        if isinstance(other, Grassmann):
            return self * g_pow(other, -1)
        return Grassmann(self.coeffs / np.asarray(other, dtype=complex), self.n)

    def __pow__(self, p):
        return g_pow(self, p)

    def allclose(self, other, rtol=1e-12, atol=1e-12) -> bool:
        other = self.coerce(other)
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=rtol, atol=atol))

    def __repr__(self):
        return f"Grassmann(n={self.n}, shape={self.shape})"


def g_mul(a: Grassmann, b: Grassmann) -> Grassmann:
    """Graded product from the precomputed disjoint-mask table (one vectorized pass per left mask)."""
    if a.n != b.n:
        raise ValueError(f"mismatched generator counts {a.n} and {b.n}")
    if a.n == 0:
        return Grassmann(a.coeffs * b.coeffs, 0)
    shape = np.broadcast_shapes(a.shape, b.shape)
    expand = (-1,) + (1,) * len(shape)
    res = np.zeros((1 << a.n,) + shape, dtype=complex)
    for s, ts, out, sign in _product_table(a.n):
        # targets s|t are distinct for fixed s, so plain fancy-index accumulation is safe
        res[out] += a.coeffs[s] * b.coeffs[ts] * sign.reshape(expand)
    return Grassmann(res, a.n)


def _binom(p, k: int):
    out = 1.0 + 0j
    for j in range(k):
        out *= (p - j) / (j + 1)
    return out


def g_pow(a: Grassmann, p) -> Grassmann:
    """a**p for an even element: body**p * sum_k C(p, k) (soul/body)**k.

    The sum is finite because an even soul built from N generators satisfies
    soul**(N//2 + 1) = 0.  Nonnegative integer powers are plain repeated
    products and need no invertible body; otherwise the body must be nonzero
    at every point (principal branch of body**p).  "Zero" means below
    SINGULAR_RTOL times the largest body on the grid, since spectral
    derivatives only vanish to rounding.
    """
    _, odd = _parity_masks(a.n)
    if np.any(a.coeffs[odd] != 0):
        raise ValueError("power of a non-even Grassmann element")
    p_real = complex(p)
    if p_real.imag == 0 and float(p_real.real).is_integer() and p_real.real >= 0:
        k = int(p_real.real)
        out = Grassmann.scalar(np.ones(a.shape), a.n)
        for _ in range(k):
            out = g_mul(out, a)
        return out
    body = a.body
    scale = np.max(np.abs(body)) if np.size(body) else 0.0
    zero = np.abs(body) <= SINGULAR_RTOL * scale if scale > 0 else np.ones(np.shape(body), dtype=bool)
    if np.any(zero):
        index = tuple(int(i) for i in np.argwhere(zero)[0]) if np.ndim(body) else None
        raise SingularPowerError(f"power {p} of an element with zero body", index=index)
    soul = a.soul()
    ratio = soul * (1.0 / body)
    term = Grassmann.scalar(np.ones(a.shape), a.n)
    total = Grassmann.scalar(np.ones(a.shape), a.n)
    for k in range(1, a.n // 2 + 1):
        term = g_mul(term, ratio)
        total = total + term * _binom(p, k)
    return total * np.power(body.astype(complex), p)
