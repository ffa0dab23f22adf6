"""Numeric evaluation of expressions over Lambda_N."""
from __future__ import annotations

import numpy as np

from ..grassnum import Grassmann, g_pow
from .expr import Atom, Expr, atom_parity


def evaluate(e: Expr, values: dict, params: dict | None = None, n_generators: int | None = None,
             shape=()) -> Grassmann:
    """Evaluate ``e`` with atoms replaced by numbers or Grassmann elements.

    Odd atoms must map to odd Grassmann elements.  Formal powers ``(i*P)**g``
    use the principal branch through :func:`g_pow`.
    """
    params = params or {}
    if n_generators is None:
        gs = [v for v in values.values() if isinstance(v, Grassmann)]
        n_generators = gs[0].n if gs else 0
    for v in values.values():
        if isinstance(v, Grassmann) and v.shape:
            shape = v.shape
        elif not isinstance(v, Grassmann) and np.ndim(v):
            shape = np.shape(v)

    cache: dict = {}

    def val(a: Atom) -> Grassmann:
        if a not in cache:
            if a not in values:
                raise KeyError(f"no value supplied for {a}")
            v = values[a]
            if not isinstance(v, Grassmann):
                if atom_parity(a):
                    raise ValueError(f"odd atom {a} needs a Grassmann value")
                v = Grassmann.scalar(np.broadcast_to(np.asarray(v, dtype=complex), shape), n_generators)
            cache[a] = v
        return cache[a]

    base_cache: dict = {}
    total = Grassmann.zeros(n_generators, shape)
    for (evens, formals, odds), c in e.terms.items():
        term = Grassmann.scalar(np.full(shape, c.evaluate(params)), n_generators)
        for a, m in evens:
            v = val(a)
            for _ in range(m):
                term = term * v
        for b, g in formals:
            if b not in base_cache:
                P = Expr.atom(b) if isinstance(b, Atom) else b
                base_cache[b] = evaluate(P, values, params, n_generators, shape) * 1j
            term = term * g_pow(base_cache[b], g.evaluate(params))
        for a in odds:
            term = term * val(a)
        total = total + term
    return total
