"""Canonical-form graded expressions.

An :class:`Expr` is a finite sum of monomials.  A monomial is stored as the
key ``(evens, formals, odds)`` mapped to a :class:`Coef`:

* ``evens``   sorted tuple of ``(Atom, power)`` with positive integer powers,
* ``formals`` sorted tuple of ``(base, Exponent)`` standing for ``(i*base)**g``,
* ``odds``    strictly increasing tuple of odd atoms.

The base of a formal power is either a single even atom ``J`` (so the factor
is ``(i*J)**g``) or a soul-free even :class:`Expr` ``P``.  For an atomic
base, every explicit power of ``J`` in the same monomial is absorbed into the
formal power, ``J**m (iJ)**g = (-i)**m (iJ)**(g+m)``, and a formal power
whose exponent is a literal nonnegative integer is expanded back into an
explicit monomial.  Those two rules make the representation unique.

Every public operation returns canonical expressions; there is no separate
simplification pass.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .coeff import ONE, ZERO, I, Coef, Exponent, i_power

ETA, THETA, FIELD, SUPER, DEFJET = range(5)
ODD_FIELDS = frozenset({"xi"})
EVEN_FIELDS = frozenset({"u", "f"})
_NO_EPS = Exponent()


class MalformedExpression(ValueError):
    """Raised for constructions outside the kernel's algebra (odd power bases etc.)."""


class Atom(NamedTuple):
    """Indivisible factor.

    ``kind`` fixes the odd-atom total order: eta < theta < field jets <
    superfield jets < opaque deformed fermion jets.  For ``FIELD`` atoms ``x``
    and ``t`` are derivative orders; for ``SUPER`` atoms ``x`` counts
    superderivatives, ``D**x Phi``; for ``DEFJET`` atoms ``x`` is the order
    ``n`` of ``d^n_{x,eps} xi``; for ``ETA`` it is the generator index.
    """

    kind: int
    name: str
    x: int = 0
    t: int = 0
    eps: Exponent = _NO_EPS

    def __str__(self):
        if self.kind == ETA:
            return "eta" if self.x == 1 else f"eta{self.x}"
        if self.kind == THETA:
            return "theta"
        if self.kind == SUPER:
            body = "Phi" if self.x == 0 else f"D{self.x}Phi"
            return body + ("_" + "t" * self.t if self.t else "")
        if self.kind == DEFJET:
            return f"d{self.x}[{self.eps}]{self.name}"
        suffix = "x" * self.x + "t" * self.t
        return f"{self.name}_{suffix}" if suffix else self.name


@lru_cache(maxsize=None)
def atom_parity(a: Atom) -> int:
    if a.kind in (ETA, THETA, DEFJET):
        return 1
    if a.kind == FIELD:
        if a.name in ODD_FIELDS:
            return 1
        if a.name in EVEN_FIELDS:
            return 0
        raise MalformedExpression(f"unknown field {a.name!r}")
    return (1 + a.x) % 2


EMPTY_KEY = ((), (), ())


def _sort_odds(odds):
    """Sort odd atoms; return (sign, tuple) or (0, None) on a repeated atom."""
    items = list(odds)
    sign = 1
    n = len(items)
    for i in range(1, n):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and items[j - 1] == items[j]:
            return 0, None
    return sign, tuple(items)


def _formal_sort_key(item):
    base, g = item
    if isinstance(base, Atom):
        return (0, base, g)
    return (1, base.sort_text(), g)


def _canon(coef: Coef, evens: dict, formals: dict, odds) -> dict:
    """Normalize one raw monomial; may return several terms or none."""
    if coef.is_zero:
        return {}
    sign, odds_t = _sort_odds(odds)
    if not sign:
        return {}
    if sign < 0:
        coef = -coef
    expand = []
    for base, g in list(formals.items()):
        if isinstance(base, Atom):
            m = evens.pop(base, 0)
            if m:
                g = g + m
                coef = coef * i_power(-m)
            if g.is_nonneg_int():
                n = int(g[0])
                del formals[base]
                if n:
                    evens[base] = n
                    coef = coef * i_power(n)
            else:
                formals[base] = g
        elif not g:
            del formals[base]
        elif g.is_nonneg_int():
            del formals[base]
            expand.append((base, int(g[0])))
    for a in [a for a, m in evens.items() if not m]:
        del evens[a]
    key = (tuple(sorted(evens.items())),
           tuple(sorted(formals.items(), key=_formal_sort_key)), odds_t)
    out = {key: coef}
    for base, n in expand:
        out = _mul_terms(out, (base * I)._pow_terms(n))
    return out


def _acc(into: dict, terms: dict):
    for k, c in terms.items():
        if k in into:
            s = into[k] + c
            if s.is_zero:
                del into[k]
            else:
                into[k] = s
        else:
            into[k] = c


def _mul_key(k1, c1, k2, c2) -> dict:
    ev = dict(k1[0])
    for a, m in k2[0]:
        ev[a] = ev.get(a, 0) + m
    fo = dict(k1[1])
    for b, g in k2[1]:
        fo[b] = fo[b] + g if b in fo else g
    return _canon(c1 * c2, ev, fo, k1[2] + k2[2])


def _mul_terms(t1: dict, t2: dict) -> dict:
    out: dict = {}
    for k1, c1 in t1.items():
        for k2, c2 in t2.items():
            _acc(out, _mul_key(k1, c1, k2, c2))
    return out


class Expr:
    """Immutable canonical graded expression."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | None = None):
        self.terms = terms if terms is not None else {}
        self._hash = None

    # construction ----------------------------------------------------------
    @staticmethod
    def coerce(value) -> "Expr":
        if isinstance(value, Expr):
            return value
        c = Coef.of(value)
        return Expr({EMPTY_KEY: c}) if c else Expr()

    @staticmethod
    def atom(a: Atom) -> "Expr":
        if atom_parity(a):
            return Expr({((), (), (a,)): ONE})
        return Expr({(((a, 1),), (), ()): ONE})

    @staticmethod
    def monomial(coef, factors) -> "Expr":
        """Build coef * f1 * f2 * ... from atoms in the given (arbitrary) order."""
        out = Expr.coerce(coef)
        for f in factors:
            out = out * (Expr.atom(f) if isinstance(f, Atom) else f)
        return out

    # arithmetic --------------------------------------------------------------
    def __add__(self, other):
        other = Expr.coerce(other)
        out = dict(self.terms)
        _acc(out, other.terms)
        return Expr(out)

    __radd__ = __add__

    def __neg__(self):
        return Expr({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Expr.coerce(other))

    def __rsub__(self, other):
        return Expr.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Expr):
            c = Coef.of(other)
            if c.is_zero:
                return Expr()
            return Expr({k: v * c for k, v in self.terms.items()})
        return Expr(_mul_terms(self.terms, other.terms))

    def __rmul__(self, other):
        return Expr.coerce(other) * self

    def __truediv__(self, other):
        if isinstance(other, Expr):
            raise MalformedExpression("division by expressions is expressed with formal powers")
        return self * Coef.of(other).inverse()

    def _pow_terms(self, n: int) -> dict:
        out = {EMPTY_KEY: ONE}
        for _ in range(n):
            out = _mul_terms(out, self.terms)
        return out

    def __pow__(self, n):
        if isinstance(n, int) and n >= 0:
            return Expr(self._pow_terms(n))
        return power(self, n)

    # predicates --------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Expr):
            try:
                other = Expr.coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def parity(self) -> int | None:
        """0 or 1 for homogeneous expressions, None when mixed (zero counts as even)."""
        ps = {len(k[2]) % 2 for k in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def atoms(self) -> set:
        out = set()
        for ev, fo, od in self.terms:
            out.update(a for a, _ in ev)
            out.update(od)
            for b, _ in fo:
                if isinstance(b, Atom):
                    out.add(b)
                else:
                    out.update(b.atoms())
        return out

    def free_params(self) -> set:
        out = set()
        for key, c in self.terms.items():
            out |= c.free_params()
            for b, g in key[1]:
                out.update(n for n, v in zip(("eps", "kap", "mu", "nu"), g[1:]) if v)
                if not isinstance(b, Atom):
                    out |= b.free_params()
            for a in key[2]:
                if a.kind == DEFJET:
                    out.update(n for n, v in zip(("eps", "kap", "mu", "nu"), a.eps[1:]) if v)
        return out

    def has_odd_atoms(self) -> bool:
        return any(k[2] for k in self.terms)

    def split_soul(self) -> tuple["Expr", "Expr"]:
        """(body, soul): body collects monomials free of odd atoms."""
        body, soul = {}, {}
        for k, c in self.terms.items():
            (soul if k[2] else body)[k] = c
        return Expr(body), Expr(soul)

    def coefficient(self, key) -> Coef:
        return self.terms.get(key, ZERO)

    def __len__(self):
        return len(self.terms)

    def sort_text(self) -> str:
        from .render import to_text
        return to_text(self)

    def __repr__(self):
        from .render import to_text
        return f"Expr({to_text(self)})"

    __str__ = sort_text


def _base_expr(base) -> Expr:
    return Expr.atom(base) if isinstance(base, Atom) else base


def formal(base, g) -> Expr:
    """The formal power (i*base)**g; base is an even atom or soul-free even Expr."""
    g = Exponent.of(g)
    if isinstance(base, Expr):
        if base.is_zero:
            raise MalformedExpression("formal power of zero")
        if base.has_odd_atoms() or base.parity() != 0:
            raise MalformedExpression("formal power base must be soul-free and even")
        if len(base.terms) == 1:
            (key, c), = base.terms.items()
            if c == ONE and not key[1] and not key[2] and len(key[0]) == 1 and key[0][0][1] == 1:
                base = key[0][0][0]
            elif key == EMPTY_KEY and c * I == ONE:
                # (i*(-i))**g = 1**g = 1 on the principal branch
                return Expr.coerce(1)
    elif isinstance(base, Atom):
        if atom_parity(base):
            raise MalformedExpression(f"odd atom {base} cannot be the base of a power")
    return Expr(_canon(ONE, {}, {base: g}, ()))


def binomial(g: Exponent, k: int) -> Coef:
    out = ONE
    gc = g.coef()
    for j in range(k):
        out = out * (gc - j)
    fact = 1
    for j in range(2, k + 1):
        fact *= j
    return out * Coef.of(Fraction(1, fact))


def power(base: Expr, g) -> Expr:
    """base**g for an even base with invertible body and nilpotent soul.

    Literal nonnegative integer exponents multiply out; otherwise the body B0
    becomes the formal core (i*P)**g with P = -i*B0 and the nilpotent soul is
    expanded binomially until its powers vanish.
    """
    base = Expr.coerce(base)
    g = Exponent.of(g)
    if g.is_nonneg_int():
        return base ** int(g[0])
    if base.parity() != 0:
        raise MalformedExpression("odd-parity base inside a power")
    body, soul = base.split_soul()
    if body.is_zero:
        raise MalformedExpression("power base has no invertible core")
    core = body * Coef.of(-1j)
    out = Expr()
    s_k = Expr.coerce(1)
    k = 0
    while not s_k.is_zero:
        out = out + formal(core, g - k) * s_k * binomial(g, k)
        k += 1
        s_k = s_k * soul
    return out


# derivations -------------------------------------------------------------------

def derivation(e: Expr, rule, odd: bool = False) -> Expr:
    """Apply the (even or odd) derivation defined on atoms by ``rule``.

    ``rule(atom)`` returns the image Expr or None for zero.  Formal powers use
    the chain rule d((iP)**g) = g (iP)**(g-1) * i * dP.  For odd derivations the
    image of the j-th odd factor picks up (-1)**j.
    """
    cache: dict = {}

    def image(a):
        if a not in cache:
            r = rule(a)
            cache[a] = r if r is not None and not r.is_zero else None
        return cache[a]

    base_cache: dict = {}
    out: dict = {}
    for key, c in e.terms.items():
        evens, formals, odds = key
        for a, m in evens:
            da = image(a)
            if da is None:
                continue
            ev = dict(evens)
            if m == 1:
                del ev[a]
            else:
                ev[a] = m - 1
            rest = _canon(c * m, ev, dict(formals), odds)
            _acc(out, _mul_terms(da.terms, rest))
        for b, g in formals:
            if b not in base_cache:
                base_cache[b] = derivation(_base_expr(b), rule, odd)
            dP = base_cache[b]
            if dP.is_zero:
                continue
            fo = dict(formals)
            fo[b] = g - 1
            rest = _canon(c * g.coef() * I, dict(evens), fo, odds)
            _acc(out, _mul_terms(dP.terms, rest))
        for j, o in enumerate(odds):
            do = image(o)
            if do is None:
                continue
            cj = -c if (odd and j % 2) else c
            left = _canon(cj, dict(evens), dict(formals), odds[:j])
            right = {((), (), odds[j + 1:]): ONE}
            _acc(out, _mul_terms(_mul_terms(left, do.terms), right))
    return Expr(out)


def _x_rule(a: Atom):
    if a.kind == FIELD:
        return Expr.atom(a._replace(x=a.x + 1))
    if a.kind == SUPER:
        return Expr.atom(a._replace(x=a.x + 2))
    if a.kind == DEFJET:
        return Expr.atom(a._replace(x=a.x + 1))
    return None


def _t_rule(a: Atom):
    if a.kind in (FIELD, SUPER):
        return Expr.atom(a._replace(t=a.t + 1))
    if a.kind == DEFJET:
        raise MalformedExpression("time derivative of an opaque deformed jet")
    return None


def x_derivative(e: Expr, n: int = 1) -> Expr:
    """Total x-derivative (even derivation, Leibniz without signs)."""
    for _ in range(n):
        e = derivation(e, _x_rule)
    return e


def t_derivative(e: Expr, n: int = 1) -> Expr:
    for _ in range(n):
        e = derivation(e, _t_rule)
    return e


def partial(e: Expr, target: Atom) -> Expr:
    """Partial derivative with respect to an atom (left derivative if odd)."""
    one = Expr.coerce(1)
    return derivation(e, lambda a: one if a == target else None, odd=bool(atom_parity(target)))


# substitution -----------------------------------------------------------------

def _rebuild(e: Expr, atom_map, base_map=None, exp_map=None, coef_map=None) -> Expr:
    """Rebuild ``e`` factor by factor after mapping atoms, exponents and coefficients."""
    out = Expr()
    for (evens, formals, odds), c in e.terms.items():
        c2 = coef_map(c) if coef_map else c
        term = Expr.coerce(c2)
        if term.is_zero:
            continue
        for a, m in evens:
            img = atom_map(a)
            term = term * (img ** m if img is not None else Expr({(((a, m),), (), ()): ONE}))
        for b, g in formals:
            g2 = exp_map(g) if exp_map else g
            term = term * base_map(b, g2)
        for a in odds:
            img = atom_map(a)
            term = term * (img if img is not None else Expr.atom(a))
        out = out + term
    return out


def _default_base_map(atom_map, exp_map=None, coef_map=None):
    def base_map(b, g):
        P = _base_expr(b)
        P2 = _rebuild(P, atom_map, _default_base_map(atom_map, exp_map, coef_map), exp_map, coef_map)
        if P2 == P:
            return formal(b, g)
        return power(I * P2, g)
    return base_map


def substitute(e: Expr, rules: dict, prolong: bool = False) -> Expr:
    """Simultaneous substitution.

    Keys may be field names (``"u"``, ``"xi"``, ``"f"``): the field itself is
    replaced, so every jet ``v_{x^a t^b}`` maps to the corresponding total
    derivative of the rule.  Keys may also be atoms, replaced exactly; with
    ``prolong`` an atom key ``v_{x^a t^b}`` also rewrites ``v_{x^(a+k) t^b}``
    by ``k`` x-derivatives of its rule.  Powers whose base picks up a
    nilpotent shift are expanded with :func:`power`.
    """
    field_rules = {k: Expr.coerce(v) for k, v in rules.items() if isinstance(k, str)}
    atom_rules = {k: Expr.coerce(v) for k, v in rules.items() if isinstance(k, Atom)}
    memo: dict = {}

    def atom_map(a: Atom):
        if a in memo:
            return memo[a]
        img = None
        if a in atom_rules:
            img = atom_rules[a]
        elif a.kind == FIELD and a.name in field_rules:
            img = t_derivative(x_derivative(field_rules[a.name], a.x), a.t)
        elif prolong:
            for k, r in atom_rules.items():
                if (k.kind, k.name, k.t, k.eps) == (a.kind, a.name, a.t, a.eps) and a.x > k.x:
                    img = x_derivative(r, a.x - k.x)
                    break
        memo[a] = img
        return img

    return _rebuild(e, atom_map, _default_base_map(atom_map))


def subs_params(e: Expr, values: dict) -> Expr:
    """Substitute model parameters (in coefficients, exponents and deformed jets)."""
    if not values:
        return e
    exp_values = {k: v for k, v in values.items() if k != "lam"}

    def exp_map(g):
        return g.subs(exp_values)

    def coef_map(c):
        return c.subs(values)

    def atom_map(a: Atom):
        if a.kind != DEFJET:
            return None
        g = a.eps.subs(exp_values)
        if g == Exponent(1):
            return Expr.atom(Atom(FIELD, a.name, a.x, a.t))
        return Expr.atom(a._replace(eps=g))

    return _rebuild(e, atom_map, _default_base_map(atom_map, exp_map, coef_map), exp_map, coef_map)


def conjugate_coefficients(e: Expr) -> Expr:
    return Expr({k: c.conjugate() for k, c in e.terms.items()})


def normalize(e: Expr) -> Expr:
    """Re-derive the canonical form of every monomial from its raw factors."""
    out: dict = {}
    for (evens, formals, odds), c in e.terms.items():
        ev = {}
        for a, m in evens:
            ev[a] = ev.get(a, 0) + m
        fo = {}
        for b, g in formals:
            fo[b] = fo[b] + g if b in fo else g
        _acc(out, _canon(c, ev, fo, odds))
    return Expr(out)


def equals_zero(e: Expr) -> bool:
    return normalize(e).is_zero
