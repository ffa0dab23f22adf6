"""Exact coefficients and affine exponents for the symbolic kernel.

Coefficients are rational functions in the model parameters with Gaussian
rational coefficients.  The numerator is a sparse sympy ring element; the
denominator is kept as a multiset of monic irreducible factors, so that
cancellation is a cheap exact-division test instead of a multivariate gcd.
With factors never dividing the numerator the representation is canonical,
which makes structural equality an exact zero test.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.rings import ring

PARAMS = ("lam", "eps", "kap", "mu", "nu")
EXPONENT_PARAMS = ("eps", "kap", "mu", "nu")

RING, *_GENS = ring(",".join(PARAMS), QQ_I)
GENS = dict(zip(PARAMS, _GENS))


class PoleError(ZeroDivisionError):
    """A parameter value hits a pole of a coefficient, e.g. eps = -1 in 1/(1+eps)."""


def _gauss(value):
    if isinstance(value, complex):
        return QQ_I(_frac(value.real), _frac(value.imag))
    return QQ_I(_frac(value), 0)


def _frac(value):
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, Rational):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, float):
        f = Fraction(value)
        return QQ(f.numerator, f.denominator)
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def _monic_factors(poly):
    """Split a ring element into (constant, {monic irreducible factor: multiplicity})."""
    if poly.is_ground:
        return poly.LC, {}
    const, facs = poly.factor_list()
    out = {}
    for f, k in facs:
        lc = f.LC
        const = const * lc**k
        f = f.quo_ground(lc)
        out[f] = out.get(f, 0) + k
    return const, out


def _other(value):
    if isinstance(value, Coef):
        return value
    try:
        return Coef.of(value)
    except TypeError:
        return NotImplemented


class Coef:
    """Element of Q(i)(lam, eps, kap, mu, nu) in reduced factored form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=frozenset()):
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _build(cls, num, den: dict) -> "Coef":
        if not num:
            return ZERO
        if den:
            for f in list(den):
                k = den[f]
                while k:
                    q, r = num.div(f)
                    if r:
                        break
                    num = q
                    k -= 1
                if k:
                    den[f] = k
                else:
                    del den[f]
        return cls(num, frozenset(den.items()))

    @classmethod
    def of(cls, value) -> "Coef":
        if isinstance(value, Coef):
            return value
        if isinstance(value, Exponent):
            return value.coef()
        if isinstance(value, str):
            return cls(GENS[value])
        return cls(RING(_gauss(value)))

    @classmethod
    def inverse_of_poly(cls, poly) -> "Coef":
        if not poly:
            raise PoleError("division by a zero coefficient")
        const, facs = _monic_factors(poly)
        return cls(RING(QQ_I(1, 0) / const), frozenset(facs.items()))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _other(other)
        if other is NotImplemented:
            return other
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            if not self.den:
                return Coef(self.num + other.num)
            return Coef._build(self.num + other.num, dict(self.den))
        d1, d2 = dict(self.den), dict(other.den)
        lcm = dict(d1)
        for f, k in d2.items():
            lcm[f] = max(lcm.get(f, 0), k)
        n1, n2 = self.num, other.num
        for f, k in lcm.items():
            if k - d1.get(f, 0):
                n1 = n1 * f ** (k - d1.get(f, 0))
            if k - d2.get(f, 0):
                n2 = n2 * f ** (k - d2.get(f, 0))
        return Coef._build(n1 + n2, lcm)

    __radd__ = __add__

    def __neg__(self):
        return Coef(-self.num, self.den)

    def __sub__(self, other):
        other = _other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _other(other)
        return other if other is NotImplemented else other - self

    def __mul__(self, other):
        other = _other(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        if not self.den and not other.den:
            return Coef(self.num * other.num)
        den = dict(self.den)
        for f, k in other.den:
            den[f] = den.get(f, 0) + k
        return Coef._build(self.num * other.num, den)

    __rmul__ = __mul__

    def inverse(self) -> "Coef":
        inv = Coef.inverse_of_poly(self.num)
        back = RING.one
        for f, k in self.den:
            back = back * f**k
        return inv * Coef(back)

    def __truediv__(self, other):
        other = _other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _other(other)
        return other if other is NotImplemented else other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    # predicates ------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, Coef):
            try:
                other = Coef.of(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    @property
    def is_constant(self) -> bool:
        return self.num.is_ground and not self.den

    def constant(self) -> complex:
        if not self.is_constant:
            raise ValueError(f"coefficient {self} depends on parameters")
        c = self.num.LC if self.num else QQ_I(0, 0)
        return complex(float(c.x), float(c.y))

    def free_params(self) -> set[str]:
        used = set()
        polys = [self.num] + [f for f, _ in self.den]
        for p in polys:
            for monom in p.monoms():
                used.update(name for name, e in zip(PARAMS, monom) if e)
        return used

    # transformations -------------------------------------------------------
    def conjugate(self) -> "Coef":
        def conj(p):
            return RING.from_dict({m: QQ_I(c.x, -c.y) for m, c in p.terms()})

        out = Coef(conj(self.num))
        for f, k in self.den:
            out = out * Coef.inverse_of_poly(conj(f)) ** k
        return out

    def subs(self, values: dict) -> "Coef":
        """Substitute parameters by rationals or by affine exponents."""
        if not values:
            return self
        pairs = [(GENS[name], _as_ring(v)) for name, v in values.items()]

        def sub(p):
            for g, v in pairs:
                p = p.compose(g, v)
            return p

        out = Coef(sub(self.num))
        for f, k in self.den:
            fs = sub(f)
            if not fs:
                raise PoleError(f"parameter values {values} hit a pole of {self}")
            out = out * Coef.inverse_of_poly(fs) ** k
        return out

    def evaluate(self, params: dict) -> complex:
        def ev(p):
            total = 0j
            for monom, c in p.terms():
                term = complex(float(c.x), float(c.y))
                for name, e in zip(PARAMS, monom):
                    if e:
                        term *= complex(params[name]) ** e
                total += term
            return total

        value = ev(self.num)
        for f, k in self.den:
            d = ev(f)
            if d == 0:
                raise PoleError(f"parameters {params} hit a pole of {self}")
            value /= d**k
        return value

    # rendering -------------------------------------------------------------
    def to_sympy(self):
        import sympy

        expr = self.num.as_expr()
        for f, k in sorted(self.den, key=lambda fk: str(fk[0])):
            expr = expr / f.as_expr() ** k
        return sympy.factor_terms(expr) if self.den else expr

    def __str__(self):
        return str(self.to_sympy())

    def __repr__(self):
        return f"Coef({self})"


ZERO = Coef(RING.zero)
ONE = Coef(RING.one)
I = Coef(RING(QQ_I(0, 1)))
MINUS_I = Coef(RING(QQ_I(0, -1)))
I_POWERS = (ONE, I, -ONE, MINUS_I)


def i_power(n: int) -> Coef:
    return I_POWERS[n % 4]


class Exponent(tuple):
    """Affine form c0 + c_eps*eps + c_kap*kap + c_mu*mu + c_nu*nu with rational c."""

    __slots__ = ()

    def __new__(cls, c0=0, eps=0, kap=0, mu=0, nu=0):
        return super().__new__(cls, (Fraction(c0), Fraction(eps), Fraction(kap),
                                     Fraction(mu), Fraction(nu)))

    @classmethod
    def of(cls, value) -> "Exponent":
        if isinstance(value, Exponent):
            return value
        if isinstance(value, str):
            if value not in EXPONENT_PARAMS:
                raise ValueError(f"{value!r} cannot appear in an exponent")
            return cls(0, **{value: 1})
        if isinstance(value, float):
            return cls(Fraction(value).limit_denominator(10**9))
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot build an exponent from {value!r}")

    @property
    def is_literal(self) -> bool:
        return not any(self[1:])

    @property
    def literal(self) -> Fraction:
        if not self.is_literal:
            raise ValueError(f"exponent {self} is symbolic")
        return self[0]

    def is_nonneg_int(self) -> bool:
        return self.is_literal and self[0].denominator == 1 and self[0] >= 0

    def is_int(self) -> bool:
        return self.is_literal and self[0].denominator == 1

    def __add__(self, other):
        other = Exponent.of(other)
        return Exponent(*(a + b for a, b in zip(self, other)))

    __radd__ = __add__

    def __sub__(self, other):
        other = Exponent.of(other)
        return Exponent(*(a - b for a, b in zip(self, other)))

    def __rsub__(self, other):
        return Exponent.of(other) - self

    def __neg__(self):
        return Exponent(*(-a for a in self))

    def __mul__(self, k):
        k = Fraction(k)
        return Exponent(*(a * k for a in self))

    __rmul__ = __mul__

    def __bool__(self):
        return any(self)

    def coef(self) -> Coef:
        p = RING(QQ_I(_frac(self[0]), 0))
        for name, c in zip(EXPONENT_PARAMS, self[1:]):
            if c:
                p = p + GENS[name] * QQ_I(_frac(c), 0)
        return Coef(p)

    def subs(self, values: dict) -> "Exponent":
        out = Exponent(self[0])
        for name, c in zip(EXPONENT_PARAMS, self[1:]):
            if not c:
                continue
            if name in values:
                out = out + Exponent.of(values[name]) * c
            else:
                out = out + Exponent(0, **{name: c})
        return out

    def evaluate(self, params: dict) -> complex:
        value = complex(self[0])
        for name, c in zip(EXPONENT_PARAMS, self[1:]):
            if c:
                value += complex(c) * complex(params[name])
        return value

    def __str__(self):
        parts = []
        for name, c in zip(EXPONENT_PARAMS, self[1:]):
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            elif c:
                parts.append(f"{c}*{name}")
        if self[0] or not parts:
            parts.append(str(self[0]))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Exponent({self})"


def _as_ring(value):
    if isinstance(value, Exponent):
        return value.coef().num
    if isinstance(value, str):
        return GENS[value]
    return RING(_gauss(value))
