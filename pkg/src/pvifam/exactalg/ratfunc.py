"""Reduced rational functions and Möbius maps."""

from __future__ import annotations

from gmpy2 import mpq

from .elim import exact_divide, gcd
from .poly import ALIASES, MultiPoly, canonical_vars


class DegenerateSubstitution(ZeroDivisionError):
    pass


class RatFunc:
    """Quotient ``num/den`` kept reduced.

    The denominator is stored in unit normal form (coprime integer
    coefficients, positive leading coefficient); any scalar factor sits
    in the numerator, so equal functions have equal representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, reduced=False):
        num = MultiPoly.coerce(num)
        den = MultiPoly.coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = MultiPoly.zero(), MultiPoly.one()
            return
        if not reduced and not den.is_constant():
            g = gcd(num, den)
            if not g.is_constant():
                num = exact_divide(num, g)
                den = exact_divide(den, g)
        c = den.content()
        if den.lead_coefficient() < 0:
            c = -c
        if c != 1:
            num = num / c
            den = den / c
        self.num, self.den = num.trim(), den.trim()

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RatFunc):
            return x
        return cls(x)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.is_constant() and other.den.is_constant():
            return RatFunc(self.num * other.num, self.den * other.den, reduced=True)
        # cross-cancel before multiplying
        g1 = gcd(self.num, other.den)
        g2 = gcd(other.num, self.den)
        n = exact_divide(self.num, g1) * exact_divide(other.num, g2)
        d = exact_divide(self.den, g2) * exact_divide(other.den, g1)
        return RatFunc(n, d, reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num, reduced=True)

    def __truediv__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, reduced=True)

    # -- queries -------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return self.den.is_constant()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value() / self.den.constant_value()

    def free_vars(self):
        return canonical_vars(self.num.free_vars() + self.den.free_vars())

    def diff(self, var):
        var = ALIASES.get(var, var)
        n = self.num.diff(var) * self.den - self.num * self.den.diff(var)
        return RatFunc(n, self.den * self.den)

    def subs(self, mapping):
        """Substitute variables by polynomials, rationals or RatFuncs."""
        return substitute_ratfunc(self.num, mapping) / substitute_ratfunc(self.den, mapping)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def substitute_ratfunc(p: MultiPoly, mapping) -> RatFunc:
    """Simultaneous substitution of variables of ``p`` by rational functions."""
    p = MultiPoly.coerce(p)
    mapping = {ALIASES.get(v, v): RatFunc.coerce(f) for v, f in mapping.items()}
    mapping = {v: f for v, f in mapping.items() if v in p.free_vars()}
    if not mapping:
        return RatFunc(p)
    # common denominator per variable: p(N/D) = sum c * N^e D^(deg-e) / D^deg
    names = list(mapping)
    degs = [p.degree(v) for v in names]
    groups = p.monomial_coefficients(names)
    num = MultiPoly.zero()
    pw_n = [dict() for _ in names]
    pw_d = [dict() for _ in names]

    def pw(cache, j, base, e):
        if e not in cache[j]:
            cache[j][e] = base ** e
        return cache[j][e]

    for es, c in groups.items():
        term = c
        for j, (v, e) in enumerate(zip(names, es)):
            f = mapping[v]
            if e:
                term = term * pw(pw_n, j, f.num, e)
            if degs[j] - e:
                term = term * pw(pw_d, j, f.den, degs[j] - e)
        num = num + term
    den = MultiPoly.one()
    for j, v in enumerate(names):
        den = den * mapping[v].den ** degs[j]
    return RatFunc(num, den)


def substitute(p: MultiPoly, var: str, value):
    """Substitute ``var`` by a rational function, clearing denominators.

    Returns ``(numerator, k)`` with ``p(var := N/D) == numerator / D**k``
    where ``k = deg_var p`` and ``N/D`` is ``value`` in reduced form.

    Examples
    --------
    >>> from .parse import parse_poly
    >>> num, k = substitute(parse_poly("lam^2 - t"), "lam", RatFunc(1, MultiPoly.variable("u")))
    >>> str(num), k
    ('-1 * t*u^2 + 1', 2)
    """
    var = ALIASES.get(var, var)
    value = RatFunc.coerce(value)
    if not value.den:
        raise DegenerateSubstitution("degenerate substitution")
    k = p.degree(var)
    if k <= 0:
        return p, 0
    coeffs = p.coeff_list(var)
    out = MultiPoly.zero()
    for e, c in enumerate(coeffs):
        if c:
            out = out + c * value.num ** e * value.den ** (k - e)
    return out, k


class MobiusMap:
    """``x -> (a x + b) / (c x + d)`` with coefficients constant in ``x``."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = (RatFunc.coerce(x) for x in (a, b, c, d))
        if not (self.a * self.d - self.b * self.c):
            raise DegenerateSubstitution("Möbius map with ad - bc = 0")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def __call__(self, x):
        x = RatFunc.coerce(x)
        den = self.c * x + self.d
        if not den:
            raise DegenerateSubstitution("degenerate substitution")
        return (self.a * x + self.b) / den

    def inverse(self):
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, other):
        """``self ∘ other``."""
        return MobiusMap(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                         self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def image_of_infinity(self):
        """``a/c``, or ``None`` when infinity is fixed."""
        return None if not self.c else self.a / self.c

    def __repr__(self):
        return f"MobiusMap(({self.a})*x + ({self.b}), ({self.c})*x + ({self.d}))"


def mobius_substitute(p: MultiPoly, var: str, m: MobiusMap) -> MultiPoly:
    """Substitute ``var := (a var + b)/(c var + d)`` and clear denominators.

    The result is ``sum p_k N^k D^(n-k)`` with ``n = deg_var p`` (the
    minimal clearing power), returned in unit normal form.
    """
    var = ALIASES.get(var, var)
    x = MultiPoly.variable(var)
    # common denominator of the four coefficients
    den = MultiPoly.one()
    for f in (m.a, m.b, m.c, m.d):
        den = _lcm(den, f.den)
    a, b, c, d = (exact_divide(f.num * den, f.den) for f in (m.a, m.b, m.c, m.d))
    num_v = a * x + b
    den_v = c * x + d
    n = p.degree(var)
    out = MultiPoly.zero()
    for e, coeff in enumerate(p.coeff_list(var)):
        if coeff:
            out = out + coeff * num_v ** e * den_v ** (n - e)
    return out.normalized()


def _lcm(p, q):
    if p.is_constant():
        return q
    if q.is_constant():
        return p
    return exact_divide(p * q, gcd(p, q))


__all__ = ["RatFunc", "MobiusMap", "substitute", "substitute_ratfunc", "mobius_substitute",
           "DegenerateSubstitution", "mpq"]
