"""Division, pseudo-remainders, resultants, discriminants and gcds.

All routines work over the polynomial ring with rational coefficients;
a distinguished variable is chosen for the univariate views, the other
variables form the coefficient ring.
"""

from __future__ import annotations

from gmpy2 import mpq

from . import kernels
from .poly import ALIASES, MASK, MultiPoly, _shifts, canonical_vars


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_divide` when the quotient is not a polynomial."""


class DegenerateInput(ValueError):
    pass


def _name(var):
    return ALIASES.get(var, var)


def exact_divide(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Return ``r`` with ``p == q * r``; raise :class:`NotDivisible` otherwise.

    Examples
    --------
    >>> from .parse import parse_poly
    >>> str(exact_divide(parse_poly("lam^4 - t^2"), parse_poly("lam^2 - t")))
    '1 * lam^2 + 1 * t'
    """
    p, q = MultiPoly.coerce(p), MultiPoly.coerce(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return p
    if q.is_constant():
        return p / q.constant_value()
    vs, a, b = p._aligned(q)
    quot = kernels.divexact(a, b, _shifts(len(vs)), MASK)
    if quot is None:
        raise NotDivisible("polynomial does not divide")
    return MultiPoly(vs, quot)


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    try:
        exact_divide(p, q)
    except NotDivisible:
        return False
    return True


def prem(p: MultiPoly, q: MultiPoly, var: str, exponent: int | None = None) -> MultiPoly:
    """Pseudo-remainder of ``p`` by ``q`` in ``var``.

    The result equals ``lc(q)**e * p mod q`` with ``e = deg p - deg q + 1``
    by default.  Passing ``exponent`` fixes ``e`` (it must be at least the
    default), which makes the map ``p -> prem(p)`` linear across inputs of
    different degrees.
    """
    var = _name(var)
    dq = q.degree(var)
    if dq < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    dp = p.degree(var)
    need = max(dp - dq + 1, 0)
    e = need if exponent is None else exponent
    if e < need:
        raise ValueError("exponent below the required pseudo-division power")
    if dp < dq:
        return p * q.leading_coeff(var) ** e if e else p
    qc = q.coeff_list(var)
    lc = qc[-1]
    r = p.coeff_list(var)
    for k in range(dp, dq - 1, -1):
        c = r[k]
        r = [lc * ri for ri in r[:k]]
        if c:
            for j in range(dq):
                if qc[j]:
                    r[k - dq + j] = r[k - dq + j] - c * qc[j]
    out = MultiPoly.from_coeff_list(r, var)
    if e > need:
        out = out * lc ** (e - need)
    return out


def pdivmod(p: MultiPoly, q: MultiPoly, var: str):
    """Pseudo-division ``lc(q)**e * p = Q*q + R`` in ``var``; returns ``(Q, R, e)``."""
    var = _name(var)
    dq, dp = q.degree(var), p.degree(var)
    if dp < dq:
        return MultiPoly.zero(), p, 0
    qc = q.coeff_list(var)
    lc = qc[-1]
    r = p.coeff_list(var)
    quot = [MultiPoly.zero()] * (dp - dq + 1)
    for k in range(dp, dq - 1, -1):
        c = r[k]
        quot = [lc * x for x in quot]
        quot[k - dq] = quot[k - dq] + c
        r = [lc * ri for ri in r[:k]]
        if c:
            for j in range(dq):
                if qc[j]:
                    r[k - dq + j] = r[k - dq + j] - c * qc[j]
    return (MultiPoly.from_coeff_list(quot, var), MultiPoly.from_coeff_list(r, var),
            dp - dq + 1)


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant of ``p`` and ``q`` with respect to ``var``.

    Sylvester-determinant convention, computed by the subresultant
    pseudo-remainder sequence so coefficient growth stays polynomial.

    Examples
    --------
    >>> from .parse import parse_poly
    >>> str(resultant(parse_poly("lam - t^2"), parse_poly("lam + t"), "lam"))
    '1 * t^2 + 1 * t'
    """
    var = _name(var)
    p, q = MultiPoly.coerce(p), MultiPoly.coerce(q)
    if not p or not q:
        raise DegenerateInput("resultant of a zero polynomial")
    m, n = p.degree(var), q.degree(var)
    if m == 0 and n == 0:
        raise DegenerateInput("both polynomials are constant in " + var)
    if m == 0:
        return p ** n
    if n == 0:
        return q ** m
    s = 1
    a, b = p, q
    if m < n:
        a, b = b, a
        if m % 2 and n % 2:
            s = -s
    g = MultiPoly.one()
    h = MultiPoly.one()
    while True:
        da, db = a.degree(var), b.degree(var)
        d = da - db
        if da % 2 and db % 2:
            s = -s
        r = prem(a, b, var)
        a = b
        if not r:
            return MultiPoly.zero()
        b = exact_divide(r, g * h ** d)
        g = a.leading_coeff(var)
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = exact_divide(g ** d, h ** (d - 1))
        if b.degree(var) == 0:
            da = a.degree(var)
            if da == 1:
                res = b
            else:
                res = exact_divide(b ** da, h ** (da - 1))
            return res if s > 0 else -res


def discriminant(p: MultiPoly, var: str) -> MultiPoly:
    """Discriminant ``(-1)**(n(n-1)/2) * res(p, p') / lc(p)`` in ``var``.

    Examples
    --------
    >>> from .parse import parse_poly
    >>> str(discriminant(parse_poly("lam^2 - 2*lam + t"), "lam"))
    '-4 * t + 4'
    """
    var = _name(var)
    n = p.degree(var)
    if n < 2:
        raise DegenerateInput("discriminant needs degree at least 2")
    r = resultant(p, p.diff(var), var)
    d = exact_divide(r, p.leading_coeff(var))
    return -d if (n * (n - 1) // 2) % 2 else d


# -- gcd machinery ---------------------------------------------------------

def _main_var(*polys):
    names = canonical_vars(v for p in polys for v in p.free_vars())
    return names[0] if names else None


def gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor in unit normal form (see ``MultiPoly.normalized``).

    Recursive: content/primitive-part split with respect to the first
    variable in canonical order, primitive pseudo-remainder sequence on
    the primitive parts.
    """
    p, q = MultiPoly.coerce(p), MultiPoly.coerce(q)
    if not p:
        return q.normalized()
    if not q:
        return p.normalized()
    if p.is_constant() or q.is_constant():
        return MultiPoly.one()
    x = _main_var(p, q)
    dp, dq = p.degree(x), q.degree(x)
    if dp == 0:
        return gcd(p, content_in(q, x))
    if dq == 0:
        return gcd(content_in(p, x), q)
    # cheap probe: one divides the other
    if dp <= dq and divides(p, q):
        return p.normalized()
    if dq < dp and divides(q, p):
        return q.normalized()
    cp, cq = content_in(p, x), content_in(q, x)
    c = gcd(cp, cq)
    a = exact_divide(p, cp)
    b = exact_divide(q, cq)
    if a.degree(x) < b.degree(x):
        a, b = b, a
    while True:
        r = prem(a, b, x)
        if not r:
            break
        if r.degree(x) == 0:
            b = MultiPoly.one()
            break
        a, b = b, primitive_part_in(r, x)
    if b.degree(x) > 0:
        b = primitive_part_in(b, x)
    return (c * b).normalized()


def content_in(p: MultiPoly, var: str) -> MultiPoly:
    """Gcd of the coefficients of ``p`` viewed as a polynomial in ``var``."""
    var = _name(var)
    coeffs = [c for c in p.coeff_list(var) if c]
    if not coeffs:
        return MultiPoly.zero()
    coeffs.sort(key=lambda c: len(c.terms))
    g = coeffs[0].normalized()
    for c in coeffs[1:]:
        if g.is_constant():
            return MultiPoly.one()
        g = gcd(g, c)
    return g


def primitive_part_in(p: MultiPoly, var: str) -> MultiPoly:
    """``p`` divided by its content in ``var``, in unit normal form."""
    if not p:
        return p
    c = content_in(p, var)
    return exact_divide(p, c).normalized()


def lcm(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return exact_divide(p * q, gcd(p, q)).normalized()


def squarefree_decomposition(p: MultiPoly, var: str):
    """Yun's algorithm in ``var``: list of ``(factor, multiplicity)``.

    Only the part of ``p`` of positive degree in ``var`` is decomposed;
    the content in ``var`` is returned first with multiplicity 0 when it
    is not constant.
    """
    var = _name(var)
    out = []
    c = content_in(p, var)
    if not c.is_constant():
        out.append((c, 0))
    f = exact_divide(p, c)
    if f.degree(var) <= 0:
        return out
    fp = f.diff(var)
    a = gcd(f, fp)
    b = exact_divide(f, a)
    cc = exact_divide(fp, a)
    d = cc - b.diff(var)
    i = 1
    while b.degree(var) > 0:
        g = gcd(b, d)
        if g.degree(var) > 0:
            out.append((g.normalized(), i))
        b = exact_divide(b, g)
        cc = exact_divide(d, g)
        d = cc - b.diff(var)
        i += 1
    return out


def squarefree_part(p: MultiPoly, var: str) -> MultiPoly:
    """Product of the distinct factors of positive degree in ``var``."""
    out = MultiPoly.one()
    for f, m in squarefree_decomposition(p, var):
        if m > 0:
            out = out * f
    return out.normalized()


def strip_factor(p: MultiPoly, f: MultiPoly):
    """Divide out ``f`` as often as possible; returns ``(quotient, count)``."""
    k = 0
    while True:
        try:
            p = exact_divide(p, f)
        except NotDivisible:
            return p, k
        k += 1


__all__ = [
    "NotDivisible", "DegenerateInput", "exact_divide", "divides", "prem", "pdivmod",
    "resultant", "discriminant", "gcd", "content_in", "primitive_part_in", "lcm",
    "squarefree_decomposition", "squarefree_part", "strip_factor", "mpq",
]
