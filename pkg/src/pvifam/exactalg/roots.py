"""Rational roots of univariate polynomials over ℚ."""

from __future__ import annotations

from gmpy2 import is_square, isqrt, mpq, mpz

from .elim import exact_divide, squarefree_decomposition
from .poly import MultiPoly

TRIAL_LIMIT = 10 ** 6


class RootSearchError(ArithmeticError):
    """Raised when a coefficient is too large for divisor enumeration."""


def _int_coeffs(p, var):
    q = p.normalized()
    return [mpz(c.constant_value()) if c else mpz(0) for c in q.coeff_list(var)]


def _divisors(n):
    n = abs(int(n))
    small, large = [], []
    d = 1
    while d * d <= n:
        if d > TRIAL_LIMIT:
            raise RootSearchError(f"coefficient {n} too large for divisor enumeration")
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _eval(cs, x):
    acc = mpq(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _roots_squarefree(f, var):
    cs = _int_coeffs(f, var)
    out = []
    while cs and cs[0] == 0:
        out.append(mpq(0))
        cs = cs[1:]
    n = len(cs) - 1
    if n <= 0:
        return out
    if n == 1:
        return out + [mpq(-cs[0], cs[1])]
    if n == 2:
        c, b, a = cs
        disc = b * b - 4 * a * c
        if disc >= 0 and is_square(disc):
            r = isqrt(disc)
            out += sorted({mpq(-b + r, 2 * a), mpq(-b - r, 2 * a)})
        return out
    for q in _divisors(cs[-1]):
        for p in _divisors(cs[0]):
            for x in (mpq(p, q), mpq(-p, q)):
                if x.denominator == q and _eval(cs, x) == 0 and x not in out:
                    out.append(x)
    return sorted(out)


def rational_roots(p: MultiPoly, var: str):
    """Rational roots of a univariate ``p`` with their multiplicities.

    Returns ``(roots, irrational)`` where ``roots`` is a sorted list of
    ``(root, multiplicity)`` and ``irrational`` lists
    ``(factor, multiplicity)`` for the parts without rational roots.

    Examples
    --------
    >>> from .parse import parse_poly
    >>> roots, rest = rational_roots(parse_poly("(x - 1)^2 * (2*x + 3) * (x^2 - 2)"), "x")
    >>> [(str(r), m) for r, m in roots], len(rest)
    ([('-3/2', 1), ('1', 2)], 1)
    """
    if any(v != var for v in p.free_vars()):
        raise ValueError("rational_roots expects a univariate polynomial")
    roots, rest = [], []
    x = MultiPoly.variable(var)
    for f, m in squarefree_decomposition(p, var):
        if m == 0:
            continue
        rs = _roots_squarefree(f, var)
        g = f
        for r in rs:
            roots.append((r, m))
            g = exact_divide(g, x - r)
        if g.degree(var) > 0:
            rest.append((g.normalized(), m))
    roots.sort()
    return roots, rest


__all__ = ["RootSearchError", "rational_roots"]
