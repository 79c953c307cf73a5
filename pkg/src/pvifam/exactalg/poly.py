"""Sparse multivariate polynomials over the rationals.

Exponent vectors are packed into a single integer with ``BITS`` bits per
variable, the first variable in the most significant field.  Variables
of a polynomial are kept sorted in the canonical order, so comparing
packed keys as integers is the lexicographic monomial order and the
largest key is the leading monomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd as igcd, lcm as ilcm

from gmpy2 import mpq

from . import kernels

BITS = 16
MASK = (1 << BITS) - 1

#: Fixed leading part of the canonical variable order; any other name
#: sorts after these, alphabetically.
CANONICAL_ORDER = ("lam", "t", "a", "b", "z", "beta0", "beta1", "beta2", "beta3")

#: Accepted spellings on input.
ALIASES = {"λ": "lam", "β0": "beta0", "β1": "beta1", "β2": "beta2", "β3": "beta3",
           "β₀": "beta0", "β₁": "beta1", "β₂": "beta2", "β₃": "beta3"}

BigRational = mpq


def var_sort_key(name):
    try:
        return (0, CANONICAL_ORDER.index(name), "")
    except ValueError:
        return (1, 0, name)


def canonical_vars(names):
    """Sorted tuple of distinct variable names in canonical order."""
    return tuple(sorted(set(names), key=var_sort_key))


def to_rational(c):
    """Coerce ints, Fractions, strings like ``"1/8"`` and mpq to mpq."""
    if isinstance(c, type(mpq())):
        return c
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    if isinstance(c, (int, str)):
        return mpq(c)
    raise TypeError(f"cannot coerce {type(c).__name__} to a rational")


def _shifts(n):
    return tuple(BITS * (n - 1 - i) for i in range(n))


def _repack(terms, old_vars, new_vars):
    """Re-encode a term map from ``old_vars`` into the superset ``new_vars``."""
    if old_vars == new_vars:
        return terms
    n_old, n_new = len(old_vars), len(new_vars)
    pos = [new_vars.index(v) for v in old_vars]
    olds = _shifts(n_old)
    news = _shifts(n_new)
    moves = [(olds[i], news[pos[i]]) for i in range(n_old)]
    out = {}
    for k, c in terms.items():
        nk = 0
        for so, sn in moves:
            nk |= ((k >> so) & MASK) << sn
        out[nk] = c
    return out


class MultiPoly:
    """Immutable sparse polynomial with rational coefficients.

    Build instances with :meth:`constant`, :meth:`variable`,
    :meth:`from_dict` or the text parser; arithmetic operators merge
    variable contexts by name.

    Examples
    --------
    >>> lam, t = MultiPoly.variable("lam"), MultiPoly.variable("t")
    >>> str((lam**2 - t) * (lam**2 - t))
    '1 * lam^4 + -2 * lam^2*t + 1 * t^2'
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms):
        # trusted constructor: vars canonical, terms packed and nonzero
        self.vars = vars
        self.terms = terms
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls):
        return cls((), {})

    @classmethod
    def one(cls):
        return cls((), {0: mpq(1)})

    @classmethod
    def constant(cls, c):
        c = to_rational(c)
        return cls((), {0: c} if c else {})

    @classmethod
    def variable(cls, name):
        name = ALIASES.get(name, name)
        return cls((name,), {1: mpq(1)})

    @classmethod
    def from_dict(cls, vars, coeffs):
        """Build from ``{exponent tuple: coefficient}`` over ``vars`` (any order)."""
        vars = tuple(ALIASES.get(v, v) for v in vars)
        cv = canonical_vars(vars)
        if len(cv) != len(vars):
            raise ValueError("duplicate variable names")
        perm = [vars.index(v) for v in cv]
        sh = _shifts(len(cv))
        terms = {}
        for exps, c in coeffs.items():
            if len(exps) != len(vars):
                raise ValueError("exponent vector length mismatch")
            c = to_rational(c)
            if not c:
                continue
            k = 0
            for i, j in enumerate(perm):
                e = exps[j]
                if e < 0 or e > MASK:
                    raise ValueError("exponent out of range")
                k |= e << sh[i]
            terms[k] = terms.get(k, 0) + c
        return cls(cv, {k: v for k, v in terms.items() if v})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, MultiPoly):
            return x
        return cls.constant(x)

    # -- context handling --------------------------------------------
    def with_vars(self, vars):
        """Same polynomial expressed over the (canonical) superset ``vars``."""
        return MultiPoly(vars, _repack(self.terms, self.vars, vars))

    def _aligned(self, other):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vs = canonical_vars(self.vars + other.vars)
        return vs, _repack(self.terms, self.vars, vs), _repack(other.terms, other.vars, vs)

    def free_vars(self):
        """Variables that occur with a positive exponent."""
        used = 0
        for k in self.terms:
            used |= k
        sh = _shifts(len(self.vars))
        return tuple(v for v, s in zip(self.vars, sh) if (used >> s) & MASK)

    def trim(self):
        """Drop variables that do not occur."""
        fv = self.free_vars()
        if fv == self.vars:
            return self
        pos = [self.vars.index(v) for v in fv]
        olds = _shifts(len(self.vars))
        news = _shifts(len(fv))
        moves = [(olds[p], news[i]) for i, p in enumerate(pos)]
        out = {}
        for k, c in self.terms.items():
            nk = 0
            for so, sn in moves:
                nk |= ((k >> so) & MASK) << sn
            out[nk] = c
        return MultiPoly(fv, out)

    def _shift_of(self, var):
        i = self.vars.index(var)
        return BITS * (len(self.vars) - 1 - i)

    # -- inspection ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        """Rational value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(0, mpq(0))

    def degree(self, var):
        """Degree in ``var``; ``-1`` for the zero polynomial."""
        if not self.terms:
            return -1
        var = ALIASES.get(var, var)
        if var not in self.vars:
            return 0
        s = self._shift_of(var)
        return max((k >> s) & MASK for k in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        sh = _shifts(len(self.vars))
        return max(sum((k >> s) & MASK for s in sh) for k in self.terms)

    def exponents(self):
        """Iterate ``(exponent tuple, coefficient)`` in descending lex order."""
        sh = _shifts(len(self.vars))
        for k in sorted(self.terms, reverse=True):
            yield tuple((k >> s) & MASK for s in sh), self.terms[k]

    def as_dict(self):
        return dict(self.exponents())

    def lead_coefficient(self):
        """Coefficient of the lex-leading monomial (canonical order)."""
        if not self.terms:
            return mpq(0)
        return self.terms[max(self.terms)]

    def lead_monomial(self):
        sh = _shifts(len(self.vars))
        k = max(self.terms)
        return tuple((k >> s) & MASK for s in sh)

    def coeff_list(self, var):
        """Coefficients with respect to ``var``: list indexed by degree.

        Each coefficient is a MultiPoly in the same context that does not
        involve ``var``.
        """
        var = ALIASES.get(var, var)
        if not self.terms:
            return []
        if var not in self.vars:
            return [self]
        s = self._shift_of(var)
        groups = {}
        for k, c in self.terms.items():
            e = (k >> s) & MASK
            groups.setdefault(e, {})[k - (e << s)] = c
        out = [MultiPoly(self.vars, {}) for _ in range(max(groups) + 1)]
        for e, t in groups.items():
            out[e] = MultiPoly(self.vars, t)
        return out

    def coeff(self, var, e):
        cl = self.coeff_list(var)
        return cl[e] if 0 <= e < len(cl) else MultiPoly.zero()

    def leading_coeff(self, var):
        cl = self.coeff_list(var)
        return cl[-1] if cl else MultiPoly.zero()

    @staticmethod
    def from_coeff_list(coeffs, var):
        x = MultiPoly.variable(var)
        out = MultiPoly.zero()
        for e, c in enumerate(coeffs):
            if c:
                out = out + c * x ** e if e else out + c
        return out

    def monomial_coefficients(self, keep):
        """Group terms by the exponents of the variables in ``keep``.

        Returns ``{exponent tuple over keep: coefficient MultiPoly in the
        remaining variables}``.
        """
        keep = tuple(ALIASES.get(v, v) for v in keep)
        sh = _shifts(len(self.vars))
        idx = [self.vars.index(v) if v in self.vars else None for v in keep]
        groups = {}
        for k, c in self.terms.items():
            key = tuple(((k >> sh[i]) & MASK) if i is not None else 0 for i in idx)
            rest = k
            for i in idx:
                if i is not None:
                    rest -= ((k >> sh[i]) & MASK) << sh[i]
            groups.setdefault(key, {})[rest] = c
        return {key: MultiPoly(self.vars, t).trim() for key, t in groups.items()}

    # -- arithmetic ----------------------------------------------------
    def __neg__(self):
        return MultiPoly(self.vars, {k: -c for k, c in self.terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.constant(other)
            except TypeError:
                return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        vs, a, b = self._aligned(other)
        return MultiPoly(vs, kernels.addmul(a, b, mpq(1), 0))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.constant(other)
            except TypeError:
                return NotImplemented
        if not other.terms:
            return self
        vs, a, b = self._aligned(other)
        return MultiPoly(vs, kernels.addmul(a, b, mpq(-1), 0))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                c = to_rational(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MultiPoly(self.vars, {})
            return MultiPoly(self.vars, {k: v * c for k, v in self.terms.items()})
        if not self.terms or not other.terms:
            return MultiPoly.zero()
        if other.is_constant():
            return self * other.terms[0]
        if self.is_constant():
            return other * self.terms[0]
        vs, a, b = self._aligned(other)
        return MultiPoly(vs, kernels.mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational (use ``exact_divide`` for polynomials)."""
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                return NotImplemented
            other = other.constant_value()
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative int")
        result = MultiPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, var, e):
        """Multiply by ``var**e`` without a general product."""
        if e == 0 or not self.terms:
            return self
        p = self
        if var not in p.vars:
            p = p.with_vars(canonical_vars(p.vars + (var,)))
        s = p._shift_of(var)
        return MultiPoly(p.vars, {k + (e << s): c for k, c in p.terms.items()})

    # -- calculus and substitution ------------------------------------
    def diff(self, var):
        """Partial derivative with respect to ``var``."""
        var = ALIASES.get(var, var)
        if var not in self.vars:
            return MultiPoly.zero()
        s = self._shift_of(var)
        one = 1 << s
        out = {}
        for k, c in self.terms.items():
            e = (k >> s) & MASK
            if e:
                out[k - one] = c * e
        return MultiPoly(self.vars, out)

    def subs(self, mapping):
        """Simultaneous substitution of variables by polynomials or rationals."""
        mapping = {ALIASES.get(v, v): MultiPoly.coerce(p) for v, p in mapping.items()}
        mapping = {v: p for v, p in mapping.items() if v in self.vars}
        if not mapping or not self.terms:
            return self
        sh = _shifts(len(self.vars))
        idx = [(self.vars.index(v), p) for v, p in mapping.items()]
        # group terms by the substituted exponents
        groups = {}
        for k, c in self.terms.items():
            es = []
            rest = k
            for i, _ in idx:
                e = (k >> sh[i]) & MASK
                es.append(e)
                rest -= e << sh[i]
            groups.setdefault(tuple(es), {})[rest] = c
        powers = [dict() for _ in idx]

        def power(j, e):
            cache = powers[j]
            if e not in cache:
                cache[e] = idx[j][1] ** e
            return cache[e]

        out = MultiPoly.zero()
        for es, t in groups.items():
            term = MultiPoly(self.vars, t)
            for j, e in enumerate(es):
                if e:
                    term = term * power(j, e)
            out = out + term
        return out.trim()

    def evaluate(self, values):
        """Evaluate at rational values for every variable that occurs."""
        r = self.subs(values)
        if not r.is_constant():
            raise ValueError(f"unassigned variables {r.free_vars()}")
        return r.constant_value()

    def rename(self, mapping):
        """Rename variables (targets must not collide with kept names)."""
        mapping = {ALIASES.get(k, k): ALIASES.get(v, v) for k, v in mapping.items()}
        new = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(new)) != len(new):
            raise ValueError("renaming collides with an existing variable")
        coeffs = {e: c for e, c in self.exponents()}
        return MultiPoly.from_dict(new, coeffs)

    # -- normalization --------------------------------------------------
    def content(self):
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return mpq(0)
        nums = [int(c.numerator) for c in self.terms.values()]
        dens = [int(c.denominator) for c in self.terms.values()]
        return mpq(abs(reduce(igcd, nums)), reduce(ilcm, dens))

    def normalized(self):
        """Unit normal form: integer coprime coefficients, positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.lead_coefficient() < 0:
            c = -c
        if c == 1:
            return self.trim()
        return (self * (1 / c)).trim()

    def equal_up_to_unit(self, other):
        return self.normalized() == MultiPoly.coerce(other).normalized()

    # -- comparison, hashing, text --------------------------------------
    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.constant(other)
            except TypeError:
                return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        a, b = self.trim(), other.trim()
        return a.vars == b.vars and a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            t = self.trim()
            self._hash = hash((t.vars, frozenset(t.terms.items())))
        return self._hash

    def __str__(self):
        from .parse import to_text
        return to_text(self)

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"
