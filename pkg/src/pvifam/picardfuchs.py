"""Algebraic PVI solutions of geometric origin from Weierstrass deformations.

A one-parameter family of Weierstrass invariants ``g2(z, a)``, ``g3(z, a)``
gives a 2x2 Fuchsian system in ``z``.  Its scalar form has four true
singular points and one apparent point; moving three of the true points
to 0, 1, ∞ turns the fourth into ``t(a)`` and the apparent point into
``λ(a)``.  Eliminating ``a`` gives an algebraic curve ``P(λ, t) = 0``
solving PVI with ``α`` read off the local exponent differences.

Roots of an irreducible quadratic locus are never adjoined explicitly:
all local data lives in ``ℚ(a)[w]/(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from gmpy2 import is_square, isqrt, mpq

from .exactalg import (
    MultiPoly,
    RatFunc,
    exact_divide,
    gcd,
    parse_poly,
    prem,
    primitive_part_in,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    strip_factor,
    substitute_ratfunc,
)

Z = MultiPoly.variable("z")
A = MultiPoly.variable("a")
LAM = MultiPoly.variable("lam")
T = MultiPoly.variable("t")

VARIANTS = ("pf1", "pf2")
# (1,1)/Δ', (1,2)/δ, (2,1)/(g2 δ), (2,2)/Δ'.  The (2,1) sign of the elliptic
# system follows from reducing d/dz(dx/y) modulo exact forms; "pf1-printed"
# keeps the opposite sign for comparison.
_SHAPE = {
    "pf1": (mpq(-1, 12), mpq(-3, 2), mpq(1, 8), mpq(1, 12)),
    "pf1-printed": (mpq(-1, 12), mpq(-3, 2), mpq(-1, 8), mpq(1, 12)),
    "pf2": (mpq(1, 6), mpq(-3), mpq(-1, 2), mpq(1, 3)),
}


class DegenerateFamily(ValueError):
    """The discriminant of the Weierstrass family vanishes identically."""


class IrregularSingularity(ValueError):
    pass


class SchemeError(ValueError):
    """The Riemann scheme does not have the shape the construction needs."""


# -- Weierstrass data and the systems ------------------------------------

@dataclass(frozen=True)
class WeierstrassData:
    g2: MultiPoly
    g3: MultiPoly
    id: int | None = None

    @classmethod
    def parse(cls, g2, g3, id=None):
        return cls(parse_poly(g2), parse_poly(g3), id)


def weierstrass_invariants(w: WeierstrassData):
    """``(Δ, δ)`` with ``Δ = g2³ − 27 g3²`` and ``δ = 3 g3 g2' − 2 g2 g3'``.

    Examples
    --------
    >>> d, dd = weierstrass_invariants(WeierstrassData.parse("3*z^3*(z + a)", "z^5*(z + 1)"))
    >>> d.equal_up_to_unit(parse_poly("z^9*((3*a - 2)*z^2 + (3*a^2 - 1)*z + a^3)"))
    True
    """
    disc = w.g2 ** 3 - 27 * w.g3 ** 2
    if not disc:
        raise DegenerateFamily("Δ = g2^3 - 27 g3^2 vanishes identically")
    delta = 3 * w.g3 * w.g2.diff("z") - 2 * w.g2 * w.g3.diff("z")
    return disc, delta


@dataclass(frozen=True)
class FuchsianSystem:
    """``Δ η' = M η`` for the periods ``η = (η1, η2)``."""

    prefactor: MultiPoly
    matrix: tuple
    variant: str
    data: WeierstrassData

    def __post_init__(self):
        disc, delta = weierstrass_invariants(self.data)
        if self.prefactor != disc:
            raise ValueError("prefactor must be the discriminant Δ")
        d1 = disc.diff("z")
        c11, c12, c21, c22 = _SHAPE[self.variant]
        want = ((c11 * d1, c12 * delta), (c21 * self.data.g2 * delta, c22 * d1))
        if tuple(map(tuple, self.matrix)) != want:
            raise ValueError(f"matrix does not have the {self.variant} shape")


def picard_fuchs_system(w: WeierstrassData, variant: str) -> FuchsianSystem:
    if variant not in _SHAPE:
        raise ValueError(f"unknown variant {variant!r}")
    disc, delta = weierstrass_invariants(w)
    d1 = disc.diff("z")
    c11, c12, c21, c22 = _SHAPE[variant]
    m = ((c11 * d1, c12 * delta), (c21 * w.g2 * delta, c22 * d1))
    return FuchsianSystem(disc, m, variant, w)


@dataclass(frozen=True)
class ScalarODE:
    """``p0 η'' + p1 η' + p2 η = 0``; ``hints`` are polynomials whose factors help split ``p0``."""

    p0: MultiPoly
    p1: MultiPoly
    p2: MultiPoly
    hints: tuple = ()

    @property
    def coefficients(self):
        return self.p0, self.p1, self.p2


def scalar_ode(system: FuchsianSystem) -> ScalarODE:
    """Eliminate ``η2`` from the trace-free gauge of the system.

    Subtracting half the trace multiplies solutions by a power of ``Δ``;
    exponent differences, hence ``α``, do not change.  With
    ``m = M − (tr M / 2) I`` one has

        p0 = Δ² m12
        p1 = Δ m12 (Δ' − m11 − m22) − Δ² m12'
        p2 = Δ (m11 m12' − m11' m12) + m12 (m11 m22 − m12 m21)

    and the common gcd is removed.
    """
    disc = system.prefactor
    (m11, m12), (m21, m22) = system.matrix
    if not m12:
        raise ValueError("the (1,2) entry vanishes; η2 cannot be eliminated")
    half = (m11 + m22) * mpq(1, 2)
    m11, m22 = m11 - half, m22 - half
    d1 = disc.diff("z")
    p0 = disc ** 2 * m12
    p1 = disc * m12 * (d1 - m11 - m22) - disc ** 2 * m12.diff("z")
    p2 = disc * (m11 * m12.diff("z") - m11.diff("z") * m12) + m12 * (m11 * m22 - m12 * m21)
    g = gcd(gcd(p0, p1), p2)
    p0, p1, p2 = (exact_divide(p, g) for p in (p0, p1, p2))
    unit = p0.normalized().lead_coefficient() / p0.lead_coefficient()
    _, delta = weierstrass_invariants(system.data)
    return ScalarODE(p0 * unit, p1 * unit, p2 * unit,
                     hints=(disc, delta, system.data.g2, system.data.g3))


def pfeq_closed_form(w: WeierstrassData):
    """Closed form of the scalar equation of the second system in ``Δ, δ, g2``."""
    disc, delta = weierstrass_invariants(w)
    d1, d2 = disc.diff("z"), disc.diff("z").diff("z")
    dd = delta.diff("z")
    p0 = 144 * delta * disc ** 2
    p1 = 144 * disc * (delta * d1 - disc * dd)
    p2 = 12 * delta * disc * d2 - 216 * delta ** 3 * w.g2 - 12 * disc * dd * d1 - delta * d1 ** 2
    return p0, p1, p2


def proportional(u, v) -> bool:
    """Whether two coefficient triples agree up to one common nonzero scalar."""
    pairs = [(x, y) for x, y in zip(u, v)]
    if any(bool(x) != bool(y) for x, y in pairs):
        return False
    ref = next((x, y) for x, y in pairs if x)
    ratio = ref[1].lead_coefficient() / ref[0].lead_coefficient()
    return all(y == x * ratio for x, y in pairs)


# -- the residue field of a locus -----------------------------------------

class QuotientField:
    """``K = ℚ(a)[w]/(f)`` for ``f`` of degree 1 or 2 in ``z``; ``f=None`` is ``ℚ(a)``.

    Elements are pairs ``(c0, c1)`` meaning ``c0 + c1 w`` with ``RatFunc``
    coefficients in ``a``.
    """

    def __init__(self, f: MultiPoly | None = None):
        self.f = f
        self.degree = 1 if f is None else f.degree("z")
        if self.degree not in (1, 2):
            raise ValueError("loci of degree 1 or 2 only")
        if f is not None:
            cl = [RatFunc(c) for c in f.coeff_list("z")]
            if self.degree == 2:
                self.p, self.q = cl[1] / cl[2], cl[0] / cl[2]
            else:
                self.root = -cl[0] / cl[1]

    zero = (RatFunc(0), RatFunc(0))
    one = (RatFunc(1), RatFunc(0))

    def gen(self):
        """The root ``w`` itself."""
        if self.degree == 2:
            return (RatFunc(0), RatFunc(1))
        return (self.root, RatFunc(0))

    def conjugate(self, x):
        if self.degree == 1:
            return x
        c0, c1 = x
        return (c0 - self.p * c1, -c1)

    @staticmethod
    def scalar(r):
        return (RatFunc.coerce(r), RatFunc(0))

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def sub(self, x, y):
        return (x[0] - y[0], x[1] - y[1])

    def neg(self, x):
        return (-x[0], -x[1])

    def mul(self, x, y):
        c0 = x[0] * y[0]
        c1 = x[0] * y[1] + x[1] * y[0]
        if x[1] and y[1]:
            c2 = x[1] * y[1]
            c0, c1 = c0 - self.q * c2, c1 - self.p * c2
        return (c0, c1)

    def inv(self, x):
        c0, c1 = x
        if not c1:
            return (1 / c0, RatFunc(0))
        norm = c0 * c0 - self.p * c0 * c1 + self.q * c1 * c1
        return ((c0 - self.p * c1) / norm, -c1 / norm)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    @staticmethod
    def is_zero(x):
        return not x[0] and not x[1]

    @staticmethod
    def rational(x):
        """The value as an ``mpq`` when ``x`` is a rational constant, else ``None``."""
        if x[1] or not x[0].is_constant():
            return None
        return x[0].constant_value()

    def reduce(self, g: MultiPoly):
        """Image of a polynomial in ``z`` (and ``a``) in ``K``."""
        if self.f is None or self.degree == 1:
            if self.f is None:
                raise ValueError("no locus to evaluate at")
            return (substitute_ratfunc(g, {"z": self.root}), RatFunc(0))
        dg = g.degree("z")
        if dg < 2:
            cl = g.coeff_list("z") + [MultiPoly.zero()] * 2
            return (RatFunc(cl[0]), RatFunc(cl[1]))
        e = dg - 1
        r = prem(g, self.f, "z", e)
        lc = self.f.leading_coeff("z") ** e
        cl = r.coeff_list("z") + [MultiPoly.zero()] * 2
        return (RatFunc(cl[0], lc), RatFunc(cl[1], lc))

    def evaluate(self, P_: MultiPoly, values):
        """``P`` at ``K``-values for its variables (``P`` has rational coefficients)."""
        names = sorted(values)
        out = self.zero
        for es, c in P_.monomial_coefficients(names).items():
            term = self.scalar(RatFunc(c))
            for v, e in zip(names, es):
                for _ in range(e):
                    term = self.mul(term, values[v])
            out = self.add(out, term)
        return out

    def text(self, x):
        c0, c1 = x
        if not c1:
            return str(c0)
        return f"({c0}) + ({c1})*w"


def _taylor(g: MultiPoly, K: QuotientField, n: int):
    """First ``n`` Taylor coefficients of ``g`` at the root ``w`` of ``K``."""
    out = []
    d = g
    for k in range(n):
        out.append(K.reduce(d * mpq(1, factorial(k))) if d else K.zero)
        d = d.diff("z")
    return out


def _series_div(num, den, n, K):
    """Power-series quotient ``num/den`` to ``n`` terms (``den[0] ≠ 0``)."""
    inv0 = K.inv(den[0])
    out = []
    for k in range(n):
        acc = num[k] if k < len(num) else K.zero
        for j in range(1, k + 1):
            if j < len(den):
                acc = K.sub(acc, K.mul(den[j], out[k - j]))
        out.append(K.mul(acc, inv0))
    return out


# -- loci and local exponents -------------------------------------------

@dataclass(frozen=True)
class Locus:
    """A root locus over ``ℚ(a)``: a linear or quadratic factor in ``z``, or ``None`` for ∞."""

    factor: MultiPoly | None

    @property
    def degree(self):
        return 1 if self.factor is None else self.factor.degree("z")

    @property
    def is_infinity(self):
        return self.factor is None

    def field(self):
        return QuotientField(self.factor)

    def value(self):
        """The point as ``RatFunc`` in ``a`` (linear loci only)."""
        if self.degree != 1 or self.is_infinity:
            raise ValueError("only finite linear loci have a value in ℚ(a)")
        return QuotientField(self.factor).root

    def __str__(self):
        if self.is_infinity:
            return "z = inf"
        if self.degree == 1:
            return f"z = {self.value()}"
        return f"roots of {self.factor}"


@dataclass(frozen=True)
class LocalExponents:
    locus: Locus
    multiplicity: int
    exponents: tuple
    logarithmic: bool
    role: str | None = None

    @property
    def difference(self):
        return self.exponents[1] - self.exponents[0]

    @property
    def kind(self):
        """``role`` when assigned, else read off the exponents."""
        if self.role is not None:
            return self.role
        r1, r2 = self.exponents
        integral = r1.denominator == 1 and r2.denominator == 1
        if not integral or self.logarithmic:
            return "singular"
        if (r1, r2) == (0, 1):
            return "ordinary"
        return "apparent"


def _rational_sqrt(x):
    x = mpq(x)
    if x < 0 or not (is_square(x.numerator) and is_square(x.denominator)):
        return None
    return mpq(isqrt(x.numerator), isqrt(x.denominator))


def local_exponents(coeffs, locus: Locus) -> LocalExponents:
    """Indicial exponents and the logarithm test at a finite locus.

    ``coeffs`` is ``(p0, p1, p2)``.  With ``p0 = f^m A`` the normalized
    coefficients are ``b = x p1/p0`` and ``c = x² p2/p0`` in the local
    coordinate ``x = z − w``; for an integer exponent difference ``d`` the
    Frobenius recursion at the smaller exponent must be solvable at step
    ``d`` for the point to be free of logarithms.
    """
    p0, p1, p2 = coeffs
    K = locus.field()
    _, m = strip_factor(p0, locus.factor)
    if m == 0:
        return LocalExponents(locus, 0, (mpq(0), mpq(1)), False)

    def series(n):
        a0 = _taylor(p0, K, m + n)[m:]
        t1 = _taylor(p1, K, m - 1 + n) if p1 else []
        t2 = _taylor(p2, K, m - 2 + n) if p2 else []
        for k in range(max(m - 1, 0)):
            if k < len(t1) and not K.is_zero(t1[k]):
                raise IrregularSingularity(f"irregular singular point at {locus}")
        for k in range(max(m - 2, 0)):
            if k < len(t2) and not K.is_zero(t2[k]):
                raise IrregularSingularity(f"irregular singular point at {locus}")
        # shift so that index 0 is the x^(m-1) (resp. x^(m-2)) coefficient
        b_num = ([K.zero] * (1 - m) + t1) if m < 1 else t1[m - 1:]
        c_num = ([K.zero] * (2 - m) + t2) if m < 2 else t2[m - 2:]
        return _series_div(b_num, a0, n, K), _series_div(c_num, a0, n, K)

    b, c = series(1)
    b0, c0 = K.rational(b[0]), K.rational(c[0])
    if b0 is None or c0 is None:
        raise SchemeError(f"indicial equation at {locus} is not over ℚ")
    # r^2 + (b0 - 1) r + c0 = 0
    disc = (b0 - 1) ** 2 - 4 * c0
    root = _rational_sqrt(disc)
    if root is None:
        raise SchemeError(f"irrational exponents at {locus}")
    r1, r2 = (1 - b0 - root) / 2, (1 - b0 + root) / 2
    d = r2 - r1
    log = False
    if d.denominator == 1:
        if d == 0:
            log = True
        else:
            d = int(d)
            b, c = series(d + 1)
            coef = [K.one]
            for n in range(1, d + 1):
                acc = K.zero
                for k in range(1, n + 1):
                    term = K.add(K.mul(K.scalar(r1 + n - k), b[k]), c[k])
                    acc = K.add(acc, K.mul(term, coef[n - k]))
                acc = K.neg(acc)
                if n < d:
                    ind = (r1 + n) * (r1 + n - 1) + b0 * (r1 + n) + c0
                    coef.append(K.mul(acc, K.scalar(1 / ind)))
                else:
                    log = not K.is_zero(acc)
    return LocalExponents(locus, m, (r1, r2), log)


def _reversed(p, n):
    """``z^n p(1/z)``."""
    out = MultiPoly.zero()
    for k, c in enumerate(p.coeff_list("z")):
        if c:
            out = out + c * Z ** (n - k)
    return out


def at_infinity(coeffs):
    """Coefficients of the equation in ``s = 1/z``, written in the variable ``z``."""
    p0, p1, p2 = coeffs
    D = max(p0.degree("z") - 3, p1.degree("z") - 2, p2.degree("z"), 0)
    return (_reversed(p0, D + 4), 2 * _reversed(p0, D + 3) - _reversed(p1, D + 2),
            _reversed(p2, D))


def _square_root_in_a(d: MultiPoly):
    """``r`` with ``r² = d`` in ``ℚ[a]``, or ``None``."""
    if d.is_constant():
        s = _rational_sqrt(d.constant_value())
        return None if s is None else MultiPoly.constant(s)
    r = MultiPoly.one()
    for f, m in squarefree_decomposition(d, "a"):
        if m % 2:
            return None
        r = r * f ** (m // 2)
    s = _rational_sqrt(d.lead_coefficient() / (r * r).lead_coefficient())
    if s is None or r * r * (s * s) != d:
        return None
    return r * s


def _split(f: MultiPoly):
    """Split a quadratic in ``z`` over ``ℚ(a)`` when its discriminant is a square."""
    if f.degree("z") != 2:
        return [f]
    c0, c1, c2 = f.coeff_list("z")
    r = _square_root_in_a(c1 * c1 - 4 * c0 * c2)
    if r is None:
        return [f]
    return [primitive_part_in(2 * c2 * Z + c1 - s * r, "z") for s in (1, -1)]


def _coprime_basis(polys):
    """Pairwise coprime squarefree polynomials in ``z`` generating the same factors."""
    basis = []
    todo = []
    for p in polys:
        if p and p.degree("z") > 0:
            todo.extend(f for f, m in squarefree_decomposition(p, "z") if m > 0)
    while todo:
        q = primitive_part_in(todo.pop(), "z")
        if q.degree("z") <= 0:
            continue
        for i, b in enumerate(basis):
            g = gcd(q, b)
            if g.degree("z") > 0:
                basis.pop(i)
                todo.extend(x for x in (g, exact_divide(b, g), exact_divide(q, g))
                            if x.degree("z") > 0)
                break
        else:
            basis.append(q)
    return sorted(basis, key=lambda f: (f.degree("z"), str(f)))


def singular_loci(ode: ScalarODE):
    """Finite loci of ``p0`` over ``ℚ(a)``, split into linear and irreducible quadratic factors."""
    out = []
    for f in _coprime_basis((ode.p0,) + tuple(ode.hints)):
        if f.degree("z") > 0 and strip_factor(ode.p0, f)[1]:
            for g in _split(f):
                if g.degree("z") > 2:
                    raise SchemeError(f"locus of degree {g.degree('z')} is not supported: {g}")
                out.append(Locus(g.normalized()))
    return sorted(out, key=lambda l: (l.degree, str(l.factor)))


@dataclass(frozen=True)
class RiemannScheme:
    points: tuple
    apparent: tuple

    def fuchs_sum(self):
        """``(Σ exponents, number of points)`` counting conjugate roots separately."""
        total = mpq(0)
        count = 0
        for p in self.points + self.apparent:
            total += sum(p.exponents) * p.locus.degree
            count += p.locus.degree
        return total, count

    def fuchs_ok(self):
        total, count = self.fuchs_sum()
        return total == count - 2

    def rows(self):
        """Printable ``(locus, exponents, kind)`` rows."""
        return [(str(p.locus), tuple(str(e) for e in p.exponents), p.kind)
                for p in self.points + self.apparent]


def riemann_scheme(ode: ScalarODE) -> RiemannScheme:
    """Local exponents at every locus of ``p0`` and at ∞.

    When the equation carries the discriminant as its first hint, roots
    of it are true singular points whatever their exponents (a fiber with
    trivial local monodromy still counts), and the remaining loci must be
    apparent: integer exponents without logarithm.  Without hints a locus
    is apparent exactly when it has integer exponents other than (0, 1)
    and no logarithm.
    """
    coeffs = ode.coefficients
    disc = ode.hints[0] if ode.hints else None
    found = []
    for l in singular_loci(ode):
        e = local_exponents(coeffs, l)
        if disc is not None:
            on_disc = strip_factor(disc, l.factor)[1] > 0
            if not on_disc and e.kind == "singular":
                raise SchemeError(f"{l} is off the discriminant but not apparent")
            e = LocalExponents(l, e.multiplicity, e.exponents, e.logarithmic,
                               "singular" if on_disc else "apparent")
        if e.kind != "ordinary":
            found.append(e)
    inf = local_exponents(at_infinity(coeffs), Locus(Z))
    inf = LocalExponents(Locus(None), inf.multiplicity, inf.exponents, inf.logarithmic,
                         "singular" if disc is not None and inf.kind != "ordinary" else None)
    if inf.kind != "ordinary":
        found.append(inf)
    points = tuple(p for p in found if p.kind == "singular")
    apparent = tuple(p for p in found if p.kind == "apparent")
    scheme = RiemannScheme(points, apparent)
    if not scheme.fuchs_ok():
        total, count = scheme.fuchs_sum()
        raise SchemeError(f"Fuchs relation fails: exponent sum {total} for {count} points")
    return scheme


# -- renormalization ------------------------------------------------------

TARGETS = ("inf", "0", "1", "t")


@dataclass(frozen=True)
class Renormalization:
    """``λ`` and ``t`` as elements of ``field``; ``ordering`` maps each target to a scheme point."""

    lam: tuple
    t: tuple
    field: QuotientField
    ordering: dict
    conjugate_slots: tuple = ()

    def lam_text(self):
        return self.field.text(self.lam)

    def t_text(self):
        return self.field.text(self.t)


def _mobius(K, z, p_inf, p_zero, p_one):
    """Image of ``z`` under the map sending the three points to ∞, 0, 1 (``None`` is ∞)."""
    if p_inf is None:
        return K.div(K.sub(z, p_zero), K.sub(p_one, p_zero))
    num = K.mul(K.sub(z, p_zero), K.sub(p_one, p_inf))
    den = K.mul(K.sub(z, p_inf), K.sub(p_one, p_zero))
    return K.div(num, den)


def _rational_key(p):
    if p.locus.is_infinity:
        return (0, "")
    v = p.locus.value()
    if v == RatFunc(0):
        return (1, "")
    if v == RatFunc(1):
        return (2, "")
    return (3, str(v))


def renormalize(scheme: RiemannScheme) -> Renormalization:
    """Send three true singular points to ∞, 0, 1.

    Four points in ``ℚ(a) ∪ {∞}``: those equal to ∞, 0, 1 stay put when
    present, the remaining ones fill the free targets in a fixed order.
    Two such points and a conjugate pair ``w, w'``: the first rational
    point goes to ∞, the second to 0, ``w`` to 1 and ``w'`` to ``t``.
    """
    if len(scheme.apparent) != 1 or scheme.apparent[0].locus.degree != 1:
        raise SchemeError("exactly one rational apparent point is required")
    count = sum(p.locus.degree for p in scheme.points)
    if count != 4:
        raise SchemeError(f"{count} true singular points, four required")
    app = scheme.apparent[0].locus
    pairs = [p for p in scheme.points if p.locus.degree == 2]
    ratl = sorted((p for p in scheme.points if p.locus.degree == 1), key=_rational_key)
    if not pairs:
        K = QuotientField(None)
        slots = {}
        for p in ratl:
            k = _rational_key(p)[0]
            if k < 3 and TARGETS[k] not in slots:
                slots[TARGETS[k]] = p
        free = [x for x in TARGETS if x not in slots]
        for p, x in zip([p for p in ratl if p not in slots.values()], free):
            slots[x] = p

        def val(p):
            return None if p.locus.is_infinity else K.scalar(p.locus.value())

        img = lambda x: _mobius(K, x, val(slots["inf"]), val(slots["0"]), val(slots["1"]))
        t = img(val(slots["t"]))
        lam = img(K.scalar(app.value()))
        return Renormalization(lam, t, K, slots)
    if len(pairs) != 1:
        raise SchemeError("two conjugate pairs are not supported")
    pair = pairs[0]
    K = pair.locus.field()
    w = K.gen()
    w2 = K.conjugate(w)
    vals = [None if p.locus.is_infinity else K.scalar(p.locus.value()) for p in ratl]
    img = lambda x: _mobius(K, x, vals[0], vals[1], w)
    slots = {"inf": ratl[0], "0": ratl[1], "1": pair, "t": pair}
    lam = img(K.scalar(app.value()))
    return Renormalization(lam, img(w2), K, slots, conjugate_slots=("1", "t"))


def alpha_from_scheme(scheme: RiemannScheme, renorm: Renormalization, convention="theta"):
    """``α`` ordered as (∞, 0, 1, t) from exponent differences ``θ``.

    ``convention="theta"`` uses ``α_i = θ_i²/2`` everywhere;
    ``"shifted"`` uses ``(θ∞ − 1)²/2`` at infinity.
    """
    out = []
    for x in TARGETS:
        theta = renorm.ordering[x].difference
        if x == "inf" and convention == "shifted":
            out.append((theta - 1) ** 2 / 2)
        else:
            out.append(theta ** 2 / 2)
    return tuple(out)


# -- elimination of the parameter -------------------------------------------

class DependentParametrization(ValueError):
    pass


def _cleanup(R):
    if not R:
        raise DependentParametrization("dependent parametrization")
    R = primitive_part_in(R, "lam")
    R = primitive_part_in(R, "t")
    if R.degree("lam") <= 0 or R.degree("t") <= 0:
        raise DependentParametrization("dependent parametrization")
    return squarefree_part(R, "lam").normalized()


def eliminate_parameter(lam, t, var=None) -> MultiPoly:
    """Implicit equation of ``(λ(a), t(a))``.

    The parameter is ``var``, by default the single variable of ``λ`` and ``t``.

    Examples
    --------
    >>> str(eliminate_parameter(RatFunc(A), RatFunc(A)))
    '1 * lam + -1 * t'
    """
    lam, t = RatFunc.coerce(lam), RatFunc.coerce(t)
    if lam.is_constant() or t.is_constant():
        raise DependentParametrization("dependent parametrization")
    if var is None:
        names = set(lam.free_vars()) | set(t.free_vars())
        if len(names) != 1:
            raise ValueError(f"cannot tell the parameter among {sorted(names)}")
        (var,) = names
    f1 = LAM * lam.den - lam.num
    f2 = T * t.den - t.num
    return _cleanup(resultant(f1, f2, var))


def eliminate_in_field(renorm: Renormalization) -> MultiPoly:
    """Implicit equation of ``(λ, t)`` given in ``ℚ(a)[w]/(f)``.

    With ``λ = A0 + A1 w`` the root is ``w = (λ − A0)/A1``; substituting
    it into ``f`` and into ``t = B0 + B1 w`` gives two polynomials in
    ``λ, t, a`` whose resultant in ``a`` contains the curve.  Factors
    that do not vanish on the parametrization are dropped.
    """
    K = renorm.field
    (a0, a1), (b0, b1) = renorm.lam, renorm.t
    if K.f is None or (not a1 and not b1):
        return eliminate_parameter(a0, b0)
    swap = not a1
    if swap:
        (a0, a1), (b0, b1) = (b0, b1), (a0, a1)
    lam_v, t_v = (T, LAM) if swap else (LAM, T)
    w = (RatFunc(lam_v) - a0) / a1
    e1 = (RatFunc(t_v) - b0) - b1 * w
    e2 = substitute_ratfunc(K.f, {"z": w})
    R = _cleanup(resultant(e1.num, e2.num, "a"))
    vals = {"lam": renorm.lam, "t": renorm.t}
    if K.is_zero(K.evaluate(R, vals)):
        kept = MultiPoly.one()
        for f, m in squarefree_decomposition(R, "lam"):
            if m and K.is_zero(K.evaluate(f, vals)):
                kept = f
        if kept.degree("lam") > 0 and kept != R:
            R = kept.normalized()
    return R


def reparametrization(renorm: Renormalization, lam, t, var="c"):
    """Express a rational parametrization ``λ(c), t(c)`` through the field of ``renorm``.

    Returns ``(a(c), w(c))`` as ``RatFunc`` in ``var`` with ``w(c)`` a root
    of the locus polynomial at ``a(c)``, such that substituting them into
    ``renorm.lam`` and ``renorm.t`` gives ``lam`` and ``t``.  The parameter
    is recovered as the common linear factor in ``a`` of the two relations
    obtained by eliminating ``w``.  Raises ``ValueError`` when no such
    reparametrization exists.
    """
    K = renorm.field
    lam, t = RatFunc.coerce(lam), RatFunc.coerce(t)
    (a0, a1), (b0, b1) = renorm.lam, renorm.t
    if not a1:
        raise ValueError("λ does not involve the locus root")
    wv = (lam - a0) / a1
    rel = [(t - b0) - b1 * wv]
    if K.f is not None and K.degree == 2:
        rel.append(substitute_ratfunc(K.f, {"z": wv}))
    g = rel[0].num
    for r in rel[1:]:
        g = gcd(g, r.num)
    lin = [f for f, m in squarefree_decomposition(g, "a") if m and f.degree("a") == 1]
    for f in lin:
        c1, c0 = f.coeff("a", 1), f.coeff("a", 0)
        a_c = RatFunc(-c0, c1)
        sub = lambda r: substitute_ratfunc(r.num, {"a": a_c}) / substitute_ratfunc(r.den, {"a": a_c})
        w_c = sub(wv)
        if K.f is not None and substitute_ratfunc(K.f, {"a": a_c, "z": w_c}):
            continue
        if sub(a0) + sub(a1) * w_c == lam and sub(b0) + sub(b1) * w_c == t:
            return a_c, w_c
    raise ValueError("parametrization is not a reparametrization of the renormalized point")


# -- the whole pipeline ---------------------------------------------------

@dataclass
class GeometricSolution:
    row: int
    variant: str
    ode: ScalarODE
    scheme: RiemannScheme
    renorm: Renormalization
    curve: MultiPoly
    alpha: tuple
    notes: list = field(default_factory=list)


def derive(w: WeierstrassData, variant: str, convention="theta") -> GeometricSolution:
    ode = scalar_ode(picard_fuchs_system(w, variant))
    scheme = riemann_scheme(ode)
    renorm = renormalize(scheme)
    curve = eliminate_in_field(renorm)
    alpha = alpha_from_scheme(scheme, renorm, convention)
    return GeometricSolution(w.id, variant, ode, scheme, renorm, curve, alpha)


def herfurtner(row: int) -> WeierstrassData:
    """Weierstrass data of a row of the embedded deformation table."""
    from .tables import load_tables
    return load_tables().table6[row]["data"]


@lru_cache(maxsize=None)
def derive_row(row: int, variant: str) -> GeometricSolution:
    return derive(herfurtner(row), variant)


@dataclass(frozen=True)
class GridMatch:
    row: int
    variant: str
    key: str
    table: int
    alpha: tuple
    element: str
    curve_source: str
    residue_zero: bool


def _table_of(variant):
    return 4 if variant.startswith("pf1") else 5


def orbit_matches(sol: GeometricSolution, alpha=None):
    """Named solutions reached by the S₄-orbit of ``(curve, α)``.

    A match needs the transformed curve to equal the Table 1 curve of a
    key (as printed, or as corrected by the audit) and the permuted α to
    be one of that key's points in the table of the variant.
    """
    from .pvi import pvi_residue
    from .symmetry import curve_orbit, quadruple_action
    from .tables import SOLUTION_KEYS, audited_curve, load_tables
    ds = load_tables()
    alpha = sol.alpha if alpha is None else alpha
    n = _table_of(sol.variant)
    out = []
    for g, img in curve_orbit(sol.curve).items():
        a = quadruple_action(g, alpha)
        for key in SOLUTION_KEYS:
            if img.equal_up_to_unit(ds.table1[key]["curve"]):
                source = "printed"
            elif img.equal_up_to_unit(audited_curve(key)):
                source = "corrected"
            else:
                continue
            if a in ds.special_points(key, (n,)):
                out.append(GridMatch(sol.row, sol.variant, key, n, a, str(g), source,
                                     not pvi_residue(img, a)))
    return sorted(set(out), key=lambda m: (m.key, m.alpha, m.element))


def grid(convention="theta", rows=(1, 2, 3, 4, 5), variants=VARIANTS):
    """Run every (row, variant) and collect orbit matches."""
    out = {}
    for r in rows:
        for v in variants:
            sol = derive_row(r, v)
            alpha = sol.alpha if convention == "theta" else alpha_from_scheme(
                sol.scheme, sol.renorm, convention)
            out[(r, v)] = (sol, alpha, orbit_matches(sol, alpha))
    return out


def coverage(results):
    """``{(table, key, point): hit}`` over every Table 4/5 point."""
    from .tables import SOLUTION_KEYS, load_tables
    ds = load_tables()
    hit = {(m.table, m.key, m.alpha) for _, _, ms in results.values() for m in ms}
    out = {}
    for n in (4, 5):
        for key in SOLUTION_KEYS:
            for p in ds.special_points(key, (n,)):
                out[(n, key, p)] = (n, key, p) in hit
    return out


def calibrate_convention():
    """Pick the θ ↦ α convention at infinity consistent with every table point.

    Returns ``(chosen, {convention: number of points reached})``.
    """
    counts = {}
    for conv in ("theta", "shifted"):
        counts[conv] = sum(coverage(grid(conv)).values())
    total = len(coverage(grid("theta")))
    full = [c for c, k in counts.items() if k == total]
    return (full[0] if len(full) == 1 else None), counts


HISTORICAL_4C = ("pf1 image at 4C is (1/8, 0, 0, 0); an earlier computation in the literature "
                 "reported (1/18, 0, 0, 0) for this solution")


__all__ = [
    "alpha_from_scheme", "at_infinity", "calibrate_convention", "coverage",
    "DegenerateFamily", "DependentParametrization", "derive", "derive_row",
    "eliminate_in_field", "eliminate_parameter", "FuchsianSystem", "GeometricSolution",
    "grid", "GridMatch", "herfurtner", "HISTORICAL_4C", "IrregularSingularity",
    "local_exponents", "LocalExponents", "Locus", "orbit_matches", "pfeq_closed_form",
    "picard_fuchs_system", "proportional", "QuotientField", "Renormalization", "renormalize",
    "reparametrization", "riemann_scheme", "RiemannScheme", "scalar_ode", "ScalarODE",
    "SchemeError", "singular_loci", "VARIANTS", "weierstrass_invariants", "WeierstrassData"
]
