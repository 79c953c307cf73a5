"""Ramification of the projection ``(λ, t) -> t`` over t = 0, 1, ∞.

Local analysis uses Newton polygons at a recentered point.  The support
of ``Q(x, s)`` is recorded as lattice points ``(i, j)`` with ``i`` the
exponent of the fiber variable ``x`` and ``j`` the exponent of the base
variable ``s``; a branch ``x ~ c s^γ`` belongs to the edge of slope
``-γ`` on the lower-left boundary joining the two axes.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from gmpy2 import mpq

from .exactalg import (
    MultiPoly,
    content_in,
    discriminant,
    divides,
    exact_divide,
    rational_roots,
    squarefree_decomposition,
    squarefree_part,
    strip_factor,
    to_rational,
)
from .pvi import CurveError, build_curve_poly

X = MultiPoly.variable("x")
S = MultiPoly.variable("s")
C = MultiPoly.variable("c")
LAM = MultiPoly.variable("lam")
T = MultiPoly.variable("t")
INF = "inf"
MAX_DEPTH = 12


class ComponentThroughCenter(ValueError):
    """The fiber line through the center is a component of the curve."""


class NonGenericSample(ValueError):
    """Branch data needs irrational repeated roots; resample the parameters."""


# -- data types ----------------------------------------------------------

@dataclass(frozen=True)
class Edge:
    """Segment of the lower-left Newton boundary.

    ``exponent`` is γ in ``x ~ c s^γ``; ``polynomial`` is the edge
    polynomial ``sum a_ij c^(i - i_low)`` over the support points on
    the segment.
    """

    start: tuple
    end: tuple
    exponent: mpq
    polynomial: MultiPoly

    @property
    def slope(self):
        return -self.exponent


@dataclass(frozen=True)
class NewtonPolygon:
    support: tuple
    lower_hull: tuple

    def segments(self):
        return [(e.start, e.end) for e in self.lower_hull]


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted(self.parts)))

    @classmethod
    def parse(cls, text):
        """``"(1+1+2)"`` -> ``Partition((1, 1, 2))``."""
        body = text.strip().strip("()")
        return cls(tuple(int(p) for p in body.split("+")))

    @property
    def degree(self):
        return sum(self.parts)

    def __str__(self):
        return "(" + "+".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class Branch:
    exponent: mpq
    index: int


@dataclass(frozen=True)
class FaceSpec:
    """Relations ``β_i = β_j`` and ``β_k = 0`` cutting out a face of W."""

    id: str
    equalities: tuple = ()
    vanishings: tuple = ()

    @classmethod
    def parse(cls, text):
        """Parse ids such as ``"generic"``, ``"b0=b2,b3=0"`` or ``"b0=b1=b2"``."""
        text = text.strip()
        if text in ("generic", ""):
            return cls("generic")
        eqs, zeros = [], []
        for clause in text.split(","):
            items = [x.strip() for x in clause.split("=")]
            idx = []
            zero = False
            for it in items:
                m = re.fullmatch(r"b(?:eta)?([0-3])", it)
                if m:
                    idx.append(int(m.group(1)))
                elif it == "0":
                    zero = True
                else:
                    raise ValueError(f"cannot parse face relation {clause!r}")
            eqs += [(idx[0], j) for j in idx[1:]]
            if zero:
                zeros += idx
        return cls(text, tuple(eqs), tuple(sorted(set(zeros))))

    def classes(self):
        """Equivalence classes of indices and the set of vanishing indices."""
        parent = list(range(4))

        def find(i):
            while parent[i] != i:
                i = parent[i]
            return i

        for i, j in self.equalities:
            parent[find(i)] = find(j)
        groups = {}
        for i in range(4):
            groups.setdefault(find(i), []).append(i)
        zero = {i for g in groups.values() if set(g) & set(self.vanishings) for i in g}
        return sorted(groups.values()), zero

    def contains(self, beta):
        """True when ``beta`` satisfies exactly the relations of this face."""
        groups, zero = self.classes()
        beta = [to_rational(b) for b in beta]
        for i in range(4):
            if (beta[i] == 0) != (i in zero):
                return False
        for i in range(4):
            for j in range(i + 1, 4):
                same = any(i in g and j in g for g in groups) or (i in zero and j in zero)
                if (beta[i] == beta[j]) != same:
                    return False
        return True


# -- recentering ---------------------------------------------------------

def _point(v):
    if isinstance(v, str) and v in (INF, "∞", "infinity"):
        return INF
    if isinstance(v, str) and v == "t":
        return "t"
    return to_rational(v)


def _invert(Q, var, new):
    """``new^d Q(1/new)`` with ``d = deg_var Q``."""
    cl = Q.coeff_list(var)
    d = len(cl) - 1
    y = MultiPoly.variable(new)
    out = MultiPoly.zero()
    for k, c in enumerate(cl):
        if c:
            out = out + c * y ** (d - k)
    return out


def recenter(P_: MultiPoly, center) -> MultiPoly:
    """Move ``center = (λ₀, t₀)`` to the origin of the ``(x, s)`` plane.

    ``λ₀`` may be a rational, ``"t"`` (the diagonal λ = t) or ``"inf"``
    (chart λ = 1/x); ``t₀`` may be a rational or ``"inf"`` (chart t = 1/s).
    """
    lam0, t0 = (_point(v) for v in center)
    if lam0 == INF:
        Q = _invert(P_, "lam", "x")
    elif lam0 == "t":
        Q = P_.subs({"lam": X + T})
    else:
        Q = P_.subs({"lam": X + lam0})
    if t0 == INF:
        Q = _invert(Q, "t", "s")
    elif t0 == "t":
        raise ValueError("the base point must be a rational or inf")
    else:
        Q = Q.subs({"t": S + t0})
    return Q


# -- Newton polygon ------------------------------------------------------

def _support(Q):
    """``{(i, j): coefficient}`` with coefficients polynomial in the remaining variables."""
    return {k: c for k, c in Q.monomial_coefficients(("x", "s")).items() if c}


def _polygon(Q):
    if not Q:
        raise ComponentThroughCenter("curve vanishes identically")
    pts = _support(Q)
    on_axis = [i for i, j in pts if j == 0]
    if not on_axis:
        raise ComponentThroughCenter("the base fiber is a component of the curve")
    m = min(on_axis)
    hull = []
    if m > 0:
        if not any(i == 0 for i, _ in pts):
            raise ComponentThroughCenter("component through center")
        cur = (0, min(j for i, j in pts if i == 0))
        while cur[0] < m:
            best = None
            for (i, j) in pts:
                if cur[0] < i <= m:
                    sl = mpq(j - cur[1], i - cur[0])
                    if best is None or sl < best[0] or (sl == best[0] and i > best[1][0]):
                        best = (sl, (i, j))
            sl, nxt = best
            on_edge = [(i, j) for (i, j) in pts
                       if cur[0] <= i <= nxt[0] and mpq(j - cur[1]) == sl * (i - cur[0])]
            poly = MultiPoly.zero()
            for i, j in on_edge:
                poly = poly + pts[(i, j)] * C ** (i - cur[0])
            hull.append(Edge(cur, nxt, -sl, poly))
            cur = nxt
    return NewtonPolygon(tuple(sorted(pts)), tuple(hull)), m


def newton_polygon(P_: MultiPoly, center) -> NewtonPolygon:
    """Support and lower-left boundary of ``P`` recentered at ``center``.

    Examples
    --------
    >>> from .exactalg import P
    >>> poly = newton_polygon(P("lam^2 - t"), (0, 0))
    >>> poly.segments(), str(poly.lower_hull[0].exponent)
    ([((0, 1), (2, 0))], '1/2')
    """
    return _polygon(recenter(P_, center))[0]


# -- branches ------------------------------------------------------------

def _reduce_edge(E, q):
    """Write ``E(c) = F(c^q)``; return ``F`` in the variable c."""
    out = MultiPoly.zero()
    for k, a in enumerate(E.coeff_list("c")):
        if a:
            out = out + a * C ** (k // q)
    return out


def _branches(Q, depth=0):
    """``(γ, index)`` for every branch of ``Q = 0`` through the origin."""
    if depth > MAX_DEPTH:
        raise NonGenericSample("Puiseux recursion did not separate the branches")
    out = []
    if divides(X, Q):
        Q = exact_divide(Q, X)
        if divides(X, Q):
            raise CurveError("curve is not squarefree")
        if depth == 0:
            raise ComponentThroughCenter("component through center")
        out.append((None, 1))
    poly, _ = _polygon(Q)
    for edge in poly.lower_hull:
        gam = edge.exponent
        p, q = int(gam.numerator), int(gam.denominator)
        F = _reduce_edge(edge.polynomial, q)
        for f, r in squarefree_decomposition(F, "c"):
            if r == 0:
                continue
            if r == 1:
                out += [(gam, q)] * f.degree("c")
                continue
            roots, rest = rational_roots(f, "c")
            if rest:
                raise NonGenericSample("repeated irrational root of an edge polynomial")
            for zeta, _ in roots:
                for e in _refine(Q, p, q, zeta, depth):
                    out.append((gam, q * e))
    return out


def _refine(Q, p, q, zeta, depth):
    """Indices (in σ) of the branches along ``x ~ c s^(p/q)`` with ``c^q = ζ``."""
    k = next(k for k in range(q) if (1 + k * p) % q == 0)
    mu = zeta ** k
    c1 = zeta ** ((1 + k * p) // q)
    sigma = MultiPoly.variable("s")
    x1 = MultiPoly.variable("x")
    # substitute s = mu sigma^q and x = sigma^p (c1 + x1); sigma and x1 reuse names
    Q2 = Q.subs({"x": sigma ** p * (c1 + x1), "s": mu * sigma ** q})
    v = min(es[Q2.vars.index("s")] for es in Q2.as_dict())
    Q2 = exact_divide(Q2, sigma ** v)
    return [e for _, e in _branches(Q2, depth + 1)]


def puiseux_leading(P_: MultiPoly, center):
    """Leading exponent and ramification index of each branch through ``center``.

    Examples
    --------
    >>> from .exactalg import P
    >>> [(str(b.exponent), b.index) for b in puiseux_leading(P("lam^2 - t"), (0, 0))]
    [('1/2', 2)]
    """
    Q = recenter(P_, center)
    return [Branch(g, e) for g, e in _branches(Q)]


def edge_polynomials(P_: MultiPoly, center):
    return [e.polynomial for e in newton_polygon(P_, center).lower_hull]


# -- curves and fibers ---------------------------------------------------

def reduced_curve(P_: MultiPoly) -> MultiPoly:
    """Drop factors λ, λ-1, λ-t and factors free of λ; keep one copy of each factor."""
    Q = P_
    for f in (LAM, LAM - 1, LAM - T):
        Q, _ = strip_factor(Q, f)
    c = content_in(Q, "lam")
    if not c.is_constant():
        Q = exact_divide(Q, c)
    return squarefree_part(Q, "lam")


def fiber_partition(P_: MultiPoly, t0) -> Partition:
    """Ramification indices of ``π : Γ -> ℙ¹`` over ``t0`` on the reduced curve.

    Examples
    --------
    >>> from .exactalg import P
    >>> str(fiber_partition(P("lam^2 - t"), 0)), str(fiber_partition(P("lam^2 - t"), 1))
    ('(2)', '(1+1)')
    """
    R = reduced_curve(P_)
    d = R.degree("lam")
    if d < 1:
        raise CurveError("curve must have positive degree in λ")
    if any(v not in ("lam", "t") for v in R.free_vars()):
        raise ValueError("fiber_partition needs numeric coefficients")
    Q = _base_chart(R, t0)
    parts = []
    f0 = Q.subs({"s": 0})
    roots, rest = rational_roots(f0, "lam")
    for f, m in rest:
        if m > 1:
            raise NonGenericSample("repeated irrational point in the fiber")
        parts += [1] * f.degree("lam")
    for r, m in roots:
        if m == 1:
            parts.append(1)
        else:
            parts += [e for _, e in _branches(Q.subs({"lam": X + r}))]
    k = d - f0.degree("lam")
    if k == 1:
        parts.append(1)
    elif k > 1:
        parts += [e for _, e in _branches(_invert(Q, "lam", "x"))]
    if sum(parts) != d:
        raise ArithmeticError(f"fiber over {t0} has degree {sum(parts)}, expected {d}")
    return Partition(tuple(parts))


def _base_chart(R, t0):
    t0 = _point(t0)
    if t0 == INF:
        return _invert(R, "t", "s")
    return R.subs({"t": S + t0})


def projection_degree(P_: MultiPoly) -> int:
    return reduced_curve(P_).degree("lam")


# -- Belyi check ---------------------------------------------------------

@dataclass(frozen=True)
class BelyiResult:
    belyi: bool
    extra_factor: MultiPoly | None = None
    discriminant: MultiPoly = field(default=None, compare=False, repr=False)


def belyi_check(P_: MultiPoly) -> BelyiResult:
    """Whether ``disc_λ(P)`` vanishes only over t = 0 and t = 1.

    Examples
    --------
    >>> from .exactalg import P
    >>> belyi_check(P("lam^2 - t")).belyi
    True
    """
    if P_.degree("lam") < 2:
        raise ValueError("belyi_check needs degree at least 2 in λ")
    D = discriminant(P_, "lam")
    if not D:
        raise CurveError("curve not squarefree in λ")
    rest = D
    for f in (T, T - 1):
        rest, _ = strip_factor(rest, f)
    if rest.is_constant():
        return BelyiResult(True, None, D)
    return BelyiResult(False, rest.normalized(), D)


# -- face sampling -------------------------------------------------------

LOW, HIGH = -50, 50


def sample_face_beta(face, seed: int = 0):
    """Rational β satisfying exactly the relations of ``face``.

    Classes of forced-equal coordinates get distinct nonzero integers
    drawn from [-50, 50] with ``random.Random(seed)``; vanishing classes
    get 0.  A face with a single nonzero class is the projective point
    with all nonzero entries equal to 1.
    """
    if isinstance(face, str):
        face = FaceSpec.parse(face)
    groups, zero = face.classes()
    free = [g for g in groups if not set(g) & zero]
    if not free:
        raise ValueError(f"face {face.id!r} forces β = 0")
    beta = [mpq(0)] * 4
    if len(free) == 1:
        for i in free[0]:
            beta[i] = mpq(1)
        return tuple(beta)
    rng = random.Random(seed)
    pool = [v for v in range(LOW, HIGH + 1) if v]
    values = rng.sample(pool, len(free))
    for g, v in zip(free, values):
        for i in g:
            beta[i] = mpq(v)
    return tuple(beta)


def face_curve(face, seed: int = 0) -> MultiPoly:
    return build_curve_poly(sample_face_beta(face, seed))


def face_partitions(face, seeds=range(1, 6)):
    """Partitions over t = 0, 1, ∞ for samples on ``face``; must agree across seeds.

    Samples whose branch data is degenerate are skipped and replaced by
    further seeds.
    """
    if isinstance(face, str):
        face = FaceSpec.parse(face)
    seeds = list(seeds)
    want = len(seeds)
    seen, used = None, 0
    candidates = seeds + list(range(1000, 1000 + 10 * want))
    for seed in candidates:
        if used == want:
            break
        try:
            res = tuple(fiber_partition(face_curve(face, seed), t0) for t0 in (0, 1, INF))
        except NonGenericSample:
            continue
        used += 1
        if seen is None:
            seen = res
        elif res != seen:
            raise ArithmeticError(f"face {face.id}: partitions differ between samples")
    return dict(zip((0, 1, INF), seen))


__all__ = [
    "Branch", "BelyiResult", "ComponentThroughCenter", "Edge", "FaceSpec", "INF",
    "NewtonPolygon", "NonGenericSample", "Partition", "belyi_check", "edge_polynomials",
    "face_curve", "face_partitions", "fiber_partition", "newton_polygon", "projection_degree",
    "puiseux_leading", "recenter", "reduced_curve", "sample_face_beta",
]
