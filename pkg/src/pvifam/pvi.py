"""Painlevé VI residue oracle.

For ``P(λ, t) = 0`` the branch derivatives come from implicit
differentiation.  Substituting them into PVI_α and clearing the
denominators (powers of λ, λ-1, λ-t, t, t-1 and P_λ) leaves a
polynomial that is affine-linear in α; it vanishes on every branch of
``P`` exactly when its pseudo-remainder modulo ``P`` in λ is zero.

PVI_α is taken in the form

    λ'' = ½(1/λ + 1/(λ-1) + 1/(λ-t)) λ'² - (1/t + 1/(t-1) + 1/(λ-t)) λ'
          + λ(λ-1)(λ-t)/(t²(t-1)²) · [α₀ - α₁ t/λ² + α₂ (t-1)/(λ-1)²
                                        + (½ - α₃) t(t-1)/(λ-t)²].
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .exactalg import (
    MultiPoly,
    NotDivisible,
    P,
    RatFunc,
    content_in,
    divides,
    exact_divide,
    gcd,
    prem,
    to_rational,
)
from .subspace import AffineSubspace, IncrementalEchelon, nullspace

LAM = MultiPoly.variable("lam")
T = MultiPoly.variable("t")
BETA_SYMBOLS = tuple(MultiPoly.variable(f"beta{i}") for i in range(4))
ALPHA_NAMES = ("alpha0", "alpha1", "alpha2", "alpha3")


class CurveError(ValueError):
    """A curve violates a precondition of the residue oracle."""


@dataclass(frozen=True)
class CurveFamily:
    """A named curve ``P(λ, t)`` with its printed α-pattern."""

    name: str
    P: MultiPoly
    alpha_pattern: tuple
    params: tuple = ("a", "b")


def _coerce_entry(x):
    if isinstance(x, (MultiPoly, RatFunc)):
        return x
    if isinstance(x, str):
        return P(x)
    return MultiPoly.constant(to_rational(x))


def _clear_denominators(entries):
    """Scale a quadruple of RatFunc/MultiPoly entries to polynomials."""
    entries = [_coerce_entry(x) for x in entries]
    den = MultiPoly.one()
    for x in entries:
        if isinstance(x, RatFunc) and not x.den.is_constant():
            g = gcd(den, x.den)
            den = exact_divide(den * x.den, g)
    out = []
    for x in entries:
        if isinstance(x, RatFunc):
            out.append(exact_divide(x.num * den, x.den))
        else:
            out.append(x * den)
    return out, den


def build_curve_poly(beta) -> MultiPoly:
    """The polynomial ``N_β(λ, t)`` of the implicit equation.

    ``N = β₀λ²(λ-1)²(λ-t)² - β₁t(λ-1)²(λ-t)² + β₂(t-1)λ²(λ-t)²
    - β₃t(t-1)λ²(λ-1)²``; entries may be rationals, polynomials in
    parameters or rational functions (denominators are cleared).
    """
    b, _ = _clear_denominators(beta)
    if not any(b):
        raise ValueError("β must not vanish identically")
    l1, lt, t1 = LAM - 1, LAM - T, T - 1
    return (b[0] * LAM ** 2 * l1 ** 2 * lt ** 2 - b[1] * T * l1 ** 2 * lt ** 2
            + b[2] * t1 * LAM ** 2 * lt ** 2 - b[3] * T * t1 * LAM ** 2 * l1 ** 2)


def symbolic_curve_poly():
    """``N`` with symbolic β₀..β₃."""
    return build_curve_poly(BETA_SYMBOLS)


def implicit_derivatives(P_: MultiPoly):
    """Branch derivatives ``(λ', λ'')`` of ``P(λ, t) = 0`` as reduced RatFuncs.

    Examples
    --------
    >>> d1, d2 = implicit_derivatives(P("lam^2 - t"))
    >>> str(d1), str(d2)
    ('(1/2) / (1 * lam)', '(-1/4) / (1 * lam^3)')
    """
    if P_.degree("lam") < 1:
        raise CurveError("curve is constant in λ")
    A, B = P_.diff("t"), P_.diff("lam")
    if not B:
        raise CurveError("∂P/∂λ vanishes identically")
    d1 = RatFunc(-A, B)
    num2 = -A.diff("t") * B * B + 2 * A * B * B.diff("t") - A * A * B.diff("lam")
    d2 = RatFunc(num2, B ** 3)
    return d1, d2


def check_curve(P_: MultiPoly):
    """Raise :class:`CurveError` unless ``P`` satisfies the oracle preconditions."""
    if P_.degree("lam") < 1 or P_.degree("t") < 1:
        raise CurveError("curve must have positive degree in λ and t")
    for f, name in ((LAM, "λ"), (LAM - 1, "λ-1"), (LAM - T, "λ-t")):
        if divides(f, P_):
            raise CurveError(f"curve is divisible by {name}")
    g = gcd(P_, P_.diff("lam"))
    if g.degree("lam") > 0:
        raise CurveError("curve is not squarefree in λ")


@lru_cache(maxsize=256)
def _residue_parts(P_: MultiPoly):
    """Pseudo-remainders of the α-free part and of each α-coefficient."""
    check_curve(P_)
    A, B = P_.diff("t"), P_.diff("lam")
    At, Bt, Bl = A.diff("t"), B.diff("t"), B.diff("lam")
    l1, lt = LAM - 1, LAM - T
    L = LAM * l1 * lt
    TT = T * (T - 1)
    S = l1 * lt + LAM * lt + LAM * l1
    num2 = -At * B * B + 2 * A * B * Bt - A * A * Bl
    B2 = B * B
    B3 = B2 * B
    fixed = (2 * num2 * L * TT ** 2 - S * A * A * B * TT ** 2
             - 2 * (2 * T - 1) * A * B2 * L * TT - 2 * A * B2 * LAM * l1 * TT ** 2
             - B3 * TT * LAM ** 2 * l1 ** 2)
    weights = (
        L * L,
        -T * l1 ** 2 * lt ** 2,
        (T - 1) * LAM ** 2 * lt ** 2,
        -TT * LAM ** 2 * l1 ** 2,
    )
    coeffs = [-2 * B3 * w for w in weights]
    e = max(q.degree("lam") for q in [fixed] + coeffs) - P_.degree("lam") + 1
    e = max(e, 0)
    return prem(fixed, P_, "lam", e), tuple(prem(c, P_, "lam", e) for c in coeffs)


def pvi_residue(P_: MultiPoly, alpha) -> MultiPoly:
    """Cleared residue of PVI_α along ``P = 0``, reduced modulo ``P``.

    The zero polynomial means every branch of ``P`` solves PVI_α.
    ``alpha`` entries may contain parameter symbols, in which case zero
    means "for all parameter values".
    """
    fixed, coeffs = _residue_parts(P_)
    al, den = _clear_denominators(alpha)
    r = fixed * den
    for a, c in zip(al, coeffs):
        if a:
            r = r + a * c
    return r.normalized()


def _curve_params(P_):
    return tuple(v for v in P_.free_vars() if v not in ("lam", "t"))


def _equations(P_):
    """Linear equations ``sum c_i α_i = rhs`` from the residue coefficients."""
    fixed, coeffs = _residue_parts(P_)
    groups = [p.monomial_coefficients(("lam", "t")) for p in (fixed,) + coeffs]
    keys = sorted(set().union(*[g.keys() for g in groups]), reverse=True)
    zero = MultiPoly.zero()
    rows = []
    for k in keys:
        cs = [g.get(k, zero) for g in groups]
        rows.append([cs[1], cs[2], cs[3], cs[4], -cs[0]])
    return rows


def solve_alpha_subspace(P_: MultiPoly):
    """All α for which every branch of ``P`` solves PVI_α.

    Returns an :class:`AffineSubspace` (over ℚ, or over the field of the
    curve's parameters) or ``None`` when no α works.

    Examples
    --------
    >>> solve_alpha_subspace(P("lam^2 - t"))
    AffineSubspace(a, a, b, b)
    """
    rows = _equations(P_)
    params = _curve_params(P_)
    field = RatFunc if params else mpq
    ech = IncrementalEchelon(4, field)
    for r in rows:
        if field is mpq:
            r = [x.constant_value() for x in r]
        ech.add(r)
        if ech.inconsistent:
            return None
    return ech.solution()


def family_alpha_subspace(P_: MultiPoly, params=None):
    """ℚ-affine hull of the α-subspaces of a parametric family of curves.

    For a curve with parameters (a, b) the per-curve subspace is an
    affine space over ℚ(a, b); sweeping the parameters sweeps out a
    rational affine subspace, computed here as the common solution set
    of every ℚ-affine relation satisfied identically by the swept point.
    """
    sub = solve_alpha_subspace(P_)
    if sub is None:
        return None
    params = params or _curve_params(P_)
    if sub.field is mpq:
        return sub
    svars = [MultiPoly.variable(f"_s{i}") for i in range(sub.dimension)]
    point = []
    for i in range(4):
        v = RatFunc.coerce(sub.base[i])
        for s, d in zip(svars, sub.directions):
            v = v + RatFunc(s) * RatFunc.coerce(d[i])
        point.append(v)
    nums, den = _clear_denominators(point)
    # relation sum c_i F_i = mu  <=>  sum c_i N_i - mu * den = 0
    polys = nums + [-den]
    ctx = _ctx(polys)
    aligned = [q.with_vars(ctx) for q in polys]
    keys = sorted(set().union(*(q.terms for q in aligned)))
    rows = [[q.terms.get(k, mpq(0)) for q in aligned] for k in keys]
    relations = nullspace(rows, 5)
    ech = IncrementalEchelon(4, mpq)
    for rel in relations:
        ech.add(rel)
    return ech.solution()


def _ctx(polys):
    from .exactalg import canonical_vars
    return canonical_vars(v for q in polys for v in q.vars)


def alpha_in_subspace(P_: MultiPoly, alpha) -> bool:
    return not pvi_residue(P_, alpha)


def implicit_equation_poly(beta) -> MultiPoly:
    """Alias of :func:`build_curve_poly` for β = α' - α''."""
    return build_curve_poly(beta)


# -- face identities -----------------------------------------------------

def _beta_sub(rel):
    b = list(BETA_SYMBOLS)
    return [rel.get(i, b[i]) for i in range(4)]


def _n0(beta):
    l1 = LAM - 1
    return beta[0] * LAM ** 2 * l1 ** 2 - beta[1] * T * l1 ** 2 + beta[2] * (T - 1) * LAM ** 2


B0, B1, B2, B3 = BETA_SYMBOLS

#: face id -> (β substitution, right-hand side of the identity)
FACE_IDENTITIES = {
    "b0=b2,b1=b3": ({2: B0, 3: B1},
                    lambda: (LAM ** 2 - 2 * LAM + T)
                    * (B0 * LAM ** 2 * (LAM - T) ** 2 - B1 * T ** 2 * (LAM - 1) ** 2)),
    "b0=b1=b2=b3": ({1: B0, 2: B0, 3: B0},
                    lambda: B0 * (LAM ** 2 - 2 * LAM + T) * (LAM ** 2 - 2 * LAM * T + T)
                    * (LAM ** 2 - T)),
    "b0=b1=b2,b3=9b0": ({1: B0, 2: B0, 3: 9 * B0},
                        lambda: B0 * (LAM ** 2 - 2 * LAM + 2 * LAM * T - T)
                        * P("t^2 - 4*lam^3*t + 6*lam^2*t - 4*lam*t + lam^4")),
    "b3=0": ({3: MultiPoly.zero()},
             lambda: (LAM - T) ** 2 * _n0(BETA_SYMBOLS)),
    "b3=0,b0=4b1=4b2": ({0: 4 * B1, 2: B1, 3: MultiPoly.zero()},
                        lambda: (LAM - T) ** 2 * B1 * (2 * LAM - 1) * P("2*lam^3 - 3*lam^2 + t")),
    "b3=0,b1=4b0=4b2": ({1: 4 * B0, 2: B0, 3: MultiPoly.zero()},
                        lambda: (LAM - T) ** 2 * B0 * (LAM - 2) * P("lam^3 - 3*lam*t + 2*t")),
}


def verify_face_factorization(face_id: str) -> bool:
    """Check the factorization identity of ``N`` on a face, symbolically in β."""
    try:
        rel, rhs = FACE_IDENTITIES[face_id]
    except KeyError:
        raise KeyError(f"unknown face {face_id!r}; known: {sorted(FACE_IDENTITIES)}") from None
    return build_curve_poly(_beta_sub(rel)) == rhs()


def boundary_identities():
    """Values of ``N`` on λ = 0, λ = 1 and λ = t, checked symbolically in β."""
    N = symbolic_curve_poly()
    return {
        "N(0,t) = -beta1*t^3": N.subs({"lam": 0}) == -B1 * T ** 3,
        "N(1,t) = beta2*(t-1)^3": N.subs({"lam": 1}) == B2 * (T - 1) ** 3,
        "N(t,t) = -beta3*t^3*(t-1)^3": N.subs({"lam": T}) == -B3 * T ** 3 * (T - 1) ** 3,
    }


def curve_content_free(P_: MultiPoly) -> MultiPoly:
    """Primitive part with respect to λ, in unit normal form."""
    c = content_in(P_, "lam")
    return exact_divide(P_, c).normalized()


__all__ = [
    "AffineSubspace", "CurveError", "CurveFamily", "FACE_IDENTITIES", "NotDivisible",
    "alpha_in_subspace", "boundary_identities", "build_curve_poly", "check_curve",
    "curve_content_free", "family_alpha_subspace", "implicit_derivatives",
    "implicit_equation_poly", "pvi_residue", "solve_alpha_subspace", "symbolic_curve_poly",
    "verify_face_factorization",
]
