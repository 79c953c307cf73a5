import random

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from pvifam.exactalg import P, RatFunc, exact_divide, NotDivisible
from pvifam.pvi import (
    FACE_IDENTITIES,
    CurveError,
    boundary_identities,
    build_curve_poly,
    family_alpha_subspace,
    implicit_derivatives,
    pvi_residue,
    solve_alpha_subspace,
    symbolic_curve_poly,
    verify_face_factorization,
)
from pvifam.subspace import AffineSubspace

ROW_4A = P("lam^4 - 2*t*lam^3 - 2*lam^3 + 6*t*lam^2 - 2*t^2*lam - 2*t*lam + t^3 - t^2 + t")
ROW_5D = P("2*lam^3 - 3*t*lam^2 + t^2")
SOLVED = [
    (P("lam^2 - t"), ((0, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 1))),
    (ROW_4A, ((0, mpq(1, 8), 0, 0), (1, 0, 1, 1))),
    (ROW_5D, ((0, 0, mpq(1, 18), 0), (4, 1, 0, 1))),
]


def pattern(base, *dirs):
    return AffineSubspace(base, list(dirs))


def test_build_curve_poly_single_term():
    assert build_curve_poly((1, 0, 0, 0)) == P("lam^2 * (lam - 1)^2 * (lam - t)^2")


def test_build_curve_poly_rejects_zero():
    with pytest.raises(ValueError):
        build_curve_poly((0, 0, 0, 0))


def test_curve_degrees():
    N = symbolic_curve_poly()
    assert N.degree("lam") == 6 and N.degree("t") == 3


def test_boundary_identities():
    assert all(boundary_identities().values())


@pytest.mark.parametrize("face", sorted(FACE_IDENTITIES))
def test_face_identities(face):
    assert verify_face_factorization(face)


def test_unknown_face():
    with pytest.raises(KeyError):
        verify_face_factorization("b0=7")


def test_implicit_derivatives():
    d1, d2 = implicit_derivatives(P("lam^2 - t"))
    assert d1 == RatFunc(1, P("2*lam")) and d2 == RatFunc(-1, P("4*lam^3"))
    d1, d2 = implicit_derivatives(P("lam - t"))
    assert d1 == RatFunc(1) and not d2
    d1, d2 = implicit_derivatives(P("lam^2 - 2*lam + t"))
    assert d1 == RatFunc(1, P("2 - 2*lam"))
    assert d2 == RatFunc(1, 4 * P("(1 - lam)^3"))


def test_implicit_derivatives_constant_in_lam():
    with pytest.raises(CurveError):
        implicit_derivatives(P("t - 1"))


def test_residue_examples():
    assert not pvi_residue(P("lam^2 - t"), ("a", "a", "b", "b"))
    assert pvi_residue(P("lam^2 - t"), (1, 0, 0, 0))
    assert not pvi_residue(ROW_5D, ("4*a", "a", mpq(1, 18), "a"))


@pytest.mark.parametrize("bad", ["lam*(lam^2 - t)", "(lam - 1)*(lam + t)", "(lam - t)*(lam + 1)",
                                 "(lam^2 - t)^2"])
def test_residue_preconditions(bad):
    with pytest.raises(CurveError):
        pvi_residue(P(bad), (0, 0, 0, 0))


def test_solve_examples():
    assert solve_alpha_subspace(P("lam^2 - t")) == pattern((0, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 1))
    assert solve_alpha_subspace(ROW_4A) == pattern((0, mpq(1, 8), 0, 0), (1, 0, 1, 1))


def sympy_residue(lam_expr, alpha):
    t = sp.Symbol("t")
    l1, l2 = sp.diff(lam_expr, t), sp.diff(lam_expr, t, 2)
    a0, a1, a2, a3 = alpha
    rhs = (sp.Rational(1, 2) * (1 / lam_expr + 1 / (lam_expr - 1) + 1 / (lam_expr - t)) * l1 ** 2
           - (1 / t + 1 / (t - 1) + 1 / (lam_expr - t)) * l1
           + lam_expr * (lam_expr - 1) * (lam_expr - t) / (t ** 2 * (t - 1) ** 2)
           * (a0 - a1 * t / lam_expr ** 2 + a2 * (t - 1) / (lam_expr - 1) ** 2
              + (sp.Rational(1, 2) - a3) * t * (t - 1) / (lam_expr - t) ** 2))
    return sp.simplify(l2 - rhs)


def test_t_squared_is_a_point():
    # frozen from direct substitution of lam = t^2 into PVI with sympy
    got = solve_alpha_subspace(P("lam - t^2"))
    assert got == AffineSubspace.point((0, 0, 2, mpq(1, 2)))
    t = sp.Symbol("t")
    assert sympy_residue(t ** 2, (0, 0, 2, sp.Rational(1, 2))) == 0
    assert sympy_residue(t ** 2, (0, 0, 2, 1)) != 0


def test_family_hull_1a():
    assert family_alpha_subspace(P("a*lam^2 - b*t")) == pattern(
        (0, 0, mpq(1, 8), mpq(1, 8)), (1, 0, 0, 0), (0, 1, 0, 0))


rats = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(lambda f: mpq(f.numerator, f.denominator))
alphas = st.tuples(rats, rats, rats, rats)


def raw_residue(curve, alpha):
    from pvifam.pvi import _residue_parts
    fixed, coeffs = _residue_parts(curve)
    out = fixed
    for a, c in zip(alpha, coeffs):
        out = out + c * a
    return out


@settings(max_examples=30, deadline=None)
@given(alphas, alphas, rats)
def test_raw_residue_affine(a1, a2, s):
    curve = ROW_4A
    mid = tuple(x + s * (y - x) for x, y in zip(a1, a2))
    r1, r2, rm = (raw_residue(curve, a) for a in (a1, a2, mid))
    assert rm == r1 + s * (r2 - r1)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(range(len(SOLVED))), rats, rats, alphas)
def test_membership_consistency(i, u, v, off):
    curve, (base, *dirs) = SOLVED[i]
    coeffs = (u, v)
    point = [mpq(b) for b in base]
    for c, d in zip(coeffs, dirs):
        point = [p + c * x for p, x in zip(point, d)]
    sub = solve_alpha_subspace(curve)
    assert sub.contains(point) and not pvi_residue(curve, point)
    assert sub.contains(off) == (not pvi_residue(curve, off))


def test_implicit_equation_divisible():
    # two solved α on the 4A line give β = α' - α'' whose N vanishes along the curve
    rng = random.Random(3)
    for _ in range(3):
        s1, s2 = mpq(rng.randint(-9, 9)), mpq(rng.randint(-9, 9))
        if s1 == s2:
            continue
        beta = tuple((s1 - s2) * d for d in (1, 0, 1, 1))
        N = build_curve_poly(beta)
        try:
            exact_divide(N, ROW_4A)
        except NotDivisible:
            pytest.fail("curve does not divide N_beta")
