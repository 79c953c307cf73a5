import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from pvifam.exactalg import P, to_text
from pvifam.pvi import build_curve_poly, symbolic_curve_poly
from pvifam.ramification import (
    INF,
    ComponentThroughCenter,
    FaceSpec,
    Partition,
    belyi_check,
    face_curve,
    face_partitions,
    fiber_partition,
    newton_polygon,
    projection_degree,
    puiseux_leading,
    sample_face_beta,
)

N0 = P("beta0*lam^2*(lam - 1)^2 - beta1*t*(lam - 1)^2 + beta2*(t - 1)*lam^2")

# face -> partitions over t = 0, 1, inf
TABLE3 = {
    "generic": ("(1+1+1+1+2)", "(1+1+1+1+2)", "(1+1+1+1+2)"),
    "b0=b2": ("(1+1+1+3)", "(1+1+1+1+2)", "(1+1+1+1+2)"),
    "b0=b2,b1=b3": ("(1+1+2+2)", "(1+1+1+1+2)", "(1+1+1+1+2)"),
    "b0=b1=b2": ("(1+1+1+3)", "(1+1+1+3)", "(1+1+1+3)"),
    "b0=b1=b2=b3": ("(1+1+2+2)", "(1+1+2+2)", "(1+1+2+2)"),
    "b3=0": ("(1+1+2)", "(1+1+2)", "(1+1+2)"),
    "b0=b2,b3=0": ("(1+3)", "(1+1+2)", "(1+1+2)"),
    "b0=b1=b2,b3=0": ("(1+3)", "(1+3)", "(1+3)"),
    "b2=b3=0": ("(2)", "(1+1)", "(2)"),
    "b2=b3=0,b0=b1": ("(2)", "(1+1)", "(2)"),
}


def test_newton_polygon_generic_n():
    hull = newton_polygon(symbolic_curve_poly(), (0, 0)).lower_hull
    assert [(e.start, e.end) for e in hull] == [((0, 3), (2, 1)), ((2, 1), (4, 0))]
    assert [e.exponent for e in hull] == [1, mpq(1, 2)]
    assert hull[0].polynomial == P("(beta3 - beta1)*c^2 + 2*beta1*c - beta1")
    assert hull[1].polynomial == P("(beta0 - beta2)*c^2 + beta3 - beta1")


def test_newton_polygon_n0():
    (edge,) = newton_polygon(N0, (0, 0)).lower_hull
    assert edge.exponent == mpq(1, 2)
    assert edge.polynomial.equal_up_to_unit(P("beta1 + (beta2 - beta0)*c^2"))


def test_newton_polygon_square_root():
    (edge,) = newton_polygon(P("lam^2 - t"), (0, 0)).lower_hull
    assert edge.exponent == mpq(1, 2) and edge.slope == mpq(-1, 2)


def test_component_through_center():
    with pytest.raises(ComponentThroughCenter):
        puiseux_leading(P("lam*(lam^2 - t)"), (0, 0))


def test_puiseux_square_root():
    (b,) = puiseux_leading(P("lam^2 - t"), (0, 0))
    assert (b.exponent, b.index) == (mpq(1, 2), 2)


def test_puiseux_n0_face_sample():
    N0num = N0.subs({f"beta{i}": v for i, v in enumerate(sample_face_beta("b3=0", 1))})
    assert [(b.exponent, b.index) for b in puiseux_leading(N0num, (0, 0))] == [(mpq(1, 2), 2)]


def test_repeated_edge_root_recursion():
    # two branches lam = t^2 and lam = t^2 + t^3 share the leading term
    Q = P("(lam - t^2)*(lam - t^2 - t^3)")
    assert sorted(b.index for b in puiseux_leading(Q, (0, 0))) == [1, 1]
    # lam = t + t^(3/2): the second level is ramified
    Q = P("(lam - t)^2 - t^3")
    assert [b.index for b in puiseux_leading(Q, (0, 0))] == [2]


def test_partition_parse_and_str():
    p = Partition.parse("(2+1+1)")
    assert p.parts == (1, 1, 2) and str(p) == "(1+1+2)" and p.degree == 4


@pytest.mark.parametrize("face", sorted(TABLE3))
def test_table3(face):
    got = face_partitions(face, seeds=range(1, 6))
    assert tuple(str(got[k]) for k in (0, 1, INF)) == TABLE3[face]


def test_fiber_partition_square_root():
    Q = P("lam^2 - t")
    assert [str(fiber_partition(Q, t0)) for t0 in (0, 1, INF)] == ["(2)", "(1+1)", "(2)"]


def test_belyi_examples():
    assert belyi_check(P("lam^2 - t")).belyi
    assert belyi_check(P("lam^4 - 4*t*lam^3 + 6*t*lam^2 - 4*t*lam + t^2")).belyi


def test_belyi_generic_fails_against_sympy():
    res = belyi_check(build_curve_poly((1, 2, 3, 4)))
    assert not res.belyi
    lam, t = sp.symbols("lam t")
    N = sp.sympify(to_text(build_curve_poly((1, 2, 3, 4))).replace("^", "**"),
                   locals={"lam": lam, "t": t})
    d = sp.discriminant(N, lam)
    rest = sp.factor_list(d)[1]
    extra = [f for f, _ in rest if f not in (t, t - 1)]
    prod = sp.expand(sp.Mul(*[f ** m for f, m in rest if f not in (t, t - 1)]))
    ours = sp.sympify(to_text(res.extra_factor).replace("^", "**"), locals={"t": t})
    assert extra and sp.simplify(ours / prod).is_number


def test_belyi_needs_squarefree():
    with pytest.raises(ValueError):
        belyi_check(P("(lam^2 - t)^2"))


def test_sample_face_examples():
    b = sample_face_beta("generic", 1)
    assert len(set(b)) == 4 and all(b)
    b = sample_face_beta("b3=0", 1)
    assert b[3] == 0 and len(set(b[:3])) == 3 and all(b[:3])
    assert sample_face_beta("b0=b1=b2=b3", 1) == (1, 1, 1, 1)
    with pytest.raises(ValueError):
        sample_face_beta("b0=b1=b2=b3=0", 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(TABLE3)), st.integers(0, 10 ** 6))
def test_sample_lies_exactly_on_face(face, seed):
    assert FaceSpec.parse(face).contains(sample_face_beta(face, seed))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(sorted(TABLE3)), st.integers(0, 10 ** 6), st.sampled_from([0, 1, INF]))
def test_partition_sums_to_degree(face, seed, t0):
    N = face_curve(face, seed)
    try:
        part = fiber_partition(N, t0)
    except ValueError:
        return  # degenerate sample
    assert part.degree == projection_degree(N)
