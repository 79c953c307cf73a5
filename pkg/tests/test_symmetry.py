import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from pvifam.exactalg import P, MobiusMap, RatFunc
from pvifam.pvi import BETA_SYMBOLS, build_curve_poly, symbolic_curve_poly
from pvifam.ramification import INF, fiber_partition, sample_face_beta
from pvifam.symmetry import (
    GENERATORS,
    element,
    elements,
    generator_maps,
    identity,
    orbit,
    quadruple_action,
    set_stabilizer,
    stabilizer_of_alpha,
    stabilizer_of_curve,
    transform_curve,
)

h, e = mpq(1, 2), mpq(1, 8)
n = mpq(1, 18)

CURVE_STABILIZERS = {
    "lam^2 - t": "D4",
    "lam^4 - 6*lam^2*t + 4*lam*t + 4*lam*t^2 - 3*t^2": "S3",
    "lam^4 - 2*t*lam^3 - 2*lam^3 + 6*t*lam^2 - 2*t^2*lam - 2*t*lam + t^3 - t^2 + t": "S3",
    "-2*lam^3 + 3*t*lam^2 + 3*lam^2 - 6*t*lam + t^2 + t": "S2",
}


def test_group_has_24_elements():
    els = elements()
    assert len(els) == 24 and len({g.perm for g in els}) == 24


def test_generators_are_involutions():
    for g in GENERATORS:
        x = element(g)
        assert x.then(x) == identity()


def test_group_closure():
    els = set(elements())
    assert all(g.then(k) in els for g in els for k in els)


def test_generator_maps():
    lam, t = RatFunc(P("lam")), RatFunc(P("t"))
    l1, t1 = generator_maps("x1")
    assert l1(lam) == RatFunc(P("1 - lam")) and t1(t) == RatFunc(P("1 - t"))
    l2, t2 = generator_maps("x2")
    assert l2(lam) == RatFunc(1, P("lam")) and t2(t) == RatFunc(1, P("t"))
    l3, t3 = generator_maps("x3")
    assert l3(lam) == RatFunc(P("t - lam"), P("t - 1"))
    assert t3(t) == RatFunc(P("t"), P("t - 1"))


def test_quadruple_action_examples():
    assert quadruple_action(element("x1"), BETA_SYMBOLS) == (BETA_SYMBOLS[0], BETA_SYMBOLS[2],
                                                             BETA_SYMBOLS[1], BETA_SYMBOLS[3])
    assert quadruple_action(element("x2"), (1, 2, 3, 4)) == (2, 1, 3, 4)
    assert quadruple_action(element("x3"), (1, 2, 3, 4)) == (1, 4, 3, 2)
    assert quadruple_action(identity(), (1, 2, 3, 4)) == (1, 2, 3, 4)


def test_transform_examples():
    assert transform_curve("x1", P("lam^2 - t")).equal_up_to_unit(P("lam^2 - 2*lam + t"))
    # the corrected 5L curve 2 lam^3 - 3 lam^2 + t maps to 5K
    assert transform_curve("x2", P("2*lam^3 - 3*lam^2 + t")).equal_up_to_unit(P("lam^3 - 3*t*lam + 2*t"))
    # the printed 5L curve does not
    assert transform_curve("x2", P("lam^3 - 3*lam^2 + t")).equal_up_to_unit(P("lam^3 - 3*t*lam + t"))


@pytest.mark.parametrize("gen", GENERATORS)
def test_equivariance_symbolic(gen):
    img = transform_curve(gen, symbolic_curve_poly())
    assert img.equal_up_to_unit(build_curve_poly(quadruple_action(gen, BETA_SYMBOLS)))


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(range(24)), st.tuples(*[st.integers(-9, 9).filter(bool)] * 4))
def test_equivariance_words(i, beta):
    # nonzero β keeps N free of factors depending on t alone
    g = elements()[i]
    img = transform_curve(g, build_curve_poly(beta))
    assert img.equal_up_to_unit(build_curve_poly(quadruple_action(g, beta)))


@pytest.mark.parametrize("curve,label", sorted(CURVE_STABILIZERS.items()))
def test_curve_stabilizers(curve, label):
    s = stabilizer_of_curve(P(curve))
    assert s.is_subgroup() and s.label == label


def test_alpha_stabilizers():
    assert stabilizer_of_alpha((0, 0, 0, 0)).label == "S4"
    assert stabilizer_of_alpha((e, e, n, n)).label == "S2xS2"
    assert stabilizer_of_alpha((h, n, e, e)).label == "S2"
    assert stabilizer_of_alpha((0, e, 0, 0)).label == "S3"


def test_five_series_set_stabilizer():
    quads = orbit((h, n, e, e))
    assert len(quads) == 12
    assert set_stabilizer(quads).label == "S4"


@pytest.mark.parametrize("face", ["generic", "b0=b2", "b3=0", "b0=b2,b3=0", "b2=b3=0"])
@pytest.mark.parametrize("gen,swap", [("x1", {0: 1, 1: 0, INF: INF}), ("x2", {0: INF, INF: 0, 1: 1})])
def test_partitions_permute_with_base_points(face, gen, swap):
    beta = sample_face_beta(face, 3)
    N = build_curve_poly(beta)
    M = build_curve_poly(quadruple_action(gen, beta))
    for t0 in (0, 1, INF):
        assert fiber_partition(M, t0) == fiber_partition(N, swap[t0])
