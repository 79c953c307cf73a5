"""The S₄ action on the four singular points, on quadruples and on curves.

The points ∞, 0, 1, t are identified with coordinates 0, 1, 2, 3 of a
β- or α-quadruple.  The generators are

    x1 : s -> 1 - s          swaps coordinates 1, 2
    x2 : s -> 1/s            swaps coordinates 0, 1
    x3 : s -> (t - s)/(t - 1) swaps coordinates 1, 3

and act on curves by ``(λ, t) -> (x(λ), x(t))``, with ``t -> t/(t - 1)``
for x3.  A word is applied left to right.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .exactalg import MultiPoly, MobiusMap, strip_factor

LAM = MultiPoly.variable("lam")
T = MultiPoly.variable("t")

GENERATORS = ("x1", "x2", "x3")
_SWAPS = {"x1": (1, 2), "x2": (0, 1), "x3": (1, 3)}


def _perm_of(gen):
    i, j = _SWAPS[gen]
    p = list(range(4))
    p[i], p[j] = j, i
    return tuple(p)


@dataclass(frozen=True)
class S4Element:
    """Group element: a shortest word and the induced coordinate permutation.

    ``perm`` acts on quadruples by ``(g v)[i] = v[perm[i]]``.
    """

    word: tuple
    perm: tuple

    def then(self, other):
        """Apply ``self`` first and ``other`` second."""
        p = tuple(self.perm[other.perm[i]] for i in range(4))
        return element_of_perm(p)

    def inverse(self):
        inv = [0] * 4
        for i, j in enumerate(self.perm):
            inv[j] = i
        return element_of_perm(tuple(inv))

    def order(self):
        g, k = self, 1
        while g.perm != (0, 1, 2, 3):
            g, k = g.then(self), k + 1
        return k

    def __str__(self):
        return "*".join(self.word) if self.word else "id"


@lru_cache(maxsize=None)
def _table():
    """Breadth-first enumeration: permutation -> shortest word."""
    ident = (0, 1, 2, 3)
    seen = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in GENERATORS:
                q = _perm_of(g)
                r = tuple(p[q[i]] for i in range(4))
                if r not in seen:
                    seen[r] = seen[p] + (g,)
                    nxt.append(r)
        frontier = nxt
    return seen


def element_of_perm(perm) -> S4Element:
    perm = tuple(perm)
    return S4Element(_table()[perm], perm)


def element(word) -> S4Element:
    """Element of a word such as ``("x1", "x3")`` or ``"x1*x3"``."""
    if isinstance(word, str):
        word = tuple(w for w in word.replace(" ", "").split("*") if w and w != "id")
    g = identity()
    for w in word:
        if w not in _SWAPS:
            raise ValueError(f"unknown generator {w!r}")
        g = g.then(S4Element((w,), _perm_of(w)))
    return g


def identity() -> S4Element:
    return S4Element((), (0, 1, 2, 3))


def elements():
    """All 24 elements, sorted by word length then word."""
    return sorted((S4Element(w, p) for p, w in _table().items()),
                  key=lambda g: (len(g.word), g.word))


# -- actions -------------------------------------------------------------

def generator_maps(gen):
    """``(λ-map, t-map)`` of a generator as Möbius maps in λ (resp. t).

    The λ-map of x3 has coefficients in t.
    """
    if gen == "x1":
        return MobiusMap(-1, 1, 0, 1), MobiusMap(-1, 1, 0, 1)
    if gen == "x2":
        return MobiusMap(0, 1, 1, 0), MobiusMap(0, 1, 1, 0)
    if gen == "x3":
        return MobiusMap(-1, T, 0, T - 1), MobiusMap(1, 0, 1, -1)
    raise ValueError(f"unknown generator {gen!r}")


def quadruple_action(g, v):
    """Permute a β- or α-quadruple.

    Examples
    --------
    >>> quadruple_action(element("x2"), (1, 2, 3, 4))
    (2, 1, 3, 4)
    """
    if not isinstance(g, S4Element):
        g = element(g)
    v = tuple(v)
    return tuple(v[g.perm[i]] for i in range(4))


def _reverse(P_, var):
    """``var^d P(1/var)`` with ``d = deg_var P``."""
    cl = P_.coeff_list(var)
    x = MultiPoly.variable(var)
    out = MultiPoly.zero()
    for k, c in enumerate(cl):
        if c:
            out = out + c * x ** (len(cl) - 1 - k)
    return out


def _apply_generator(gen, P_):
    # denominators are cleared by hand: only λ, t and t - 1 can appear as spurious factors
    if gen == "x1":
        out = P_.subs({"lam": 1 - LAM, "t": 1 - T})
        spurious = ()
    elif gen == "x2":
        out = _reverse(_reverse(P_, "lam"), "t")
        spurious = (LAM, T)
    elif gen == "x3":
        D = max(i + j for i, j in P_.monomial_coefficients(("lam", "t")))
        out = MultiPoly.zero()
        for (i, j), c in P_.monomial_coefficients(("lam", "t")).items():
            out = out + c * (T - LAM) ** i * T ** j * (T - 1) ** (D - i - j)
        spurious = (T - 1,)
    else:
        raise ValueError(f"unknown generator {gen!r}")
    for f in spurious:
        out, _ = strip_factor(out, f)
    return out.normalized()


def transform_curve(g, P_: MultiPoly) -> MultiPoly:
    """Image of the curve ``P = 0`` in unit normal form, with the spurious factors λ, t, t - 1 removed."""
    if not isinstance(g, S4Element):
        g = element(g)
    out = P_.normalized()
    for gen in g.word:
        out = _apply_generator(gen, out)
    return out


# -- subgroups -----------------------------------------------------------

LABELS = {
    (1, ()): "1",
    (2, ((2, 1),)): "S2",
    (3, ((3, 2),)): "Z3",
    (4, ((2, 3),)): "S2xS2",
    (4, ((2, 1), (4, 2))): "Z4",
    (6, ((2, 3), (3, 2))): "S3",
    (8, ((2, 5), (4, 2))): "D4",
    (12, ((2, 3), (3, 8))): "A4",
    (24, ((2, 9), (3, 8), (4, 6))): "S4",
}


@dataclass(frozen=True)
class Subgroup:
    elements: frozenset

    @property
    def order(self):
        return len(self.elements)

    @property
    def label(self):
        census = Counter(g.order() for g in self.elements if g.perm != (0, 1, 2, 3))
        return LABELS.get((self.order, tuple(sorted(census.items()))), f"order {self.order}")

    def is_subgroup(self):
        els = self.elements
        return (identity() in els and all(g.inverse() in els for g in els)
                and all(g.then(h) in els for g in els for h in els))

    def __str__(self):
        return self.label


def _group(pred):
    return Subgroup(frozenset(g for g in elements() if pred(g)))


def stabilizer_of_curve(P_: MultiPoly) -> Subgroup:
    base = P_.normalized()
    return _group(lambda g: transform_curve(g, base).equal_up_to_unit(base))


def stabilizer_of_alpha(alpha) -> Subgroup:
    alpha = tuple(alpha)
    return _group(lambda g: quadruple_action(g, alpha) == alpha)


def set_stabilizer(quadruples) -> Subgroup:
    """Elements mapping a set of quadruples onto itself."""
    qs = {tuple(q) for q in quadruples}
    return _group(lambda g: {quadruple_action(g, q) for q in qs} == qs)


def orbit(v):
    return sorted({quadruple_action(g, v) for g in elements()})


def curve_orbit(P_: MultiPoly):
    """``{element: image}`` for the 24 elements."""
    return {g: transform_curve(g, P_) for g in elements()}


__all__ = [
    "GENERATORS", "LABELS", "S4Element", "Subgroup", "curve_orbit", "element",
    "element_of_perm", "elements", "generator_maps", "identity", "orbit",
    "quadruple_action", "set_stabilizer", "stabilizer_of_alpha", "stabilizer_of_curve",
    "transform_curve",
]
