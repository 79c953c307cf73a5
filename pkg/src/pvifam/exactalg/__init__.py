"""Exact arithmetic: rationals, sparse polynomials, rational functions, elimination."""

from .elim import (
    DegenerateInput,
    NotDivisible,
    content_in,
    discriminant,
    divides,
    exact_divide,
    gcd,
    lcm,
    pdivmod,
    prem,
    primitive_part_in,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    strip_factor,
)
from .kernels import backend_name, compiled_available, use_backend
from .parse import ParseError, parse_poly, to_text
from .poly import CANONICAL_ORDER, BigRational, MultiPoly, canonical_vars, to_rational
from .roots import RootSearchError, rational_roots
from .ratfunc import (
    DegenerateSubstitution,
    MobiusMap,
    RatFunc,
    mobius_substitute,
    substitute,
    substitute_ratfunc,
)

P = parse_poly

__all__ = [
    "BigRational", "CANONICAL_ORDER", "DegenerateInput", "DegenerateSubstitution",
    "MobiusMap", "MultiPoly", "NotDivisible", "P", "ParseError", "RatFunc",
    "backend_name", "canonical_vars", "compiled_available", "content_in", "discriminant",
    "divides", "exact_divide", "gcd", "lcm", "mobius_substitute", "parse_poly", "pdivmod",
    "prem", "primitive_part_in", "rational_roots", "RootSearchError", "resultant", "squarefree_decomposition", "squarefree_part",
    "strip_factor", "substitute", "substitute_ratfunc", "to_rational", "to_text", "use_backend",
]
