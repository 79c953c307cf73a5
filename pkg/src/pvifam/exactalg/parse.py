"""Canonical text form of polynomials and a small expression parser.

Serialization writes terms in descending canonical monomial order as
``c * v1^e1*v2^e2`` joined by `` + ``; a constant term is written as
the bare coefficient and the zero polynomial as ``0``.  The parser
accepts that grammar and ordinary infix expressions::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") integer)?
    atom   := integer | name | "(" expr ")"

Division is allowed only by constant subexpressions.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .poly import ALIASES, MultiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_λβ₀₁₂₃][A-Za-z_0-9λβ₀₁₂₃']*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _format_coeff(c):
    return str(c)


def to_text(p: MultiPoly) -> str:
    """Canonical serialization of ``p``."""
    if not p.terms:
        return "0"
    parts = []
    for exps, c in p.exponents():
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(p.vars, exps) if e)
        parts.append(f"{_format_coeff(c)} * {mono}" if mono else _format_coeff(c))
    return " + ".join(parts)


def _tokenize(s):
    pos = 0
    out = []
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {s[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", ALIASES.get(name, name)))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self):
        node = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                node = node * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    raise ParseError("division by a non-constant or zero expression")
                node = node / rhs.constant_value()
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            if self.peek() == ("op", "-"):
                raise ParseError("negative exponents are not polynomial")
            base = base ** self.take("num")[1]
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return MultiPoly.constant(mpq(val))
        if kind == "name":
            self.take()
            return MultiPoly.variable(val)
        if (kind, val) == ("op", "("):
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str) -> MultiPoly:
    """Parse a polynomial expression.

    Examples
    --------
    >>> str(parse_poly("(lam - 1)^2 + b*(t - 1)"))
    '1 * lam^2 + -2 * lam + 1 * t*b + -1 * b + 1'
    """
    p = _Parser(text)
    node = p.expr()
    if p.i != len(p.toks):
        raise ParseError(f"trailing input at token {p.i}: {p.toks[p.i][1]!r}")
    return node.trim()
