"""Exact linear algebra and affine subspaces of the α-space.

Scalars are ``mpq`` or :class:`RatFunc` (for subspaces defined over a
parameter field such as ℚ(a, b)); the two never mix inside one matrix.
"""

from __future__ import annotations

from gmpy2 import mpq

from .exactalg import MultiPoly, RatFunc, to_rational

N = 4


def _scalar(x, field):
    if field is RatFunc:
        return RatFunc.coerce(x)
    if isinstance(x, RatFunc):
        return x.constant_value()
    if isinstance(x, MultiPoly):
        return x.constant_value()
    return to_rational(x)


def _is_param(x):
    if isinstance(x, RatFunc):
        return not x.is_constant()
    if isinstance(x, MultiPoly):
        return not x.is_constant()
    return False


def field_of(rows):
    """``RatFunc`` when any entry depends on a parameter, else ``mpq``."""
    for r in rows:
        for x in r:
            if _is_param(x):
                return RatFunc
    return mpq


def rref(rows, ncols, field=None):
    """Reduced row echelon form; returns ``(rows, pivot columns)``."""
    field = field or field_of(rows)
    m = [[_scalar(x, field) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


class IncrementalEchelon:
    """Row-reduce equations one at a time, stopping once the rank saturates.

    Rows are augmented equations ``[c_0, ..., c_{n-1}, rhs]`` meaning
    ``sum c_j x_j = rhs``.
    """

    def __init__(self, n, field):
        self.n = n
        self.field = field
        self.rows = []  # (pivot, row) with row[pivot] == 1
        self.inconsistent = False

    def add(self, row):
        row = [_scalar(x, self.field) for x in row]
        for p, r in self.rows:
            if row[p]:
                f = row[p]
                row = [x - f * y for x, y in zip(row, r)]
        piv = next((j for j in range(self.n) if row[j]), None)
        if piv is None:
            if row[self.n]:
                self.inconsistent = True
            return
        inv = 1 / row[piv]
        row = [x * inv for x in row]
        new = []
        for p, r in self.rows:
            if r[piv]:
                f = r[piv]
                r = [x - f * y for x, y in zip(r, row)]
            new.append((p, r))
        new.append((piv, row))
        new.sort(key=lambda pr: pr[0])
        self.rows = new

    @property
    def rank(self):
        return len(self.rows)

    def solution(self):
        """Affine solution set, or ``None`` when inconsistent."""
        if self.inconsistent:
            return None
        zero = _scalar(0, self.field)
        one = _scalar(1, self.field)
        pivots = [p for p, _ in self.rows]
        base = [zero] * self.n
        for p, r in self.rows:
            base[p] = r[self.n]
        dirs = []
        for f in range(self.n):
            if f in pivots:
                continue
            v = [zero] * self.n
            v[f] = one
            for p, r in self.rows:
                v[p] = -r[f]
            dirs.append(v)
        return AffineSubspace(base, dirs)


class AffineSubspace:
    """Affine subspace ``base + span(directions)`` in canonical form.

    Directions are in reduced row echelon form with leading ones and the
    base point has zeros in all pivot coordinates, so two subspaces are
    equal exactly when their fields are equal.
    """

    __slots__ = ("base", "directions", "pivots", "field")

    def __init__(self, base, directions=()):
        rows = [list(base)] + [list(d) for d in directions]
        field = field_of(rows)
        base = [_scalar(x, field) for x in base]
        if len(base) != N:
            raise ValueError("α-vectors have four coordinates")
        dirs, pivots = rref(list(directions), N, field) if directions else ([], [])
        for p, d in zip(pivots, dirs):
            if base[p]:
                f = base[p]
                base = [x - f * y for x, y in zip(base, d)]
        self.base = tuple(base)
        self.directions = tuple(tuple(d) for d in dirs)
        self.pivots = tuple(pivots)
        self.field = field

    @classmethod
    def point(cls, p):
        return cls(p, [])

    @classmethod
    def from_pattern(cls, entries, params):
        """Subspace swept by affine-linear ``entries`` in the symbols ``params``.

        Example: entries ``(4a, 1/18, a, a)`` with params ``("a",)`` give
        the line through (0,1/18,0,0) with direction (4,0,1,1).
        """
        entries = [MultiPoly.coerce(e) for e in entries]
        base = []
        dirs = [[mpq(0)] * N for _ in params]
        for i, e in enumerate(entries):
            if e.total_degree() > 1:
                raise ValueError("pattern entries must be affine-linear")
            rest = e
            for j, s in enumerate(params):
                c = e.coeff(s, 1)
                if c:
                    dirs[j][i] = c.constant_value()
                    rest = rest - c * MultiPoly.variable(s)
            if not rest.is_constant():
                raise ValueError(f"unexpected symbol in pattern entry {e}")
            base.append(rest.constant_value())
        return cls(base, [d for d in dirs if any(d)])

    @property
    def dimension(self):
        return len(self.directions)

    def contains(self, point):
        v = [_scalar(x, self.field) - b for x, b in zip(point, self.base)]
        for p, d in zip(self.pivots, self.directions):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, d)]
        return not any(v)

    def contains_subspace(self, other):
        return self.contains(other.base) and all(
            self.contains([b + x for b, x in zip(self.base, d)]) for d in other.directions
        )

    def __eq__(self, other):
        if not isinstance(other, AffineSubspace):
            return NotImplemented
        return self.base == other.base and self.directions == other.directions

    def __hash__(self):
        return hash((self.base, self.directions))

    def as_pattern(self, names=("a", "b", "c", "d")):
        """Human-readable parametric form, e.g. ``(a, 1/8, a, a)``."""
        parts = []
        for i in range(N):
            terms = []
            b = self.base[i]
            for name, d in zip(names, self.directions):
                c = d[i]
                if not c:
                    continue
                if c == 1:
                    terms.append(name)
                elif c == -1:
                    terms.append(f"-{name}")
                elif isinstance(c, RatFunc) and not c.is_constant():
                    terms.append(f"({c})*{name}")
                elif getattr(c, "denominator", 1) != 1:
                    terms.append(f"({c}){name}")
                else:
                    terms.append(f"{c}{name}")
            if b or not terms:
                terms.append(str(b))
            parts.append(" + ".join(terms))
        return "(" + ", ".join(parts) + ")"

    def to_json(self):
        return {
            "base": [str(x) for x in self.base],
            "directions": [[str(x) for x in d] for d in self.directions],
            "pattern": self.as_pattern(),
        }

    def __repr__(self):
        return f"AffineSubspace{self.as_pattern()}"


def affine_hull(points):
    """Canonical affine hull of a nonempty list of rational 4-vectors."""
    points = [[to_rational(x) if not isinstance(x, (MultiPoly, RatFunc)) else _scalar(x, mpq)
               for x in p] for p in points]
    if not points:
        raise ValueError("affine hull of an empty set")
    p0 = points[0]
    dirs = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    dirs, _ = rref(dirs, N, mpq) if dirs else ([], [])
    return AffineSubspace(p0, dirs)


def nullspace(rows, ncols):
    """Basis of ``{x : rows · x = 0}`` over ℚ."""
    m, pivots = rref(rows, ncols, mpq) if rows else ([], [])
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for p, r in zip(pivots, m):
            v[p] = -r[f]
        basis.append(v)
    return basis
