"""Pure-Python sparse kernels on packed-monomial term maps.

A term map is a ``dict`` from a packed exponent vector (a non-negative
``int``) to a nonzero coefficient.  Each variable owns a fixed-width bit
field and the first variable sits in the most significant field, so the
natural integer order on keys is the lexicographic monomial order.

The compiled module ``_kernels`` exports the same four functions with
the same semantics; ``kernels.py`` picks one of them at import time.
"""

import heapq


def mul(a, b):
    """Product of two term maps."""
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    items = list(a.items())
    for kb, cb in b.items():
        for ka, ca in items:
            k = ka + kb
            v = get(k)
            if v is None:
                out[k] = ca * cb
            else:
                out[k] = v + ca * cb
    return {k: v for k, v in out.items() if v}


def addmul(a, b, c, shift):
    """Return ``a + c * x**shift * b`` where ``shift`` is a packed monomial."""
    out = dict(a)
    get = out.get
    for k, v in b.items():
        k += shift
        w = get(k)
        if w is None:
            out[k] = c * v
        else:
            w = w + c * v
            if w:
                out[k] = w
            else:
                del out[k]
    return out


def divides_key(num, den, shifts, mask):
    """True when the monomial ``den`` divides the monomial ``num``."""
    for s in shifts:
        if (num >> s) & mask < (den >> s) & mask:
            return False
    return True


def divexact(p, q, shifts, mask):
    """Exact quotient ``p / q`` of term maps, or ``None`` if ``q`` does not divide ``p``.

    Classical division by the lex-leading term with a max-heap of
    pending remainder keys.
    """
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    lq = max(q)
    cq = q[lq]
    rest = [(k, c) for k, c in q.items() if k != lq]
    r = dict(p)
    heap = [-k for k in r]
    heapq.heapify(heap)
    quot = {}
    while heap:
        k = -heapq.heappop(heap)
        c = r.pop(k, None)
        if c is None:
            continue
        while heap and -heap[0] == k:
            heapq.heappop(heap)
        if not divides_key(k, lq, shifts, mask):
            return None
        d = k - lq
        f = c / cq
        quot[d] = f
        for kk, cc in rest:
            key = d + kk
            w = r.get(key)
            if w is None:
                r[key] = -f * cc
                heapq.heappush(heap, -key)
            else:
                w = w - f * cc
                if w:
                    r[key] = w
                else:
                    del r[key]
    return quot
