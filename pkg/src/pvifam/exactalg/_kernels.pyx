# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse kernels on packed-monomial term maps.

Same API and semantics as ``_kernels_py``; coefficients stay Python
objects (``gmpy2.mpq``), the gain comes from typed loops and direct
dict access.
"""

import heapq


def mul(dict a, dict b):
    cdef dict out = {}
    cdef list items
    cdef object ka, ca, kb, cb, k, v
    if len(a) < len(b):
        a, b = b, a
    items = list(a.items())
    for kb, cb in b.items():
        for ka, ca in items:
            k = ka + kb
            v = out.get(k)
            if v is None:
                out[k] = ca * cb
            else:
                out[k] = v + ca * cb
    return {k: v for k, v in out.items() if v}


def addmul(dict a, dict b, object c, object shift):
    cdef dict out = dict(a)
    cdef object k, v, w
    for k, v in b.items():
        k = k + shift
        w = out.get(k)
        if w is None:
            out[k] = c * v
        else:
            w = w + c * v
            if w:
                out[k] = w
            else:
                del out[k]
    return out


def divides_key(object num, object den, tuple shifts, object mask):
    cdef object s
    for s in shifts:
        if (num >> s) & mask < (den >> s) & mask:
            return False
    return True


def divexact(dict p, dict q, tuple shifts, object mask):
    cdef object lq, cq, k, c, d, f, kk, cc, key, w
    cdef list rest, heap
    cdef dict r, quot
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
