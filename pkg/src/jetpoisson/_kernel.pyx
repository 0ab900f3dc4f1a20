# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernel for sparse Laurent polynomials.

Twin of ``_kernel_py``: same functions, same raw data layout (tuples and
dicts of Python ints), so the two backends are interchangeable.  The win
comes from doing the merge loops and rational bookkeeping at C speed.
"""

from math import gcd as _gcd

BACKEND = "c"


cpdef tuple rat_norm(num, den):
    if num == 0:
        return (0, 1)
    if den < 0:
        num = -num
        den = -den
    g = _gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    return (num, den)


cpdef tuple rat_add(tuple a, tuple b):
    return rat_norm(a[0] * b[1] + b[0] * a[1], a[1] * b[1])


cpdef tuple rat_mul(tuple a, tuple b):
    return rat_norm(a[0] * b[0], a[1] * b[1])


cpdef tuple key_mul(tuple ka, tuple kb):
    cdef Py_ssize_t i = 0, j = 0, na = len(ka), nb = len(kb)
    cdef list out
    if na == 0:
        return kb
    if nb == 0:
        return ka
    out = []
    while i < na and j < nb:
        pa = ka[i]
        pb = kb[j]
        ca = pa[0]
        cb = pb[0]
        if ca < cb:
            out.append(pa)
            i += 1
        elif cb < ca:
            out.append(pb)
            j += 1
        else:
            e = pa[1] + pb[1]
            if e:
                out.append((ca, e))
            i += 1
            j += 1
    while i < na:
        out.append(ka[i])
        i += 1
    while j < nb:
        out.append(kb[j])
        j += 1
    return tuple(out)


cpdef dict poly_add(dict p, dict q):
    cdef dict out = dict(p)
    for k, c in q.items():
        cur = out.get(k)
        if cur is None:
            out[k] = c
        else:
            s = rat_add(cur, c)
            if s[0]:
                out[k] = s
            else:
                del out[k]
    return out


cpdef dict poly_neg(dict p):
    cdef dict out = {}
    for k, c in p.items():
        out[k] = (-c[0], c[1])
    return out


cpdef dict poly_sub(dict p, dict q):
    cdef dict out = dict(p)
    for k, c in q.items():
        cur = out.get(k)
        if cur is None:
            out[k] = (-c[0], c[1])
        else:
            s = rat_add(cur, (-c[0], c[1]))
            if s[0]:
                out[k] = s
            else:
                del out[k]
    return out


cpdef dict poly_scale(dict p, num, den):
    cdef dict out = {}
    if num == 0:
        return out
    for k, c in p.items():
        out[k] = rat_norm(c[0] * num, c[1] * den)
    return out


cpdef dict poly_mul(dict p, dict q):
    cdef dict acc = {}
    cdef dict out = {}
    if not p or not q:
        return out
    if len(p) > len(q):
        p, q = q, p
    for ka, ca in p.items():
        na = ca[0]
        da = ca[1]
        for kb, cb in q.items():
            k = key_mul(ka, kb)
            cur = acc.get(k)
            if cur is None:
                acc[k] = (na * cb[0], da * cb[1])
            else:
                acc[k] = (cur[0] * da * cb[1] + na * cb[0] * cur[1], cur[1] * da * cb[1])
    for k, c in acc.items():
        c2 = rat_norm(c[0], c[1])
        if c2[0]:
            out[k] = c2
    return out


cpdef dict poly_iadd_mul(dict acc, dict p, dict q):
    for ka, ca in p.items():
        na = ca[0]
        da = ca[1]
        for kb, cb in q.items():
            k = key_mul(ka, kb)
            cur = acc.get(k)
            if cur is None:
                c = rat_norm(na * cb[0], da * cb[1])
                if c[0]:
                    acc[k] = c
            else:
                c = rat_norm(cur[0] * da * cb[1] + na * cb[0] * cur[1], cur[1] * da * cb[1])
                if c[0]:
                    acc[k] = c
                else:
                    del acc[k]
    return acc
