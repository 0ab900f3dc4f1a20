"""Pure-Python arithmetic kernel for sparse Laurent polynomials.

This module and the Cython twin ``_kernel.pyx`` implement the same tiny API
on the same raw data layout; ``jetpoisson.backend`` picks one at import time.

Layout:
  rational  = (num: int, den: int)        den > 0, gcd(num, den) == 1
  monomial  = ((varcode, exp), ...)       sorted by varcode, exp != 0
  poly      = {monomial: rational}        no zero coefficients stored

The layout is deliberately plain (tuples and dicts of ints) so that values
produced by one backend are valid inputs for the other.
"""

from math import gcd

BACKEND = "python"


def rat_norm(num, den):
    if num == 0:
        return (0, 1)
    if den < 0:
        num, den = -num, -den
    g = gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    return (num, den)


def rat_add(a, b):
    return rat_norm(a[0] * b[1] + b[0] * a[1], a[1] * b[1])


def rat_mul(a, b):
    return rat_norm(a[0] * b[0], a[1] * b[1])


def key_mul(ka, kb):
    """Merge two sorted exponent keys, adding exponents of shared variables."""
    if not ka:
        return kb
    if not kb:
        return ka
    out = []
    i = j = 0
    na, nb = len(ka), len(kb)
    while i < na and j < nb:
        ca, ea = ka[i]
        cb, eb = kb[j]
        if ca < cb:
            out.append(ka[i])
            i += 1
        elif cb < ca:
            out.append(kb[j])
            j += 1
        else:
            e = ea + eb
            if e:
                out.append((ca, e))
            i += 1
            j += 1
    out.extend(ka[i:])
    out.extend(kb[j:])
    return tuple(out)


def poly_add(p, q):
    out = dict(p)
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


def poly_neg(p):
    return {k: (-c[0], c[1]) for k, c in p.items()}


def poly_sub(p, q):
    out = dict(p)
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


def poly_scale(p, num, den):
    if num == 0:
        return {}
    out = {}
    for k, (cn, cd) in p.items():
        out[k] = rat_norm(cn * num, cd * den)
    return out


def poly_mul(p, q):
    if not p or not q:
        return {}
    if len(p) > len(q):
        p, q = q, p
    acc = {}
    for ka, (na, da) in p.items():
        for kb, (nb, db) in q.items():
            k = key_mul(ka, kb)
            cur = acc.get(k)
            if cur is None:
                acc[k] = (na * nb, da * db)
            else:
                acc[k] = (cur[0] * da * db + na * nb * cur[1], cur[1] * da * db)
    out = {}
    for k, (n, d) in acc.items():
        c = rat_norm(n, d)
        if c[0]:
            out[k] = c
    return out


def poly_iadd_mul(acc, p, q):
    """acc += p*q, mutating and returning acc (coefficients kept normalized)."""
    for ka, (na, da) in p.items():
        for kb, (nb, db) in q.items():
            k = key_mul(ka, kb)
            cur = acc.get(k)
            if cur is None:
                c = rat_norm(na * nb, da * db)
                if c[0]:
                    acc[k] = c
            else:
                c = rat_norm(cur[0] * da * db + na * nb * cur[1], cur[1] * da * db)
                if c[0]:
                    acc[k] = c
                else:
                    del acc[k]
    return acc
