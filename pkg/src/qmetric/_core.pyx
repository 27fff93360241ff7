# cython: language_level=3
"""Compiled twin of qmetric._core_py (same API, same data shapes).

Scalar components are Python ints (values overflow C integers quickly in
the higher-order derivations), so the win here comes from compiled loop
and dict plumbing, not native arithmetic.  Keep the two files in sync;
tests/test_backend.py checks agreement on random inputs.
"""

from math import gcd

BACKEND_NAME = "compiled"

Q_ZERO = (0, 1, 0, 1)
Q_ONE = (1, 1, 0, 1)


def q_make(an, ad, bn, bd):
    if ad < 0:
        an, ad = -an, -ad
    if bd < 0:
        bn, bd = -bn, -bd
    g = gcd(an, ad)
    if g > 1:
        an //= g
        ad //= g
    g = gcd(bn, bd)
    if g > 1:
        bn //= g
        bd //= g
    return (an, ad, bn, bd)


def q_add(u, v):
    an = u[0] * v[1] + v[0] * u[1]
    bn = u[2] * v[3] + v[2] * u[3]
    return q_make(an, u[1] * v[1], bn, u[3] * v[3])


def q_neg(u):
    return (-u[0], u[1], -u[2], u[3])


def q_conj(u):
    return (u[0], u[1], -u[2], u[3])


def q_mul(u, v):
    re_n = u[0] * v[0] * u[3] * v[3] - u[2] * v[2] * u[1] * v[1]
    im_n = u[0] * v[2] * u[3] * v[1] + u[2] * v[0] * u[1] * v[3]
    den = u[1] * v[1] * u[3] * v[3]
    return q_make(re_n, den, im_n, den)


def q_is_zero(u):
    return u[0] == 0 and u[2] == 0


def ev_mul(tuple e1, tuple e2):
    cdef Py_ssize_t i = 0, j = 0, n1 = len(e1), n2 = len(e2)
    if n1 == 0:
        return e2
    if n2 == 0:
        return e1
    out = []
    while i < n1 and j < n2:
        s1, x1 = e1[i]
        s2, x2 = e2[j]
        if s1 == s2:
            out.append((s1, x1 + x2))
            i += 1
            j += 1
        elif s1 < s2:
            out.append(e1[i])
            i += 1
        else:
            out.append(e2[j])
            j += 1
    while i < n1:
        out.append(e1[i])
        i += 1
    while j < n2:
        out.append(e2[j])
        j += 1
    return tuple(out)


def poly_add(dict p1, dict p2):
    if not p1:
        return dict(p2)
    cdef dict out = dict(p1)
    for ev, c in p2.items():
        old = out.get(ev)
        if old is None:
            out[ev] = c
        else:
            c = q_add(old, c)
            if c[0] == 0 and c[2] == 0:
                del out[ev]
            else:
                out[ev] = c
    return out


def poly_neg(dict p):
    return {ev: (-c[0], c[1], -c[2], c[3]) for ev, c in p.items()}


def poly_conj(dict p):
    return {ev: (c[0], c[1], -c[2], c[3]) for ev, c in p.items()}


def poly_scale(dict p, u):
    if u[0] == 0 and u[2] == 0:
        return {}
    return {ev: q_mul(c, u) for ev, c in p.items()}


def poly_mul(dict p1, dict p2):
    cdef dict out = {}
    for e1, c1 in p1.items():
        for e2, c2 in p2.items():
            ev = ev_mul(e1, e2)
            c = q_mul(c1, c2)
            old = out.get(ev)
            if old is not None:
                c = q_add(old, c)
            if c[0] == 0 and c[2] == 0:
                out.pop(ev, None)
            else:
                out[ev] = c
    return out


def expr_add(dict t1, dict t2):
    cdef dict out = {k: dict(p) for k, p in t1.items()}
    for k, p in t2.items():
        old = out.get(k)
        if old is None:
            out[k] = dict(p)
        else:
            s = poly_add(old, p)
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def expr_scale(dict t, u):
    if u[0] == 0 and u[2] == 0:
        return {}
    return {k: poly_scale(p, u) for k, p in t.items()}


cdef tuple _MINUS_I_POW = ((1, 0), (0, -1), (-1, 0), (0, 1))


def expr_mul(dict t1, dict t2):
    cdef dict out = {}
    cdef long a1, b1, e1, a2, b2, e2, e, k
    cdef int sign
    for k1, p1 in t1.items():
        a1 = k1[0]
        b1 = k1[1]
        e1 = k1[2]
        for k2, p2 in t2.items():
            a2 = k2[0]
            b2 = k2[1]
            e2 = k2[2]
            sign = -1 if (e1 and ((a2 + b2) & 1)) else 1
            pc = poly_mul(p1, p2)
            if not pc:
                continue
            e = e1 ^ e2
            coef = 1
            for k in range(a2 + 1):
                if k:
                    coef = coef * (a2 - k + 1) * (b1 - k + 1) // k
                    if coef == 0:
                        break
                ur, ui = _MINUS_I_POW[k & 3]
                u = (sign * coef * ur, 1, sign * coef * ui, 1)
                key = (a1 + a2 - k, b1 + b2 - k, e)
                contrib = poly_scale(pc, u)
                old = out.get(key)
                if old is None:
                    out[key] = contrib
                else:
                    s = poly_add(old, contrib)
                    if s:
                        out[key] = s
                    else:
                        del out[key]
    return out
