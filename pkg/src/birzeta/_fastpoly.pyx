# cython: language_level=3
"""Compiled kernel for bivariate Laurent polynomials over Z.

Same contract as ``birzeta._pypoly``: dicts mapping (l, t) int pairs to
nonzero integer coefficients.  Coefficients stay arbitrary-precision Python
ints; the speedup comes from compiled dispatch in the inner loops.
"""

BACKEND = "c"


def padd(dict p, dict q):
    cdef dict out = dict(p)
    for k, c in q.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def pneg(dict p):
    cdef dict out = {}
    for k, c in p.items():
        out[k] = -c
    return out


def pscale(dict p, c):
    cdef dict out = {}
    if c == 0:
        return out
    for k, v in p.items():
        out[k] = v * c
    return out


def pshift(dict p, long dl, long dt):
    cdef dict out = {}
    cdef long l, t
    if dl == 0 and dt == 0:
        return dict(p)
    for k, c in p.items():
        l = k[0]
        t = k[1]
        out[(l + dl, t + dt)] = c
    return out


def pmul(dict p, dict q):
    cdef dict out = {}
    cdef long l1, t1, l2, t2
    if len(p) > len(q):
        p, q = q, p
    for k1, c1 in p.items():
        l1 = k1[0]
        t1 = k1[1]
        for k2, c2 in q.items():
            l2 = k2[0]
            t2 = k2[1]
            k = (l1 + l2, t1 + t2)
            s = out.get(k, 0) + c1 * c2
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def pdivmod_binomial(dict p, long big_a, long b):
    """Divide p by (L^big_a - T^b), b >= 1, p with T-exponents >= 0."""
    cdef dict buckets = {}
    cdef dict quot = {}
    cdef dict rem = {}
    cdef long tmax = 0
    cdef long l, t
    for k, c in p.items():
        l = k[0]
        t = k[1]
        row = buckets.get(t)
        if row is None:
            row = {}
            buckets[t] = row
        (<dict> row)[l] = c
        if t > tmax:
            tmax = t
    for t in range(tmax, b - 1, -1):
        row = buckets.pop(t, None)
        if not row:
            continue
        lower = buckets.get(t - b)
        if lower is None:
            lower = {}
            buckets[t - b] = lower
        for l, c in (<dict> row).items():
            k = (l, t - b)
            s = quot.get(k, 0) - c
            if s:
                quot[k] = s
            else:
                quot.pop(k, None)
            s = (<dict> lower).get(l + big_a, 0) + c
            if s:
                (<dict> lower)[l + big_a] = s
            else:
                (<dict> lower).pop(l + big_a, None)
    for t, row in buckets.items():
        for l, c in (<dict> row).items():
            if c:
                rem[(l, t)] = c
    return quot, rem
