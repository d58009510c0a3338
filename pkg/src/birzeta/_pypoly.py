"""Pure-Python kernel for bivariate Laurent polynomials over Z.

A polynomial in the two variables L and T is a dict mapping exponent pairs
``(l, t)`` (both ints, possibly negative) to nonzero integer coefficients.
The empty dict is zero.  ``birzeta._fastpoly`` is a Cython translation with
the same semantics; ``birzeta.polyops`` picks one at import time.
"""

BACKEND = "python"


def padd(p, q):
    out = dict(p)
    for k, c in q.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def pneg(p):
    return {k: -c for k, c in p.items()}


def pscale(p, c):
    if c == 0:
        return {}
    return {k: v * c for k, v in p.items()}


def pshift(p, dl, dt):
    if not dl and not dt:
        return dict(p)
    return {(l + dl, t + dt): c for (l, t), c in p.items()}


def pmul(p, q):
    if len(p) > len(q):
        p, q = q, p
    out = {}
    for (l1, t1), c1 in p.items():
        for (l2, t2), c2 in q.items():
            k = (l1 + l2, t1 + t2)
            s = out.get(k, 0) + c1 * c2
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def pdivmod_binomial(p, big_a, b):
    """Divide p by (L^big_a - T^b), b >= 1, p with T-exponents >= 0.

    Returns (quotient, remainder) with deg_T(remainder) < b.  Exact because
    the divisor's leading T-coefficient is the unit -1.
    """
    buckets = {}
    tmax = 0
    for (l, t), c in p.items():
        buckets.setdefault(t, {})[l] = c
        if t > tmax:
            tmax = t
    quot = {}
    for t in range(tmax, b - 1, -1):
        row = buckets.pop(t, None)
        if not row:
            continue
        lower = buckets.setdefault(t - b, {})
        for l, c in row.items():
            k = (l, t - b)
            s = quot.get(k, 0) - c
            if s:
                quot[k] = s
            else:
                quot.pop(k, None)
            s = lower.get(l + big_a, 0) + c
            if s:
                lower[l + big_a] = s
            else:
                lower.pop(l + big_a, None)
    rem = {}
    for t, row in buckets.items():
        for l, c in row.items():
            if c:
                rem[(l, t)] = c
    return quot, rem
