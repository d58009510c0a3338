"""Small exact univariate helpers.

Dense polynomials over Q (ascending coefficient tuples, no trailing zeros)
back the topological zeta function; sparse Laurent polynomials over Q back
the residue arithmetic in fractional powers of L.  Both are tiny and kept
deterministic on purpose: structural equality is the acceptance tolerance
everywhere in this package.
"""

from __future__ import annotations

from fractions import Fraction

Poly = tuple[Fraction, ...]  # ascending, trimmed; () is zero

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)


def poly(coeffs) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return poly(out)


def pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return poly(out)


def pscale(a: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(x * c for x in a)


def peval(a: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1] / lead
        if c:
            quot[i] = c
            for j, bc in enumerate(b):
                rem[i + j] -= c * bc
    return poly(quot), poly(rem)


def root_multiplicity(a: Poly, r: Fraction) -> int:
    """How many times (s - r) divides a; 0 for the zero polynomial."""
    if not a:
        return 0
    m = 0
    cur = a
    while cur and peval(cur, r) == 0:
        cur, rem = pdivmod(cur, poly((-r, 1)))
        assert rem == ZERO
        m += 1
    return m


def pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    if a:
        a = pscale(a, 1 / a[-1])
    return a


# -- sparse Laurent polynomials in one variable U over Q ------------------

Laurent = dict  # int exponent -> nonzero Fraction


def lzero() -> Laurent:
    return {}


def lterm(coeff, exp: int) -> Laurent:
    c = Fraction(coeff)
    return {exp: c} if c else {}


def ladd(a: Laurent, b: Laurent) -> Laurent:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            del out[e]
    return out


def lneg(a: Laurent) -> Laurent:
    return {e: -c for e, c in a.items()}


def lmul(a: Laurent, b: Laurent) -> Laurent:
    out: Laurent = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                del out[e]
    return out


class LaurentFrac:
    """Exact fraction of Laurent polynomials in U; zero test is exact.

    Used for the normalised residues R_a(E) in U = L^{1/q}: sums are formed
    by cross-multiplication, and nonvanishing is decided by the numerator
    being nonzero, after the representation is reduced.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Laurent, den: Laurent):
        if not den:
            raise ZeroDivisionError("LaurentFrac with zero denominator")
        self.num = num
        self.den = den
        self._reduce()

    @staticmethod
    def zero() -> "LaurentFrac":
        return LaurentFrac(lzero(), lterm(1, 0))

    @staticmethod
    def const(c) -> "LaurentFrac":
        return LaurentFrac(lterm(c, 0), lterm(1, 0))

    def _reduce(self):
        # strip common powers of U so both parts are honest polynomials
        if self.num:
            shift = -min(min(self.num), min(self.den), 0)
        else:
            shift = -min(min(self.den), 0)
        if shift:
            self.num = {e + shift: c for e, c in self.num.items()}
            self.den = {e + shift: c for e, c in self.den.items()}
        sn = min(self.num, default=0)
        sd = min(self.den)
        drop = min(sn, sd) if self.num else sd
        if drop:
            self.num = {e - drop: c for e, c in self.num.items()}
            self.den = {e - drop: c for e, c in self.den.items()}
        # cancel the polynomial gcd for a readable canonical form
        pn = _laurent_to_dense(self.num)
        pd = _laurent_to_dense(self.den)
        g = pgcd(pn, pd)
        if len(g) > 1:
            pn, _ = pdivmod(pn, g)
            pd, _ = pdivmod(pd, g)
            self.num = _dense_to_laurent(pn)
            self.den = _dense_to_laurent(pd)
        # normalize sign/scale by the denominator's leading coefficient
        lead = self.den[max(self.den)]
        if lead != 1:
            self.num = {e: c / lead for e, c in self.num.items()}
            self.den = {e: c / lead for e, c in self.den.items()}

    @property
    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "LaurentFrac") -> "LaurentFrac":
        num = ladd(lmul(self.num, other.den), lmul(other.num, self.den))
        return LaurentFrac(num, lmul(self.den, other.den))

    def __mul__(self, other: "LaurentFrac") -> "LaurentFrac":
        return LaurentFrac(lmul(self.num, other.num), lmul(self.den, other.den))

    def scaled(self, c) -> "LaurentFrac":
        c = Fraction(c)
        return LaurentFrac({e: v * c for e, v in self.num.items()}, dict(self.den))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentFrac):
            return NotImplemented
        return not ladd(
            lmul(self.num, other.den), lneg(lmul(other.num, self.den))
        )

    def __repr__(self) -> str:
        return f"({lpretty(self.num)}) / ({lpretty(self.den)})"


def _laurent_to_dense(a: Laurent) -> Poly:
    if not a:
        return ZERO
    top = max(a)
    out = [Fraction(0)] * (top + 1)
    for e, c in a.items():
        out[e] = c
    return poly(out)


def _dense_to_laurent(a: Poly) -> Laurent:
    return {e: c for e, c in enumerate(a) if c}


def lpretty(a: Laurent, var: str = "U") -> str:
    if not a:
        return "0"
    parts = []
    for e in sorted(a):
        c = a[e]
        if e == 0:
            parts.append(str(c))
        else:
            head = var if e == 1 else f"{var}^{e}"
            if c == 1:
                parts.append(head)
            elif c == -1:
                parts.append(f"-{head}")
            else:
                parts.append(f"{c}*{head}")
    return " + ".join(parts).replace("+ -", "- ")
