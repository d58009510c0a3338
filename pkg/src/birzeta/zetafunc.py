"""Rational functions in T over birational-class coefficients.

Every zeta formula in this package is a finite sum of terms

    coeff * T^tpow / prod over den of (L^a * T^-b - 1),

kept in exactly that structured shape (ZetaExpr) because truncations and
limits are defined termwise.  Clearing the negative T powers turns each
denominator factor into the polynomial (L^a - T^b); single-fraction normal
forms, whole-factor cancellation and pole extraction happen in that cleared
presentation.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from . import polyops, univar
from .classring import BirElement, rho as _rho
from .errors import DivergentTerm, NegativeOrder, NonScalarLabel

# ---------------------------------------------------------------------------
# denominator factors


@dataclass(frozen=True, order=True)
class DenFactor:
    """The geometric denominator factor (L^a * T^-b - 1)."""

    a: Fraction
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        if self.a <= 0 or self.b < 1:
            raise ValueError(f"DenFactor needs a > 0 and b >= 1, got {self}")

    def ratio(self) -> Fraction:
        """a/b; the candidate pole is s0 = -a/b."""
        return self.a / self.b

    def pretty(self) -> str:
        a = "L" if self.a == 1 else f"L^{self.a}"
        b = f"T^-{self.b}"
        return f"({a}*{b} - 1)"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": self.b}

    @staticmethod
    def from_json(d: dict) -> "DenFactor":
        return DenFactor(Fraction(d["a"]), int(d["b"]))


Den = tuple[DenFactor, ...]


def den_of(factors: Iterable[DenFactor | tuple]) -> Den:
    out = []
    for f in factors:
        if not isinstance(f, DenFactor):
            f = DenFactor(Fraction(f[0]), int(f[1]))
        out.append(f)
    return tuple(sorted(out))


def _den_sub(d1: Den, d2: Den) -> Den:
    """Multiset difference d1 - d2 (d2 must be contained in d1)."""
    out = list(d1)
    for f in d2:
        out.remove(f)
    return tuple(out)


def _den_max(dens: Iterable[Den]) -> Den:
    counts: dict[DenFactor, int] = {}
    for den in dens:
        local: dict[DenFactor, int] = {}
        for f in den:
            local[f] = local.get(f, 0) + 1
        for f, k in local.items():
            counts[f] = max(counts.get(f, 0), k)
    out = []
    for f, k in counts.items():
        out.extend([f] * k)
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# polynomials in T with BirElement coefficients (Laurent T allowed)

TPoly = dict  # int T-exponent -> nonzero BirElement


def tp_zero() -> TPoly:
    return {}


def tp_const(c: BirElement, t: int = 0) -> TPoly:
    return {t: c} if not c.is_zero else {}


def tp_add(p: TPoly, q: TPoly) -> TPoly:
    out = dict(p)
    for t, c in q.items():
        s = out.get(t, BirElement.zero()) + c
        if s.is_zero:
            out.pop(t, None)
        else:
            out[t] = s
    return out


def tp_neg(p: TPoly) -> TPoly:
    return {t: -c for t, c in p.items()}


def tp_mul(p: TPoly, q: TPoly) -> TPoly:
    if _tp_scalar(p) and _tp_scalar(q):
        qden = _tp_expdenom(p, q)
        return _tp_lift(
            polyops.pmul(_tp_lower(p, qden), _tp_lower(q, qden)), qden
        )
    out: TPoly = {}
    for t1, c1 in p.items():
        for t2, c2 in q.items():
            t = t1 + t2
            s = out.get(t, BirElement.zero()) + c1 * c2
            if s.is_zero:
                out.pop(t, None)
            else:
                out[t] = s
    return out


def tp_equal(p: TPoly, q: TPoly) -> bool:
    return tp_add(p, tp_neg(q)) == {}


def factor_poly(f: DenFactor) -> TPoly:
    """The cleared polynomial L^a - T^b."""
    return {0: BirElement.L(f.a), f.b: -BirElement.one()}


def tp_divmod_factor(p: TPoly, f: DenFactor) -> tuple[TPoly, TPoly]:
    """Divide p (T-exponents >= 0) by (L^a - T^b); always exact in T-degree.

    Works over any coefficient ring because the divisor's leading
    T-coefficient is -1.
    """
    if any(t < 0 for t in p):
        raise ValueError("tp_divmod_factor needs nonnegative T exponents")
    if _tp_scalar(p):
        qden = _tp_expdenom(p)
        qden = qden * f.a.denominator // _igcd(qden, f.a.denominator)
        quot, rem = polyops.pdivmod_binomial(
            _tp_lower(p, qden), int(f.a * qden), f.b
        )
        return _tp_lift(quot, qden), _tp_lift(rem, qden)
    buckets: dict[int, BirElement] = dict(p)
    quot: TPoly = {}
    la = BirElement.L(f.a)
    for t in range(max(buckets, default=0), f.b - 1, -1):
        c = buckets.pop(t, None)
        if c is None or c.is_zero:
            continue
        qt = t - f.b
        qc = quot.get(qt, BirElement.zero()) - c
        if qc.is_zero:
            quot.pop(qt, None)
        else:
            quot[qt] = qc
        lowered = buckets.get(qt, BirElement.zero()) + c * la
        if lowered.is_zero:
            buckets.pop(qt, None)
        else:
            buckets[qt] = lowered
    rem = {t: c for t, c in buckets.items() if not c.is_zero}
    return quot, rem


def _tp_scalar(p: TPoly) -> bool:
    return all(c.is_scalar for c in p.values())


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _tp_expdenom(*polys: TPoly) -> int:
    q = 1
    for p in polys:
        for c in p.values():
            d = c.exponent_denominator()
            q = q * d // _igcd(q, d)
    return q


def _tp_lower(p: TPoly, q: int) -> dict:
    out = {}
    for t, c in p.items():
        for exp, coeff in c.scalar_terms().items():
            scaled = exp * q
            assert scaled.denominator == 1
            out[(int(scaled), t)] = coeff
    return out


def _tp_lift(lowered: dict, q: int) -> TPoly:
    out: TPoly = {}
    for (l, t), coeff in lowered.items():
        c = out.get(t, BirElement.zero()) + BirElement.L(Fraction(l, q)) * coeff
        if c.is_zero:
            out.pop(t, None)
        else:
            out[t] = c
    return out


# ---------------------------------------------------------------------------
# the structured term sum


@dataclass(frozen=True)
class ZetaTerm:
    coeff: BirElement
    tpow: int
    den: Den


class ZetaExpr:
    """Formal sum of coeff * T^tpow / prod (L^a T^-b - 1) terms.

    Terms with equal (tpow, den) are merged on construction, so the term
    list is canonical and structural equality is meaningful; value equality
    is decided by cross-multiplication (``equals``).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[ZetaTerm] = ()):
        merged: dict[tuple[int, Den], BirElement] = {}
        for t in terms:
            key = (t.tpow, t.den)
            merged[key] = merged.get(key, BirElement.zero()) + t.coeff
        clean = [
            ZetaTerm(c, tpow, den)
            for (tpow, den), c in merged.items()
            if not c.is_zero
        ]
        clean.sort(key=lambda t: (t.tpow, t.den))
        self.terms = tuple(clean)

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero() -> "ZetaExpr":
        return ZetaExpr()

    @staticmethod
    def term(coeff: BirElement, tpow: int, den) -> "ZetaExpr":
        return ZetaExpr([ZetaTerm(coeff, tpow, den_of(den))])

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "ZetaExpr") -> "ZetaExpr":
        return ZetaExpr(self.terms + other.terms)

    def __neg__(self) -> "ZetaExpr":
        return ZetaExpr([ZetaTerm(-t.coeff, t.tpow, t.den) for t in self.terms])

    def __sub__(self, other: "ZetaExpr") -> "ZetaExpr":
        return self + (-other)

    def __mul__(self, other: "ZetaExpr | BirElement | int") -> "ZetaExpr":
        if isinstance(other, int):
            other = BirElement.from_int(other)
        if isinstance(other, BirElement):
            return ZetaExpr(
                [ZetaTerm(t.coeff * other, t.tpow, t.den) for t in self.terms]
            )
        out = []
        for t1 in self.terms:
            for t2 in other.terms:
                out.append(
                    ZetaTerm(
                        t1.coeff * t2.coeff,
                        t1.tpow + t2.tpow,
                        tuple(sorted(t1.den + t2.den)),
                    )
                )
        return ZetaExpr(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ZetaExpr) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def map_coeff(self, f: Callable[[BirElement], BirElement]) -> "ZetaExpr":
        return ZetaExpr([ZetaTerm(f(t.coeff), t.tpow, t.den) for t in self.terms])

    # -- single-fraction view ---------------------------------------------

    def as_fraction(self) -> tuple[TPoly, Den]:
        """(num, den) with value num / prod (L^a - T^b); num is T-nonnegative."""
        den = _den_max(t.den for t in self.terms)
        num = tp_zero()
        for t in self.terms:
            if t.tpow < 0:
                raise NegativeOrder(f"term with negative T power {t.tpow}")
            part = tp_const(t.coeff, t.tpow + sum(f.b for f in t.den))
            for f in _den_sub(den, t.den):
                part = tp_mul(part, factor_poly(f))
            num = tp_add(num, part)
        return num, den

    def equals(self, other: "ZetaExpr") -> bool:
        """Exact value equality by cross-multiplication."""
        n1, d1 = self.as_fraction()
        n2, d2 = other.as_fraction()
        for f in _den_sub(_den_max([d1, d2]), d1):
            n1 = tp_mul(n1, factor_poly(f))
        for f in _den_sub(_den_max([d1, d2]), d2):
            n2 = tp_mul(n2, factor_poly(f))
        return tp_equal(n1, n2)

    # -- rendering ---------------------------------------------------------

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            num = t.coeff.pretty()
            if "+" in num or "-" in num[1:]:
                num = f"({num})"
            if t.tpow:
                num = f"{num}*T^{t.tpow}"
            if t.den:
                parts.append(f"{num} / ({'*'.join(f.pretty() for f in t.den)})")
            else:
                parts.append(num)
        return "  +  ".join(parts)

    def latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            num = t.coeff.pretty().replace("L", r"\mathcal{L}")
            if t.tpow:
                num = f"{num}\\, T^{{{t.tpow}}}"
            if t.den:
                den = "".join(
                    r"(\mathcal{L}^{%s}T^{-%d}-1)" % (f.a, f.b) for f in t.den
                )
                parts.append(r"\frac{%s}{%s}" % (num, den))
            else:
                parts.append(num)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ZetaExpr({self.pretty()})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {
                    "coeff": t.coeff.to_json(),
                    "tpow": t.tpow,
                    "den": [f.to_json() for f in t.den],
                }
                for t in self.terms
            ]
        }

    @staticmethod
    def from_json(d: dict) -> "ZetaExpr":
        return ZetaExpr(
            [
                ZetaTerm(
                    BirElement.from_json(t["coeff"]),
                    int(t["tpow"]),
                    den_of(DenFactor.from_json(f) for f in t["den"]),
                )
                for t in d["terms"]
            ]
        )


@dataclass(frozen=True)
class ClosedForm:
    """A displayed closed form num / prod (L^a T^-b - 1) with a Laurent-in-T
    numerator, used to compare engine evaluations against formulas whose
    numerators carry negative T powers."""

    num: tuple  # sorted tuple of (tpow, BirElement), tpow any integer
    den: Den

    @staticmethod
    def make(num: Mapping[int, BirElement], den) -> "ClosedForm":
        clean = {t: c for t, c in num.items() if not c.is_zero}
        return ClosedForm(tuple(sorted(clean.items())), den_of(den))

    def matches(self, z: ZetaExpr) -> bool:
        """Value equality with a structured sum, by cross-multiplication."""
        nz, dz = z.as_fraction()
        # clear this form to the polynomial presentation over its den
        shift = sum(f.b for f in self.den)
        nc = {t + shift: c for t, c in self.num}
        low = min(nc, default=0)
        if low < 0:  # keep everything polynomial in T
            nc = {t - low: c for t, c in nc.items()}
            nz = {t - low: c for t, c in nz.items()}
        full = _den_max([dz, self.den])
        n1 = nz
        for f in _den_sub(full, dz):
            n1 = tp_mul(n1, factor_poly(f))
        n2 = nc
        for f in _den_sub(full, self.den):
            n2 = tp_mul(n2, factor_poly(f))
        return tp_equal(n1, n2)

    def pretty(self) -> str:
        parts = []
        for t, c in self.num:
            cs = c.pretty()
            if "+" in cs or "-" in cs[1:]:
                cs = f"({cs})"
            parts.append(f"{cs}*T^{t}" if t else cs)
        num = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if not self.den:
            return num
        return f"[{num}] / [{'*'.join(f.pretty() for f in self.den)}]"


# ---------------------------------------------------------------------------
# the telescoping identity behind subdivision invariance


def telescope_identity_check(data: list[tuple[Fraction, int]]) -> bool:
    """Check L^nu T^-N - 1 == sum over proper subsets lsub of K of
    prod_{i in K minus lsub} (L^{nu_i} T^{-N_i} - 1), nu = sum nu_i,
    N = sum N_i, by full expansion over Z[L^{1/q}, T^{-1}]."""
    if not data:
        raise ValueError("telescope check needs a nonempty tuple")
    data = [(Fraction(nu), int(n)) for nu, n in data]
    q = 1
    for nu, _ in data:
        q = q * nu.denominator // _igcd(q, nu.denominator)
    factors = [
        {(int(nu * q), -n): 1, (0, 0): -1} for nu, n in data
    ]
    k = len(data)
    rhs: dict = {}
    for mask in range(2**k - 1):  # proper subsets: complement is nonempty
        prod = {(0, 0): 1}
        for i in range(k):
            if not (mask >> i) & 1:
                prod = polyops.pmul(prod, factors[i])
        rhs = polyops.padd(rhs, prod)
    nu_tot = sum(nu for nu, _ in data)
    n_tot = sum(n for _, n in data)
    lhs = {(int(nu_tot * q), -n_tot): 1, (0, 0): -1}
    return polyops.padd(rhs, polyops.pneg(lhs)) == {}


# ---------------------------------------------------------------------------
# series expansion and the T -> infinity limit


def series_expand(x: ZetaExpr, m: int) -> dict[int, BirElement]:
    """Coefficients of T^0..T^m of x as a formal power series.

    Each factor expands as 1/(L^a T^-b - 1) = sum_{k>=1} (L^-a T^b)^k.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    out = {k: BirElement.zero() for k in range(m + 1)}
    for t in x.terms:
        if t.tpow < 0:
            raise NegativeOrder(f"term with negative T power {t.tpow}")
        if t.tpow > m:
            continue
        cur = {t.tpow: t.coeff}
        for f in t.den:
            geom = {}
            k = 1
            while k * f.b <= m:
                geom[k * f.b] = BirElement.L(-f.a * k)
                k += 1
            nxt: dict[int, BirElement] = {}
            for t1, c1 in cur.items():
                for t2, c2 in geom.items():
                    if t1 + t2 > m:
                        continue
                    s = nxt.get(t1 + t2, BirElement.zero()) + c1 * c2
                    nxt[t1 + t2] = s
            cur = nxt
        for k, c in cur.items():
            out[k] = out[k] + c
    return out


def limit_T_to_infinity(x: ZetaExpr) -> BirElement:
    """Exact limit: each factor tends to -1 and residual positive T powers
    are absorbed via T^b/(L^a T^-b - 1) = L^-a (1 + 1/(L^a T^-b - 1))."""
    result = BirElement.zero()
    work = [(t.coeff, t.tpow, t.den) for t in x.terms]
    while work:
        coeff, tpow, den = work.pop()
        if tpow == 0:
            sign = -1 if len(den) % 2 else 1
            result = result + coeff * sign
            continue
        if tpow < 0:
            continue  # T^{-k} -> 0 against finite factor limits
        if not den:
            raise DivergentTerm(f"T^{tpow} with no denominator factor")
        f = den[0]
        rest = den[1:]
        shifted = coeff.shift(-f.a)
        work.append((shifted, tpow - f.b, rest))
        work.append((shifted, tpow - f.b, den))
    return result


# ---------------------------------------------------------------------------
# normal forms, cancellation, poles


@dataclass(frozen=True)
class NormalForm:
    """num / prod (L^a - T^b) after maximal whole-factor cancellation.

    The denominator is stored as DenFactors but interpreted in the cleared
    polynomial form; qmax is the common L-exponent denominator used while
    cancelling.  The canonical form is the result of greedy exact division
    in a fixed factor order; the value is preserved at every step.
    """

    num: tuple  # sorted tuple of (tpow, BirElement)
    den: Den
    qmax: int

    def num_poly(self) -> TPoly:
        return {t: c for t, c in self.num}

    def value_equals(self, other: "NormalForm") -> bool:
        n1, n2 = self.num_poly(), other.num_poly()
        for f in _den_sub(_den_max([self.den, other.den]), self.den):
            n1 = tp_mul(n1, factor_poly(f))
        for f in _den_sub(_den_max([self.den, other.den]), other.den):
            n2 = tp_mul(n2, factor_poly(f))
        return tp_equal(n1, n2)

    def pretty(self) -> str:
        if not self.num:
            return "0"
        parts = []
        for t, c in self.num:
            cs = c.pretty()
            if "+" in cs or "-" in cs[1:]:
                cs = f"({cs})"
            parts.append(f"{cs}*T^{t}" if t else cs)
        num = " + ".join(parts).replace("+ -", "- ")
        if not self.den:
            return num
        den = "*".join(f"(L^{f.a} - T^{f.b})" for f in self.den)
        return f"[{num}] / [{den}]"

    def to_json(self) -> dict:
        return {
            "num": [{"tpow": t, "coeff": c.to_json()} for t, c in self.num],
            "den": [f.to_json() for f in self.den],
            "qmax": self.qmax,
        }


def normalize_and_cancel(
    x: ZetaExpr, spec: str | Callable[[BirElement], BirElement] | None = None
) -> NormalForm:
    """Single fraction with every exactly-dividing denominator factor removed.

    spec may be "rho" (specialize classes to L powers) or any coefficient
    map; cancellation is greedy whole-factor division in ascending (a, b)
    factor order, which makes the outcome canonical for fixed input.
    Scalar-coefficient inputs run entirely in the integer kernel.
    """
    if spec == "rho":
        x = x.map_coeff(_rho)
    elif callable(spec):
        x = x.map_coeff(spec)
    if all(t.coeff.is_scalar for t in x.terms):
        num, den, qmax = _normalize_scalar(x)
        return NormalForm(num=num, den=den, qmax=qmax)
    num, den = x.as_fraction()
    den = list(den)
    changed = True
    while changed and num:
        changed = False
        for f in sorted(set(den)):
            quot, rem = tp_divmod_factor(num, f)
            if not rem:
                num = quot
                den.remove(f)
                changed = True
                break
    if not num:
        den = []
    qmax = _tp_expdenom(num)
    for f in den:
        qmax = qmax * f.a.denominator // _igcd(qmax, f.a.denominator)
    return NormalForm(
        num=tuple(sorted(num.items())), den=tuple(sorted(den)), qmax=qmax
    )


def _normalize_scalar(x: ZetaExpr) -> tuple[tuple, Den, int]:
    """Kernel-only single-fraction construction and greedy cancellation."""
    qmax = 1
    for t in x.terms:
        qmax = _lcmi(qmax, t.coeff.exponent_denominator())
        for f in t.den:
            qmax = _lcmi(qmax, f.a.denominator)
    den = _den_max(t.den for t in x.terms)

    def lowered_factor(f: DenFactor) -> dict:
        return {(int(f.a * qmax), 0): 1, (0, f.b): -1}

    prod_cache: dict[Den, dict] = {(): {(0, 0): 1}}

    def product_of(missing: Den) -> dict:
        if missing in prod_cache:
            return prod_cache[missing]
        head = product_of(missing[:-1])
        out = polyops.pmul(head, lowered_factor(missing[-1]))
        prod_cache[missing] = out
        return out

    num: dict = {}
    for t in x.terms:
        shift_t = t.tpow + sum(f.b for f in t.den)
        part = {}
        for exp, coeff in t.coeff.scalar_terms().items():
            part[(int(exp * qmax), shift_t)] = coeff
        part = polyops.pmul(part, product_of(_den_sub(den, t.den)))
        num = polyops.padd(num, part)

    den = list(den)
    changed = True
    while changed and num:
        changed = False
        for f in sorted(set(den)):
            quot, rem = polyops.pdivmod_binomial(num, int(f.a * qmax), f.b)
            if not rem:
                num = quot
                den.remove(f)
                changed = True
                break
    if not num:
        den = []
    lifted = _tp_lift(num, qmax)
    qfinal = _tp_expdenom(lifted)
    for f in den:
        qfinal = _lcmi(qfinal, f.a.denominator)
    return tuple(sorted(lifted.items())), tuple(sorted(den)), qfinal


def _lcmi(a: int, b: int) -> int:
    return a * b // _igcd(a, b)


def poles(nf: NormalForm) -> list[tuple[Fraction, int]]:
    """Pole locations s0 = -a0/b0 with orders, at the untwisted point.

    For each reduced ratio among the surviving factors, the order is the
    factor count minus the multiplicity of (T^b0 - L^a0) in the numerator.
    Requires scalar (rho-specialized) coefficients.
    """
    num = nf.num_poly()
    if not _tp_scalar(num):
        raise NonScalarLabel("poles needs rho-specialized coefficients")
    ratios: dict[Fraction, int] = {}
    for f in nf.den:
        r = f.ratio()
        ratios[r] = ratios.get(r, 0) + 1
    out = []
    for r, cnt in ratios.items():
        binom = DenFactor(Fraction(r.numerator), r.denominator)
        mult = 0
        cur = num
        while cur and mult < cnt:
            quot, rem = tp_divmod_factor(cur, binom)
            if rem:
                break
            cur = quot
            mult += 1
        order = cnt - mult
        if order >= 1:
            out.append((-r, order))
    out.sort(key=lambda p: (-p[0], p[1]))
    return out


# ---------------------------------------------------------------------------
# the topological zeta function over Q(s)


@dataclass(frozen=True, order=True)
class TopFactor:
    """The linear factor (N*s + nu)."""

    N: int
    nu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "nu", Fraction(self.nu))
        if self.N < 1 or self.nu <= 0:
            raise ValueError(f"TopFactor needs N >= 1 and nu > 0, got {self}")

    def root(self) -> Fraction:
        return -self.nu / self.N

    def poly(self) -> univar.Poly:
        return univar.poly((self.nu, self.N))

    def pretty(self) -> str:
        n = "s" if self.N == 1 else f"{self.N}s"
        return f"({n} + {self.nu})"


class TopZeta:
    """Sum of chi / prod (N s + nu) terms over the rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[int, tuple]] = ()):
        merged: dict[tuple, int] = {}
        for chi, den in terms:
            key = tuple(
                sorted(f if isinstance(f, TopFactor) else TopFactor(*f) for f in den)
            )
            merged[key] = merged.get(key, 0) + chi
        self.terms = tuple(
            sorted((chi, den) for den, chi in merged.items() if chi)
        )

    def __add__(self, other: "TopZeta") -> "TopZeta":
        return TopZeta(self.terms + other.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, TopZeta) and self.terms == other.terms

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_fraction(self) -> tuple[univar.Poly, tuple[TopFactor, ...]]:
        counts: dict[TopFactor, int] = {}
        for _chi, den in self.terms:
            local: dict[TopFactor, int] = {}
            for f in den:
                local[f] = local.get(f, 0) + 1
            for f, k in local.items():
                counts[f] = max(counts.get(f, 0), k)
        full: list[TopFactor] = []
        for f, k in sorted(counts.items()):
            full.extend([f] * k)
        num = univar.ZERO
        for chi, den in self.terms:
            part = univar.poly((chi,))
            missing = list(full)
            for f in den:
                missing.remove(f)
            for f in missing:
                part = univar.pmul(part, f.poly())
            num = univar.padd(num, part)
        return num, tuple(full)

    def normalized(self) -> tuple[univar.Poly, tuple[TopFactor, ...]]:
        """(num, den) after cancelling factors that divide the numerator."""
        num, den = self.as_fraction()
        den = list(den)
        changed = True
        while changed and num:
            changed = False
            for f in sorted(set(den)):
                quot, rem = univar.pdivmod(num, f.poly())
                if rem == univar.ZERO:
                    num = quot
                    den.remove(f)
                    changed = True
                    break
        if not num:
            den = []
        return num, tuple(den)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for chi, den in self.terms:
            if den:
                parts.append(f"{chi} / ({'*'.join(f.pretty() for f in den)})")
            else:
                parts.append(str(chi))
        return "  +  ".join(parts)

    def __repr__(self) -> str:
        return f"TopZeta({self.pretty()})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {
                    "chi": chi,
                    "den": [{"N": f.N, "nu": str(f.nu)} for f in den],
                }
                for chi, den in self.terms
            ]
        }


def topzeta_normalize(tz: TopZeta) -> list[tuple[Fraction, int]]:
    """Pole locations with orders of the reduced rational function."""
    num, den = tz.as_fraction()
    if not den:
        return []
    roots: dict[Fraction, int] = {}
    for f in den:
        roots[f.root()] = roots.get(f.root(), 0) + 1
    out = []
    for r, cnt in roots.items():
        order = cnt - univar.root_multiplicity(num, r)
        if order >= 1:
            out.append((r, order))
    out.sort(key=lambda p: (-p[0], p[1]))
    return out
