"""Exact arithmetic in the graded ring of birational classes.

Elements live in Z[Bir][L^{1/q}, L^{-1/q} : q >= 1]: finite integer
combinations of pairs (class label, fractional power of L).  Labels are
opaque multisets of irreducible-class symbols carrying a dimension; the
empty label is the class of a point and L is the class of the affine line.
Everything is a value: operations return new elements, equality is
structural on the canonical term map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import NegativeExponent, NonScalarLabel, UnknownSymbol


@dataclass(frozen=True, order=True)
class ClassLabel:
    """Sorted multiset of class symbols with the dimension of the product."""

    symbols: tuple[str, ...] = ()
    dim: int = 0

    def __post_init__(self):
        if tuple(sorted(self.symbols)) != self.symbols:
            object.__setattr__(self, "symbols", tuple(sorted(self.symbols)))
        if self.dim < 0:
            raise ValueError("class dimension must be nonnegative")

    @property
    def is_unit(self) -> bool:
        return not self.symbols

    def __mul__(self, other: "ClassLabel") -> "ClassLabel":
        return ClassLabel(self.symbols + other.symbols, self.dim + other.dim)


UNIT_LABEL = ClassLabel()

# term key: (label, L-exponent); value: nonzero integer coefficient
TermKey = tuple[ClassLabel, Fraction]


class BirElement:
    """An element of the localized ring of birational classes.

    Stored as a canonical map from (label, exponent) to nonzero integer
    coefficients, so equality and hashing are structural.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[TermKey, int] | None = None):
        clean = {}
        if terms:
            for (label, exp), coeff in terms.items():
                if coeff:
                    clean[(label, Fraction(exp))] = coeff
        self._terms = clean

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "BirElement":
        return BirElement()

    @staticmethod
    def one() -> "BirElement":
        return BirElement({(UNIT_LABEL, Fraction(0)): 1})

    @staticmethod
    def from_int(n: int) -> "BirElement":
        return BirElement({(UNIT_LABEL, Fraction(0)): n})

    @staticmethod
    def L(exp: Fraction | int = 1) -> "BirElement":
        """L^exp for a rational exponent."""
        return BirElement({(UNIT_LABEL, Fraction(exp)): 1})

    @staticmethod
    def sym(name: str, dim: int) -> "BirElement":
        """The class of an opaque irreducible variety of the given dimension."""
        return BirElement({(ClassLabel((name,), dim), Fraction(0)): 1})

    # -- queries -----------------------------------------------------

    def items(self) -> Iterator[tuple[TermKey, int]]:
        return iter(sorted(self._terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_scalar(self) -> bool:
        """True when every label is the unit (element of Z[L^{+-1/q}])."""
        return all(label.is_unit for (label, _exp) in self._terms)

    def scalar_terms(self) -> dict[Fraction, int]:
        """Exponent -> coefficient map; only valid for scalar elements."""
        out = {}
        for (label, exp), coeff in self._terms.items():
            if not label.is_unit:
                raise NonScalarLabel(f"non-unit label {label} in scalar context")
            out[exp] = coeff
        return out

    def exponent_denominator(self) -> int:
        """lcm of the L-exponent denominators occurring in the element."""
        q = 1
        for (_label, exp) in self._terms:
            q = q * exp.denominator // _gcd(q, exp.denominator)
        return q

    def as_int(self) -> int:
        """The element as an integer; requires a constant scalar element."""
        if not self._terms:
            return 0
        [(key, coeff)] = self._terms.items()
        label, exp = key
        if not label.is_unit or exp != 0:
            raise NonScalarLabel(f"{self} is not an integer constant")
        return coeff

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "BirElement") -> "BirElement":
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            s = out.get(key, 0) + coeff
            if s:
                out[key] = s
            else:
                del out[key]
        res = BirElement.__new__(BirElement)
        res._terms = out
        return res

    def __neg__(self) -> "BirElement":
        res = BirElement.__new__(BirElement)
        res._terms = {key: -coeff for key, coeff in self._terms.items()}
        return res

    def __sub__(self, other: "BirElement") -> "BirElement":
        return self + (-other)

    def __mul__(self, other: "BirElement | int") -> "BirElement":
        if isinstance(other, int):
            res = BirElement.__new__(BirElement)
            res._terms = (
                {} if other == 0 else {k: c * other for k, c in self._terms.items()}
            )
            return res
        out: dict[TermKey, int] = {}
        for (lab1, exp1), c1 in self._terms.items():
            for (lab2, exp2), c2 in other._terms.items():
                key = (lab1 * lab2, exp1 + exp2)
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        res = BirElement.__new__(BirElement)
        res._terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BirElement":
        if n < 0:
            raise ValueError("negative powers only via L(exp)")
        acc = BirElement.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def shift(self, exp: Fraction | int) -> "BirElement":
        """Multiply by L^exp."""
        d = Fraction(exp)
        res = BirElement.__new__(BirElement)
        res._terms = {(lab, e + d): c for (lab, e), c in self._terms.items()}
        return res

    def __eq__(self, other) -> bool:
        return isinstance(other, BirElement) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- rendering -----------------------------------------------------

    def __repr__(self) -> str:
        return f"BirElement({self.pretty()})"

    def pretty(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (label, exp), coeff in sorted(self._terms.items()):
            factors = []
            if label.symbols:
                factors.append("*".join("{%s}" % s for s in label.symbols))
            if exp != 0:
                factors.append("L" if exp == 1 else f"L^{exp}")
            body = "*".join(factors) if factors else "1"
            if coeff == 1 and factors:
                term = body
            elif coeff == -1 and factors:
                term = f"-{body}"
            else:
                term = f"{coeff}*{body}" if factors else str(coeff)
            parts.append(term)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        """Canonical JSON form, sorted lexicographically."""
        rows = []
        for (label, exp), coeff in self._terms.items():
            rows.append(
                {
                    "symbols": list(label.symbols),
                    "dim": label.dim,
                    "exp": str(exp),
                    "coeff": coeff,
                }
            )
        rows.sort(key=lambda r: (r["symbols"], r["dim"], Fraction(r["exp"])))
        return rows

    @staticmethod
    def from_json(rows: list[dict]) -> "BirElement":
        terms: dict[TermKey, int] = {}
        for r in rows:
            key = (
                ClassLabel(tuple(r["symbols"]), int(r["dim"])),
                Fraction(r["exp"]),
            )
            terms[key] = terms.get(key, 0) + int(r["coeff"])
        return BirElement(terms)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# -- specializations ----------------------------------------------------


def rho(x: BirElement) -> BirElement:
    """Rational specialization: each class of dimension d maps to L^d."""
    out = BirElement.zero()
    for (label, exp), coeff in x.items():
        out = out + BirElement({(UNIT_LABEL, exp + label.dim): coeff})
    return out


def count_points(x: BirElement) -> BirElement:
    """Component count: every symbol maps to 1 and L maps to 1."""
    total = 0
    for (_label, _exp), coeff in x.items():
        total += coeff
    return BirElement.from_int(total)


def specialize(x: BirElement, hom: Mapping[str, BirElement]) -> BirElement:
    """Apply the ring homomorphism sending each symbol to a scalar element.

    L is fixed.  Raises UnknownSymbol when a base symbol of x has no image.
    """
    for name, image in hom.items():
        if not image.is_scalar:
            raise NonScalarLabel(f"image of {name!r} must have empty labels")
    out = BirElement.zero()
    for (label, exp), coeff in x.items():
        acc = BirElement.L(exp) * coeff
        for name in label.symbols:
            if name not in hom:
                raise UnknownSymbol(f"no image for class symbol {name!r}")
            acc = acc * hom[name]
        out = out + acc
    return out


def phi_eval(x: BirElement) -> int:
    """Image under the map sending L to 0 (the constant coefficient).

    Only defined on the subring with unit labels and exponents >= 0.
    """
    value = 0
    for (label, exp), coeff in x.items():
        if not label.is_unit:
            raise NonScalarLabel(f"phi undefined on label {label}")
        if exp < 0:
            raise NegativeExponent(f"phi undefined on exponent {exp}")
        if exp == 0:
            value += coeff
    return value
