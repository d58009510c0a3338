"""Generators for the worked example families: cones over smooth projective
hypersurfaces, hyperplane arrangements, and log-canonical skeleta.

Each generator emits both a weighted dual complex (where one exists at desk
scale) and the closed form the engine evaluation must reproduce, so the two
paths can be cross-checked exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .classring import BirElement
from .complexes import StratumComponent, VertexData, WeightedDualComplex, zeta_bir
from .errors import BadParameters, DegenerateArrangement
from .truncation import DltValuation
from .zetafunc import ClosedForm, ZetaExpr, series_expand

# ---------------------------------------------------------------------------
# cones over smooth projective hypersurfaces of degree d in P^{n-1}


@dataclass(frozen=True)
class ConeExample:
    n: int
    d: int
    complex: WeightedDualComplex
    expected: ClosedForm
    expected_local: ClosedForm


def cone_example(n: int, d: int) -> ConeExample:
    """The affine cone over a smooth degree-d hypersurface H in P^{n-1}.

    For d < n the pair is already its own dlt model (one vertex, the cone
    itself, of class {H} L); for d >= n the blow-up at the vertex is a dlt
    modification with two vertices and an edge of class {H}.
    """
    if n < 3 or d < 1:
        raise BadParameters("cone example needs n >= 3 and d >= 1")
    h = BirElement.sym("H", n - 2)
    lp = BirElement.L
    if d < n:
        cone = WeightedDualComplex(
            n,
            [
                VertexData(
                    id="D", N=1, nu=Fraction(1), cls=h * lp(1),
                    over_sigma=False, kind="strict",
                )
            ],
            {},
        )
        expected = ClosedForm.make({0: h * lp(2)}, [(Fraction(1), 1)])
        expected_local = ClosedForm.make({}, [])
        return ConeExample(n, d, cone, expected, expected_local)
    cone = WeightedDualComplex(
        n,
        [
            VertexData(
                id="D", N=1, nu=Fraction(1), cls=h * lp(1),
                over_sigma=False, kind="strict",
            ),
            VertexData(
                id="E", N=d, nu=Fraction(n), cls=lp(n - 1),
                over_sigma=True, kind="exceptional",
            ),
        ],
        {frozenset({"D", "E"}): (StratumComponent(cls=h),)},
    )
    expected = ClosedForm.make(
        {-d: h * lp(n + 2), -1: lp(n + 1), 0: -lp(n)},
        [(Fraction(n), d), (Fraction(1), 1)],
    )
    expected_local = ClosedForm.make(
        {-1: lp(n + 1), 0: h * lp(2) - lp(n)},
        [(Fraction(n), d), (Fraction(1), 1)],
    )
    return ConeExample(n, d, cone, expected, expected_local)


def check_cone(n: int, d: int) -> bool:
    ex = cone_example(n, d)
    return ex.expected.matches(zeta_bir(ex.complex, local=False)) and (
        ex.expected_local.matches(zeta_bir(ex.complex, local=True))
    )


def cone_valuations(n: int, d: int, m: int) -> list[DltValuation]:
    """All dlt valuations of the cone with N <= m.

    For d < n the cone itself is the only one.  For d >= n the valuations
    are the two vertices plus the chain inserted between them: the coprime
    combinations a*(1,1) + b*(d,n), all of class {H} L."""
    if n < 3 or d < 1:
        raise BadParameters("cone valuations need n >= 3 and d >= 1")
    h = BirElement.sym("H", n - 2)
    lp = BirElement.L
    if d < n:
        return [DltValuation(1, Fraction(1), h * lp(1), over_sigma=False)]
    vals = [
        DltValuation(1, Fraction(1), h * lp(1), over_sigma=False),
        DltValuation(d, Fraction(n), lp(n - 1), over_sigma=True),
    ]

    def chain(d1, d2):
        big_n = d1[0] + d2[0]
        if big_n > m:
            return
        nu = d1[1] + d2[1]
        vals.append(DltValuation(big_n, nu, h * lp(1), over_sigma=True))
        chain(d1, (big_n, nu))
        chain((big_n, nu), d2)

    chain((1, Fraction(1)), (d, Fraction(n)))
    return vals


def sm_enumeration_check(n: int, d: int, m: int) -> bool:
    """Replay the displayed case split for the T^m coefficient of the global
    cone zeta function (d >= n) and compare with the series expansion."""
    if d < n:
        raise BadParameters("the enumeration check is the d >= n case")
    ex = cone_example(n, d)
    h = BirElement.sym("H", n - 2)
    lp = BirElement.L
    expected = BirElement.zero()
    i = 0
    while i * d > -m:  # i runs over (-m/d, 0] cap Z
        expected = expected + h * lp(2) * lp(-m - i * (d - n))
        i -= 1
    if m % d == 0:
        expected = expected + lp(n - m * n // d)
    actual = series_expand(zeta_bir(ex.complex, local=False), m)[m]
    return expected == actual


# ---------------------------------------------------------------------------
# hyperplane arrangements


def _rref(rows: list[tuple[Fraction, ...]]) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row echelon form over Q; canonical basis of the row space."""
    mat = [list(r) for r in rows]
    cols = len(mat[0]) if mat else 0
    pivot_row = 0
    for col in range(cols):
        sel = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        pv = mat[pivot_row][col]
        mat[pivot_row] = [x / pv for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    out = [tuple(r) for r in mat[:pivot_row] if any(x != 0 for x in r)]
    return tuple(out)


@dataclass(frozen=True)
class Edge:
    """An intersection of hyperplanes: its span (canonical normals), the
    codimension nu and the count N of hyperplanes containing it."""

    span: tuple[tuple[Fraction, ...], ...]
    nu: int
    N: int


class ArrangementLattice:
    """Intersection lattice of a central arrangement given by linear forms."""

    def __init__(self, forms: list[tuple]):
        normals = []
        canon_set = set()
        for form in forms:
            row = tuple(Fraction(x) for x in form)
            if all(x == 0 for x in row):
                raise DegenerateArrangement("zero linear form")
            key = _rref([row])
            if key in canon_set:
                raise DegenerateArrangement("repeated hyperplane")
            canon_set.add(key)
            normals.append(row)
        self.n = len(normals[0])
        if any(len(r) != self.n for r in normals):
            raise DegenerateArrangement("inconsistent ambient dimensions")
        self.normals = tuple(normals)
        spans: dict[tuple, list[int]] = {}
        for size in range(1, len(normals) + 1):
            for subset in itertools.combinations(range(len(normals)), size):
                span = _rref([normals[i] for i in subset])
                spans.setdefault(span, [])
        for span in spans:
            member = _rref([*span])
            for i, row in enumerate(normals):
                if _rref([*span, row]) == member:
                    spans[span].append(i)
        self.edges = tuple(
            sorted(
                (Edge(span, len(span), len(members)) for span, members in spans.items()),
                key=lambda e: (e.nu, e.N, e.span),
            )
        )

    def contains(self, bigger: Edge, smaller: Edge) -> bool:
        """Edge containment Z_small subset of Z_big: span inclusion reversed."""
        return _rref([*bigger.span, *smaller.span]) == _rref([*smaller.span])

    def chains(self):
        """All nonempty chains in the edge poset ordered by inclusion."""
        edges = self.edges
        out = []

        def extend(chain, start):
            out.append(tuple(chain))
            for i in range(start, len(edges)):
                if all(self.contains(z, edges[i]) for z in chain):
                    chain.append(edges[i])
                    extend(chain, i + 1)
                    chain.pop()

        for i in range(len(edges)):
            extend([edges[i]], i + 1)
        return out


@dataclass(frozen=True)
class ArrangementExample:
    lattice: ArrangementLattice
    zeta: ZetaExpr
    complex: WeightedDualComplex | None
    cross_checked: bool


def arrangement_zeta(forms: list[tuple]) -> ArrangementExample:
    """Z = L^n sum over nonempty chains of edges of prod 1/(L^nu T^-N - 1),
    with the denominator read as T^{-N}; for n = 2 the blow-up complex is
    built directly and compared, which pins that reading."""
    lat = ArrangementLattice(forms)
    z = ZetaExpr.zero()
    for chain in lat.chains():
        den = [(Fraction(e.nu), e.N) for e in chain]
        z = z + ZetaExpr.term(BirElement.L(lat.n), 0, den)
    cx = None
    checked = False
    if lat.n == 2:
        cx = _line_arrangement_complex(len(lat.normals))
        checked = z.equals(zeta_bir(cx, local=False))
    return ArrangementExample(lat, z, cx, checked)


def _line_arrangement_complex(d: int) -> WeightedDualComplex:
    """Blow-up complex of d distinct concurrent lines in the plane."""
    lp = BirElement.L
    lines = [
        VertexData(
            id=f"b{i}", N=1, nu=Fraction(1), cls=lp(1),
            over_sigma=False, kind="strict",
        )
        for i in range(1, d + 1)
    ]
    if d == 1:
        return WeightedDualComplex(2, lines, {})
    e = VertexData(
        id="E", N=d, nu=Fraction(2), cls=lp(1), over_sigma=True,
        kind="exceptional",
    )
    cells = {
        frozenset({"E", f"b{i}"}): (StratumComponent(cls=BirElement.one()),)
        for i in range(1, d + 1)
    }
    return WeightedDualComplex(2, lines + [e], cells)


def concurrent_lines(d: int) -> list[tuple]:
    """d distinct lines through the origin of the plane."""
    if d < 1:
        raise BadParameters("need at least one line")
    forms = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    forms += [(Fraction(1), Fraction(k)) for k in range(1, d - 1)]
    return forms[:d]


def boolean_arrangement(n: int) -> list[tuple]:
    """The coordinate hyperplanes of n-space."""
    if n < 1:
        raise BadParameters("need n >= 1")
    out = []
    for i in range(n):
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        out.append(tuple(row))
    return out


def boolean_valuations(n: int, m: int) -> list[DltValuation]:
    """Skeleton valuations of the coordinate-hyperplane arrangement with
    N <= m: primitive nonnegative integer weight vectors; all have nu = N
    and class L^{n-1}."""
    import math

    vals = []
    for w in itertools.product(range(m + 1), repeat=n):
        total = sum(w)
        if total == 0 or total > m:
            continue
        if math.gcd(*w) != 1:
            continue
        vals.append(
            DltValuation(total, Fraction(total), BirElement.L(n - 1), True)
        )
    return vals


# ---------------------------------------------------------------------------
# log-canonical skeleta


def skeleton_zeta(
    sk: list[tuple[int, BirElement] | tuple[int, BirElement, bool]],
    local: bool = False,
) -> ZetaExpr:
    """Sum of {E} L / ((L T^-1)^N - 1) over skeleton valuations (nu = N)."""
    out = ZetaExpr.zero()
    for item in sk:
        n, cls, over = item if len(item) == 3 else (*item, True)
        if local and not over:
            continue
        out = out + ZetaExpr.term(cls.shift(1), 0, [(Fraction(n), n)])
    return out
