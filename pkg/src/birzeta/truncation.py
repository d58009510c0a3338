"""Contact-locus truncations from lists of dlt valuations.

The k-th coefficient of the contact side is a sum over the valuations whose
N divides k of cls * L^{1 - nu k / N}; the main-theorem check compares that
against the series expansion of the structured zeta sum of a dlt complex.

Valuation lists are always inputs.  For surfaces and chain complexes they
can be enumerated: the valuations with N <= m are exactly the vertices of
the m-separated refinement, i.e. the mediant closure of the edges (new data
(nu_i + nu_j, N_i + N_j), new class = component class times L).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classring import BirElement
from .complexes import WeightedDualComplex, _cell_key, _id_key
from .errors import MalformedComplex
from .zetafunc import ZetaExpr, series_expand


@dataclass(frozen=True)
class DltValuation:
    N: int
    nu: Fraction
    cls: BirElement
    over_sigma: bool = True

    def __post_init__(self):
        object.__setattr__(self, "nu", Fraction(self.nu))
        if self.N < 1 or self.nu <= 0:
            raise ValueError(f"valuation needs N >= 1 and nu > 0, got {self}")

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "nu": str(self.nu),
            "cls": self.cls.to_json(),
            "over_sigma": self.over_sigma,
        }

    @staticmethod
    def from_json(d: dict) -> "DltValuation":
        return DltValuation(
            N=int(d["N"]),
            nu=Fraction(d["nu"]),
            cls=BirElement.from_json(d["cls"]),
            over_sigma=bool(d.get("over_sigma", True)),
        )


def valuations_to_json(vals: list[DltValuation]) -> dict:
    return {
        "schema": "birzeta/valuations/v1",
        "valuations": [v.to_json() for v in vals],
    }


def valuations_from_json(d: dict) -> list[DltValuation]:
    try:
        return [DltValuation.from_json(row) for row in d["valuations"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedComplex(f"bad valuation JSON: {exc}") from exc


def dlt_truncation(
    vals: list[DltValuation], n: int, m: int, local: bool = False
) -> dict[int, BirElement]:
    """Coefficients of T^1..T^m of the contact-locus generating series.

    The caller guarantees vals contains every dlt valuation with N <= m
    (over the marked set when local).
    """
    del n  # the L^{-kn} normalization is already folded into the formula
    out = {k: BirElement.zero() for k in range(1, m + 1)}
    for v in vals:
        if local and not v.over_sigma:
            continue
        for k in range(v.N, m + 1, v.N):
            out[k] = out[k] + v.cls.shift(1 - v.nu * k / v.N)
    return out


def sum_over_valuations(vals: list[DltValuation], local: bool = False) -> ZetaExpr:
    """The codimension-one form: sum of cls L / (L^nu T^-N - 1)."""
    out = ZetaExpr.zero()
    for v in vals:
        if local and not v.over_sigma:
            continue
        out = out + ZetaExpr.term(v.cls.shift(1), 0, [(v.nu, v.N)])
    return out


def enumerate_dlt_valuations(
    c: WeightedDualComplex, m: int
) -> list[DltValuation]:
    """All dlt valuations with N <= m readable from the complex.

    Vertices contribute themselves; every edge component spawns its mediant
    closure: the inserted vertex on an edge (u, v) has data
    (N_u + N_v, nu_u + nu_v), class (component class) * L, and is over the
    marked set when either endpoint is; recursion continues on both sub-edges
    while N stays <= m.  This matches the vertices of make_m_separating for
    surfaces and of the minimal separating towers of chain complexes.
    """
    vals = [
        DltValuation(v.N, v.nu, v.cls, v.over_sigma)
        for _vid, v in sorted(c.vertices.items(), key=lambda kv: _id_key(kv[0]))
    ]

    def chain(d1: tuple[int, Fraction], d2: tuple[int, Fraction], cls, over):
        n_new = d1[0] + d2[0]
        if n_new > m:
            return
        nu_new = d1[1] + d2[1]
        vals.append(DltValuation(n_new, nu_new, cls, over))
        chain(d1, (n_new, nu_new), cls, over)
        chain((n_new, nu_new), d2, cls, over)

    for i in sorted(c.cells, key=_cell_key):
        if len(i) != 2:
            continue
        u, v = sorted(i, key=_id_key)
        du = (c.vertices[u].N, c.vertices[u].nu)
        dv = (c.vertices[v].N, c.vertices[v].nu)
        over = c.vertices[u].over_sigma or c.vertices[v].over_sigma
        for comp in c.cells[i]:
            chain(du, dv, comp.cls.shift(1), over)
    return vals


def verify_main_theorem(
    c_dlt: WeightedDualComplex,
    vals: list[DltValuation],
    m: int,
    local: bool = False,
) -> bool:
    """Truncations modulo T^{m+1} of both computations agree, exactly."""
    from .complexes import zeta_bir  # local import to avoid a cycle

    series = series_expand(zeta_bir(c_dlt, local), m)
    trunc = dlt_truncation(vals, c_dlt.n, m, local)
    if not series.get(0, BirElement.zero()).is_zero:
        return False
    return all(series[k] == trunc[k] for k in range(1, m + 1))
