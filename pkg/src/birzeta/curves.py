"""Plane curve germs: dual graphs, numerical validation, twig contraction,
zeta computation, pole prediction and exact residue certification.

Input is always the weighted dual graph of the minimal embedded resolution
of a reduced germ (exceptional vertices carry (N, nu) and the negative
self-intersection kappa; branch vertices are the strict-transform leaves).
Germs that already have normal crossings (smooth or ordinary node) are
excluded from the pipeline and carry their stated constant zeta values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import univar
from .classring import BirElement
from .complexes import StratumComponent, VertexData, WeightedDualComplex
from .errors import (
    ComparisonFailure,
    EverythingContracted,
    UnsupportedConfiguration,
    ValidationFailure,
)
from .zetafunc import (
    TopZeta,
    ZetaExpr,
    normalize_and_cancel,
    poles,
    topzeta_normalize,
)

# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class CurveVertex:
    id: str
    kind: str  # "exceptional" | "branch"
    N: int
    nu: Fraction
    kappa: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "nu", Fraction(self.nu))
        if self.kind not in ("exceptional", "branch"):
            raise ValidationFailure(f"vertex {self.id}: unknown kind {self.kind!r}")
        if self.kind == "branch" and (self.N != 1 or self.nu != 1):
            raise ValidationFailure(
                f"branch {self.id} must have N = nu = 1 for a reduced germ"
            )
        if self.kind == "exceptional" and self.kappa is None:
            raise ValidationFailure(f"exceptional {self.id} needs kappa")

    def ratio(self) -> Fraction:
        return self.nu / self.N


class CurveDualGraph:
    """Dual graph of a minimal embedded resolution, marked at the point a."""

    def __init__(self, vertices, edges, point: str = "a"):
        vs = list(vertices)
        self.vertices: dict[str, CurveVertex] = {
            v.id: v for v in sorted(vs, key=lambda v: v.id)
        }
        if len(self.vertices) != len(vs):
            raise ValidationFailure("duplicate vertex ids")
        self.edges: tuple[tuple[str, str], ...] = tuple(
            sorted(tuple(sorted(e)) for e in edges)
        )
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise ValidationFailure(f"edge ({u}, {v}) uses unknown vertex")
            if u == v:
                raise ValidationFailure(f"loop edge at {u}")
        self.point = point

    def neighbors(self, vid: str) -> list[str]:
        out = []
        for u, v in self.edges:
            if u == vid:
                out.append(v)
            elif v == vid:
                out.append(u)
        return out

    def degree(self, vid: str) -> int:
        return len(self.neighbors(vid))

    def exceptional_ids(self) -> list[str]:
        return [v.id for v in self.vertices.values() if v.kind == "exceptional"]

    def branch_ids(self) -> list[str]:
        return [v.id for v in self.vertices.values() if v.kind == "branch"]

    def is_normal_crossings(self) -> bool:
        """Germs analytically isomorphic to x or xy: nothing to resolve."""
        return not self.exceptional_ids()

    def to_json(self) -> dict:
        rows = []
        for vid in sorted(self.vertices):
            v = self.vertices[vid]
            row = {"id": v.id, "kind": v.kind, "N": v.N, "nu": str(v.nu)}
            if v.kappa is not None:
                row["kappa"] = v.kappa
            rows.append(row)
        return {
            "schema": "birzeta/curve/v1",
            "vertices": rows,
            "edges": [list(e) for e in self.edges],
            "point": self.point,
        }

    @staticmethod
    def from_json(d: dict) -> "CurveDualGraph":
        try:
            verts = [
                CurveVertex(
                    id=row["id"],
                    kind=row["kind"],
                    N=int(row["N"]),
                    nu=Fraction(row.get("nu", 1)),
                    kappa=row.get("kappa"),
                )
                for row in d["vertices"]
            ]
            return CurveDualGraph(
                verts, [tuple(e) for e in d["edges"]], d.get("point", "a")
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationFailure(f"bad curve graph JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# numerical validation (the classical relations at each exceptional curve)


@dataclass(frozen=True)
class VertexCheck:
    vertex: str
    relation_i: bool  # kappa N = sum N_i
    relation_ii: bool  # kappa nu = sum (nu_i - 1) + 2
    relation_iii: bool  # sum (alpha_i - 1) + 2 = 0
    relation_iv: bool  # -1 <= alpha_i < 1
    alphas: tuple[Fraction, ...]

    @property
    def passed(self) -> bool:
        return (
            self.relation_i and self.relation_ii
            and self.relation_iii and self.relation_iv
        )


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[VertexCheck, ...]
    structure_errors: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.structure_errors and all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "structure_errors": list(self.structure_errors),
            "vertices": [
                {
                    "vertex": c.vertex,
                    "kappa_N": c.relation_i,
                    "kappa_nu": c.relation_ii,
                    "alpha_sum": c.relation_iii,
                    "alpha_range": c.relation_iv,
                    "alphas": [str(a) for a in c.alphas],
                    "passed": c.passed,
                }
                for c in self.checks
            ],
        }


def _structure_errors(g: CurveDualGraph) -> list[str]:
    errors = []
    exc = set(g.exceptional_ids())
    if exc:
        exc_edges = [e for e in g.edges if e[0] in exc and e[1] in exc]
        if len(exc_edges) != len(exc) - 1 or not _connected(exc, exc_edges):
            errors.append("exceptional subgraph is not a connected tree")
        for b in g.branch_ids():
            nbs = g.neighbors(b)
            if len(nbs) != 1 or nbs[0] not in exc:
                errors.append(f"branch {b} is not a leaf on an exceptional curve")
    else:
        if len(g.branch_ids()) > 2 or len(g.edges) > 1:
            errors.append("normal-crossings germ with too many branches/edges")
    return errors


def _connected(nodes: set, edges: list) -> bool:
    if not nodes:
        return True
    adj = {n: [] for n in nodes}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = set()
    stack = [next(iter(sorted(nodes)))]
    while stack:
        n = stack.pop()
        if n in seen:
            continue
        seen.add(n)
        stack.extend(adj[n])
    return seen == nodes


def validate_numerics(g: CurveDualGraph) -> ValidationReport:
    """Per-vertex pass/fail of the self-intersection relations."""
    checks = []
    for vid in sorted(g.exceptional_ids()):
        v = g.vertices[vid]
        nbs = [g.vertices[u] for u in g.neighbors(vid)]
        alphas = tuple(u.nu - v.nu * u.N / v.N for u in nbs)
        rel_i = v.kappa * v.N == sum(u.N for u in nbs)
        rel_ii = v.kappa * v.nu == sum(u.nu - 1 for u in nbs) + 2
        rel_iii = sum(a - 1 for a in alphas) + 2 == 0
        rel_iv = all(-1 <= a < 1 for a in alphas)
        checks.append(VertexCheck(vid, rel_i, rel_ii, rel_iii, rel_iv, alphas))
    return ValidationReport(tuple(checks), tuple(_structure_errors(g)))


def ensure_valid(g: CurveDualGraph) -> None:
    report = validate_numerics(g)
    if report.passed:
        return
    bad = [c.vertex for c in report.checks if not c.passed]
    raise ValidationFailure(
        f"numerical data invalid; structure: {list(report.structure_errors)},"
        f" failing vertices: {bad}"
    )


def check_minimality(g: CurveDualGraph) -> list[str]:
    """(-1)-curves meeting at most two other components witness non-minimality."""
    return [
        vid
        for vid in g.exceptional_ids()
        if g.vertices[vid].kappa == 1 and g.degree(vid) < 3
    ]


# ---------------------------------------------------------------------------
# twig contraction to the minimal dlt graph


@dataclass(frozen=True)
class DltVertex:
    id: str
    kind: str
    N: int
    nu: Fraction
    r: int  # adjacency count in the dlt graph
    t: int  # contracted twig attachment points (surface singularities)

    def ratio(self) -> Fraction:
        return self.nu / self.N


class DltCurveGraph:
    def __init__(self, vertices, edges, point: str = "a", excluded: bool = False):
        self.vertices: dict[str, DltVertex] = {
            v.id: v for v in sorted(vertices, key=lambda v: v.id)
        }
        self.edges: tuple[tuple[str, str], ...] = tuple(
            sorted(tuple(sorted(e)) for e in edges)
        )
        self.point = point
        self.excluded = excluded

    def neighbors(self, vid: str) -> list[str]:
        out = []
        for u, v in self.edges:
            if u == vid:
                out.append(v)
            elif v == vid:
                out.append(u)
        return out

    def exceptional_ids(self) -> list[str]:
        return [v.id for v in self.vertices.values() if v.kind == "exceptional"]

    def vertex_class(self, vid: str) -> BirElement:
        v = self.vertices[vid]
        if v.kind == "exceptional":
            return BirElement.L(1)  # rational curves
        return BirElement.sym(f"B_{vid}", 1)

    def to_json(self) -> dict:
        return {
            "schema": "birzeta/dlt-curve/v1",
            "vertices": [
                {
                    "id": v.id,
                    "kind": v.kind,
                    "N": v.N,
                    "nu": str(v.nu),
                    "r": v.r,
                    "t": v.t,
                }
                for v in self.vertices.values()
            ],
            "edges": [list(e) for e in self.edges],
            "point": self.point,
            "excluded": self.excluded,
        }


def contract_twigs(g: CurveDualGraph) -> DltCurveGraph:
    """Remove every maximally admissible twig of the minimal resolution.

    A twig is a maximal chain of exceptional curves T_1..T_k with T_1 of
    total degree 1 and interior degree 2; removal leaves the numerical data
    of the survivors unchanged and records one surface-singular point on the
    attachment vertex per contracted twig.
    """
    ensure_valid(g)
    if g.is_normal_crossings():
        survivors = [
            DltVertex(v.id, v.kind, v.N, v.nu, g.degree(v.id), 0)
            for v in g.vertices.values()
        ]
        return DltCurveGraph(survivors, g.edges, g.point, excluded=True)

    exc = set(g.exceptional_ids())
    removed: set[str] = set()
    twig_attach: dict[str, int] = {}
    for leaf in sorted(exc):
        if leaf in removed or g.degree(leaf) != 1:
            continue
        chain = [leaf]
        (nxt,) = g.neighbors(leaf)
        while nxt in exc and g.degree(nxt) == 2:
            chain.append(nxt)
            a, b = g.neighbors(nxt)
            nxt = b if a == chain[-2] else a
        # nxt is the attachment: degree >= 3, or a branch vertex
        removed.update(chain)
        twig_attach[nxt] = twig_attach.get(nxt, 0) + 1
    if removed >= set(g.vertices):
        raise EverythingContracted("no vertex survives twig contraction")

    kept = [v for v in g.vertices.values() if v.id not in removed]
    edges = [e for e in g.edges if e[0] not in removed and e[1] not in removed]
    deg = {v.id: 0 for v in kept}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    survivors = [
        DltVertex(v.id, v.kind, v.N, v.nu, deg[v.id], twig_attach.get(v.id, 0))
        for v in kept
    ]
    if not any(v.kind == "exceptional" for v in survivors):
        raise EverythingContracted("no exceptional curve survives contraction")
    return DltCurveGraph(survivors, edges, g.point)


def dlt_complex(dg: DltCurveGraph) -> WeightedDualComplex:
    """The weighted dual complex of the minimal dlt model, marked at a.

    For the excluded node germ this is the stated one-vertex model (the
    single dlt valuation of xy over the origin), not the nc graph itself.
    """
    if dg.excluded:
        if len(dg.vertices) == 1:  # smooth germ: no valuation over a
            return WeightedDualComplex(2, [], {})
        return WeightedDualComplex(
            2,
            [
                VertexData(
                    id="E",
                    N=2,
                    nu=Fraction(2),
                    cls=BirElement.L(1),
                    over_sigma=True,
                )
            ],
            {},
        )
    verts = [
        VertexData(
            id=v.id,
            N=v.N,
            nu=v.nu,
            cls=dg.vertex_class(v.id),
            over_sigma=(v.kind == "exceptional"),
            kind=("exceptional" if v.kind == "exceptional" else "strict"),
        )
        for v in dg.vertices.values()
    ]
    cells = {
        frozenset(e): (StratumComponent(cls=BirElement.one()),) for e in dg.edges
    }
    return WeightedDualComplex(2, verts, cells)


# ---------------------------------------------------------------------------
# zeta functions of a germ


def zeta_bir_local(dg: DltCurveGraph) -> ZetaExpr:
    """Local birational zeta function at a from the minimal dlt graph."""
    if dg.excluded:
        if len(dg.vertices) == 1:
            return ZetaExpr.zero()
        return ZetaExpr.term(BirElement.L(2), 0, [(Fraction(2), 2)])
    out = ZetaExpr.zero()
    for vid in sorted(dg.exceptional_ids()):
        v = dg.vertices[vid]
        out = out + ZetaExpr.term(BirElement.L(2), 0, [(v.nu, v.N)])
    for u, v in dg.edges:
        vu, vv = dg.vertices[u], dg.vertices[v]
        if vu.kind == "branch" and vv.kind == "branch":
            raise UnsupportedConfiguration(
                "branch-branch intersection outside the excluded nc case"
            )
        out = out + ZetaExpr.term(
            BirElement.L(2), 0, [(vu.nu, vu.N), (vv.nu, vv.N)]
        )
    return out


def zeta_top_local(g: CurveDualGraph) -> TopZeta:
    """Local topological zeta function at a from the minimal resolution:
    exceptional open strata contribute (2 - degree), intersection points
    contribute 1, branch open strata contribute 0."""
    ensure_valid(g)
    terms = []
    for vid in sorted(g.exceptional_ids()):
        v = g.vertices[vid]
        terms.append((2 - g.degree(vid), ((v.N, v.nu),)))
    for u, v in g.edges:
        vu, vv = g.vertices[u], g.vertices[v]
        terms.append((1, ((vu.N, vu.nu), (vv.N, vv.nu))))
    return TopZeta(terms)


def predict_poles_top(g: CurveDualGraph) -> set[Fraction]:
    """Candidate set from the minimal resolution: exceptional curves meeting
    at least three other components, plus -1/N for the branches."""
    ensure_valid(g)
    out = {
        -g.vertices[vid].ratio()
        for vid in g.exceptional_ids()
        if g.degree(vid) >= 3
    }
    for b in g.branch_ids():
        out.add(Fraction(-1, g.vertices[b].N))
    return out


def predict_poles_bir(dg: DltCurveGraph) -> set[Fraction]:
    """Exceptional dlt vertices with at least 3 special points, plus -1."""
    out = {
        -dg.vertices[vid].ratio()
        for vid in dg.exceptional_ids()
        if dg.vertices[vid].r + dg.vertices[vid].t >= 3
    }
    out.add(Fraction(-1))
    return out


# ---------------------------------------------------------------------------
# residues


@dataclass(frozen=True)
class ResidueCertificate:
    vertex: str
    s0: Fraction
    case: str
    alphas: tuple[Fraction, ...]
    value: univar.LaurentFrac | None  # in U = L^{1/q}
    q: int
    nonzero: bool | None
    phi_note: str

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "s0": str(self.s0),
            "case": self.case,
            "alphas": [str(a) for a in self.alphas],
            "value": None if self.value is None else repr(self.value),
            "q": self.q,
            "nonzero": self.nonzero,
            "phi": self.phi_note,
        }


def _lcm(a: int, b: int) -> int:
    g, x = a, b
    while x:
        g, x = x, g % x
    return a * b // g


def _one_over_u_pow_minus_one(k: int) -> univar.LaurentFrac:
    """1/(U^k - 1) for k != 0, as an exact Laurent fraction."""
    return univar.LaurentFrac(univar.lterm(1, 0), {k: Fraction(1), 0: Fraction(-1)})


def residue_certificate(
    dg: DltCurveGraph, vertex: str, q: int | None = None
) -> ResidueCertificate:
    """Normalised residue contribution of one dlt component at its own
    candidate s0 = -nu/N, with the proof-case classification.

    When a dlt neighbor shares the ratio nu/N, the order-2 branch of the
    lct pole statement applies instead and the case is reported as LCT2.
    """
    v = dg.vertices[vertex]
    s0 = -v.ratio()
    nbs = [dg.vertices[u] for u in dg.neighbors(vertex)]
    if any(u.ratio() == v.ratio() for u in nbs):
        return ResidueCertificate(
            vertex, s0, "LCT2", (), None, 1, None,
            "equal-ratio intersection: order-2 pole at -lct, residues not used",
        )
    alphas = tuple(u.nu - v.nu * u.N / v.N for u in nbs)
    if q is None:
        q = 1
        for a in alphas:
            q = _lcm(q, a.denominator)

    if v.kind == "branch":
        if len(nbs) > 1:
            raise UnsupportedConfiguration(
                f"branch {vertex} with {len(nbs)} intersections"
            )
        if not nbs:
            raise UnsupportedConfiguration(f"isolated branch {vertex}")
        value = _one_over_u_pow_minus_one(int(alphas[0] * q))
        return ResidueCertificate(
            vertex, s0, "branch", alphas, value, q, not value.is_zero,
            "single strict-transform contribution 1/(L^alpha - 1), never zero",
        )

    r, t = v.r, v.t
    if r == 0 or (r, t) in ((1, 0), (1, 1)):
        raise UnsupportedConfiguration(
            f"exceptional {vertex} with (r, t) = ({r}, {t}) cannot occur"
        )
    neg = [a for a in alphas if a < 0]
    total = univar.LaurentFrac.const(1)
    for a in alphas:
        total = total + _one_over_u_pow_minus_one(int(a * q))
    value = total.scaled(Fraction(1, v.N))
    if (r, t) == (2, 0):
        case = "cancel-2-0"
        phi = "whole factor cancels: alpha_2 = -alpha_1 makes the sum vanish"
    elif len(neg) == 0:
        if r == 1:
            case = "r1-only-contributor"
            phi = (
                f"sole contributor; value L^a/(N(L^a - 1)) with a = {alphas[0]}"
            )
        else:
            case = "all-alpha-positive"
            phi = f"phi(R) = (1 - r)/N = {Fraction(1 - r, v.N)} < 0"
    elif len(neg) == 1:
        if r == 1:
            raise UnsupportedConfiguration(
                f"exceptional {vertex}: r = 1 with negative alpha cannot occur"
            )
        if r == 2:
            case = "r2-neg-alpha"
            phi = (
                f"phi(R / L^{-neg[0]}) = 1/N = {Fraction(1, v.N)} > 0"
                " (leading-order argument)"
            )
        else:
            case = "rbig-neg-alpha"
            phi = f"phi(R) = (2 - r)/N = {Fraction(2 - r, v.N)} < 0"
    else:
        raise UnsupportedConfiguration(
            f"exceptional {vertex}: {len(neg)} negative alphas outside the taxonomy"
        )
    return ResidueCertificate(
        vertex, s0, case, alphas, value, q, not value.is_zero, phi
    )


@dataclass(frozen=True)
class PoleCertificate:
    s0: Fraction
    contributors: tuple[ResidueCertificate, ...]
    lct2: bool
    total: univar.LaurentFrac | None
    is_pole: bool

    def to_json(self) -> dict:
        return {
            "s0": str(self.s0),
            "contributors": [c.to_json() for c in self.contributors],
            "lct2": self.lct2,
            "total": None if self.total is None else repr(self.total),
            "is_pole": self.is_pole,
        }


def certify_pole(dg: DltCurveGraph, s0: Fraction) -> PoleCertificate:
    """Decide whether s0 is a pole by summing all normalised residues of the
    components with ratio -s0 and testing the exact sum against zero; the
    equal-ratio (lct, order 2) configuration is certified structurally."""
    ids = [vid for vid in sorted(dg.vertices) if dg.vertices[vid].ratio() == -s0]
    if not ids:
        return PoleCertificate(s0, (), False, None, False)
    lct2 = any(
        dg.vertices[u].ratio() == -s0
        for vid in ids
        for u in dg.neighbors(vid)
    )
    if lct2:
        certs = tuple(residue_certificate(dg, vid) for vid in ids)
        return PoleCertificate(s0, certs, True, None, True)
    q = 1
    for vid in ids:
        v = dg.vertices[vid]
        for u in dg.neighbors(vid):
            a = dg.vertices[u].nu - v.nu * dg.vertices[u].N / v.N
            q = _lcm(q, a.denominator)
    certs = tuple(residue_certificate(dg, vid, q) for vid in ids)
    total = univar.LaurentFrac.zero()
    for c in certs:
        total = total + c.value
    return PoleCertificate(s0, certs, False, total, not total.is_zero)


# ---------------------------------------------------------------------------
# the headline comparison


@dataclass(frozen=True)
class CompareReport:
    germ: str
    top_actual: tuple[tuple[Fraction, int], ...]
    bir_actual: tuple[tuple[Fraction, int], ...]
    top_predicted: tuple[Fraction, ...]
    bir_predicted: tuple[Fraction, ...]
    certificates: tuple[PoleCertificate, ...]
    passed: bool
    mismatches: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "germ": self.germ,
            "top_actual": [[str(s), o] for s, o in self.top_actual],
            "bir_actual": [[str(s), o] for s, o in self.bir_actual],
            "top_predicted": [str(s) for s in self.top_predicted],
            "bir_predicted": [str(s) for s in self.bir_predicted],
            "certificates": [c.to_json() for c in self.certificates],
            "passed": self.passed,
            "mismatches": list(self.mismatches),
        }


def compare_top_bir(g: CurveDualGraph, name: str = "germ") -> CompareReport:
    """Compute both zeta functions, both predicted pole sets, both actual
    pole sets with orders, and check they all agree (the corollary shape).

    Raises ComparisonFailure with the full diff when any piece disagrees.
    """
    ensure_valid(g)
    if g.is_normal_crossings():
        raise UnsupportedConfiguration(
            "normal-crossings germ: zeta values are the stated constants"
        )
    dg = contract_twigs(g)
    top_actual = tuple(topzeta_normalize(zeta_top_local(g)))
    bir_actual = tuple(poles(normalize_and_cancel(zeta_bir_local(dg), "rho")))
    top_pred = tuple(sorted(predict_poles_top(g), reverse=True))
    bir_pred = tuple(sorted(predict_poles_bir(dg), reverse=True))
    certs = tuple(certify_pole(dg, s0) for s0 in bir_pred)

    mism = []
    if {s for s, _ in top_actual} != set(top_pred):
        mism.append(
            f"topological poles {[str(s) for s, _ in top_actual]} != predicted"
            f" {[str(s) for s in top_pred]}"
        )
    if {s for s, _ in bir_actual} != set(bir_pred):
        mism.append(
            f"birational poles {[str(s) for s, _ in bir_actual]} != predicted"
            f" {[str(s) for s in bir_pred]}"
        )
    if top_actual != bir_actual:
        mism.append(
            f"pole/order mismatch: top {[(str(s), o) for s, o in top_actual]}"
            f" vs bir {[(str(s), o) for s, o in bir_actual]}"
        )
    for c in certs:
        if not c.is_pole:
            mism.append(f"residue sum vanished at predicted pole {c.s0}")
    report = CompareReport(
        germ=name,
        top_actual=top_actual,
        bir_actual=bir_actual,
        top_predicted=top_pred,
        bir_predicted=bir_pred,
        certificates=certs,
        passed=not mism,
        mismatches=tuple(mism),
    )
    if mism:
        raise ComparisonFailure("; ".join(mism))
    return report
