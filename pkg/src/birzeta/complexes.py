"""Weighted dual complexes of dlt resolutions.

A complex records the combinatorial shadow of a resolution: vertices are
the irreducible boundary divisors with their numerical data (N, nu), a
birational class, and a flag marking divisors mapping into the chosen
center; cells record the components of the deeper strata.  Complexes are
values: every transform returns a new complex.

Component-level incidence (which component of a deeper stratum lies inside
which component of a shallower one) is needed only by stellar subdivision.
It is implicit whenever the intermediate cells have a single component and
can be supplied explicitly through per-component face maps otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction

from .classring import BirElement, count_points
from .errors import (
    AmbiguousIncidence,
    BadDimension,
    MalformedComplex,
    MissingChi,
    MissingOpenClass,
    NoSuchComponent,
    VerificationError,
)
from .zetafunc import (
    DenFactor,
    NormalForm,
    TopZeta,
    ZetaExpr,
    den_of,
    limit_T_to_infinity,
    normalize_and_cancel,
    poles,
)

VId = int | str


def _id_key(v: VId):
    return (isinstance(v, str), v)


def _cell_key(i) -> tuple:
    return (len(i), tuple(sorted(_id_key(v) for v in i)))


@dataclass(frozen=True)
class VertexData:
    id: VId
    N: int
    nu: Fraction
    cls: BirElement
    over_sigma: bool = False
    kind: str = "exceptional"  # "exceptional" | "strict"
    open_chi: int | None = None
    open_cls: BirElement | None = None

    def __post_init__(self):
        object.__setattr__(self, "nu", Fraction(self.nu))

    def factor(self) -> DenFactor:
        return DenFactor(self.nu, self.N)

    def ratio(self) -> Fraction:
        return self.nu / self.N


@dataclass(frozen=True)
class StratumComponent:
    cls: BirElement
    open_chi: int | None = None
    open_cls: BirElement | None = None
    # for cells with >= 3 vertices amid multi-component subcells:
    # ((vertex removed, component index in the facet cell), ...)
    faces: tuple[tuple[VId, int], ...] | None = None

    def face_map(self) -> dict[VId, int]:
        return dict(self.faces) if self.faces is not None else {}


class WeightedDualComplex:
    """Immutable-by-convention weighted dual complex."""

    def __init__(
        self,
        n: int,
        vertices: list[VertexData] | dict[VId, VertexData],
        cells: dict[frozenset, tuple[StratumComponent, ...]] | None = None,
        validate: bool = True,
    ):
        if isinstance(vertices, dict):
            vs = list(vertices.values())
        else:
            vs = list(vertices)
        self.n = n
        self.vertices: dict[VId, VertexData] = {
            v.id: v for v in sorted(vs, key=lambda v: _id_key(v.id))
        }
        self.cells: dict[frozenset, tuple[StratumComponent, ...]] = {
            frozenset(i): tuple(comps) for i, comps in (cells or {}).items() if comps
        }
        if validate:
            self.validate()

    # -- validation ------------------------------------------------------

    def validate(self) -> None:
        if self.n < 1:
            raise MalformedComplex("ambient dimension must be >= 1")
        if len(self.vertices) != len(set(self.vertices)):
            raise MalformedComplex("duplicate vertex ids")
        for v in self.vertices.values():
            if v.N < 1:
                raise MalformedComplex(f"vertex {v.id}: N must be >= 1")
            if v.nu <= 0:
                raise MalformedComplex(f"vertex {v.id}: nu must be > 0")
            if v.kind not in ("exceptional", "strict"):
                raise MalformedComplex(f"vertex {v.id}: unknown kind {v.kind!r}")
            self._check_class_dim(v.cls, self.n - 1, f"vertex {v.id}", exact=True)
        for i, comps in self.cells.items():
            if len(i) < 2:
                raise MalformedComplex(f"cell {set(i)} has fewer than 2 vertices")
            if len(i) > self.n:
                raise MalformedComplex(
                    f"cell {set(i)} exceeds ambient dimension {self.n}"
                )
            for v in i:
                if v not in self.vertices:
                    raise MalformedComplex(f"cell {set(i)} uses unknown vertex {v}")
                j = i - {v}
                if len(j) >= 2 and j not in self.cells:
                    raise MalformedComplex(
                        f"downward closure violated: {set(i)} without {set(j)}"
                    )
            for ci, comp in enumerate(comps):
                self._check_class_dim(
                    comp.cls, self.n - len(i), f"cell {set(i)}[{ci}]", exact=False
                )
                if comp.faces is not None:
                    fm = comp.face_map()
                    for v, idx in fm.items():
                        if v not in i:
                            raise MalformedComplex(
                                f"cell {set(i)}[{ci}]: face key {v} not in cell"
                            )
                        j = i - {v}
                        if len(j) >= 2 and not (0 <= idx < len(self.cells.get(j, ()))):
                            raise MalformedComplex(
                                f"cell {set(i)}[{ci}]: face index {idx} out of range"
                            )
        self._check_face_consistency()

    def _check_class_dim(self, cls: BirElement, dim: int, where: str, exact: bool):
        for (label, exp), _coeff in cls.items():
            if exp.denominator != 1:
                raise MalformedComplex(f"{where}: fractional class exponent {exp}")
            d = label.dim + int(exp)
            if (exact and d != dim) or (not exact and d > dim):
                raise MalformedComplex(
                    f"{where}: class term of dimension {d}, expected"
                    f" {'==' if exact else '<='} {dim}"
                )

    def _check_face_consistency(self):
        for i, comps in self.cells.items():
            if len(i) < 4:
                continue
            for ci in range(len(comps)):
                for v, w in itertools.combinations(sorted(i, key=_id_key), 2):
                    try:
                        a = self.component_face(i, ci, v)
                        a2 = self.component_face(i - {v}, a, w)
                        b = self.component_face(i, ci, w)
                        b2 = self.component_face(i - {w}, b, v)
                    except AmbiguousIncidence:
                        continue
                    if a2 != b2:
                        raise MalformedComplex(
                            f"cell {set(i)}[{ci}]: inconsistent face maps via {v},{w}"
                        )

    # -- incidence ---------------------------------------------------------

    def component_face(self, i: frozenset, ci: int, v: VId) -> int:
        """Index of the component of cells[i - {v}] containing component ci."""
        j = i - {v}
        if len(j) < 2:
            return 0
        target = self.cells.get(j, ())
        if len(target) == 1:
            return 0
        comp = self.cells[i][ci]
        fm = comp.face_map()
        if v in fm:
            return fm[v]
        raise AmbiguousIncidence(
            f"cell {set(i)} component {ci}: face toward {set(j)} is ambiguous"
        )

    def component_contains(self, i: frozenset, ci: int, k: frozenset, kj: int) -> bool:
        """Does the stratum component (i, ci) lie inside the component (k, kj)?

        Requires k subset of i; resolved by descending one vertex at a time.
        """
        if not k <= i:
            return False
        cur_i, cur_ci = i, ci
        for v in sorted(i - k, key=_id_key):
            cur_ci = self.component_face(cur_i, cur_ci, v)
            cur_i = cur_i - {v}
        return cur_ci == kj

    def sigma_ids(self) -> set:
        return {v.id for v in self.vertices.values() if v.over_sigma}

    def adjacent_ids(self, vid: VId) -> set:
        out = set()
        for i in self.cells:
            if vid in i:
                out |= set(i)
        out.discard(vid)
        return out

    def all_strata(self):
        """Yield (frozenset I, tuple of components) including the vertices,
        where a vertex yields a single synthetic component carrying its data."""
        for vid in sorted(self.vertices, key=_id_key):
            v = self.vertices[vid]
            yield frozenset([vid]), (
                StratumComponent(cls=v.cls, open_chi=v.open_chi, open_cls=v.open_cls),
            )
        for i in sorted(self.cells, key=_cell_key):
            yield i, self.cells[i]

    def copy_with(self, vertices=None, cells=None) -> "WeightedDualComplex":
        return WeightedDualComplex(
            self.n,
            vertices if vertices is not None else list(self.vertices.values()),
            cells if cells is not None else dict(self.cells),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightedDualComplex)
            and self.n == other.n
            and self.vertices == other.vertices
            and self.cells == other.cells
        )

    def __repr__(self) -> str:
        return (
            f"WeightedDualComplex(n={self.n}, {len(self.vertices)} vertices, "
            f"{len(self.cells)} cells)"
        )

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        verts = []
        for vid in sorted(self.vertices, key=_id_key):
            v = self.vertices[vid]
            row = {
                "id": v.id,
                "N": v.N,
                "nu": str(v.nu),
                "cls": v.cls.to_json(),
                "over_sigma": v.over_sigma,
                "kind": v.kind,
            }
            if v.open_chi is not None:
                row["open_chi"] = v.open_chi
            if v.open_cls is not None:
                row["open_cls"] = v.open_cls.to_json()
            verts.append(row)
        cells = []
        for i in sorted(self.cells, key=_cell_key):
            comps = []
            for comp in self.cells[i]:
                row = {"cls": comp.cls.to_json()}
                if comp.open_chi is not None:
                    row["open_chi"] = comp.open_chi
                if comp.open_cls is not None:
                    row["open_cls"] = comp.open_cls.to_json()
                if comp.faces is not None:
                    row["faces"] = [[v, idx] for v, idx in comp.faces]
                comps.append(row)
            cells.append({"I": sorted(i, key=_id_key), "components": comps})
        return {"schema": "birzeta/complex/v1", "n": self.n,
                "vertices": verts, "cells": cells}

    @staticmethod
    def from_json(d: dict) -> "WeightedDualComplex":
        try:
            verts = [
                VertexData(
                    id=row["id"],
                    N=int(row["N"]),
                    nu=Fraction(row["nu"]),
                    cls=BirElement.from_json(row["cls"]),
                    over_sigma=bool(row.get("over_sigma", False)),
                    kind=row.get("kind", "exceptional"),
                    open_chi=row.get("open_chi"),
                    open_cls=(
                        BirElement.from_json(row["open_cls"])
                        if "open_cls" in row
                        else None
                    ),
                )
                for row in d["vertices"]
            ]
            cells = {}
            for cell in d.get("cells", []):
                comps = []
                for row in cell["components"]:
                    comps.append(
                        StratumComponent(
                            cls=BirElement.from_json(row["cls"]),
                            open_chi=row.get("open_chi"),
                            open_cls=(
                                BirElement.from_json(row["open_cls"])
                                if "open_cls" in row
                                else None
                            ),
                            faces=(
                                tuple((v, int(idx)) for v, idx in row["faces"])
                                if "faces" in row
                                else None
                            ),
                        )
                    )
                cells[frozenset(cell["I"])] = tuple(comps)
            return WeightedDualComplex(int(d["n"]), verts, cells)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedComplex(f"bad complex JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# zeta evaluations


def _local_keep(c: WeightedDualComplex, i: frozenset) -> bool:
    return any(c.vertices[v].over_sigma for v in i)


def zeta_bir(c: WeightedDualComplex, local: bool = False) -> ZetaExpr:
    """Sum over nonempty strata I of {E_I} prod_i L/(L^{nu_i} T^{-N_i} - 1),
    restricted to I meeting the marked set when local."""
    out = ZetaExpr.zero()
    for i, comps in c.all_strata():
        if local and not _local_keep(c, i):
            continue
        cls = BirElement.zero()
        for comp in comps:
            cls = cls + comp.cls
        coeff = cls.shift(len(i))
        den = den_of((c.vertices[v].nu, c.vertices[v].N) for v in i)
        out = out + ZetaExpr.term(coeff, 0, den)
    return out


def zeta_motivic(c: WeightedDualComplex) -> ZetaExpr:
    """Denef-Loeser shaped sum with (L-1) numerator factors and open-stratum
    classes; computed in the same opaque-label ring (formal)."""
    lm1 = BirElement.L(1) - BirElement.one()
    out = ZetaExpr.zero()
    for i, comps in c.all_strata():
        cls = BirElement.zero()
        for comp in comps:
            if comp.open_cls is None:
                raise MissingOpenClass(f"stratum {set(i)} lacks open_cls")
            cls = cls + comp.open_cls
        coeff = cls * lm1 ** len(i)
        den = den_of((c.vertices[v].nu, c.vertices[v].N) for v in i)
        out = out + ZetaExpr.term(coeff, 0, den)
    return out


def zeta_topological(c: WeightedDualComplex, local: bool = False) -> TopZeta:
    """Sum of chi(stratum) / prod (N_i s + nu_i).

    The stored open_chi values must already be the Euler characteristics of
    the intended strata (intersected with the fiber in the local reading);
    locality lives in that data, so no vertex filter is applied here.
    """
    del local  # interpretation of open_chi is the caller's
    terms = []
    for i, comps in c.all_strata():
        chi = 0
        for comp in comps:
            if comp.open_chi is None:
                raise MissingChi(f"stratum {set(i)} lacks open_chi")
            chi += comp.open_chi
        terms.append((chi, tuple((c.vertices[v].N, c.vertices[v].nu) for v in i)))
    return TopZeta(terms)


# ---------------------------------------------------------------------------
# transforms


def _fresh_id(c: WeightedDualComplex) -> int:
    ints = [v for v in c.vertices if isinstance(v, int)]
    nid = max(ints, default=-1) + 1
    while nid in c.vertices:
        nid += 1
    return nid


def stellar_subdivide(
    c: WeightedDualComplex,
    k,
    component_index: int = 0,
    new_over_sigma: bool | None = None,
    new_id: VId | None = None,
) -> WeightedDualComplex:
    """Blow up the chosen component Z of the stratum E_K (|K| >= 2).

    The new vertex gets N = sum N_k, nu = sum nu_k and class {Z} L^{|K|-1};
    cells whose components lie inside Z are replaced following the stellar
    subdivision combinatorics, everything else is untouched.  The marked
    flag of the new vertex defaults to whether K meets the marked set.
    """
    k = frozenset(k)
    if len(k) < 2:
        raise NoSuchComponent("stellar subdivision needs |K| >= 2")
    if k not in c.cells or not (0 <= component_index < len(c.cells[k])):
        raise NoSuchComponent(f"no component {component_index} in cell {set(k)}")
    z = c.cells[k][component_index]
    nid = _fresh_id(c) if new_id is None else new_id
    if nid in c.vertices:
        raise MalformedComplex(f"new vertex id {nid!r} already in use")
    n0 = sum(c.vertices[v].N for v in k)
    nu0 = sum(c.vertices[v].nu for v in k)
    over0 = (
        new_over_sigma
        if new_over_sigma is not None
        else any(c.vertices[v].over_sigma for v in k)
    )
    kk = len(k)

    # components inside Z, grouped by their cell
    inside: dict[frozenset, list[int]] = {}
    for i in c.cells:
        if not k <= i:
            continue
        for ci in range(len(c.cells[i])):
            if c.component_contains(i, ci, k, component_index):
                inside.setdefault(i, []).append(ci)

    new_vertex = VertexData(
        id=nid, N=n0, nu=nu0, cls=z.cls.shift(kk - 1), over_sigma=over0,
        kind="exceptional",
    )

    # surviving old components, with index remapping per touched cell
    new_cells: dict[frozenset, list[StratumComponent]] = {}
    index_map: dict[frozenset, dict[int, int]] = {}
    for i, comps in c.cells.items():
        removed = set(inside.get(i, []))
        kept = []
        remap = {}
        for ci, comp in enumerate(comps):
            if ci in removed:
                continue
            remap[ci] = len(kept)
            kept.append(comp)
        index_map[i] = remap
        if kept:
            new_cells[i] = kept
    for i in list(new_cells):
        fixed = []
        for comp in new_cells[i]:
            if comp.faces is None:
                fixed.append(comp)
                continue
            fm = []
            for v, idx in comp.faces:
                j = i - {v}
                fm.append((v, index_map.get(j, {}).get(idx, idx)))
            fixed.append(replace(comp, faces=tuple(fm)))
        new_cells[i] = fixed

    # new components: for each component tau inside Z and each proper
    # subset lsub of K, a component of the cell {0} u lsub u (I - K)
    new_index: dict[tuple, int] = {}
    sorted_k = sorted(k, key=_id_key)
    subsets = []
    for size in range(kk):
        subsets.extend(itertools.combinations(sorted_k, size))
    order = []
    for i in sorted(inside, key=_cell_key):
        for ci in inside[i]:
            for lsub in subsets:
                order.append((i, ci, frozenset(lsub)))

    def new_cell_of(i, lsub):
        return frozenset([nid]) | lsub | (i - k)

    for i, ci, lsub in order:
        j = new_cell_of(i, lsub)
        if len(j) == 1:
            continue  # that is the new vertex itself
        lst = new_cells.setdefault(j, [])
        new_index[(i, ci, lsub)] = len(lst)
        comp = c.cells[i][ci]
        lst.append(
            StratumComponent(cls=comp.cls.shift(kk - len(lsub) - 1), faces=None)
        )

    # face maps for the new components (filled where determinable)
    for i, ci, lsub in order:
        j = new_cell_of(i, lsub)
        if len(j) == 1:
            continue
        fm: list[tuple[VId, int]] = []
        ok = True
        for v in sorted(j, key=_id_key):
            sub = j - {v}
            if len(sub) < 2:
                continue
            if v == nid:
                # facet is the old stratum over lsub u (I - K)
                tgt = lsub | (i - k)
                try:
                    cur_i, cur_ci = i, ci
                    for w in sorted(i - tgt, key=_id_key):
                        cur_ci = c.component_face(cur_i, cur_ci, w)
                        cur_i = cur_i - {w}
                    fm.append((v, index_map.get(tgt, {}).get(cur_ci, cur_ci)))
                except AmbiguousIncidence:
                    ok = False
                    break
            elif v in lsub:
                fm.append((v, new_index[(i, ci, lsub - {v})]))
            else:
                try:
                    ci2 = c.component_face(i, ci, v)
                except AmbiguousIncidence:
                    ok = False
                    break
                fm.append((v, new_index[(i - {v}, ci2, lsub)]))
        if ok:
            lst = new_cells[j]
            lst[new_index[(i, ci, lsub)]] = replace(
                lst[new_index[(i, ci, lsub)]], faces=tuple(fm)
            )

    verts = list(c.vertices.values()) + [new_vertex]
    return WeightedDualComplex(
        c.n, verts, {i: tuple(comps) for i, comps in new_cells.items()}
    )


def point_blowup_surface(
    c: WeightedDualComplex,
    k,
    component_index: int = 0,
    new_over_sigma: bool | None = None,
    new_id: VId | None = None,
) -> WeightedDualComplex:
    """Blow up a point of a surface complex: a free point of E_j for |K| = 1,
    an intersection point (stellar case) for |K| = 2."""
    if c.n != 2:
        raise BadDimension("point blow-ups are a surface operation")
    k = frozenset(k)
    if len(k) == 2:
        return stellar_subdivide(c, k, component_index, new_over_sigma, new_id)
    if len(k) != 1:
        raise NoSuchComponent("point blow-up needs |K| in {1, 2}")
    (j,) = k
    if j not in c.vertices:
        raise NoSuchComponent(f"no vertex {j!r}")
    vj = c.vertices[j]
    nid = _fresh_id(c) if new_id is None else new_id
    if nid in c.vertices:
        raise MalformedComplex(f"new vertex id {nid!r} already in use")
    over0 = new_over_sigma if new_over_sigma is not None else vj.over_sigma
    new_vertex = VertexData(
        id=nid, N=vj.N, nu=vj.nu + 1, cls=BirElement.L(1), over_sigma=over0,
        kind="exceptional",
    )
    cells = dict(c.cells)
    cells[frozenset([nid, j])] = (StratumComponent(cls=BirElement.one()),)
    return WeightedDualComplex(c.n, list(c.vertices.values()) + [new_vertex], cells)


def make_m_separating(c: WeightedDualComplex, m: int) -> WeightedDualComplex:
    """Subdivide surface edges until N_i + N_j > m on every edge component."""
    if c.n != 2:
        raise BadDimension("m-separation is a surface operation")
    cur = c
    while True:
        target = None
        for i in sorted(cur.cells, key=_cell_key):
            if len(i) != 2:
                continue
            if sum(cur.vertices[v].N for v in i) <= m:
                target = i
                break
        if target is None:
            return cur
        cur = stellar_subdivide(cur, target, 0)


# ---------------------------------------------------------------------------
# derived invariants


def nearby_cycles(c: WeightedDualComplex, local: bool = False) -> BirElement:
    """Minus the T -> infinity limit of the birational zeta function:
    sum over strata of -(-1)^{|I|} {E_I} L^{|I|}."""
    return -limit_T_to_infinity(zeta_bir(c, local))


def euler_char_dual_complex(c: WeightedDualComplex) -> int:
    """Topological Euler characteristic of the dual complex, computed by the
    component-count specialization of the nearby-cycles class."""
    return count_points(nearby_cycles(c, local=False)).as_int()


def lct_pole_order(
    c: WeightedDualComplex, local: bool = False
) -> tuple[Fraction, int]:
    """(lct, m): the minimal ratio nu/N over the relevant vertices and the
    largest size of a stratum on which it is attained everywhere.

    Asserts against the rational zeta function that -lct is a pole of order
    exactly m and is the largest pole location.
    """
    if local:
        relevant = set(c.sigma_ids())
        for vid in list(c.vertices):
            if c.adjacent_ids(vid) & relevant:
                relevant.add(vid)
    else:
        relevant = set(c.vertices)
    if not relevant:
        raise MalformedComplex("no vertices relevant to the marked set")
    lct = min(c.vertices[v].ratio() for v in relevant)
    m = 0
    for vid in c.vertices:
        if c.vertices[vid].ratio() == lct and (
            not local or c.vertices[vid].over_sigma
        ):
            m = max(m, 1)
    for i in c.cells:
        if local and not _local_keep(c, i):
            continue
        if all(c.vertices[v].ratio() == lct for v in i):
            m = max(m, len(i))
    ps = poles(normalize_and_cancel(zeta_bir(c, local), "rho"))
    if m >= 1:
        if (-lct, m) not in ps:
            raise VerificationError(
                f"expected pole ({-lct}, order {m}) not found among {ps}"
            )
        if ps and ps[0][0] != -lct:
            raise VerificationError(
                f"-lct={-lct} is not the maximal pole location in {ps}"
            )
    else:
        if any(s0 == -lct for s0, _ in ps):
            raise VerificationError(f"unexpected pole at {-lct} with m=0")
    return lct, m


def normal_form_rho(c: WeightedDualComplex, local: bool = False) -> NormalForm:
    return normalize_and_cancel(zeta_bir(c, local), "rho")
