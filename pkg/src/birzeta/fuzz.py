"""Seeded randomized verification: telescoping identity, subdivision
invariance, and whole-factor cancellation under separating refinements.

Every runner takes an explicit seed (the CLI defaults it to a constant), so
verification runs are reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .classring import BirElement
from .complexes import (
    StratumComponent,
    VertexData,
    WeightedDualComplex,
    make_m_separating,
    normal_form_rho,
    stellar_subdivide,
    zeta_bir,
)
from .curves import contract_twigs, dlt_complex
from .germs import bundled_germs
from .zetafunc import poles, telescope_identity_check

DEFAULT_SEED = 1729


def random_telescope_case(rng: random.Random) -> list[tuple[Fraction, int]]:
    k = rng.randint(1, 5)
    out = []
    for _ in range(k):
        q = rng.choice([1, 1, 1, 2, 3, 4])
        nu = Fraction(rng.randint(1, 20 * q), q)
        out.append((nu, rng.randint(1, 20)))
    return out


def fuzz_telescope(count: int, seed: int = DEFAULT_SEED) -> list[str]:
    rng = random.Random(seed)
    failures = []
    for i in range(count):
        case = random_telescope_case(rng)
        if not telescope_identity_check(case):
            failures.append(f"case {i}: {case}")
    return failures


def random_complex(rng: random.Random) -> WeightedDualComplex:
    """A small random weighted dual complex (n <= 4, <= 6 vertices) with a
    downward-closed single-component cell family; surface complexes may get
    multi-component edges."""
    n = rng.choice([2, 2, 3, 3, 4])
    nv = rng.randint(1, 6)
    verts = []
    for i in range(nv):
        q = rng.choice([1, 1, 1, 2])
        nu = Fraction(rng.randint(1, 6 * q), q)
        cls_pick = rng.random()
        if cls_pick < 0.4:
            cls = BirElement.L(n - 1)
        elif cls_pick < 0.8:
            cls = BirElement.sym(f"V{i}", n - 1)
        else:
            cls = BirElement.sym(f"W{i}", n - 2) * BirElement.L(1)
        verts.append(
            VertexData(
                id=i,
                N=rng.randint(1, 6),
                nu=nu,
                cls=cls,
                over_sigma=rng.random() < 0.5,
                kind=rng.choice(["exceptional", "exceptional", "strict"]),
            )
        )
    cells: dict[frozenset, tuple] = {}
    ids = list(range(nv))
    maxsize = min(n, nv)
    wanted: set[frozenset] = set()
    for _ in range(rng.randint(0, 4)):
        size = rng.randint(2, maxsize) if maxsize >= 2 else 0
        if size < 2:
            continue
        wanted.add(frozenset(rng.sample(ids, size)))
    closed: set[frozenset] = set()
    for i in wanted:
        for size in range(2, len(i) + 1):
            for sub in itertools.combinations(sorted(i), size):
                closed.add(frozenset(sub))
    for i in sorted(closed, key=lambda s: (len(s), sorted(s))):
        ncomp = 1
        if n == 2 and rng.random() < 0.3:
            ncomp = rng.randint(1, 2)
        comps = []
        for j in range(ncomp):
            dim = n - len(i)
            if rng.random() < 0.5 or dim == 0:
                cls = BirElement.L(dim) if dim else BirElement.one()
            else:
                cls = BirElement.sym(f"Z{sorted(i)}{j}", dim)
            comps.append(StratumComponent(cls=cls))
        cells[i] = tuple(comps)
    return WeightedDualComplex(n, verts, cells)


def admissible_subdivisions(c: WeightedDualComplex):
    for i in sorted(c.cells, key=lambda s: (len(s), sorted(s))):
        for ci in range(len(c.cells[i])):
            yield i, ci


def fuzz_subdivision(count: int, seed: int = DEFAULT_SEED) -> tuple[int, list[str]]:
    """For random complexes, every admissible stellar subdivision must leave
    the rho-specialized normal form of the zeta function unchanged, globally
    and locally.  Returns (number of subdivisions checked, failures).

    Normal forms are compared as exact rational functions together with
    their pole lists.  Structural (num, den) equality can fail when an
    equal-ratio edge is subdivided: the inserted factor is non-primitive
    and whole-factor division cannot split it, the known non-uniqueness of
    the surviving factor set."""
    rng = random.Random(seed)
    failures = []
    checked = 0
    for case in range(count):
        c = random_complex(rng)
        for local in (False, True):
            before = normal_form_rho(c, local)
            before_poles = poles(before)
            for k, ci in admissible_subdivisions(c):
                after = normal_form_rho(stellar_subdivide(c, k, ci), local)
                checked += 1
                if not after.value_equals(before) or poles(after) != before_poles:
                    failures.append(
                        f"case {case}: K={sorted(k)} comp {ci} local={local}"
                    )
    return checked, failures


def fuzz_mseparating_cancellation(
    count: int, seed: int = DEFAULT_SEED
) -> tuple[int, list[str]]:
    """Random separating refinements of the bundled dlt models: the inserted
    chain vertices all have two intersections and no surface-singular point,
    and their factors must cancel entirely (pole sets are unchanged)."""
    rng = random.Random(seed)
    germs = {
        name: dlt_complex(contract_twigs(g)) for name, g in bundled_germs().items()
    }
    names = sorted(germs)
    failures = []
    checked = 0
    for case in range(count):
        name = names[rng.randrange(len(names))]
        base = germs[name]
        edge_sums = [
            sum(base.vertices[v].N for v in i)
            for i in base.cells
            if len(i) == 2
        ]
        if not edge_sums:
            continue
        m = min(edge_sums) + rng.randint(0, 6)
        refined = make_m_separating(base, m)
        if len(refined.vertices) == len(base.vertices):
            continue
        checked += 1
        before = poles(normal_form_rho(base, True))
        after_nf = normal_form_rho(refined, True)
        after = poles(after_nf)
        if before != after:
            failures.append(f"case {case}: {name} m={m}: {before} != {after}")
            continue
        inserted = set(refined.vertices) - set(base.vertices)
        surviving = {f.ratio() for f in after_nf.den}
        old_ratios = {v.ratio() for v in base.vertices.values()}
        for vid in inserted:
            r = refined.vertices[vid].ratio()
            if r in surviving and r not in old_ratios:
                failures.append(
                    f"case {case}: {name} m={m}: inserted ratio {r} survived"
                )
    return checked, failures


def fuzz_single_blowup_pole(count: int, seed: int = DEFAULT_SEED) -> list[str]:
    """Free point blow-ups on surface complexes acquire the pole
    -(nu_j + 1)/N_j whenever the new ratio is distinct from all existing
    ones (the redundant-blow-up lemma with r = 1)."""
    from .complexes import point_blowup_surface

    rng = random.Random(seed)
    failures = []
    done = 0
    while done < count:
        c = random_complex(rng)
        if c.n != 2 or not c.vertices:
            continue
        vid = sorted(c.vertices)[rng.randrange(len(c.vertices))]
        v = c.vertices[vid]
        new_ratio = (v.nu + 1) / v.N
        if any(u.ratio() == new_ratio for u in c.vertices.values()):
            continue
        if not (v.over_sigma or any(
            c.vertices[u].over_sigma for u in c.adjacent_ids(vid)
        )):
            continue
        done += 1
        blown = point_blowup_surface(c, {vid})
        local = v.over_sigma
        ps = poles(normal_form_rho(blown, local))
        if (-new_ratio, 1) not in [(s, o) for s, o in ps] and not any(
            s == -new_ratio for s, _o in ps
        ):
            failures.append(f"vertex {vid} of {c!r}: missing pole {-new_ratio}")
    return failures
