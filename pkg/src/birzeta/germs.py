"""Blow-up constructor and the bundled corpus of plane curve germs.

A germ enters the pipeline as the weighted dual graph of its minimal
embedded resolution.  The constructor derives that graph from an explicit
blow-up script: each step names the exceptional curves through the blown-up
point (none, one, or two that currently intersect) and the branches passing
through it with their multiplicities.  The standard recursions

    N_new  = sum N(on) + sum mult(branches at the point)
    nu_new = 2 + sum (nu(on) - 1)
    kappa  : new curve 1, +1 for each curve through the point

produce the numerical data, and the final graph attaches every branch to
the exceptional curve of its last step.  Scripts for one-branch germs with
parametrization (t^a, t^b) are generated by the Euclidean walk.
"""

from __future__ import annotations

import json
import pathlib
from dataclasses import dataclass
from fractions import Fraction

from .curves import CurveDualGraph, CurveVertex
from .errors import ValidationFailure


@dataclass(frozen=True)
class BlowupStep:
    on: tuple[str, ...]  # exceptional curves through the point (0..2)
    branches: tuple[tuple[str, int], ...]  # (branch id, multiplicity)


def step(on=(), **branches: int) -> BlowupStep:
    return BlowupStep(tuple(on), tuple(sorted(branches.items())))


def build_curve_graph(steps: list[BlowupStep], point: str = "a") -> CurveDualGraph:
    """Run a blow-up script and return the resulting dual graph.

    The k-th step creates the exceptional curve named E<k> (1-based).
    """
    n: dict[str, int] = {}
    nu: dict[str, Fraction] = {}
    kappa: dict[str, int] = {}
    edges: set[frozenset] = set()
    last_e: dict[str, str] = {}
    for idx, st in enumerate(steps, start=1):
        new = f"E{idx}"
        if len(st.on) > 2:
            raise ValidationFailure(f"step {idx}: a point lies on at most 2 curves")
        for c in st.on:
            if c not in n:
                raise ValidationFailure(f"step {idx}: unknown curve {c!r}")
        if len(st.on) == 2:
            e = frozenset(st.on)
            if e not in edges:
                raise ValidationFailure(
                    f"step {idx}: {sorted(st.on)} do not currently intersect"
                )
            edges.remove(e)
        n[new] = sum(n[c] for c in st.on) + sum(m for _b, m in st.branches)
        nu[new] = 2 + sum(nu[c] - 1 for c in st.on)
        kappa[new] = 1
        for c in st.on:
            kappa[c] += 1
            edges.add(frozenset({new, c}))
        for b, m in st.branches:
            if m < 1:
                raise ValidationFailure(f"step {idx}: branch {b!r} multiplicity {m}")
            last_e[b] = new
    if not steps:
        raise ValidationFailure("empty blow-up script")
    verts = [
        CurveVertex(e, "exceptional", n[e], nu[e], kappa[e]) for e in sorted(n)
    ]
    graph_edges = [tuple(sorted(e)) for e in edges]
    for b in sorted(last_e):
        verts.append(CurveVertex(b, "branch", 1, Fraction(1)))
        graph_edges.append((last_e[b], b))
    return CurveDualGraph(verts, graph_edges, point)


def quasihomogeneous_steps(a: int, b: int, branch: str = "b") -> list[BlowupStep]:
    """Script resolving the one-branch germ parametrized (t^a, t^b).

    Follows the Euclidean algorithm on the coordinate orders; the axes of
    the current chart track which boundary curves pass through the point.
    """
    if a < 2 or b < 2:
        raise ValidationFailure("need a, b >= 2 for a singular germ")
    g, x = a, b
    while x:
        g, x = x, g % x
    if g != 1:
        raise ValidationFailure("need gcd(a, b) = 1 for one branch")
    steps = []
    cu: str | None = None
    cv: str | None = None
    idx = 0
    while a > 0 and b > 0:
        idx += 1
        new = f"E{idx}"
        on = tuple(c for c in (cu, cv) if c is not None)
        steps.append(BlowupStep(on, ((branch, min(a, b)),)))
        if a <= b:
            b -= a
            cu = new
        else:
            a -= b
            cv = new
    return steps


# ---------------------------------------------------------------------------
# bundled germs


def node() -> CurveDualGraph:
    """xy: already normal crossings; excluded from the pipeline."""
    return CurveDualGraph(
        [
            CurveVertex("b1", "branch", 1, Fraction(1)),
            CurveVertex("b2", "branch", 1, Fraction(1)),
        ],
        [("b1", "b2")],
    )


def smooth() -> CurveDualGraph:
    """x: a smooth germ; excluded from the pipeline."""
    return CurveDualGraph([CurveVertex("b", "branch", 1, Fraction(1))], [])


def quasihomogeneous(a: int, b: int) -> CurveDualGraph:
    return build_curve_graph(quasihomogeneous_steps(a, b))


def cusp() -> CurveDualGraph:
    return quasihomogeneous(2, 3)


def tangent_pair(k: int) -> CurveDualGraph:
    """Two smooth branches with contact order k (the A_{2k-1} germ), k >= 2."""
    if k < 2:
        raise ValidationFailure("k = 1 is the node; need k >= 2")
    steps = [step((), b1=1, b2=1)]
    for i in range(2, k + 1):
        steps.append(step((f"E{i-1}",), b1=1, b2=1))
    return build_curve_graph(steps)


def ordinary_point(d: int) -> CurveDualGraph:
    """d >= 3 pairwise transverse smooth branches through one point."""
    if d < 3:
        raise ValidationFailure("d <= 2 is normal crossings after one blow-up")
    return build_curve_graph([BlowupStep((), tuple((f"b{i}", 1) for i in range(1, d + 1)))])


def e7_germ() -> CurveDualGraph:
    """A cusp together with its tangent line."""
    return build_curve_graph(
        [
            step((), c=2, l=1),
            step(("E1",), c=1, l=1),
            step(("E1", "E2"), c=1),
        ]
    )


def d5_germ() -> CurveDualGraph:
    """A cusp together with a transverse smooth branch."""
    return build_curve_graph(
        [
            step((), c=2, l=1),
            step(("E1",), c=1),
            step(("E1", "E2"), c=1),
        ]
    )


def two_cusps() -> CurveDualGraph:
    """Two cusps with transverse tangent cones; the lct 1/2 is attained on
    two intersecting components, giving the order-2 pole configuration."""
    return build_curve_graph(
        [
            step((), c1=2, c2=2),
            step(("E1",), c1=1),
            step(("E1", "E2"), c1=1),
            step(("E1",), c2=1),
            step(("E1", "E4"), c2=1),
        ]
    )


GERM_BUILDERS = {
    "node": node,
    "smooth": smooth,
    "cusp": cusp,
    "a3": lambda: tangent_pair(2),
    "a4": lambda: quasihomogeneous(2, 5),
    "a5": lambda: tangent_pair(3),
    "a6": lambda: quasihomogeneous(2, 7),
    "a7": lambda: tangent_pair(4),
    "a8": lambda: quasihomogeneous(2, 9),
    "e6": lambda: quasihomogeneous(3, 4),
    "e7": e7_germ,
    "e8": lambda: quasihomogeneous(3, 5),
    "d4": lambda: ordinary_point(3),
    "d5": d5_germ,
    "ord4": lambda: ordinary_point(4),
    "ord5": lambda: ordinary_point(5),
    "ord6": lambda: ordinary_point(6),
    "ord7": lambda: ordinary_point(7),
    "ord8": lambda: ordinary_point(8),
    "qh37": lambda: quasihomogeneous(3, 7),
    "qh38": lambda: quasihomogeneous(3, 8),
    "qh45": lambda: quasihomogeneous(4, 5),
    "qh47": lambda: quasihomogeneous(4, 7),
    "qh56": lambda: quasihomogeneous(5, 6),
    "two_cusps": two_cusps,
}

EXCLUDED_GERMS = ("node", "smooth")  # normal crossings: stated constants only

DATA_DIR = pathlib.Path(__file__).parent / "data" / "germs"


def bundled_germs(include_excluded: bool = False) -> dict[str, CurveDualGraph]:
    out = {}
    for name, build in sorted(GERM_BUILDERS.items()):
        if not include_excluded and name in EXCLUDED_GERMS:
            continue
        out[name] = build()
    return out


def load_germ(name: str) -> CurveDualGraph:
    if name not in GERM_BUILDERS:
        raise ValidationFailure(f"unknown bundled germ {name!r}")
    return GERM_BUILDERS[name]()


def write_corpus(directory: str | pathlib.Path | None = None) -> list[pathlib.Path]:
    """Regenerate the shipped JSON corpus from the blow-up scripts."""
    directory = pathlib.Path(directory) if directory else DATA_DIR
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, build in sorted(GERM_BUILDERS.items()):
        path = directory / f"{name}.json"
        path.write_text(
            json.dumps(build().to_json(), indent=2, sort_keys=True) + "\n"
        )
        written.append(path)
    return written
