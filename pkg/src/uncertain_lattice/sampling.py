"""Seeded generators of small valid instances, used by lattice verification and tests."""

from __future__ import annotations

import random
from itertools import combinations

from ._common import AttributeTree, canon_edge
from .grades import (
    COMPONENTS,
    DOUBLED,
    GradedSet,
    GradeRange,
    GradeTuple,
    Kind,
    MultiGrade,
    Regime,
    default_range,
)
from .graphs import (
    EDGE_RULES,
    AnnotatedGraph,
    Bound,
    CrispGraph,
    GradedGraph,
    Hypergraph,
    MultiGradedGraph,
    MultiKind,
    PlithogenicGraph,
    Role,
    SetValuedGraph,
    SoftGraph,
    induced_edges,
)
from .hyperlift import HyperGradedSet, HyperKind
from .plithogenic import AttributeSpec, DAFTable, DCFMatrix, MultiPlithogenicSet, PlithogenicSet
from .soft import HyperSoftSet, MultiSoftSet, SoftSet

PAIR_KINDS = {Kind.VAGUE, Kind.INTUITIONISTIC}


def regime_range(regime: Regime, rng: random.Random) -> GradeRange:
    over = rng.choice([1.5, 2.0])
    under = rng.choice([-0.5, -1.0])
    return {
        Regime.STANDARD: GradeRange(0.0, 1.0),
        Regime.OVER: GradeRange(0.0, over),
        Regime.UNDER: GradeRange(under, 1.0),
        Regime.OFF: GradeRange(under, over),
    }[regime]


def _u(rng: random.Random, lo: float, hi: float) -> float:
    """Uniform draw that lands on an endpoint one time in ten."""
    if hi <= lo:
        return lo
    roll = rng.random()
    if roll < 0.05:
        return lo
    if roll < 0.1:
        return hi
    return rng.uniform(lo, hi)


def sample_grade(kind: Kind, r: GradeRange, rng: random.Random) -> GradeTuple:
    n = len(COMPONENTS[kind])
    if kind is Kind.CRISP:
        return GradeTuple(kind, (rng.choice([r.lo, r.hi]),), (r,))
    if kind in PAIR_KINDS:
        t = _u(rng, r.lo, r.hi)
        f = _u(rng, r.lo, min(r.hi, r.hi - t))
        return GradeTuple(kind, (t, f), (r, r))
    return GradeTuple(kind, tuple(_u(rng, r.lo, r.hi) for _ in range(n)), (r,) * n)


def _elements(rng: random.Random, lo: int = 1, hi: int = 5) -> list[str]:
    return [f"x{i}" for i in range(rng.randint(lo, hi))]


def sample_graded_set(kind: Kind, regime: Regime, rng: random.Random) -> GradedSet:
    r = default_range(kind) if kind in DOUBLED else regime_range(regime, rng)
    xs = _elements(rng)
    return GradedSet(xs, {x: sample_grade(kind, r, rng) for x in xs})


# ---------------------------------------------------------------- plithogenic


def _dcf(values, rng: random.Random) -> DCFMatrix:
    return DCFMatrix(1, {(a, b): (_u(rng, 0.0, 1.0),) for a, b in combinations(values, 2)})


def sample_plithogenic(rng: random.Random) -> PlithogenicSet:
    xs = _elements(rng, 0, 4)
    values = tuple(f"a{i}" for i in range(rng.randint(1, 3)))
    s = rng.randint(1, 5)
    entries = {(x, a): tuple(_u(rng, 0, 1) for _ in range(s)) for x in xs for a in values}
    return PlithogenicSet(xs, AttributeSpec("colour", values), DAFTable(s, entries), _dcf(values, rng))


def sample_multiplithogenic(rng: random.Random) -> MultiPlithogenicSet:
    xs = _elements(rng, 0, 4)
    s = rng.randint(1, 3)
    attrs, dafs = [], []
    for i in range(rng.randint(1, 3)):
        values = tuple(f"a{i}{j}" for j in range(rng.randint(1, 2)))
        # occasionally reuse the default tree root or a value as the attribute name
        name = rng.choice([f"A{i}", f"A{i}", "A" if i == 0 else f"A{i}", values[0]])
        attrs.append(AttributeSpec(name, values))
        dafs.append(DAFTable(s, {(x, v): tuple(_u(rng, 0, 1) for _ in range(s)) for x in xs for v in values}))
    pool = [v for a in attrs for v in a.values]
    return MultiPlithogenicSet(xs, tuple(attrs), tuple(dafs), _dcf(pool, rng))


# ---------------------------------------------------------------- hyper


def sample_hyper(kind: HyperKind, rng: random.Random) -> HyperGradedSet:
    xs = _elements(rng, 1, 3)
    single = {HyperKind.CRISP: Kind.CRISP, HyperKind.FUZZY: Kind.FUZZY, HyperKind.VAGUE: Kind.VAGUE, HyperKind.NEUTROSOPHIC: Kind.NEUTROSOPHIC}[kind]
    r = GradeRange()
    grades = {}
    for x in xs:
        pts = [sample_grade(single, r, rng).values for _ in range(rng.randint(1, 3))]
        grades[x] = {p[0] if len(p) == 1 else p for p in pts}
    return HyperGradedSet(kind, xs, grades, r)


# ---------------------------------------------------------------- soft


def _subset(rng: random.Random, xs, p: float = 0.5) -> set:
    return {x for x in xs if rng.random() < p}


def sample_soft(rng: random.Random) -> SoftSet:
    u = _elements(rng, 1, 6)
    keys = [f"e{i}" for i in range(rng.randint(0, 4))]
    return SoftSet(u, {k: _subset(rng, u) for k in keys})


def sample_multisoft(rng: random.Random) -> MultiSoftSet:
    u = _elements(rng, 1, 6)
    families = tuple(tuple(f"p{i}{j}" for j in range(rng.randint(1, 3))) for i in range(rng.randint(1, 3)))
    pool = [p for fam in families for p in fam]
    keys = {frozenset(rng.sample(pool, rng.randint(1, min(2, len(pool))))) for _ in range(rng.randint(0, 4))}
    return MultiSoftSet(u, families, {k: _subset(rng, u) for k in keys})


def sample_hypersoft(rng: random.Random) -> HyperSoftSet:
    u = _elements(rng, 1, 6)
    domains = tuple(tuple(f"d{i}{j}" for j in range(rng.randint(1, 3))) for i in range(rng.randint(1, 3)))
    keys = {tuple(rng.choice(d) for d in domains) for _ in range(rng.randint(0, 4))}
    return HyperSoftSet(u, domains, {k: _subset(rng, u) for k in keys})


# ---------------------------------------------------------------- graphs


def sample_crisp_graph(rng: random.Random, lo: int = 1, hi: int = 5) -> CrispGraph:
    vs = [f"v{i}" for i in range(rng.randint(lo, hi))]
    edges = [e for e in combinations(vs, 2) if rng.random() < 0.5]
    return CrispGraph(vs, edges)


def _edge_grade(kind: Kind, r: GradeRange, gu: GradeTuple, gv: GradeTuple, standard: bool, rng: random.Random) -> GradeTuple:
    spec = EDGE_RULES.get(kind)
    if spec is None or (spec[1] and not standard):
        return sample_grade(kind, r, rng)
    rules = dict(spec[0])
    vals = []
    for name in COMPONENTS[kind]:
        a, b = gu[name], gv[name]
        bound = rules.get(name)
        if bound is Bound.LE_MIN:
            vals.append(_u(rng, r.lo, min(a, b)))
        elif bound is Bound.LE_MAX:
            vals.append(_u(rng, r.lo, max(a, b)))
        elif bound is Bound.GE_MAX:
            vals.append(_u(rng, max(a, b), r.hi))
        else:
            vals.append(_u(rng, r.lo, r.hi))
    return GradeTuple(kind, tuple(vals), (r,) * len(vals))


def sample_graded_graph(kind: Kind, regime: Regime, rng: random.Random, max_vertices: int = 5) -> GradedGraph:
    base = sample_crisp_graph(rng, 1, max_vertices)
    r = regime_range(regime, rng)
    vg = {v: sample_grade(kind, r, rng) for v in base.vertices}
    standard = regime is Regime.STANDARD
    eg = {e: _edge_grade(kind, r, vg[e[0]], vg[e[1]], standard, rng) for e in base.edges}
    return GradedGraph(base, kind, vg, eg)


def sample_plithogenic_graph(rng: random.Random) -> PlithogenicGraph:
    base = sample_crisp_graph(rng, 1, 4)
    s = rng.randint(1, 3)
    ml = tuple(f"a{i}" for i in range(rng.randint(1, 2)))
    nm = tuple((a, b) for a in ml for b in ml)
    adf = {(v, a): tuple(_u(rng, 0, 1) for _ in range(s)) for v in base.vertices for a in ml}
    bdf = {}
    for e in base.edges:
        x, y = e
        for a, b in nm:
            bound = [min(p, q) for p, q in zip(adf[(x, a)], adf[(y, b)])]
            bdf[(e, (a, b))] = tuple(_u(rng, 0, m) for m in bound)
    acf = _dcf(ml, rng)
    bcf = {}
    for p, q in combinations(nm, 2):
        m = min(acf.get(p[0], q[0])[0], acf.get(p[1], q[1])[0])
        bcf[(p, q)] = (_u(rng, 0, m),)
    return PlithogenicGraph(
        base, AttributeSpec("l", ml), AttributeSpec("m", nm), DAFTable(s, adf), DAFTable(s, bdf), acf, DCFMatrix(1, bcf)
    )


def sample_hyperfuzzy_graph(rng: random.Random) -> SetValuedGraph:
    base = sample_crisp_graph(rng)
    pick = lambda: {_u(rng, 0, 1) for _ in range(rng.randint(1, 3))}
    return SetValuedGraph(base, "HyperFuzzy", {v: pick() for v in base.vertices}, {e: pick() for e in base.edges})


def sample_multigraph(kind: MultiKind, rng: random.Random) -> MultiGradedGraph:
    base = sample_crisp_graph(rng, 1, 4)
    r = GradeRange()
    if kind is MultiKind.NEUTROSOPHIC:
        def one():
            return MultiGrade(*(tuple(_u(rng, 0, 1) for _ in range(rng.randint(1, 3))) for _ in range(3)), r)
    else:
        k = Kind.QUAD if kind is MultiKind.QUAD else Kind.PENTA

        def one():
            return tuple(sample_grade(k, r, rng) for _ in range(rng.randint(1, 3)))

    return MultiGradedGraph(base, kind, {v: one() for v in base.vertices}, {e: one() for e in base.edges})


def sample_hypergraph(rng: random.Random) -> Hypergraph:
    vs = [f"v{i}" for i in range(rng.randint(1, 5))]
    edges = {frozenset(rng.sample(vs, rng.randint(1, len(vs)))) for _ in range(rng.randint(0, 4))}
    return Hypergraph(vs, edges)


def sample_soft_graph(rng: random.Random, multisoft: bool = False) -> SoftGraph:
    base = sample_crisp_graph(rng)
    if multisoft:
        params = ["p0", "p1", "p2"]
        keys = {frozenset(rng.sample(params, rng.randint(1, 3))) for _ in range(rng.randint(0, 4))}
    else:
        keys = {f"e{i}" for i in range(rng.randint(0, 3))}
    vmap, emap = {}, {}
    for k in keys:
        vmap[k] = _subset(rng, sorted(base.vertices))
        emap[k] = _subset(rng, sorted(induced_edges(base, vmap[k])))
    return SoftGraph(base, vmap, emap, multisoft=multisoft)


def sample_annotated(role: Role, level: int, rng: random.Random) -> AnnotatedGraph:
    base = sample_crisp_graph(rng)
    labels = ["red", "green", "blue"]

    def atom():
        if role is Role.WEIGHT:
            return rng.choice([rng.randint(0, 9), round(rng.uniform(-5, 5), 3)])
        return rng.choice(labels)

    def value(lv):
        if lv == 0:
            return atom()
        return frozenset(value(lv - 1) for _ in range(rng.randint(1, 3)))

    vv = {} if role is Role.WEIGHT else {v: value(level) for v in base.vertices}
    ev = {e: value(level) for e in base.edges}
    lab = None if role is Role.WEIGHT else frozenset(labels)
    return AnnotatedGraph(base, role, level, vv, ev, lab, lab)


def sample_tree(rng: random.Random) -> AttributeTree:
    first = [f"A{i}" for i in range(rng.randint(1, 3))]
    return AttributeTree.from_nested("A", {a: [f"{a}{j}" for j in range(rng.randint(1, 2))] for a in first})


def canon(e):
    return canon_edge(*e)
