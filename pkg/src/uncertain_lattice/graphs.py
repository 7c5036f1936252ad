"""Graph structures over the grade kinds, plus their validators and conversions.

Graphs are simple and undirected. Edges are stored as endpoint pairs in
canonical order (see `canon_edge`).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from ._common import (
    AmbiguousValue,
    BadKey,
    Collector,
    DisconnectedBase,
    KindMismatch,
    NonBinaryEdge,
    NonSingleton,
    NotSingleton,
    UnsupportedDims,
    Unmentioned,
    ValidationReport,
    canon_edge,
    epsilon,
    sorted_items,
)
from .grades import (
    STANDARD,
    GradeRange,
    GradeTuple,
    Kind,
    MultiGrade,
    Regime,
    arity,
    embed_grade,
    grade,
    reduce_grade,
    validate_grade,
    validate_multigrade,
)
from .hyperlift import encode, is_tower_element
from .plithogenic import AttributeSpec, DAFTable, DCFMatrix, validate_daf, validate_dcf

# ---------------------------------------------------------------- crisp


def _canon_edges(edges: Iterable) -> frozenset:
    return frozenset(canon_edge(*e) for e in edges)


@dataclass(frozen=True)
class CrispGraph:
    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", _canon_edges(self.edges))


def validate_crisp_graph(g: CrispGraph) -> ValidationReport:
    c = Collector()
    for e in sorted_items(g.edges):
        u, v = e
        c.check(u != v, f"self-loop at {u!r}")
        c.check(u in g.vertices and v in g.vertices, f"edge {e!r} has an endpoint outside V")
    return c.report()


def adjacency(g: CrispGraph) -> dict:
    adj: dict = {v: set() for v in g.vertices}
    for u, v in g.edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def is_connected(g: CrispGraph, subset: Iterable | None = None) -> bool:
    """Connectivity of the subgraph induced on `subset` (all of V by default)."""
    nodes = set(g.vertices if subset is None else subset)
    if len(nodes) <= 1:
        return True
    adj = adjacency(g)
    start = next(iter(nodes))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj.get(u, ()):
            if w in nodes and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == nodes


def induced_edges(g: CrispGraph, subset: Iterable) -> frozenset:
    s = set(subset)
    return frozenset(e for e in g.edges if e[0] in s and e[1] in s)


# ---------------------------------------------------------------- graded


@dataclass(frozen=True)
class GradedGraph:
    base: CrispGraph
    kind: Kind
    vertex_grades: Mapping[Hashable, GradeTuple]
    edge_grades: Mapping[tuple, GradeTuple]

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "vertex_grades", dict(self.vertex_grades))
        object.__setattr__(self, "edge_grades", {canon_edge(*e): g for e, g in self.edge_grades.items()})

    def all_grades(self):
        yield from self.vertex_grades.values()
        yield from self.edge_grades.values()

    @property
    def is_standard(self) -> bool:
        return all(g.is_standard for g in self.all_grades())


def graded_graph(kind, vertices: Mapping, edges: Mapping, ranges=None) -> GradedGraph:
    """Build from plain value tuples; `ranges` as accepted by `grades.grade`."""

    def mk(v):
        vals = v if isinstance(v, (tuple, list)) else (v,)
        return grade(kind, *vals, ranges=ranges)

    base = CrispGraph(vertices, edges)
    return GradedGraph(base, kind, {x: mk(v) for x, v in vertices.items()}, {e: mk(v) for e, v in edges.items()})


def graph_regime(g: GradedGraph) -> Regime:
    eps = epsilon()
    over = any(v > 1 + eps for gt in g.all_grades() for v in gt.values)
    under = any(v < -eps for gt in g.all_grades() for v in gt.values)
    if over and under:
        return Regime.OFF
    return Regime.OVER if over else Regime.UNDER if under else Regime.STANDARD


class Bound(str, Enum):
    LE_MIN = "<= min"
    LE_MAX = "<= max"
    GE_MAX = ">= max"


# (rules, applies only when every grade uses the standard range)
EDGE_RULES: dict[Kind, tuple[tuple[tuple[str, Bound], ...], bool]] = {
    Kind.FUZZY: ((("mu", Bound.LE_MIN),), False),
    Kind.QUAD: (
        (("T", Bound.LE_MIN), ("C", Bound.LE_MIN), ("U", Bound.LE_MAX), ("F", Bound.LE_MAX)),
        True,
    ),
    Kind.PENTA: (
        (("T", Bound.LE_MIN), ("C", Bound.LE_MIN), ("R", Bound.GE_MAX), ("U", Bound.GE_MAX), ("F", Bound.GE_MAX)),
        False,
    ),
    Kind.HEPTA: (
        (
            ("T", Bound.LE_MIN), ("M", Bound.LE_MIN), ("C", Bound.LE_MIN),
            ("U", Bound.GE_MAX), ("I", Bound.GE_MAX), ("K", Bound.GE_MAX), ("F", Bound.GE_MAX),
        ),
        False,
    ),
}


def _edge_block(c: Collector, g: GradedGraph) -> None:
    spec = EDGE_RULES.get(g.kind)
    if spec is None:
        return
    rules, standard_only = spec
    if standard_only and not g.is_standard:
        return
    eps = epsilon()
    for e in sorted_items(g.edge_grades):
        u, v = e
        ge, gu, gv = g.edge_grades[e], g.vertex_grades.get(u), g.vertex_grades.get(v)
        if gu is None or gv is None or gu.kind != g.kind or gv.kind != g.kind or ge.kind != g.kind:
            continue
        for name, bound in rules:
            x, a, b = ge[name], gu[name], gv[name]
            if bound is Bound.LE_MIN:
                ok, ref = x <= min(a, b) + eps, min(a, b)
            elif bound is Bound.LE_MAX:
                ok, ref = x <= max(a, b) + eps, max(a, b)
            else:
                ok, ref = x >= max(a, b) - eps, max(a, b)
            c.check(ok, f"edge {e!r}: {name}={x:g} violates {name} {bound.value} of endpoints ({ref:g})")


def validate_graded_graph(g: GradedGraph) -> ValidationReport:
    c = Collector()
    c.extend(validate_crisp_graph(g.base))
    for v in sorted_items(g.base.vertices):
        c.check(v in g.vertex_grades, f"vertex {v!r} has no grade")
    for e in sorted_items(g.base.edges):
        c.check(e in g.edge_grades, f"edge {e!r} has no grade")
    for v in sorted_items(g.vertex_grades):
        gt = g.vertex_grades[v]
        c.check(v in g.base.vertices, f"grade given for unknown vertex {v!r}")
        if gt.kind is not g.kind:
            c.add(f"vertex {v!r}: grade kind {gt.kind.value} is not {g.kind.value}")
            continue
        c.extend(validate_grade(gt), prefix=f"vertex {v!r}")
    for e in sorted_items(g.edge_grades):
        gt = g.edge_grades[e]
        c.check(e in g.base.edges, f"grade given for unknown edge {e!r}")
        if gt.kind is not g.kind:
            c.add(f"edge {e!r}: grade kind {gt.kind.value} is not {g.kind.value}")
            continue
        c.extend(validate_grade(gt), prefix=f"edge {e!r}")
    _edge_block(c, g)
    return c.report()


def map_graph(g: GradedGraph, fn, kind: Kind | str) -> GradedGraph:
    return GradedGraph(
        g.base, kind, {v: fn(x) for v, x in g.vertex_grades.items()}, {e: fn(x) for e, x in g.edge_grades.items()}
    )


def reduce_graph(g: GradedGraph, target: Kind | str):
    """Apply a registered grade reduction to every vertex and edge.

    `target` may also be "Plithogenic" (non-general when the source is fuzzy)
    or "GeneralPlithogenic".
    """
    if target in ("Plithogenic", "GeneralPlithogenic"):
        return graded_graph_to_plithogenic(g, general=target == "GeneralPlithogenic" or g.kind is not Kind.FUZZY)
    target = Kind(target)
    return map_graph(g, lambda gt: reduce_grade(gt, target), target)


def embed_graph(g: GradedGraph, target: Kind | str) -> GradedGraph:
    """Apply a registered grade embedding to every vertex and edge."""
    target = Kind(target)
    return map_graph(g, lambda gt: embed_grade(gt, target), target)


def crisp_to_fuzzy_graph(g: CrispGraph) -> GradedGraph:
    """Every vertex and edge gets membership 1."""
    one = grade(Kind.FUZZY, 1.0)
    return GradedGraph(g, Kind.FUZZY, {v: one for v in g.vertices}, {e: one for e in g.edges})


def widen_graph(g: GradedGraph, rng: GradeRange) -> GradedGraph:
    """Same values, every component range replaced by `rng` (regime change)."""
    return map_graph(g, lambda gt: gt.with_ranges(rng), g.kind)


# ---------------------------------------------------------------- plithogenic graphs

DV_NAMES = ("T", "IT", "IF", "F")
GRAPH_POSITIONAL = {1: Kind.FUZZY, 2: Kind.INTUITIONISTIC, 3: Kind.NEUTROSOPHIC, 4: Kind.QUAD, 5: Kind.PENTA, 7: Kind.HEPTA}


@dataclass(frozen=True)
class PlithogenicGraph:
    """Vertex side (V, l, Ml, adf, aCf) and edge side (E, m, Nm, bdf, bCf).

    Under the edge constraints, edge attribute values are pairs (a, b) of
    vertex values aligned with the canonical endpoint order of the edge.
    """

    base: CrispGraph
    vertex_attribute: AttributeSpec
    edge_attribute: AttributeSpec
    adf: DAFTable
    bdf: DAFTable
    acf: DCFMatrix = field(default_factory=DCFMatrix)
    bcf: DCFMatrix = field(default_factory=DCFMatrix)
    general: bool = False

    def __post_init__(self):
        bdf = DAFTable(self.bdf.dims, {(canon_edge(*e), a): v for (e, a), v in self.bdf.entries.items()}, self.bdf.ranges)
        object.__setattr__(self, "bdf", bdf)


def _vecmin(p, q):
    return tuple(min(a, b) for a, b in zip(p, q))


def validate_plithogenic_graph(pg: PlithogenicGraph) -> ValidationReport:
    eps = epsilon()
    c = Collector()
    c.extend(validate_crisp_graph(pg.base))
    ml, nm = pg.vertex_attribute.values, pg.edge_attribute.values
    c.extend(validate_daf(pg.adf, sorted_items(pg.base.vertices), ml), prefix="adf")
    c.extend(validate_daf(pg.bdf, sorted_items(pg.base.edges), nm), prefix="bdf")
    c.extend(validate_dcf(pg.acf, ml), prefix="aCf")
    c.extend(validate_dcf(pg.bcf, nm), prefix="bCf")
    c.check(pg.adf.dims == pg.bdf.dims, f"adf has s={pg.adf.dims}, bdf has s={pg.bdf.dims}")
    c.check(pg.acf.dims == pg.bcf.dims, f"aCf has t={pg.acf.dims}, bCf has t={pg.bcf.dims}")
    if pg.general:
        return c.report()

    mls = set(ml)
    pairs = [n for n in nm if isinstance(n, tuple) and len(n) == 2 and n[0] in mls and n[1] in mls]
    for n in nm:
        c.check(n in pairs, f"edge value {n!r} is not a pair of vertex values")
    for e in sorted_items(pg.base.edges):
        x, y = e
        for ab in pairs:
            a, b = ab
            be, ax, by = pg.bdf.get(e, ab), pg.adf.get(x, a), pg.adf.get(y, b)
            if be is None or ax is None or by is None:
                continue
            bound = _vecmin(ax, by)
            c.check(
                all(p <= q + eps for p, q in zip(be, bound)),
                f"edge appurtenance: bdf({e!r}, {ab!r})={be} exceeds min(adf)={bound}",
            )
    for p, q in combinations(pairs, 2):
        bv, l, r = pg.bcf.get(p, q), pg.acf.get(p[0], q[0]), pg.acf.get(p[1], q[1])
        if bv is None or l is None or r is None:
            continue
        bound = _vecmin(l, r)
        c.check(
            all(s <= t + eps for s, t in zip(bv, bound)),
            f"contradiction: bCf({p!r}, {q!r})={bv} exceeds min(aCf)={bound}",
        )
    return c.report()


def graded_graph_to_plithogenic(g: GradedGraph, general: bool = True, value: Hashable = "v") -> PlithogenicGraph:
    """Single vertex value; the edge value is the matching pair. DAF vectors are the grades.

    A double-valued graph uses the assignment-table form instead: one value
    per component name with a scalar DAF.
    """
    if g.kind is Kind.DOUBLE_VALUED:
        return _dv_to_plithogenic(g)
    ranges = _common_ranges(g)
    pair = (value, value)
    adf = DAFTable(len(ranges), {(v, value): gt.values for v, gt in g.vertex_grades.items()}, ranges)
    bdf = DAFTable(len(ranges), {(e, pair): gt.values for e, gt in g.edge_grades.items()}, ranges)
    return PlithogenicGraph(
        g.base, AttributeSpec("l", (value,)), AttributeSpec("m", (pair,)), adf, bdf, DCFMatrix(1), DCFMatrix(1), general
    )


def _common_ranges(g: GradedGraph) -> tuple[GradeRange, ...]:
    n = arity(g.kind)
    los, his = [0.0] * n, [1.0] * n
    for gt in g.all_grades():
        for i, r in enumerate(gt.ranges):
            los[i], his[i] = min(los[i], r.lo), max(his[i], r.hi)
    return tuple(GradeRange(lo, hi) for lo, hi in zip(los, his))


def _dv_to_plithogenic(g: GradedGraph) -> PlithogenicGraph:
    ranges = _common_ranges(g)
    hull = GradeRange(min(r.lo for r in ranges), max(r.hi for r in ranges))
    adf = DAFTable(1, {(v, n): (gt[n],) for v, gt in g.vertex_grades.items() for n in DV_NAMES}, (hull,))
    bdf = DAFTable(1, {(e, n): (gt[n],) for e, gt in g.edge_grades.items() for n in DV_NAMES}, (hull,))
    spec = AttributeSpec("components", DV_NAMES)
    dcf = DCFMatrix(1, {pair: (0.0,) for pair in combinations(DV_NAMES, 2)})
    return PlithogenicGraph(g.base, spec, spec, adf, bdf, dcf, dcf, True)


def plithogenic_graph_as_general(pg: PlithogenicGraph) -> PlithogenicGraph:
    """Drop the edge constraints; every plithogenic graph is a general one."""
    return replace(pg, general=True)


def plithogenic_graph_reduce(pg: PlithogenicGraph, kind: Kind | str | None = None) -> GradedGraph:
    """Positional reading of the DAF vectors as typed grades."""
    if pg.acf.dims != 1 or pg.bcf.dims != 1:
        raise UnsupportedDims(f"contradiction dimension t={pg.acf.dims}/{pg.bcf.dims}, expected 1")
    s = pg.adf.dims
    table_form = (
        s == 1
        and set(pg.vertex_attribute.values) == set(DV_NAMES)
        and set(pg.edge_attribute.values) == set(DV_NAMES)
    )
    if table_form and kind in (None, Kind.DOUBLE_VALUED, Kind.DOUBLE_VALUED.value):
        return _dv_from_table(pg)
    if kind is None:
        if s not in GRAPH_POSITIONAL:
            raise UnsupportedDims(f"appurtenance dimension s={s} has no graph kind")
        kind = GRAPH_POSITIONAL[s]
    kind = Kind(kind)
    if arity(kind) != s:
        raise UnsupportedDims(f"{kind.value} needs {arity(kind)} components, DAF has {s}")
    if len(pg.vertex_attribute.values) != 1 or len(pg.edge_attribute.values) != 1:
        raise AmbiguousValue("reduction needs exactly one vertex value and one edge value")
    (a,) = pg.vertex_attribute.values
    (b,) = pg.edge_attribute.values
    vg, eg = {}, {}
    for v in pg.base.vertices:
        vec = pg.adf.get(v, a)
        if vec is None:
            raise BadKey(f"adf missing for ({v!r}, {a!r})")
        vg[v] = GradeTuple(kind, vec, pg.adf.ranges)
    for e in pg.base.edges:
        vec = pg.bdf.get(e, b)
        if vec is None:
            raise BadKey(f"bdf missing for ({e!r}, {b!r})")
        eg[e] = GradeTuple(kind, vec, pg.bdf.ranges)
    return GradedGraph(pg.base, kind, vg, eg)


def _dv_from_table(pg: PlithogenicGraph) -> GradedGraph:
    def build(table: DAFTable, x):
        vals = []
        for n in DV_NAMES:
            vec = table.get(x, n)
            if vec is None:
                raise BadKey(f"DAF missing for ({x!r}, {n!r})")
            vals.append(vec[0])
        return GradeTuple(Kind.DOUBLE_VALUED, tuple(vals), table.ranges * 4)

    return GradedGraph(
        pg.base,
        Kind.DOUBLE_VALUED,
        {v: build(pg.adf, v) for v in pg.base.vertices},
        {e: build(pg.bdf, e) for e in pg.base.edges},
    )


# ---------------------------------------------------------------- set-valued (hesitant / hyperfuzzy)


class SetVariant(str, Enum):
    HESITANT = "Hesitant"
    HYPERFUZZY = "HyperFuzzy"


@dataclass(frozen=True)
class SetValuedGraph:
    base: CrispGraph
    variant: SetVariant
    vertex_sets: Mapping[Hashable, frozenset]
    edge_sets: Mapping[tuple, frozenset]
    range: GradeRange = field(default=STANDARD)

    def __post_init__(self):
        object.__setattr__(self, "variant", SetVariant(self.variant))
        object.__setattr__(self, "vertex_sets", {v: frozenset(map(float, s)) for v, s in self.vertex_sets.items()})
        object.__setattr__(
            self, "edge_sets", {canon_edge(*e): frozenset(map(float, s)) for e, s in self.edge_sets.items()}
        )


def validate_set_valued_graph(g: SetValuedGraph) -> ValidationReport:
    """Range checks only. Hyperfuzzy sets must be non-empty; hesitant sets may be empty."""
    eps = epsilon()
    c = Collector()
    c.extend(validate_crisp_graph(g.base))
    for what, items, universe in (("vertex", g.vertex_sets, g.base.vertices), ("edge", g.edge_sets, g.base.edges)):
        for x in sorted_items(universe):
            c.check(x in items, f"{what} {x!r} has no membership set")
        for x in sorted_items(items):
            s = items[x]
            c.check(x in universe, f"membership set for unknown {what} {x!r}")
            if g.variant is SetVariant.HYPERFUZZY:
                c.check(bool(s), f"{what} {x!r}: empty membership set")
            for v in sorted(s):
                c.check(g.range.contains(v, eps), f"{what} {x!r}: {v:g} outside [{g.range.lo:g}, {g.range.hi:g}]")
    return c.report()


def hyperfuzzy_graph_validate(g: SetValuedGraph) -> ValidationReport:
    if g.variant is not SetVariant.HYPERFUZZY:
        raise KindMismatch(f"expected a hyperfuzzy graph, got {g.variant.value}")
    return validate_set_valued_graph(g)


def fuzzy_graph_to_set_valued(g: GradedGraph, variant: SetVariant | str = SetVariant.HYPERFUZZY) -> SetValuedGraph:
    if g.kind is not Kind.FUZZY:
        raise KindMismatch(f"expected a fuzzy graph, got {g.kind.value}")
    rng = _common_ranges(g)[0]
    return SetValuedGraph(
        g.base,
        variant,
        {v: {gt.values[0]} for v, gt in g.vertex_grades.items()},
        {e: {gt.values[0]} for e, gt in g.edge_grades.items()},
        rng,
    )


# ---------------------------------------------------------------- multi graphs


class MultiKind(str, Enum):
    NEUTROSOPHIC = "MultiNeutrosophic"
    QUAD = "MultiQuadripartitioned"
    PENTA = "MultiPentapartitioned"


_MULTI_BASE = {MultiKind.QUAD: Kind.QUAD, MultiKind.PENTA: Kind.PENTA}


@dataclass(frozen=True)
class MultiGradedGraph:
    """Per vertex/edge: a MultiGrade (neutrosophic) or a tuple of quad/penta grades."""

    base: CrispGraph
    kind: MultiKind
    vertex_grades: Mapping[Hashable, object]
    edge_grades: Mapping[tuple, object]

    def __post_init__(self):
        kind = MultiKind(self.kind)
        object.__setattr__(self, "kind", kind)
        norm = (lambda x: x) if kind is MultiKind.NEUTROSOPHIC else tuple
        object.__setattr__(self, "vertex_grades", {v: norm(x) for v, x in self.vertex_grades.items()})
        object.__setattr__(self, "edge_grades", {canon_edge(*e): norm(x) for e, x in self.edge_grades.items()})


def validate_multigraded_graph(g: MultiGradedGraph, proper: bool = False) -> ValidationReport:
    c = Collector()
    c.extend(validate_crisp_graph(g.base))
    for what, items, universe in (("vertex", g.vertex_grades, g.base.vertices), ("edge", g.edge_grades, g.base.edges)):
        for x in sorted_items(universe):
            c.check(x in items, f"{what} {x!r} has no grades")
        for x in sorted_items(items):
            val = items[x]
            where = f"{what} {x!r}"
            c.check(x in universe, f"grades given for unknown {where}")
            if g.kind is MultiKind.NEUTROSOPHIC:
                if not isinstance(val, MultiGrade):
                    c.add(f"{where}: expected a multi-grade")
                    continue
                c.extend(validate_multigrade(val, proper=proper), prefix=where)
                continue
            c.check(len(val) >= 1, f"{where}: empty grade list")
            for i, gt in enumerate(val):
                if gt.kind is not _MULTI_BASE[g.kind]:
                    c.add(f"{where}[{i}]: grade kind {gt.kind.value} does not match")
                    continue
                c.extend(validate_grade(gt), prefix=f"{where}[{i}]")
    return c.report()


class GraphCollapse(str, Enum):
    SINGLETON_ONLY = "SingletonOnly"
    MEAN = "Mean"
    MERGE = "Merge"


def _mean(xs) -> float:
    return math.fsum(xs) / len(xs)


def _collapse_one(kind: MultiKind, val, mode: GraphCollapse):
    if kind is MultiKind.NEUTROSOPHIC:
        m: MultiGrade = val
        if mode is GraphCollapse.SINGLETON_ONLY:
            if m.multiplicity != (1, 1, 1):
                raise NotSingleton(f"multiplicities {m.multiplicity} are not all 1")
            return grade(Kind.NEUTROSOPHIC, m.truths[0], m.indeterminacies[0], m.falsities[0], ranges=m.range)
        if min(m.multiplicity) == 0:
            raise NotSingleton("a component list is empty; the mean is undefined")
        return grade(Kind.NEUTROSOPHIC, _mean(m.truths), _mean(m.indeterminacies), _mean(m.falsities), ranges=m.range)
    base = _MULTI_BASE[kind]
    if mode is GraphCollapse.SINGLETON_ONLY:
        if len(val) != 1:
            raise NotSingleton(f"{len(val)} grades where one was expected")
        return val[0]
    n = arity(base)
    ranges = tuple(GradeRange(min(g.ranges[i].lo for g in val), max(g.ranges[i].hi for g in val)) for i in range(n))
    return GradeTuple(base, tuple(_mean([g.values[i] for g in val]) for i in range(n)), ranges)


def _penta_to_quad_merge(gt: GradeTuple) -> GradeTuple:
    return reduce_grade(gt, Kind.QUAD)


def collapse_multigraph(mg: MultiGradedGraph, mode: GraphCollapse | str = GraphCollapse.SINGLETON_ONLY):
    """SingletonOnly and Mean give a plain graded graph; Merge turns multi-penta into multi-quad (U' = U + R)."""
    mode = GraphCollapse(mode)
    if mode is GraphCollapse.MERGE:
        if mg.kind is not MultiKind.PENTA:
            raise KindMismatch("merge applies to multi-pentapartitioned graphs")
        return MultiGradedGraph(
            mg.base,
            MultiKind.QUAD,
            {v: tuple(map(_penta_to_quad_merge, xs)) for v, xs in mg.vertex_grades.items()},
            {e: tuple(map(_penta_to_quad_merge, xs)) for e, xs in mg.edge_grades.items()},
        )
    kind = Kind.NEUTROSOPHIC if mg.kind is MultiKind.NEUTROSOPHIC else _MULTI_BASE[mg.kind]
    return GradedGraph(
        mg.base,
        kind,
        {v: _collapse_one(mg.kind, x, mode) for v, x in mg.vertex_grades.items()},
        {e: _collapse_one(mg.kind, x, mode) for e, x in mg.edge_grades.items()},
    )


def graded_graph_to_multi(g: GradedGraph) -> MultiGradedGraph:
    """Wrap every grade as a one-element multi-grade (neutrosophic, quad or penta)."""
    if g.kind is Kind.NEUTROSOPHIC:
        def wrap(gt):
            rng = gt.ranges[0]
            return MultiGrade((gt.values[0],), (gt.values[1],), (gt.values[2],), rng)

        kind = MultiKind.NEUTROSOPHIC
    elif g.kind in (Kind.QUAD, Kind.PENTA):
        def wrap(gt):
            return (gt,)

        kind = MultiKind.QUAD if g.kind is Kind.QUAD else MultiKind.PENTA
    else:
        raise KindMismatch(f"no multi variant of {g.kind.value} graphs")
    return MultiGradedGraph(
        g.base, kind, {v: wrap(x) for v, x in g.vertex_grades.items()}, {e: wrap(x) for e, x in g.edge_grades.items()}
    )


# ---------------------------------------------------------------- hypergraphs


@dataclass(frozen=True)
class Hypergraph:
    vertices: frozenset
    hyperedges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "hyperedges", frozenset(frozenset(e) for e in self.hyperedges))


def validate_hypergraph(h: Hypergraph) -> ValidationReport:
    c = Collector()
    for e in sorted_items(h.hyperedges):
        c.check(bool(e), "empty hyperedge")
        c.check(e <= h.vertices, f"hyperedge {sorted_items(e)} has members outside V")
    return c.report()


def hypergraph_to_graph(h: Hypergraph) -> CrispGraph:
    for e in sorted_items(h.hyperedges):
        if len(e) != 2:
            raise NonBinaryEdge(f"hyperedge {sorted_items(e)} has size {len(e)}")
    return CrispGraph(h.vertices, [tuple(e) for e in h.hyperedges])


def graph_to_hypergraph(g: CrispGraph) -> Hypergraph:
    return Hypergraph(g.vertices, [frozenset(e) for e in g.edges])


@dataclass(frozen=True)
class GradedHypergraph:
    """Hypergraph with per-vertex and per-hyperedge grades; range checks only."""

    hyper: Hypergraph
    kind: Kind
    vertex_grades: Mapping[Hashable, GradeTuple]
    edge_grades: Mapping[frozenset, GradeTuple]

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "edge_grades", {frozenset(e): g for e, g in self.edge_grades.items()})


def validate_graded_hypergraph(h: GradedHypergraph) -> ValidationReport:
    c = Collector()
    c.extend(validate_hypergraph(h.hyper))
    for v in sorted_items(h.hyper.vertices):
        c.check(v in h.vertex_grades, f"vertex {v!r} has no grade")
    for e in sorted_items(h.hyper.hyperedges):
        c.check(e in h.edge_grades, f"hyperedge {sorted_items(e)} has no grade")
    for where, gt in [(f"vertex {v!r}", h.vertex_grades[v]) for v in sorted_items(h.vertex_grades)] + [
        (f"hyperedge {sorted_items(e)}", h.edge_grades[e]) for e in sorted_items(h.edge_grades)
    ]:
        if gt.kind is not h.kind:
            c.add(f"{where}: grade kind {gt.kind.value} is not {h.kind.value}")
            continue
        c.extend(validate_grade(gt), prefix=where)
    return c.report()


def graded_hypergraph_to_graph(h: GradedHypergraph) -> GradedGraph:
    """Size-two hyperedges become edges; grades carried across unchanged."""
    base = hypergraph_to_graph(h.hyper)
    return GradedGraph(base, h.kind, dict(h.vertex_grades), {tuple(e): g for e, g in h.edge_grades.items()})


def graded_graph_to_hypergraph(g: GradedGraph) -> GradedHypergraph:
    return GradedHypergraph(
        graph_to_hypergraph(g.base), g.kind, dict(g.vertex_grades), {frozenset(e): x for e, x in g.edge_grades.items()}
    )


@dataclass(frozen=True)
class SuperHyperGraph:
    base: frozenset  # V0
    level: int
    supervertices: frozenset
    superedges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "base", frozenset(self.base))
        object.__setattr__(self, "supervertices", frozenset(self.supervertices))
        object.__setattr__(self, "superedges", frozenset(self.superedges))


def validate_superhypergraph(s: SuperHyperGraph) -> ValidationReport:
    c = Collector()
    c.check(s.level >= 1, f"level {s.level} < 1")
    for what, items in (("supervertex", s.supervertices), ("superedge", s.superedges)):
        for x in sorted(items, key=encode):
            c.check(is_tower_element(x, s.base, s.level), f"{what} {encode(x)} is not a level-{s.level} tower element")
    return c.report()


def graph_to_superhypergraph(g: CrispGraph) -> SuperHyperGraph:
    base = frozenset(str(v) for v in g.vertices)
    return SuperHyperGraph(
        base, 1, {frozenset([str(v)]) for v in g.vertices}, {frozenset(str(x) for x in e) for e in g.edges}
    )


def hypergraph_to_superhypergraph(h: Hypergraph) -> SuperHyperGraph:
    base = frozenset(str(v) for v in h.vertices)
    return SuperHyperGraph(
        base, 1, {frozenset([str(v)]) for v in h.vertices}, {frozenset(str(x) for x in e) for e in h.hyperedges}
    )


def superhypergraph_to_hypergraph(s: SuperHyperGraph) -> Hypergraph:
    if s.level != 1 or any(len(v) != 1 for v in s.supervertices):
        raise NonSingleton("supervertices must be singletons at level 1")
    return Hypergraph({next(iter(v)) for v in s.supervertices}, s.superedges)


# ---------------------------------------------------------------- soft graphs


@dataclass(frozen=True)
class SoftGraph:
    """F: parameters -> vertex subsets, K: parameters -> edge subsets.

    With `multisoft`, parameters are sets of base parameters.
    """

    base: CrispGraph
    vertex_map: Mapping[Hashable, frozenset]
    edge_map: Mapping[Hashable, frozenset]
    multisoft: bool = False

    def __post_init__(self):
        conv = frozenset if self.multisoft else (lambda k: k)
        object.__setattr__(self, "vertex_map", {conv(k): frozenset(v) for k, v in self.vertex_map.items()})
        object.__setattr__(self, "edge_map", {conv(k): _canon_edges(v) for k, v in self.edge_map.items()})


def soft_graph_validate(sg: SoftGraph) -> ValidationReport:
    c = Collector()
    c.extend(validate_crisp_graph(sg.base))
    for k in sorted_items(set(sg.vertex_map) ^ set(sg.edge_map)):
        c.add(f"parameter {k!r} is listed in only one of F and K")
    for k in sorted_items(sg.vertex_map):
        verts = sg.vertex_map[k]
        c.check(verts <= sg.base.vertices, f"F({k!r}) has vertices outside V")
        edges = sg.edge_map.get(k, frozenset())
        c.check(edges <= sg.base.edges, f"K({k!r}) has edges outside E")
        for e in sorted_items(edges):
            c.check(e[0] in verts and e[1] in verts, f"K({k!r}) edge {e!r} has an endpoint outside F({k!r})")
    return c.report()


def multisoft_graph_to_soft(msg: SoftGraph) -> SoftGraph:
    """F'(a) is the union of F(a') over listed a' contained in a; K' likewise."""
    keys = list(msg.vertex_map)
    fv, fe = {}, {}
    for a in keys:
        fv[a] = frozenset().union(*(msg.vertex_map[b] for b in keys if b <= a))
        fe[a] = frozenset().union(*(msg.edge_map.get(b, frozenset()) for b in keys if b <= a))
    return SoftGraph(msg.base, fv, fe, multisoft=False)


def soft_graph_to_multisoft(sg: SoftGraph) -> SoftGraph:
    return SoftGraph(
        sg.base,
        {frozenset([k]): v for k, v in sg.vertex_map.items()},
        {frozenset([k]): v for k, v in sg.edge_map.items()},
        multisoft=True,
    )


@dataclass(frozen=True)
class NeutroSoftGraph:
    """Per parameter, a neutrosophic set over V (J) and over E (K).

    The support of each layer plays the role of F(a) / K(a).
    """

    base: CrispGraph
    vertex_layers: Mapping[Hashable, Mapping[Hashable, GradeTuple]]
    edge_layers: Mapping[Hashable, Mapping[tuple, GradeTuple]]

    def __post_init__(self):
        object.__setattr__(self, "vertex_layers", {k: dict(v) for k, v in self.vertex_layers.items()})
        object.__setattr__(
            self, "edge_layers", {k: {canon_edge(*e): g for e, g in v.items()} for k, v in self.edge_layers.items()}
        )


def soft_graph_to_neutro(sg: SoftGraph) -> NeutroSoftGraph:
    """Members of F(a) and K(a) get the grade (1, 0, 0)."""
    top = grade(Kind.NEUTROSOPHIC, 1.0, 0.0, 0.0)
    return NeutroSoftGraph(
        sg.base,
        {k: {v: top for v in vs} for k, vs in sg.vertex_map.items()},
        {k: {e: top for e in es} for k, es in sg.edge_map.items()},
    )


def neutro_soft_strip(nsg: NeutroSoftGraph) -> SoftGraph:
    keys = set(nsg.vertex_layers) | set(nsg.edge_layers)
    return SoftGraph(
        nsg.base,
        {k: frozenset(nsg.vertex_layers.get(k, {})) for k in keys},
        {k: frozenset(nsg.edge_layers.get(k, {})) for k in keys},
    )


def neutro_soft_graph_validate(nsg: NeutroSoftGraph) -> ValidationReport:
    c = Collector()
    c.extend(soft_graph_validate(neutro_soft_strip(nsg)))
    for layers, what in ((nsg.vertex_layers, "J"), (nsg.edge_layers, "K")):
        for k in sorted_items(layers):
            for x in sorted_items(layers[k]):
                gt = layers[k][x]
                if gt.kind is not Kind.NEUTROSOPHIC:
                    c.add(f"{what}({k!r})[{x!r}]: grade kind {gt.kind.value} is not Neutrosophic")
                    continue
                c.extend(validate_grade(gt), prefix=f"{what}({k!r})[{x!r}]")
    return c.report()


def _aggregate(mentions: list[GradeTuple]) -> GradeTuple:
    lo = min(r.lo for g in mentions for r in g.ranges)
    hi = max(r.hi for g in mentions for r in g.ranges)
    t = max(g.values[0] for g in mentions)
    i = max(g.values[1] for g in mentions)
    f = min(g.values[2] for g in mentions)
    return grade(Kind.NEUTROSOPHIC, t, i, f, ranges=GradeRange(lo, hi))


def neutro_soft_graph_aggregate(nsg: NeutroSoftGraph) -> GradedGraph:
    """T and I take the sup over parameters mentioning the item, F the inf."""
    vg, eg = {}, {}
    for what, layers, items, out in (
        ("vertex", nsg.vertex_layers, nsg.base.vertices, vg),
        ("edge", nsg.edge_layers, nsg.base.edges, eg),
    ):
        for x in sorted_items(items):
            mentions = [layers[k][x] for k in sorted_items(layers) if x in layers[k]]
            if not mentions:
                raise Unmentioned(f"{what} {x!r} appears under no parameter")
            out[x] = _aggregate(mentions)
    return GradedGraph(nsg.base, Kind.NEUTROSOPHIC, vg, eg)


# ---------------------------------------------------------------- hypersoft graphs


@dataclass(frozen=True)
class HyperSoftGraph:
    base: CrispGraph
    domains: tuple
    mapping: Mapping[tuple, frozenset]
    vertex_grades: Mapping[tuple, Mapping[Hashable, GradeTuple]] = field(default_factory=dict)
    edge_grades: Mapping[tuple, Mapping[tuple, GradeTuple]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "domains", tuple(tuple(d) for d in self.domains))
        object.__setattr__(self, "mapping", {tuple(k): frozenset(v) for k, v in self.mapping.items()})
        object.__setattr__(self, "vertex_grades", {tuple(k): dict(v) for k, v in self.vertex_grades.items()})
        object.__setattr__(
            self,
            "edge_grades",
            {tuple(k): {canon_edge(*e): g for e, g in v.items()} for k, v in self.edge_grades.items()},
        )


def hypersoft_graph_validate(hsg: HyperSoftGraph) -> ValidationReport:
    """Raises DisconnectedBase when the base graph is itself disconnected."""
    if not is_connected(hsg.base):
        raise DisconnectedBase("the base graph is not connected")
    c = Collector()
    c.extend(validate_crisp_graph(hsg.base))
    for (i, a), (j, b) in combinations(enumerate(hsg.domains), 2):
        shared = set(a) & set(b)
        c.check(not shared, f"domains J{i + 1} and J{j + 1} overlap on {sorted_items(shared)}")
    for key in sorted_items(hsg.mapping):
        verts = hsg.mapping[key]
        if len(key) != len(hsg.domains):
            c.add(f"key {key!r} has arity {len(key)}, expected {len(hsg.domains)}")
        else:
            for n, (v, dom) in enumerate(zip(key, hsg.domains)):
                c.check(v in dom, f"key {key!r}: component {n + 1} not in J{n + 1}")
        c.check(verts <= hsg.base.vertices, f"F({key!r}) has vertices outside V")
        c.check(is_connected(hsg.base, verts), f"F({key!r}) does not induce a connected subgraph")
    for key in sorted_items(set(hsg.vertex_grades) | set(hsg.edge_grades)):
        if key not in hsg.mapping:
            c.add(f"grades given for unlisted key {key!r}")
            continue
        verts = hsg.mapping[key]
        vg = hsg.vertex_grades.get(key, {})
        eg = hsg.edge_grades.get(key, {})
        c.check(set(vg) == set(verts), f"{key!r}: vertex grades must cover exactly F({key!r})")
        c.check(set(eg) == set(induced_edges(hsg.base, verts)), f"{key!r}: edge grades must cover exactly the induced edges")
        for x, gt in [(v, vg[v]) for v in sorted_items(vg)] + [(e, eg[e]) for e in sorted_items(eg)]:
            if gt.kind is not Kind.NEUTROSOPHIC:
                c.add(f"{key!r}[{x!r}]: grade kind {gt.kind.value} is not Neutrosophic")
                continue
            c.extend(validate_grade(gt), prefix=f"{key!r}[{x!r}]")
    return c.report()


def hypersoft_graph_strip(hsg: HyperSoftGraph) -> HyperSoftGraph:
    return HyperSoftGraph(hsg.base, hsg.domains, hsg.mapping)


def hypersoft_graph_to_neutro_soft(hsg: HyperSoftGraph) -> NeutroSoftGraph:
    """Each attribute tuple becomes one soft parameter carrying its grade layer."""
    return NeutroSoftGraph(hsg.base, dict(hsg.vertex_grades), dict(hsg.edge_grades))


# ---------------------------------------------------------------- weighted / labeled


class Role(str, Enum):
    WEIGHT = "weight"
    LABEL = "label"


ANNOTATED_KINDS = {
    (Role.WEIGHT, 0): "WeightedGraph",
    (Role.WEIGHT, 1): "HyperWeightedGraph",
    (Role.WEIGHT, 2): "SuperHyperWeightedGraph",
    (Role.LABEL, 0): "LabelingGraph",
    (Role.LABEL, 1): "HyperLabelingGraph",
    (Role.LABEL, 2): "SuperHyperLabelingGraph",
}


@dataclass(frozen=True)
class AnnotatedGraph:
    """Weights live on edges only; labels on vertices and edges.

    Level 0 holds plain values, level 1 non-empty sets of them, level 2
    non-empty sets of non-empty sets.
    """

    base: CrispGraph
    role: Role
    level: int
    vertex_values: Mapping[Hashable, object] = field(default_factory=dict)
    edge_values: Mapping[tuple, object] = field(default_factory=dict)
    vertex_labels: frozenset | None = None
    edge_labels: frozenset | None = None

    def __post_init__(self):
        object.__setattr__(self, "role", Role(self.role))
        object.__setattr__(self, "vertex_values", dict(self.vertex_values))
        object.__setattr__(self, "edge_values", {canon_edge(*e): x for e, x in self.edge_values.items()})
        for name in ("vertex_labels", "edge_labels"):
            val = getattr(self, name)
            if val is not None:
                object.__setattr__(self, name, frozenset(val))

    @property
    def kind_name(self) -> str:
        return ANNOTATED_KINDS[(self.role, self.level)]


def _check_atom(c: Collector, where: str, x, role: Role, labels) -> None:
    if role is Role.WEIGHT:
        ok = isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)
        c.check(ok, f"{where}: weight {x!r} is not a finite real")
    elif labels is not None:
        c.check(x in labels, f"{where}: label {x!r} not in the label set")


def _check_annotation(c: Collector, where: str, x, level: int, role: Role, labels) -> None:
    if level == 0:
        _check_atom(c, where, x, role, labels)
        return
    if not isinstance(x, frozenset):
        c.add(f"{where}: expected a set at level {level}")
        return
    c.check(bool(x), f"{where}: empty annotation set")
    for m in sorted_items(x):
        _check_annotation(c, where, m, level - 1, role, labels)


def validate_annotated(g: AnnotatedGraph) -> ValidationReport:
    c = Collector()
    c.extend(validate_crisp_graph(g.base))
    c.check(g.level in (0, 1, 2), f"annotation level {g.level} not in 0..2")
    if g.role is Role.WEIGHT:
        c.check(not g.vertex_values, "weighted graphs carry no vertex annotations")
    else:
        for v in sorted_items(g.base.vertices):
            c.check(v in g.vertex_values, f"vertex {v!r} has no label")
    for e in sorted_items(g.base.edges):
        c.check(e in g.edge_values, f"edge {e!r} has no {g.role.value}")
    for v in sorted_items(g.vertex_values):
        c.check(v in g.base.vertices, f"annotation on unknown vertex {v!r}")
        _check_annotation(c, f"vertex {v!r}", g.vertex_values[v], g.level, g.role, g.vertex_labels)
    for e in sorted_items(g.edge_values):
        c.check(e in g.base.edges, f"annotation on unknown edge {e!r}")
        _check_annotation(c, f"edge {e!r}", g.edge_values[e], g.level, g.role, g.edge_labels)
    return c.report()


def annotated_lift(g: AnnotatedGraph) -> AnnotatedGraph:
    """Wrap every annotation x as {x}, one level up."""
    if g.level >= 2:
        raise KindMismatch("already at the superhyper level")

    def wrap(x):
        return frozenset([x])

    return AnnotatedGraph(
        g.base,
        g.role,
        g.level + 1,
        {v: wrap(x) for v, x in g.vertex_values.items()},
        {e: wrap(x) for e, x in g.edge_values.items()},
        g.vertex_labels,
        g.edge_labels,
    )


def annotated_reduce(g: AnnotatedGraph) -> AnnotatedGraph:
    """Inverse of `annotated_lift`; every annotation must be a singleton."""
    if g.level <= 0:
        raise KindMismatch("already at the plain level")

    def unwrap(where, x):
        if not isinstance(x, frozenset) or len(x) != 1:
            raise NonSingleton(f"{where}: annotation is not a singleton")
        return next(iter(x))

    return AnnotatedGraph(
        g.base,
        g.role,
        g.level - 1,
        {v: unwrap(f"vertex {v!r}", x) for v, x in g.vertex_values.items()},
        {e: unwrap(f"edge {e!r}", x) for e, x in g.edge_values.items()},
        g.vertex_labels,
        g.edge_labels,
    )
