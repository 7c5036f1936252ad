"""Plithogenic, multiplithogenic and tree-plithogenic sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Iterable, Mapping

from ._common import (
    AmbiguousValue,
    AttributeTree,
    BadKey,
    Collector,
    UnsupportedDims,
    ValidationReport,
    WrongDepth,
    epsilon,
    sorted_items,
)
from .grades import STANDARD, GradeRange, GradedSet, GradeTuple, Kind, MultiGrade, arity, validate_grade

POSITIONAL_KINDS = {1: Kind.FUZZY, 2: Kind.VAGUE, 3: Kind.NEUTROSOPHIC, 4: Kind.QUAD, 5: Kind.PENTA}


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))


@dataclass(frozen=True)
class DAFTable:
    """Degree of appurtenance: (element, attribute value) -> s components."""

    dims: int
    entries: Mapping[tuple, tuple[float, ...]]
    ranges: tuple[GradeRange, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", {k: tuple(float(x) for x in v) for k, v in self.entries.items()})
        rs = tuple(self.ranges) or (STANDARD,) * self.dims
        object.__setattr__(self, "ranges", rs)

    def get(self, x: Hashable, a: Hashable) -> tuple[float, ...] | None:
        return self.entries.get((x, a))


@dataclass(frozen=True)
class DCFMatrix:
    """Degree of contradiction between attribute values, t components in [0, 1].

    Diagonal entries default to zero and one orientation of an off-diagonal
    pair is enough; symmetry is checked when both orientations are given.
    """

    dims: int = 1
    entries: Mapping[tuple, tuple[float, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", {k: tuple(float(x) for x in v) for k, v in self.entries.items()})

    def get(self, a: Hashable, b: Hashable) -> tuple[float, ...] | None:
        if (a, b) in self.entries:
            return self.entries[(a, b)]
        if (b, a) in self.entries:
            return self.entries[(b, a)]
        if a == b:
            return (0.0,) * self.dims
        return None


def validate_daf(daf: DAFTable, carrier: Iterable, values: Iterable) -> ValidationReport:
    eps = epsilon()
    c = Collector()
    carrier, values = tuple(carrier), tuple(values)
    c.check(daf.dims >= 1, f"DAF dimension {daf.dims} < 1")
    c.check(len(daf.ranges) == daf.dims, f"{len(daf.ranges)} ranges for {daf.dims} DAF components")
    cs, vs = set(carrier), set(values)
    for x in carrier:
        for a in values:
            c.check((x, a) in daf.entries, f"DAF missing for ({x!r}, {a!r})")
    for key in sorted_items(daf.entries):
        vec = daf.entries[key]
        x, a = key
        c.check(x in cs, f"DAF key element {x!r} outside the carrier")
        c.check(a in vs, f"DAF key value {a!r} outside the value set")
        if len(vec) != daf.dims:
            c.add(f"DAF ({x!r}, {a!r}) has {len(vec)} components, expected {daf.dims}")
            continue
        for i, (v, r) in enumerate(zip(vec, daf.ranges)):
            c.check(r.contains(v, eps), f"DAF ({x!r}, {a!r})[{i}]={v:g} outside [{r.lo:g}, {r.hi:g}]")
    return c.report()


def validate_dcf(dcf: DCFMatrix, values: Iterable) -> ValidationReport:
    eps = epsilon()
    c = Collector()
    values = tuple(values)
    vs = set(values)
    c.check(dcf.dims >= 1, f"DCF dimension {dcf.dims} < 1")
    for key in sorted_items(dcf.entries):
        vec = dcf.entries[key]
        a, b = key
        c.check(a in vs and b in vs, f"DCF key ({a!r}, {b!r}) outside the value set")
        if len(vec) != dcf.dims:
            c.add(f"DCF ({a!r}, {b!r}) has {len(vec)} components, expected {dcf.dims}")
            continue
        for v in vec:
            c.check(-eps <= v <= 1 + eps, f"DCF ({a!r}, {b!r}) component {v:g} outside [0, 1]")
        if a == b:
            c.check(all(abs(v) <= eps for v in vec), f"reflexivity: DCF ({a!r}, {a!r}) = {vec} is not 0")
        elif (b, a) in dcf.entries:
            other = dcf.entries[(b, a)]
            if len(other) == len(vec) and any(abs(p - q) > eps for p, q in zip(vec, other)):
                c.add(f"symmetry: DCF ({a!r}, {b!r}) = {vec} differs from ({b!r}, {a!r}) = {other}")
    for i, a in enumerate(values):
        for b in values[i + 1 :]:
            c.check(dcf.get(a, b) is not None, f"DCF missing for ({a!r}, {b!r})")
    return c.report()


@dataclass(frozen=True)
class PlithogenicSet:
    carrier: tuple
    attribute: AttributeSpec
    daf: DAFTable
    dcf: DCFMatrix = field(default_factory=DCFMatrix)
    general: bool = False

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))


def validate_plithogenic(ps: PlithogenicSet) -> ValidationReport:
    c = Collector()
    c.check(len(ps.attribute.values) >= 1 or not ps.carrier, "empty value set")
    c.check(len(set(ps.attribute.values)) == len(ps.attribute.values), "duplicate attribute values")
    c.extend(validate_daf(ps.daf, ps.carrier, ps.attribute.values))
    c.extend(validate_dcf(ps.dcf, ps.attribute.values))
    return c.report()


def reduce_plithogenic(ps: PlithogenicSet, pair_kind: Kind | str = Kind.VAGUE, kind: Kind | str | None = None) -> GradedSet:
    """Read a single-valued plithogenic set as a graded set, component by position.

    `pair_kind` picks Vague or IntuitionisticFuzzy for s = 2; `kind` overrides
    the positional choice for any arity (e.g. DoubleValued for s = 4).
    """
    s, t = ps.daf.dims, ps.dcf.dims
    if t != 1:
        raise UnsupportedDims(f"contradiction dimension t={t}, expected 1")
    if kind is None:
        if s not in POSITIONAL_KINDS:
            raise UnsupportedDims(f"appurtenance dimension s={s} not in 1..5")
        kind = Kind(pair_kind) if s == 2 else POSITIONAL_KINDS[s]
    kind = Kind(kind)

    if arity(kind) != s:
        raise UnsupportedDims(f"{kind.value} needs {arity(kind)} components, DAF has {s}")
    if len(ps.attribute.values) != 1:
        raise AmbiguousValue(f"{len(ps.attribute.values)} attribute values; reduction needs exactly one")
    (a,) = ps.attribute.values
    grades = {}
    for x in ps.carrier:
        vec = ps.daf.get(x, a)
        if vec is None:
            raise BadKey(f"DAF missing for ({x!r}, {a!r})")
        grades[x] = GradeTuple(kind, vec, ps.daf.ranges)
    return GradedSet(ps.carrier, grades)


def graded_to_plithogenic(s: GradedSet, attribute: str = "v", value: Hashable = "v") -> PlithogenicSet:
    """Single attribute value whose DAF vector is the grade tuple."""
    dims = len(s.ranges) if s.ranges is not None else 1
    entries = {(x, value): s.grades[x].values for x in s.universe}
    return PlithogenicSet(
        s.universe, AttributeSpec(attribute, (value,)), DAFTable(dims, entries, s.ranges or ()), DCFMatrix(1)
    )


# ---------------------------------------------------------------- multi


@dataclass(frozen=True)
class MultiPlithogenicSet:
    carrier: tuple
    attributes: tuple[AttributeSpec, ...]
    dafs: tuple[DAFTable, ...]
    dcf: DCFMatrix = field(default_factory=DCFMatrix)

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "dafs", tuple(self.dafs))

    @property
    def all_values(self) -> tuple:
        return tuple(v for a in self.attributes for v in a.values)

    @property
    def dims(self) -> int:
        return self.dafs[0].dims if self.dafs else 1


def validate_multiplithogenic(mps: MultiPlithogenicSet) -> ValidationReport:
    c = Collector()
    names = [a.name for a in mps.attributes]
    c.check(len(set(names)) == len(names), "attribute names are not distinct")
    c.check(len(mps.dafs) == len(mps.attributes), f"{len(mps.dafs)} DAF tables for {len(mps.attributes)} attributes")
    seen: dict = {}
    for a in mps.attributes:
        c.check(len(a.values) >= 1, f"attribute {a.name!r} has no values")
        for v in a.values:
            if v in seen:
                c.add(f"value {v!r} shared by attributes {seen[v]!r} and {a.name!r}")
            seen[v] = a.name
    dims = {d.dims for d in mps.dafs}
    c.check(len(dims) <= 1, f"DAF tables disagree on dimension: {sorted(dims)}")
    for a, d in zip(mps.attributes, mps.dafs):
        c.extend(validate_daf(d, mps.carrier, a.values), prefix=str(a.name))
    c.extend(validate_dcf(mps.dcf, mps.all_values))
    return c.report()


def multiplithogenic_to_multineutro(mps: MultiPlithogenicSet) -> dict:
    """Collect truth, indeterminacy and falsity lists over every attribute value."""
    if mps.dims != 3:
        raise UnsupportedDims(f"appurtenance dimension s={mps.dims}, expected 3")
    if mps.dcf.dims != 1:
        raise UnsupportedDims(f"contradiction dimension t={mps.dcf.dims}, expected 1")
    out = {}
    for x in mps.carrier:
        vecs = [d.entries[(x, v)] for a, d in zip(mps.attributes, mps.dafs) for v in a.values]
        rng = _hull(mps.dafs[0].ranges) if mps.dafs else STANDARD
        out[x] = MultiGrade(tuple(v[0] for v in vecs), tuple(v[1] for v in vecs), tuple(v[2] for v in vecs), rng)
    return out


def _hull(ranges: Iterable[GradeRange]) -> GradeRange:
    ranges = tuple(ranges)
    return GradeRange(min(r.lo for r in ranges), max(r.hi for r in ranges))


class Aggregate(str, Enum):
    MAX = "Max"
    MIN = "Min"
    MEAN = "Mean"


def aggregate_multiplithogenic(
    mps: MultiPlithogenicSet, agg: Aggregate | str = Aggregate.MAX, combined: Hashable = "combined"
) -> PlithogenicSet:
    """Fold every attribute value into one combined value, componentwise."""
    agg = Aggregate(agg)
    fn = {
        Aggregate.MAX: max,
        Aggregate.MIN: min,
        Aggregate.MEAN: lambda xs: sum(xs) / len(xs),
    }[agg]
    s = mps.dims
    entries = {}
    for x in mps.carrier:
        vecs = [d.entries[(x, v)] for a, d in zip(mps.attributes, mps.dafs) for v in a.values]
        if vecs:
            entries[(x, combined)] = tuple(fn([v[i] for v in vecs]) for i in range(s))
    ranges = tuple(_hull(d.ranges[i] for d in mps.dafs) for i in range(s)) if mps.dafs else ()
    name = "+".join(str(a.name) for a in mps.attributes)
    return PlithogenicSet(mps.carrier, AttributeSpec(name, (combined,)), DAFTable(s, entries, ranges), DCFMatrix(mps.dcf.dims))


def plithogenic_to_multi(ps: PlithogenicSet) -> MultiPlithogenicSet:
    return MultiPlithogenicSet(ps.carrier, (ps.attribute,), (ps.daf,), ps.dcf)


# ---------------------------------------------------------------- trees


@dataclass(frozen=True)
class TreePlithogenicSet:
    carrier: tuple
    tree: AttributeTree
    values: Mapping[Hashable, tuple]
    dafs: Mapping[Hashable, DAFTable]
    dcf: DCFMatrix = field(default_factory=DCFMatrix)

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "values", {k: tuple(v) for k, v in self.values.items()})
        object.__setattr__(self, "dafs", dict(self.dafs))


def validate_treeplithogenic(tps: TreePlithogenicSet) -> ValidationReport:
    c = Collector()
    c.extend(tps.tree.validate())
    nodes = set(tps.tree.nodes)
    for node in sorted_items(set(tps.values) | set(tps.dafs)):
        c.check(node in nodes, f"node {node!r} not in the attribute tree")
        c.check(node in tps.values and node in tps.dafs, f"node {node!r} needs both a value set and a DAF")
    seen: dict = {}
    for node in sorted_items(tps.values):
        for v in tps.values[node]:
            if v in seen:
                c.add(f"value {v!r} shared by nodes {seen[v]!r} and {node!r}")
            seen[v] = node
        if node in tps.dafs:
            c.extend(validate_daf(tps.dafs[node], tps.carrier, tps.values[node]), prefix=str(node))
    dims = {d.dims for d in tps.dafs.values()}
    c.check(len(dims) <= 1, f"DAF tables disagree on dimension: {sorted(dims)}")
    c.extend(validate_dcf(tps.dcf, tuple(seen)))
    return c.report()


@dataclass(frozen=True)
class TreeView:
    """Sparse map from node subsets to per-element grades; absent keys are undefined."""

    kind: Kind
    carrier: tuple
    tree: AttributeTree
    entries: Mapping[frozenset, Mapping[Hashable, GradeTuple]]

    def lookup(self, nodes: Iterable[Hashable]):
        return self.entries.get(frozenset(nodes))


def validate_tree_view(view: TreeView) -> ValidationReport:

    c = Collector()
    nodes = set(view.tree.nodes)
    carrier = set(view.carrier)
    for key in sorted_items(view.entries):
        c.check(key <= nodes, f"key {sorted_items(key)} references unknown nodes")
        fn = view.entries[key]
        for x in sorted_items(fn):
            g = fn[x]
            c.check(x in carrier, f"element {x!r} outside the carrier")
            c.check(g.kind is view.kind, f"grade kind {g.kind.value} != {view.kind.value}")
            c.extend(validate_grade(g), prefix=f"{sorted_items(key)}/{x}")
    return c.report()


class TreeTarget(str, Enum):
    MULTI = "MultiPlithogenic"
    NEUTROSOPHIC = "TreeNeutrosophic"
    FUZZY = "TreeFuzzy"


def reduce_treeplithogenic(tps: TreePlithogenicSet, target: TreeTarget | str):
    target = TreeTarget(target)
    if target is TreeTarget.MULTI:
        if tps.tree.depth != 2:
            raise WrongDepth(f"tree depth {tps.tree.depth}, expected 2")
        attrs, dafs = [], []
        for node in tps.tree.at_level(1):
            kids = tps.tree.kids(node)
            if node not in tps.dafs:
                raise BadKey(f"level-1 node {node!r} carries no DAF")
            if set(tps.values.get(node, ())) != set(kids):
                raise BadKey(f"values of {node!r} must be its sub-attributes {list(kids)}")
            attrs.append(AttributeSpec(str(node), kids))
            dafs.append(tps.dafs[node])
        return MultiPlithogenicSet(tps.carrier, tuple(attrs), tuple(dafs), tps.dcf)

    want = 3 if target is TreeTarget.NEUTROSOPHIC else 1
    kind = Kind.NEUTROSOPHIC if want == 3 else Kind.FUZZY
    if tps.dcf.dims != 1:
        raise UnsupportedDims(f"contradiction dimension t={tps.dcf.dims}, expected 1")
    entries = {}
    for node in sorted_items(tps.dafs):
        d = tps.dafs[node]
        if d.dims != want:
            raise UnsupportedDims(f"node {node!r} has s={d.dims}, expected {want}")
        vals = tps.values[node]
        if len(vals) != 1:
            raise AmbiguousValue(f"node {node!r} has {len(vals)} values; the view needs exactly one")
        entries[frozenset([node])] = {x: GradeTuple(kind, d.entries[(x, vals[0])], d.ranges) for x in tps.carrier}
    return TreeView(kind, tps.carrier, tps.tree, entries)


def _fresh(name: Hashable, taken: set) -> Hashable:
    while name in taken:
        name = f"{name}'"
    taken.add(name)
    return name


def multi_to_treeplithogenic(mps: MultiPlithogenicSet, root: Hashable = "A") -> TreePlithogenicSet:
    """Depth-2 tree whose level-1 nodes are the attributes and leaves their values.

    Tree nodes must be unique, so a root or attribute name that clashes with
    a value (or with each other) gets primes appended.
    """
    taken = set(mps.all_values)
    root = _fresh(root, taken)
    names = [_fresh(a.name, taken) for a in mps.attributes]
    tree = AttributeTree(root, {root: tuple(names), **{n: a.values for n, a in zip(names, mps.attributes)}})
    values = {n: a.values for n, a in zip(names, mps.attributes)}
    dafs = dict(zip(names, mps.dafs))
    return TreePlithogenicSet(mps.carrier, tree, values, dafs, mps.dcf)
