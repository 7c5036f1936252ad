"""Soft-set family: soft, expert, multisoft, hypersoft, superhypersoft, treesoft, ranked, graded layers.

Every mapping is sparse. A key that is not listed is undefined, which is
different from a key listed with the empty set.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Union

from ._common import (
    AttributeTree,
    BadKey,
    Collector,
    UniverseMismatch,
    ValidationReport,
    WrongArity,
    WrongDepth,
    epsilon,
    sorted_items,
)
from .grades import GradedSet, GradeTuple, Kind, validate_grade


def _fs(xs: Iterable) -> frozenset:
    return frozenset(xs)


def _norm_map(mapping: Mapping) -> dict:
    return {k: frozenset(v) for k, v in mapping.items()}


def _fmt(xs) -> str:
    return "{" + ", ".join(str(x) for x in sorted_items(xs)) + "}"


def _check_values(c: Collector, universe: frozenset, mapping: Mapping, label: str = "U") -> None:
    for key in sorted_items(mapping):
        extra = mapping[key] - universe
        c.check(not extra, f"F({key!r}) has elements {_fmt(extra)} outside {label}")


# ---------------------------------------------------------------- plain soft sets


@dataclass(frozen=True)
class SoftSet:
    universe: frozenset
    mapping: Mapping[Hashable, frozenset]

    def __post_init__(self):
        object.__setattr__(self, "universe", _fs(self.universe))
        object.__setattr__(self, "mapping", _norm_map(self.mapping))

    @property
    def parameters(self) -> frozenset:
        return frozenset(self.mapping)


def soft_validate(s: SoftSet) -> ValidationReport:
    c = Collector()
    _check_values(c, s.universe, s.mapping)
    return c.report()


def crisp_to_soft(s: GradedSet, parameter: Hashable = "e") -> SoftSet:
    """One parameter whose value is the set of members with value 1."""
    members = {x for x, g in s.grades.items() if abs(g.values[0] - g.ranges[0].hi) <= epsilon()}
    return SoftSet(s.universe, {parameter: members})


def _same_universe(a, b) -> None:
    if a.universe != b.universe:
        raise UniverseMismatch(f"{_fmt(a.universe)} vs {_fmt(b.universe)}")


def soft_union(f: SoftSet, g: SoftSet) -> SoftSet:
    _same_universe(f, g)
    out = dict(f.mapping)
    for e, v in g.mapping.items():
        out[e] = out[e] | v if e in out else v
    return SoftSet(f.universe, out)


def soft_intersection(f: SoftSet, g: SoftSet) -> SoftSet:
    """Defined over the shared parameters; disjoint parameter sets give the empty soft set."""
    _same_universe(f, g)
    return SoftSet(f.universe, {e: f.mapping[e] & g.mapping[e] for e in f.mapping if e in g.mapping})


def is_soft_subset(f: SoftSet, g: SoftSet) -> bool:
    _same_universe(f, g)
    return all(e in g.mapping and v <= g.mapping[e] for e, v in f.mapping.items())


# ---------------------------------------------------------------- expert


@dataclass(frozen=True)
class SoftExpertSet:
    universe: frozenset
    parameters: frozenset
    experts: frozenset
    opinions: frozenset
    mapping: Mapping[tuple, frozenset]

    def __post_init__(self):
        for name in ("universe", "parameters", "experts", "opinions"):
            object.__setattr__(self, name, _fs(getattr(self, name)))
        object.__setattr__(self, "mapping", {tuple(k): frozenset(v) for k, v in self.mapping.items()})


def soft_expert_validate(se: SoftExpertSet) -> ValidationReport:
    c = Collector()
    for key in sorted_items(se.mapping):
        if len(key) != 3:
            c.add(f"key {key!r} is not a (parameter, expert, opinion) triple")
            continue
        e, x, o = key
        c.check(e in se.parameters, f"key {key!r}: unknown parameter {e!r}")
        c.check(x in se.experts, f"key {key!r}: unknown expert {x!r}")
        c.check(o in se.opinions, f"key {key!r}: unknown opinion {o!r}")
    _check_values(c, se.universe, se.mapping)
    return c.report()


def soft_to_expert(s: SoftSet, expert: Hashable = "expert", opinion: Hashable = "agree") -> SoftExpertSet:
    """A single expert who agrees with every parameter."""
    return SoftExpertSet(
        s.universe, s.parameters, {expert}, {opinion}, {(e, expert, opinion): v for e, v in s.mapping.items()}
    )


def expert_as_soft(se: SoftExpertSet) -> SoftSet:
    if len(se.experts) != 1 or len(se.opinions) != 1:
        raise WrongArity("need exactly one expert and one opinion")
    return SoftSet(se.universe, {e: v for (e, _, _), v in se.mapping.items()})


# ---------------------------------------------------------------- multisoft


@dataclass(frozen=True)
class MultiSoftSet:
    universe: frozenset
    families: tuple  # tuple of parameter tuples E_1..E_n
    mapping: Mapping[frozenset, frozenset]
    family_names: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "universe", _fs(self.universe))
        object.__setattr__(self, "families", tuple(tuple(f) for f in self.families))
        object.__setattr__(self, "mapping", {frozenset(k): frozenset(v) for k, v in self.mapping.items()})
        names = tuple(self.family_names) or tuple(f"E{i + 1}" for i in range(len(self.families)))
        object.__setattr__(self, "family_names", names)

    @property
    def pool(self) -> frozenset:
        return frozenset(p for fam in self.families for p in fam)


def multisoft_validate(m: MultiSoftSet) -> ValidationReport:
    c = Collector()
    c.check(len(m.family_names) == len(m.families), "family names and families differ in length")
    for (i, a), (j, b) in combinations(enumerate(m.families), 2):
        shared = set(a) & set(b)
        c.check(not shared, f"families {m.family_names[i]} and {m.family_names[j]} share {_fmt(shared)}")
    pool = m.pool
    for key in sorted_items(m.mapping):
        c.check(key <= pool, f"key {_fmt(key)} uses parameters outside the families")
    _check_values(c, m.universe, m.mapping)
    return c.report()


def soft_to_multisoft(s: SoftSet, family: str = "E1") -> MultiSoftSet:
    params = tuple(sorted_items(s.mapping))
    return MultiSoftSet(s.universe, (params,), {frozenset([e]): v for e, v in s.mapping.items()}, (family,))


# ---------------------------------------------------------------- hypersoft


@dataclass(frozen=True)
class HyperSoftSet:
    universe: frozenset
    domains: tuple  # J_1..J_n, each a tuple of attribute values
    mapping: Mapping[tuple, frozenset]

    def __post_init__(self):
        object.__setattr__(self, "universe", _fs(self.universe))
        object.__setattr__(self, "domains", tuple(tuple(d) for d in self.domains))
        object.__setattr__(self, "mapping", {tuple(k): frozenset(v) for k, v in self.mapping.items()})

    @property
    def arity(self) -> int:
        return len(self.domains)


def _check_disjoint_domains(c: Collector, domains: tuple) -> None:
    for (i, a), (j, b) in combinations(enumerate(domains), 2):
        shared = set(a) & set(b)
        c.check(not shared, f"domains J{i + 1} and J{j + 1} overlap on {_fmt(shared)}")


def _check_tuple_key(c: Collector, key: tuple, domains: tuple) -> None:
    if len(key) != len(domains):
        c.add(f"key {key!r} has arity {len(key)}, expected {len(domains)}")
        return
    for i, (v, dom) in enumerate(zip(key, domains)):
        c.check(v in dom, f"key {key!r}: component {i + 1} value {v!r} not in J{i + 1}")


def hypersoft_validate(h: HyperSoftSet) -> ValidationReport:
    c = Collector()
    c.check(h.arity >= 1, "hypersoft set needs at least one attribute domain")
    _check_disjoint_domains(c, h.domains)
    for key in sorted_items(h.mapping):
        _check_tuple_key(c, key, h.domains)
    _check_values(c, h.universe, h.mapping)
    return c.report()


def hypersoft_as_soft(h: HyperSoftSet) -> SoftSet:
    if h.arity != 1:
        raise WrongArity(f"soft reinterpretation needs n = 1, got n = {h.arity}")
    return SoftSet(h.universe, {k[0]: v for k, v in h.mapping.items()})


def soft_as_hypersoft(s: SoftSet) -> HyperSoftSet:
    return HyperSoftSet(s.universe, (tuple(sorted_items(s.mapping)),), {(e,): v for e, v in s.mapping.items()})


@dataclass(frozen=True)
class SuperHyperSoftSet:
    universe: frozenset
    domains: tuple
    mapping: Mapping[tuple, frozenset]  # keys are tuples of frozensets (S_1..S_n)

    def __post_init__(self):
        object.__setattr__(self, "universe", _fs(self.universe))
        object.__setattr__(self, "domains", tuple(tuple(d) for d in self.domains))
        object.__setattr__(
            self, "mapping", {tuple(frozenset(s) for s in k): frozenset(v) for k, v in self.mapping.items()}
        )

    @property
    def arity(self) -> int:
        return len(self.domains)


def superhypersoft_validate(s: SuperHyperSoftSet) -> ValidationReport:
    c = Collector()
    c.check(s.arity >= 1, "superhypersoft set needs at least one attribute domain")
    for key in sorted_items(s.mapping):
        if len(key) != s.arity:
            c.add(f"key {key!r} has arity {len(key)}, expected {s.arity}")
            continue
        for i, (sub, dom) in enumerate(zip(key, s.domains)):
            extra = sub - set(dom)
            c.check(not extra, f"key component {i + 1} has {_fmt(extra)} outside A{i + 1}")
    _check_values(c, s.universe, s.mapping)
    return c.report()


def superhypersoft_from_hypersoft(h: HyperSoftSet) -> SuperHyperSoftSet:
    return SuperHyperSoftSet(h.universe, h.domains, {tuple(frozenset([e]) for e in k): v for k, v in h.mapping.items()})


def superhypersoft_to_hypersoft(s: SuperHyperSoftSet) -> HyperSoftSet:
    """Restrict to all-singleton keys and unwrap them."""
    out = {}
    for key, v in s.mapping.items():
        if all(len(part) == 1 for part in key):
            out[tuple(next(iter(part)) for part in key)] = v
    return HyperSoftSet(s.universe, s.domains, out)


# ---------------------------------------------------------------- treesoft


@dataclass(frozen=True)
class TreeSoftSet:
    """`universe` plays the role of H; keys are sets of tree nodes (root excluded)."""

    universe: frozenset
    tree: AttributeTree
    mapping: Mapping[frozenset, frozenset]
    bijective: bool = False

    def __post_init__(self):
        object.__setattr__(self, "universe", _fs(self.universe))
        object.__setattr__(self, "mapping", {frozenset(k): frozenset(v) for k, v in self.mapping.items()})


def treesoft_validate(t: TreeSoftSet) -> ValidationReport:
    c = Collector()
    c.extend(t.tree.validate(), prefix="tree")
    nodes = set(t.tree.nodes) - {t.tree.root}
    for key in sorted_items(t.mapping):
        unknown = key - nodes
        c.check(not unknown, f"key {_fmt(key)} references unknown nodes {_fmt(unknown)}")
    _check_values(c, t.universe, t.mapping, label="H")
    if t.bijective:
        c.extend(bijective_validate(t))
    return c.report()


def treesoft_to_multisoft(t: TreeSoftSet) -> MultiSoftSet:
    if t.tree.depth != 2:
        raise WrongDepth(f"multisoft flattening needs depth 2, tree has depth {t.tree.depth}")
    first = t.tree.kids(t.tree.root)
    leaves = set(t.tree.at_level(2))
    for key in sorted_items(t.mapping):
        if not key <= leaves:
            raise BadKey(f"key {_fmt(key)} references nodes above level 2: {_fmt(key - leaves)}")
    families = tuple(t.tree.kids(a) for a in first)
    return MultiSoftSet(t.universe, families, dict(t.mapping), tuple(first))


def multisoft_to_treesoft(m: MultiSoftSet, root: Hashable = "A") -> TreeSoftSet:
    tree = AttributeTree.from_nested(root, {name: list(fam) for name, fam in zip(m.family_names, m.families)})
    return TreeSoftSet(m.universe, tree, dict(m.mapping))


def soft_to_treesoft(s: SoftSet, root: Hashable = "A") -> TreeSoftSet:
    """Depth-1 tree with one leaf per parameter; keys become singletons."""
    tree = AttributeTree.from_nested(root, list(sorted_items(s.mapping)))
    return TreeSoftSet(s.universe, tree, {frozenset([e]): v for e, v in s.mapping.items()})


def treesoft_as_soft(t: TreeSoftSet) -> SoftSet:
    if t.tree.depth > 1:
        raise WrongDepth(f"soft reinterpretation needs depth 1, tree has depth {t.tree.depth}")
    out = {}
    for key, v in t.mapping.items():
        if len(key) != 1:
            raise BadKey(f"key {_fmt(key)} is not a single node")
        (e,) = key
        out[e] = v
    return SoftSet(t.universe, out)


# ---------------------------------------------------------------- bijective


def bijective_validate(s: SoftSet | TreeSoftSet) -> ValidationReport:
    """Exhaustivity and pairwise disjointness, reported independently."""
    c = Collector()
    if isinstance(s, TreeSoftSet):
        for key in sorted_items(s.mapping):
            c.check(len(key) == 1, f"bijective key {_fmt(key)} is not a single node")
    keys = sorted_items(s.mapping)
    covered = frozenset().union(*s.mapping.values()) if s.mapping else frozenset()
    missing = s.universe - covered
    c.check(not missing, f"exhaustivity: {_fmt(missing)} not covered")
    for a, b in combinations(keys, 2):
        shared = s.mapping[a] & s.mapping[b]
        c.check(not shared, f"disjointness: F({a!r}) and F({b!r}) share {_fmt(shared)}")
    return c.report()


def bijective_relax(bt: TreeSoftSet) -> TreeSoftSet:
    return replace(bt, bijective=False)


# ---------------------------------------------------------------- null / full


SoftFamily = Union[SoftSet, SoftExpertSet, MultiSoftSet, HyperSoftSet, SuperHyperSoftSet, TreeSoftSet]


def is_null(s: SoftFamily) -> bool:
    return all(not v for v in s.mapping.values())


def is_full(s: SoftFamily) -> bool:
    covered = frozenset().union(*s.mapping.values()) if s.mapping else frozenset()
    return covered >= s.universe


# ---------------------------------------------------------------- ranked


@dataclass(frozen=True)
class RankedSoftSet:
    universe: frozenset
    mapping: Mapping[Hashable, tuple]  # parameter -> (V_0, V_1, ..., V_k)

    def __post_init__(self):
        object.__setattr__(self, "universe", _fs(self.universe))
        object.__setattr__(self, "mapping", {k: tuple(frozenset(b) for b in v) for k, v in self.mapping.items()})


@dataclass(frozen=True)
class RankedHyperSoftSet:
    universe: frozenset
    domains: tuple
    mapping: Mapping[tuple, tuple]

    def __post_init__(self):
        object.__setattr__(self, "universe", _fs(self.universe))
        object.__setattr__(self, "domains", tuple(tuple(d) for d in self.domains))
        object.__setattr__(
            self, "mapping", {tuple(k): tuple(frozenset(b) for b in v) for k, v in self.mapping.items()}
        )


def ranked_validate(r: RankedSoftSet | RankedHyperSoftSet) -> ValidationReport:
    c = Collector()
    if isinstance(r, RankedHyperSoftSet):
        _check_disjoint_domains(c, r.domains)
        for key in sorted_items(r.mapping):
            _check_tuple_key(c, key, r.domains)
    for key in sorted_items(r.mapping):
        blocks = r.mapping[key]
        if not blocks:
            c.add(f"R({key!r}) has no blocks")
            continue
        for (i, a), (j, b) in combinations(enumerate(blocks), 2):
            shared = a & b
            c.check(not shared, f"R({key!r}): V{i} and V{j} share {_fmt(shared)}")
        union = frozenset().union(*blocks)
        c.check(not (r.universe - union), f"R({key!r}) misses {_fmt(r.universe - union)}")
        c.check(not (union - r.universe), f"R({key!r}) has {_fmt(union - r.universe)} outside U")
    return c.report()


# ---------------------------------------------------------------- graded layers


class SoftShape(str, Enum):
    SOFT = "Soft"
    MULTISOFT = "MultiSoft"
    HYPERSOFT = "HyperSoft"
    TREESOFT = "TreeSoft"


@dataclass(frozen=True)
class GradedSoftLayer:
    """Soft-family mapping whose values are (X_a, {x: neutrosophic grade on X_a}).

    `context` carries what the shape needs to rebuild the plain set:
    families (+ family_names) for multisoft, domains for hypersoft, tree for treesoft.
    """

    universe: frozenset
    mapping: Mapping[Hashable, tuple]
    shape: SoftShape = SoftShape.SOFT
    context: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "universe", _fs(self.universe))
        object.__setattr__(self, "shape", SoftShape(self.shape))
        object.__setattr__(self, "mapping", {k: (frozenset(xa), dict(gr)) for k, (xa, gr) in self.mapping.items()})


def graded_soft_strip(g: GradedSoftLayer) -> SoftFamily:
    plain = {k: xa for k, (xa, _) in g.mapping.items()}
    ctx = g.context
    if g.shape is SoftShape.SOFT:
        return SoftSet(g.universe, plain)
    if g.shape is SoftShape.MULTISOFT:
        return MultiSoftSet(g.universe, ctx["families"], plain, tuple(ctx.get("family_names", ())))
    if g.shape is SoftShape.HYPERSOFT:
        return HyperSoftSet(g.universe, ctx["domains"], plain)
    return TreeSoftSet(g.universe, ctx["tree"], plain)


_SHAPE_VALIDATORS = {
    SoftShape.SOFT: soft_validate,
    SoftShape.MULTISOFT: multisoft_validate,
    SoftShape.HYPERSOFT: hypersoft_validate,
    SoftShape.TREESOFT: treesoft_validate,
}


def graded_soft_validate(g: GradedSoftLayer) -> ValidationReport:
    c = Collector()
    for key in sorted_items(g.mapping):
        xa, grades = g.mapping[key]
        missing = xa - set(grades)
        extra = set(grades) - xa
        c.check(not missing, f"{key!r}: no grade for {_fmt(missing)}")
        c.check(not extra, f"{key!r}: grades given outside X_a for {_fmt(extra)}")
        for x in sorted_items(grades):
            gt: GradeTuple = grades[x]
            if gt.kind is not Kind.NEUTROSOPHIC:
                c.add(f"{key!r}/{x}: expected a neutrosophic grade, got {gt.kind.value}")
                continue
            c.check(gt.is_standard, f"{key!r}/{x}: grade uses a non-standard range")
            c.extend(validate_grade(gt), prefix=f"{key!r}/{x}")
    try:
        c.extend(_SHAPE_VALIDATORS[g.shape](graded_soft_strip(g)))
    except KeyError as err:
        c.add(f"{g.shape.value} layer is missing context {err}")
    return c.report()
