"""Lower/upper approximations for the rough family, with region and definability helpers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from ._common import (
    AttributeTree,
    Collector,
    NotASubset,
    NotTransitive,
    UniverseMismatch,
    ValidationReport,
    sorted_items,
)
from .graphs import CrispGraph, induced_edges
from .soft import HyperSoftSet, SoftSet, SuperHyperSoftSet, TreeSoftSet


@dataclass(frozen=True)
class Partition:
    universe: frozenset
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "universe", frozenset(self.universe))
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=lambda b: sorted_items(b)))
        object.__setattr__(self, "blocks", blocks)
        lookup = {}
        for b in blocks:
            for x in b:
                lookup.setdefault(x, b)
        object.__setattr__(self, "_lookup", lookup)

    def cls(self, x: Hashable) -> frozenset:
        """The block containing x."""
        return self._lookup[x]


def validate_partition(p: Partition) -> ValidationReport:
    c = Collector()
    seen: set = set()
    for b in p.blocks:
        c.check(bool(b), "empty block")
        overlap = seen & b
        c.check(not overlap, f"blocks overlap on {sorted_items(overlap)}")
        seen |= b
    c.check(seen == p.universe, "blocks do not cover the universe exactly")
    return c.report()


def discrete_partition(universe: Iterable) -> Partition:
    u = frozenset(universe)
    return Partition(u, [{x} for x in u])


def partition_from_pairs(universe: Iterable, pairs: Iterable[tuple]) -> Partition:
    """Equivalence classes of a relation given as pairs (reflexivity and symmetry implied).

    Raises NotTransitive when the pairs chain two elements that are not
    themselves related.
    """
    u = frozenset(universe)
    rel = {frozenset(p) for p in pairs if p[0] != p[1]}
    parent = {x: x for x in u}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pair in rel:
        a, b = tuple(pair)
        if a not in parent or b not in parent:
            raise NotASubset(f"pair {pair!r} leaves the universe")
        parent[find(a)] = find(b)
    groups: dict = {}
    for x in u:
        groups.setdefault(find(x), set()).add(x)
    for g in groups.values():
        members = sorted_items(g)
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                if frozenset((a, b)) not in rel:
                    raise NotTransitive(f"{a!r} and {b!r} are linked but not related")
    return Partition(u, groups.values())


@dataclass(frozen=True)
class RoughPair:
    lower: frozenset
    upper: frozenset
    target: frozenset

    def __post_init__(self):
        for name in ("lower", "upper", "target"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))


@dataclass(frozen=True)
class Regions:
    pos: frozenset
    neg: frozenset
    bnd: frozenset

    @property
    def definable(self) -> bool:
        return not self.bnd


def regions(pair: RoughPair, ambient: Iterable) -> Regions:
    amb = frozenset(ambient)
    return Regions(pair.lower, amb - pair.upper, pair.upper - pair.lower)


def _require_subset(x: frozenset, universe: frozenset, what: str = "target") -> None:
    extra = x - universe
    if extra:
        raise NotASubset(f"{what} has elements outside the universe: {sorted_items(extra)}")


def rough_approx(p: Partition, target: Iterable) -> RoughPair:
    x = frozenset(target)
    _require_subset(x, p.universe)
    lower, upper = set(), set()
    for b in p.blocks:
        if b <= x:
            lower |= b
        if b & x:
            upper |= b
    return RoughPair(lower, upper, x)


def _soft_pair(values: Iterable[frozenset], x: frozenset) -> RoughPair:
    lower, upper = set(), set()
    for fa in values:
        if fa <= x:
            lower |= fa
        if fa & x:
            upper |= fa
    return RoughPair(lower, upper, x)


def soft_rough_approx(s: SoftSet, target: Iterable) -> RoughPair:
    """Lower: members of some F(a) inside the target. Upper: members of some F(a) meeting it."""
    x = frozenset(target)
    _require_subset(x, s.universe)
    return _soft_pair(s.mapping.values(), x)


def treesoft_rough_approx(t: TreeSoftSet, target: Iterable) -> tuple[RoughPair, Regions]:
    x = frozenset(target)
    _require_subset(x, t.universe)
    pair = _soft_pair(t.mapping.values(), x)
    return pair, regions(pair, t.universe)


def _same_universe(parts: Iterable[Partition]) -> frozenset:
    us = {p.universe for p in parts}
    if len(us) > 1:
        raise UniverseMismatch("relations are defined over different universes")
    return next(iter(us), frozenset())


@dataclass(frozen=True)
class PartitionFamily:
    """Several equivalence relations over one universe, the input of `multirough`."""

    relations: tuple

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))


def validate_partition_family(f: PartitionFamily) -> ValidationReport:
    c = Collector()
    c.check(bool(f.relations), "no relations given")
    for i, p in enumerate(f.relations):
        c.extend(validate_partition(p), prefix=f"relation {i}")
    c.check(len({p.universe for p in f.relations}) <= 1, "relations are defined over different universes")
    return c.report()


def multirough(relations: Iterable[Partition], target: Iterable) -> list[RoughPair]:
    rels = list(relations)
    _same_universe(rels)
    return [rough_approx(p, target) for p in rels]


@dataclass(frozen=True)
class TreeRough:
    """An attribute tree whose nodes carry equivalence relations over one universe."""

    tree: AttributeTree
    partitions: Mapping[Hashable, Partition] = field(default_factory=dict)


def treerough(tr: TreeRough, target: Iterable) -> dict:
    """Per-node approximations, in tree traversal order."""
    _same_universe(tr.partitions.values())
    return {n: rough_approx(tr.partitions[n], target) for n in tr.tree.nodes if n in tr.partitions}


def treerough_level(tr: TreeRough, target: Iterable, level: int) -> list[RoughPair]:
    out = treerough(tr, target)
    return [out[n] for n in tr.tree.at_level(level) if n in out]


def _check_universe(p: Partition, universe: frozenset) -> None:
    if p.universe != universe:
        raise UniverseMismatch("partition and set family have different universes")


def hyperrough(h: HyperSoftSet, p: Partition) -> dict:
    """Each attribute tuple approximates its own value F(a)."""
    _check_universe(p, h.universe)
    return {k: rough_approx(p, h.mapping[k]) for k in sorted_items(h.mapping)}


def superhyperrough(s: SuperHyperSoftSet, p: Partition) -> dict:
    """Same computation keyed by tuples of attribute subsets."""
    _check_universe(p, s.universe)
    return {k: rough_approx(p, s.mapping[k]) for k in sorted_items(s.mapping)}


def rough_graph_approx(g: CrispGraph, p: Partition, target: Iterable) -> tuple[RoughPair, RoughPair]:
    """Vertex approximation of `target`; edges follow their endpoints."""
    if p.universe != g.vertices:
        raise UniverseMismatch("partition must cover exactly the graph's vertices")
    vp = rough_approx(p, target)
    ep = RoughPair(induced_edges(g, vp.lower), induced_edges(g, vp.upper), induced_edges(g, vp.target))
    return vp, ep
