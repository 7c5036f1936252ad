"""Shared plumbing: tolerance, validation reports, error types, attribute trees."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping

DEFAULT_EPSILON = 1e-9


def epsilon() -> float:
    """Numeric tolerance, overridable through the UK_EPSILON environment variable."""
    raw = os.environ.get("UK_EPSILON")
    if raw is None:
        return DEFAULT_EPSILON
    try:
        value = float(raw)
    except ValueError:
        return DEFAULT_EPSILON
    return value if value >= 0 else DEFAULT_EPSILON


def sort_key(x: Any):
    """Total order over mixed hashables used for canonical output ordering."""
    if isinstance(x, (frozenset, set)):
        return (3, tuple(sorted((sort_key(m) for m in x))))
    if isinstance(x, tuple):
        return (2, tuple(sort_key(m) for m in x))
    if isinstance(x, (int, float)):
        return (0, "", float(x))
    return (1, str(x))


def sorted_items(xs: Iterable) -> list:
    return sorted(xs, key=sort_key)


def canon_edge(u: Hashable, v: Hashable) -> tuple:
    """Undirected edge as an endpoint pair in canonical order."""
    return tuple(sorted((u, v), key=sort_key))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validator. An empty violation list means valid."""

    violations: tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def __add__(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.violations + other.violations)

    def prefixed(self, prefix: str) -> "ValidationReport":
        return ValidationReport(tuple(f"{prefix}: {v}" for v in self.violations))


class Collector:
    """Accumulates violation messages while a validator walks a structure."""

    def __init__(self) -> None:
        self._items: list[str] = []

    def add(self, message: str) -> None:
        self._items.append(message)

    def extend(self, report: ValidationReport, prefix: str | None = None) -> None:
        if prefix is not None:
            report = report.prefixed(prefix)
        self._items.extend(report.violations)

    def check(self, condition: bool, message: str) -> None:
        if not condition:
            self._items.append(message)

    def report(self) -> ValidationReport:
        return ValidationReport(tuple(self._items))


class LatticeError(ValueError):
    """Base class for every domain error raised by this package."""


class ArityMismatch(LatticeError):
    pass


class NoWitness(LatticeError):
    pass


class NoPath(LatticeError):
    pass


class NotSingleton(LatticeError):
    pass


class TooFewEvaluations(LatticeError):
    pass


class UnsupportedDims(LatticeError):
    pass


class AmbiguousValue(LatticeError):
    pass


class WrongDepth(LatticeError):
    pass


class BadKey(LatticeError):
    pass


class WrongArity(LatticeError):
    pass


class UniverseMismatch(LatticeError):
    pass


class NotASubset(LatticeError):
    pass


class NotTransitive(LatticeError):
    pass


class NonBinaryEdge(LatticeError):
    pass


class NonSingleton(LatticeError):
    pass


class Unmentioned(LatticeError):
    pass


class DisconnectedBase(LatticeError):
    pass


class EmptyAfterNormalization(LatticeError):
    pass


class KindMismatch(LatticeError):
    pass


class UnknownKind(LatticeError):
    pass


class CapExceeded(LatticeError):
    def __init__(self, predicted: int | str, cap: int):
        self.predicted = predicted
        self.cap = cap
        super().__init__(f"predicted {predicted} elements exceeds cap {cap}")


class WitnessFailure(LatticeError):
    def __init__(self, edge_id: str, report: ValidationReport):
        self.edge_id = edge_id
        self.report = report
        super().__init__(f"witness {edge_id} produced an invalid instance: {'; '.join(report.violations)}")


@dataclass(frozen=True)
class AttributeTree:
    """Rooted tree of attributes; `children` maps a node to its ordered sub-attributes."""

    root: Hashable
    children: Mapping[Hashable, tuple] = field(default_factory=dict)

    @classmethod
    def from_nested(cls, root: Hashable, nested: Mapping | Iterable | None = None) -> "AttributeTree":
        """Build from a nested dict such as {"A1": ["a", "b"], "A2": {"c": []}}."""
        children: dict = {}

        def walk(node, sub):
            if sub is None:
                kids = ()
            elif isinstance(sub, Mapping):
                kids = tuple(sub.keys())
                for k, v in sub.items():
                    walk(k, v)
            else:
                kids = tuple(sub)
                for k in kids:
                    walk(k, None)
            if kids:
                children[node] = kids

        walk(root, nested)
        return cls(root, children)

    def kids(self, node: Hashable) -> tuple:
        return tuple(self.children.get(node, ()))

    @property
    def nodes(self) -> tuple:
        out = [self.root]
        stack = [self.root]
        seen = {self.root}
        while stack:
            node = stack.pop()
            for k in self.kids(node):
                if k in seen:
                    continue
                seen.add(k)
                out.append(k)
                stack.append(k)
        return tuple(out)

    def levels(self) -> dict:
        """Level of every reachable node; the root sits at level 0."""
        level = {self.root: 0}
        frontier = [self.root]
        while frontier:
            nxt = []
            for node in frontier:
                for k in self.kids(node):
                    if k not in level:
                        level[k] = level[node] + 1
                        nxt.append(k)
            frontier = nxt
        return level

    @property
    def depth(self) -> int:
        return max(self.levels().values())

    def at_level(self, k: int) -> tuple:
        return tuple(n for n, lv in self.levels().items() if lv == k)

    def validate(self) -> ValidationReport:
        c = Collector()
        parents: dict = {}
        for parent, kids in self.children.items():
            for k in kids:
                if k == self.root:
                    c.add(f"root {self.root!r} listed as a child of {parent!r}")
                if k in parents and parents[k] != parent:
                    c.add(f"node {k!r} has two parents")
                parents[k] = parent
            if len(set(kids)) != len(kids):
                c.add(f"duplicate children under {parent!r}")
        reachable = set(self.levels())
        for parent in self.children:
            if parent not in reachable:
                c.add(f"node {parent!r} is not reachable from the root")
        # A cycle among non-root nodes leaves them unreachable, caught above.
        return c.report()
