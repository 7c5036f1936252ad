"""Membership grade tuples, admissible ranges, regimes, embeddings and reductions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from ._common import (
    ArityMismatch,
    Collector,
    KindMismatch,
    NoPath,
    NotSingleton,
    NoWitness,
    TooFewEvaluations,
    ValidationReport,
    epsilon,
    sorted_items,
)


class Kind(str, Enum):
    CRISP = "Crisp"
    FUZZY = "Fuzzy"
    VAGUE = "Vague"
    INTUITIONISTIC = "IntuitionisticFuzzy"
    NEUTROSOPHIC = "Neutrosophic"
    QUAD = "Quadripartitioned"
    PENTA = "Pentapartitioned"
    HEPTA = "Heptapartitioned"
    DOUBLE_VALUED = "DoubleValued"
    HYPERBINARY = "HyperBinary"
    HYPERBINARY_NEUTROSOPHIC = "HyperBinaryNeutrosophic"


COMPONENTS: dict[Kind, tuple[str, ...]] = {
    Kind.CRISP: ("mu",),
    Kind.FUZZY: ("mu",),
    Kind.VAGUE: ("t", "f"),
    Kind.INTUITIONISTIC: ("mu", "nu"),
    Kind.NEUTROSOPHIC: ("T", "I", "F"),
    Kind.QUAD: ("T", "C", "U", "F"),
    Kind.PENTA: ("T", "C", "R", "U", "F"),
    Kind.HEPTA: ("T", "M", "C", "U", "I", "K", "F"),
    Kind.DOUBLE_VALUED: ("T", "IT", "IF", "F"),
    Kind.HYPERBINARY: ("mu",),
    Kind.HYPERBINARY_NEUTROSOPHIC: ("T", "I", "F"),
}

# Kinds whose natural scale is doubled multiplicity rather than [0, 1].
DOUBLED = {Kind.HYPERBINARY, Kind.HYPERBINARY_NEUTROSOPHIC}


def arity(kind: Kind) -> int:
    return len(COMPONENTS[Kind(kind)])


class Regime(str, Enum):
    STANDARD = "Standard"
    OVER = "Over"
    UNDER = "Under"
    OFF = "Off"


@dataclass(frozen=True)
class GradeRange:
    """Admissible interval [lo, hi] for one component, with lo <= 0 <= 1 <= hi."""

    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        if not (self.lo <= 0.0 <= 1.0 <= self.hi):
            raise ValueError(f"range [{self.lo}, {self.hi}] must satisfy lo <= 0 <= 1 <= hi")

    @property
    def is_standard(self) -> bool:
        return self.lo == 0.0 and self.hi == 1.0

    @property
    def regime(self) -> Regime:
        if self.lo < 0 and self.hi > 1:
            return Regime.OFF
        if self.hi > 1:
            return Regime.OVER
        if self.lo < 0:
            return Regime.UNDER
        return Regime.STANDARD

    def contains(self, x: float, eps: float | None = None) -> bool:
        eps = epsilon() if eps is None else eps
        return self.lo - eps <= x <= self.hi + eps

    def widen(self, lo: float, hi: float) -> "GradeRange":
        return GradeRange(min(self.lo, lo), max(self.hi, hi))


STANDARD = GradeRange()
DOUBLED_RANGE = GradeRange(0.0, 2.0)


def default_range(kind: Kind) -> GradeRange:
    return DOUBLED_RANGE if Kind(kind) in DOUBLED else STANDARD


def _cover(lo: float, hi: float) -> GradeRange:
    """Smallest admissible range containing [lo, hi]."""
    return GradeRange(min(0.0, lo), max(1.0, hi))


@dataclass(frozen=True)
class GradeTuple:
    """A tagged tuple of membership components with one range per component."""

    kind: Kind
    values: tuple[float, ...]
    ranges: tuple[GradeRange, ...]

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "ranges", tuple(self.ranges))

    @property
    def names(self) -> tuple[str, ...]:
        return COMPONENTS[self.kind]

    @property
    def components(self) -> dict[str, float]:
        return dict(zip(self.names, self.values))

    def __getitem__(self, name: str) -> float:
        try:
            return self.values[self.names.index(name)]
        except ValueError:
            raise KeyError(name) from None

    @property
    def is_standard(self) -> bool:
        return all(r.is_standard for r in self.ranges)

    def with_ranges(self, ranges) -> "GradeTuple":
        return GradeTuple(self.kind, self.values, _broadcast(ranges, len(self.values)))


def _broadcast(ranges, n: int) -> tuple[GradeRange, ...]:
    if isinstance(ranges, GradeRange):
        return (ranges,) * n
    return tuple(ranges)


def grade(kind: Kind | str, *values: float, ranges=None) -> GradeTuple:
    """Convenience constructor; `ranges` may be one GradeRange or one per component."""
    kind = Kind(kind)
    if ranges is None:
        ranges = default_range(kind)
    return GradeTuple(kind, tuple(values), _broadcast(ranges, len(values)))


def _sum_bound(g: GradeTuple) -> tuple[float, float]:
    """Admissible interval for the component sum under the tuple's ranges."""
    los = sum(r.lo for r in g.ranges)
    his = sum(r.hi for r in g.ranges)
    if g.kind in (Kind.VAGUE, Kind.INTUITIONISTIC):
        # pair kinds: t + f <= 1 under the standard range, <= hi when extended
        his = max(r.hi for r in g.ranges)
    return los, his


def validate_grade(g: GradeTuple) -> ValidationReport:
    """List every violated invariant of a grade tuple (empty report = valid)."""
    n = arity(g.kind)
    if len(g.values) != n or len(g.ranges) != n:
        raise ArityMismatch(
            f"{g.kind.value} expects {n} components, got {len(g.values)} values and {len(g.ranges)} ranges"
        )
    eps = epsilon()
    c = Collector()
    for name, v, r in zip(g.names, g.values, g.ranges):
        c.check(v == v, f"{name} is not a number")
        c.check(r.contains(v, eps), f"{name}={v:g} outside [{r.lo:g}, {r.hi:g}]")
    if g.kind is Kind.CRISP:
        v, r = g.values[0], g.ranges[0]
        c.check(abs(v - r.lo) <= eps or abs(v - r.hi) <= eps, f"crisp value {v:g} not in {{{r.lo:g}, {r.hi:g}}}")
    if n > 1:
        lo, hi = _sum_bound(g)
        total = sum(g.values)
        c.check(lo - eps <= total <= hi + eps, f"component sum {total:g} outside [{lo:g}, {hi:g}]")
    return c.report()


def is_hyperbinary_multiplicity(g: GradeTuple) -> bool:
    """True when a hyperbinary grade uses only the discrete multiplicities 0, 1, 2."""
    eps = epsilon()
    return g.kind in DOUBLED and all(min(abs(v - m) for m in (0, 1, 2)) <= eps for v in g.values)


# ---------------------------------------------------------------- graded sets


@dataclass(frozen=True)
class GradedSet:
    """A universe with one grade tuple per element."""

    universe: tuple
    grades: Mapping[Hashable, GradeTuple]

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "grades", dict(self.grades))

    @property
    def kind(self) -> Kind | None:
        kinds = {g.kind for g in self.grades.values()}
        return kinds.pop() if len(kinds) == 1 else None

    @property
    def ranges(self) -> tuple[GradeRange, ...] | None:
        for g in self.grades.values():
            return g.ranges
        return None


def graded_set(kind: Kind | str, values: Mapping[Hashable, Sequence[float] | float], ranges=None) -> GradedSet:
    """Build a GradedSet from plain numbers, e.g. graded_set("Fuzzy", {"x": 0.2})."""
    grades = {}
    for x, v in values.items():
        vs = (v,) if isinstance(v, (int, float)) else tuple(v)
        grades[x] = grade(kind, *vs, ranges=ranges)
    return GradedSet(tuple(values), grades)


def validate_graded_set(s: GradedSet) -> ValidationReport:
    c = Collector()
    seen = set()
    for x in s.universe:
        c.check(x not in seen, f"element {x!r} listed twice")
        seen.add(x)
        c.check(x in s.grades, f"element {x!r} has no grade")
    for x in s.grades:
        c.check(x in seen, f"grade given for {x!r} outside the universe")
    kinds = {g.kind for g in s.grades.values()}
    c.check(len(kinds) <= 1, f"mixed kinds {sorted(k.value for k in kinds)}")
    rangesets = {g.ranges for g in s.grades.values()}
    c.check(len(rangesets) <= 1, "elements carry different ranges")
    for x in sorted_items(s.grades):
        c.extend(validate_grade(s.grades[x]), prefix=str(x))
    return c.report()


def _witnesses(g: GradeTuple, eps: float) -> tuple[bool, bool]:
    return any(v > 1 + eps for v in g.values), any(v < -eps for v in g.values)


def classify_regime(s: GradedSet) -> Regime:
    eps = epsilon()
    over = under = False
    for g in s.grades.values():
        o, u = _witnesses(g, eps)
        over |= o
        under |= u
    if over and under:
        return Regime.OFF
    if over:
        return Regime.OVER
    if under:
        return Regime.UNDER
    return Regime.STANDARD


def split_offset(s: GradedSet) -> tuple[GradedSet, GradedSet]:
    """Separate the elements above 1 from those below 0.

    An element with components on both sides lands in both halves. Each half
    keeps the overlimit (resp. underlimit) and drops the opposite extension
    unless one of its own members needs it.
    """
    eps = epsilon()
    over, under = [], []
    for x in s.universe:
        g = s.grades[x]
        o, u = _witnesses(g, eps)
        if o:
            over.append(x)
        if u:
            under.append(x)
    if not over and not under:
        raise NoWitness("no element has a component above 1 or below 0")

    def half(members: list, keep_lo: bool, keep_hi: bool) -> GradedSet:
        needs_lo = keep_lo or any(_witnesses(s.grades[x], eps)[1] for x in members)
        needs_hi = keep_hi or any(_witnesses(s.grades[x], eps)[0] for x in members)
        grades = {}
        for x in members:
            g = s.grades[x]
            rs = tuple(
                GradeRange(r.lo if needs_lo else 0.0, r.hi if needs_hi else max(1.0, _natural_hi(g.kind)))
                for r in g.ranges
            )
            grades[x] = GradeTuple(g.kind, g.values, rs)
        return GradedSet(tuple(members), grades)

    return half(over, keep_lo=False, keep_hi=True), half(under, keep_lo=True, keep_hi=False)


def _natural_hi(kind: Kind) -> float:
    return default_range(kind).hi


# ---------------------------------------------------------------- embeddings

Step = Callable[[GradeTuple], GradeTuple]


def _complement_range(r: GradeRange) -> GradeRange:
    # x in [lo, hi] implies 1 - x in [1 - hi, 1 - lo]
    return _cover(1 - r.hi, 1 - r.lo)


def _crisp_to_fuzzy(g: GradeTuple) -> GradeTuple:
    return GradeTuple(Kind.FUZZY, g.values, g.ranges)


def _fuzzy_to_pair(kind: Kind) -> Step:
    def step(g: GradeTuple) -> GradeTuple:
        (mu,), (r,) = g.values, g.ranges
        return GradeTuple(kind, (mu, 1 - mu), (r, _complement_range(r)))

    return step


def _fuzzy_to_neutro(g: GradeTuple) -> GradeTuple:
    (mu,), (r,) = g.values, g.ranges
    return GradeTuple(Kind.NEUTROSOPHIC, (mu, 0.0, 1 - mu), (r, STANDARD, _complement_range(r)))


def _pair_to_neutro(g: GradeTuple) -> GradeTuple:
    (t, f), (rt, rf) = g.values, g.ranges
    pair_hi = max(rt.hi, rf.hi)
    # the gap 1 - t - f spans [1 - pair_hi, 1 - lo_t - lo_f]
    ri = _cover(1 - pair_hi, 1 - rt.lo - rf.lo)
    return GradeTuple(Kind.NEUTROSOPHIC, (t, 1 - t - f, f), (rt, ri, rf))


def _neutro_to_quad(g: GradeTuple) -> GradeTuple:
    (t, i, f), (rt, ri, rf) = g.values, g.ranges
    return GradeTuple(Kind.QUAD, (t, 0.0, i, f), (rt, STANDARD, ri, rf))


def _quad_to_penta(g: GradeTuple) -> GradeTuple:
    (t, c, u, f), (rt, rc, ru, rf) = g.values, g.ranges
    return GradeTuple(Kind.PENTA, (t, c, 0.0, u, f), (rt, rc, STANDARD, ru, rf))


def _penta_to_hepta(g: GradeTuple) -> GradeTuple:
    (t, c, r, u, f), (rt, rc, rr, ru, rf) = g.values, g.ranges
    return GradeTuple(Kind.HEPTA, (t, 0.0, c, u, r, 0.0, f), (rt, STANDARD, rc, ru, rr, STANDARD, rf))


def _fuzzy_to_hyperbinary(g: GradeTuple) -> GradeTuple:
    (r,) = g.ranges
    return GradeTuple(Kind.HYPERBINARY, g.values, (r.widen(0.0, 2.0),))


def _hyperbinary_to_neutro(g: GradeTuple) -> GradeTuple:
    (r,) = g.ranges
    return GradeTuple(Kind.HYPERBINARY_NEUTROSOPHIC, (g.values[0], 0.0, 0.0), (r, r, r))


EMBEDDINGS: dict[tuple[Kind, Kind], Step] = {
    (Kind.CRISP, Kind.FUZZY): _crisp_to_fuzzy,
    (Kind.FUZZY, Kind.VAGUE): _fuzzy_to_pair(Kind.VAGUE),
    (Kind.FUZZY, Kind.INTUITIONISTIC): _fuzzy_to_pair(Kind.INTUITIONISTIC),
    (Kind.FUZZY, Kind.NEUTROSOPHIC): _fuzzy_to_neutro,
    (Kind.VAGUE, Kind.NEUTROSOPHIC): _pair_to_neutro,
    (Kind.INTUITIONISTIC, Kind.NEUTROSOPHIC): _pair_to_neutro,
    (Kind.NEUTROSOPHIC, Kind.QUAD): _neutro_to_quad,
    (Kind.QUAD, Kind.PENTA): _quad_to_penta,
    (Kind.PENTA, Kind.HEPTA): _penta_to_hepta,
    (Kind.FUZZY, Kind.HYPERBINARY): _fuzzy_to_hyperbinary,
    (Kind.HYPERBINARY, Kind.HYPERBINARY_NEUTROSOPHIC): _hyperbinary_to_neutro,
}


def _quad_to_neutro(g: GradeTuple) -> GradeTuple:
    (t, c, u, f), (rt, rc, ru, rf) = g.values, g.ranges
    rt2 = GradeRange((rt.lo + rc.lo) / 2, (rt.hi + rc.hi) / 2)
    return GradeTuple(Kind.NEUTROSOPHIC, ((t + c) / 2, u, f), (rt2, ru, rf))


def _penta_to_quad(g: GradeTuple) -> GradeTuple:
    (t, c, r, u, f), (rt, rc, rr, ru, rf) = g.values, g.ranges
    ru2 = GradeRange(ru.lo + rr.lo, ru.hi + rr.hi)
    return GradeTuple(Kind.QUAD, (t, c, u + r, f), (rt, rc, ru2, rf))


def _hepta_to_penta(g: GradeTuple) -> GradeTuple:
    (t, _, c, u, i, _, f), (rt, _, rc, ru, ri, _, rf) = g.values, g.ranges
    return GradeTuple(Kind.PENTA, (t, c, i, u, f), (rt, rc, ri, ru, rf))


def _halve(target: Kind) -> Step:
    def step(g: GradeTuple) -> GradeTuple:
        rs = tuple(_cover(r.lo / 2, r.hi / 2) for r in g.ranges)
        return GradeTuple(target, tuple(v / 2 for v in g.values), rs)

    return step


REDUCTIONS: dict[tuple[Kind, Kind], Step] = {
    (Kind.QUAD, Kind.NEUTROSOPHIC): _quad_to_neutro,
    (Kind.PENTA, Kind.QUAD): _penta_to_quad,
    (Kind.HEPTA, Kind.PENTA): _hepta_to_penta,
    (Kind.HYPERBINARY, Kind.FUZZY): _halve(Kind.FUZZY),
    (Kind.HYPERBINARY_NEUTROSOPHIC, Kind.NEUTROSOPHIC): _halve(Kind.NEUTROSOPHIC),
}


def shortest_path(
    edges: Iterable[tuple[Hashable, Hashable]], source: Hashable, target: Hashable, label=lambda e: str(e)
) -> list | None:
    """Breadth-first shortest path over directed edges, ties broken by edge label."""
    adj: dict = {}
    for e in sorted(edges, key=label):
        adj.setdefault(e[0], []).append(e)
    if source == target:
        return []
    prev: dict = {source: None}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        for e in adj.get(node, []):
            nxt = e[1]
            if nxt in prev:
                continue
            prev[nxt] = e
            if nxt == target:
                path = []
                while prev[nxt] is not None:
                    path.append(prev[nxt])
                    nxt = prev[nxt][0]
                return path[::-1]
            queue.append(nxt)
    return None


def _route(table: Mapping[tuple[Kind, Kind], Step], g: GradeTuple, target: Kind, what: str) -> GradeTuple:
    target = Kind(target)
    path = shortest_path(table, g.kind, target, label=lambda e: (e[0].value, e[1].value))
    if path is None:
        raise NoPath(f"no registered {what} from {g.kind.value} to {target.value}")
    for e in path:
        g = table[e](g)
    return g


def embed_grade(g: GradeTuple, target: Kind | str) -> GradeTuple:
    """Embed a grade into a more general kind by composing single steps."""
    return _route(EMBEDDINGS, g, target, "embedding")


def reduce_grade(g: GradeTuple, target: Kind | str) -> GradeTuple:
    """Apply registered reductions toward a less expressive kind."""
    return _route(REDUCTIONS, g, target, "reduction")


def map_grades(s: GradedSet, fn: Step) -> GradedSet:
    return GradedSet(s.universe, {x: fn(g) for x, g in s.grades.items()})


# ---------------------------------------------------------------- multi grades


@dataclass(frozen=True)
class MultiGrade:
    """Several truth, indeterminacy and falsity evaluations for one element."""

    truths: tuple[float, ...] = ()
    indeterminacies: tuple[float, ...] = ()
    falsities: tuple[float, ...] = ()
    range: GradeRange = field(default=STANDARD)

    def __post_init__(self):
        for name in ("truths", "indeterminacies", "falsities"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))

    @property
    def multiplicity(self) -> tuple[int, int, int]:
        return len(self.truths), len(self.indeterminacies), len(self.falsities)

    @property
    def n(self) -> int:
        return sum(self.multiplicity)

    def values(self) -> tuple[float, ...]:
        return self.truths + self.indeterminacies + self.falsities


def validate_multigrade(m: MultiGrade, proper: bool = False) -> ValidationReport:
    """Check ranges and the sum bound.

    With `proper`, also require n >= 2 and some component list of length >= 2.
    The sum bound is [0, n] under the standard range and [lo, hi] otherwise.
    """
    eps = epsilon()
    c = Collector()
    p, r, s = m.multiplicity
    if proper:
        c.check(m.n >= 2, f"total multiplicity {m.n} < 2")
        c.check(max(p, r, s) >= 2, "no component has multiplicity >= 2")
    for v in m.values():
        c.check(m.range.contains(v, eps), f"value {v:g} outside [{m.range.lo:g}, {m.range.hi:g}]")
    total = sum(m.values())
    lo, hi = (0.0, float(m.n)) if m.range.is_standard else (m.range.lo, m.range.hi)
    c.check(lo - eps <= total <= hi + eps, f"sum {total:g} outside [{lo:g}, {hi:g}]")
    return c.report()


class CollapseMode(str, Enum):
    SINGLETON_ONLY = "SingletonOnly"
    PARTNER = "Partner"
    MEAN = "Mean"
    MERGE = "Merge"


def collapse_multi(m: MultiGrade, mode: CollapseMode | str = CollapseMode.SINGLETON_ONLY):
    mode = CollapseMode(mode)
    if mode is CollapseMode.SINGLETON_ONLY:
        if m.multiplicity != (1, 1, 1):
            raise NotSingleton(f"multiplicities {m.multiplicity} are not all 1")
        return grade(Kind.NEUTROSOPHIC, m.truths[0], m.indeterminacies[0], m.falsities[0], ranges=m.range)
    if mode is CollapseMode.PARTNER:
        if m.n == 0:
            raise TooFewEvaluations("partner value of an empty multi-grade is undefined")
        return sum(m.values()) / m.n
    raise KindMismatch(f"mode {mode.value} does not apply to a single multi-grade")


@dataclass(frozen=True)
class MultiCrispGrade:
    evaluations: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "evaluations", tuple(self.evaluations))


def validate_multicrisp(m: MultiCrispGrade) -> ValidationReport:
    c = Collector()
    c.check(len(m.evaluations) >= 2, f"only {len(m.evaluations)} evaluations")
    for v in m.evaluations:
        c.check(v in (0, 1), f"evaluation {v!r} not in {{0, 1}}")
    return c.report()


def multicrisp_to_multineutro(m: MultiCrispGrade) -> MultiGrade:
    if len(m.evaluations) < 2:
        raise TooFewEvaluations(f"need at least 2 evaluations, got {len(m.evaluations)}")
    return MultiGrade(truths=tuple(float(v) for v in m.evaluations))
