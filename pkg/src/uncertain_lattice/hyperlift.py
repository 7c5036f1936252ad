"""Iterated powersets and the hyper / superhyper graded set variants."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from ._common import (
    BadKey,
    CapExceeded,
    Collector,
    EmptyAfterNormalization,
    KindMismatch,
    UnsupportedDims,
    ValidationReport,
    epsilon,
    sorted_items,
)
from .grades import STANDARD, GradeRange, Kind, grade, validate_grade
from .plithogenic import AttributeSpec, DCFMatrix, PlithogenicSet, validate_dcf

DEFAULT_CAP = 65536

# ---------------------------------------------------------------- tower


def encode(x) -> str:
    """Canonical nested-set text: atoms as-is, sets as {...} with sorted members."""
    if isinstance(x, (frozenset, set)):
        return "{" + ",".join(sorted({encode(m) for m in x})) + "}"
    return str(x)


def decode(text: str):
    """Inverse of `encode`; atoms come back as strings."""
    pos = 0

    def parse():
        nonlocal pos
        if text[pos] == "{":
            pos += 1
            members = []
            if text[pos] == "}":
                pos += 1
                return frozenset()
            while True:
                members.append(parse())
                if text[pos] == ",":
                    pos += 1
                    continue
                if text[pos] == "}":
                    pos += 1
                    return frozenset(members)
                raise ValueError(f"unexpected {text[pos]!r} at {pos} in {text!r}")
        start = pos
        while pos < len(text) and text[pos] not in "{},":
            pos += 1
        if start == pos:
            raise ValueError(f"empty atom at {pos} in {text!r}")
        return text[start:pos]

    try:
        out = parse()
    except IndexError:
        raise ValueError(f"truncated set encoding {text!r}") from None
    if pos != len(text):
        raise ValueError(f"trailing text after position {pos} in {text!r}")
    return out


def _check_atom(a) -> None:
    s = str(a)
    if not s or any(ch in s for ch in "{},"):
        raise ValueError(f"atom {s!r} cannot be encoded canonically")


def tower_size(base_size: int, n: int) -> int | str:
    """|P*_n| for a base of the given size; symbolic (e.g. "2^256") once exponents pass 64 bits."""
    size: int | str = base_size
    for _ in range(n):
        if isinstance(size, str):
            size = f"2^({size})"
        elif size > 64:
            size = f"2^{size}"
        else:
            size = 2**size
    return size


@dataclass(frozen=True)
class PowerTower:
    base: tuple
    level: int
    elements: tuple


def iterated_powerset(base: Iterable[Hashable], n: int, cap: int = DEFAULT_CAP) -> PowerTower:
    if n < 0:
        raise ValueError("level must be >= 0")
    base = tuple(sorted({str(b) for b in base}))
    for a in base:
        _check_atom(a)
    predicted = tower_size(len(base), n)
    if isinstance(predicted, str) or predicted > cap:
        raise CapExceeded(predicted, cap)
    level: list = list(base)
    for _ in range(n):
        nxt = []
        for r in range(len(level) + 1):
            nxt.extend(frozenset(c) for c in combinations(level, r))
        level = nxt
    return PowerTower(base, n, tuple(sorted(level, key=encode)))


def is_tower_element(x, base: Iterable[Hashable], n: int) -> bool:
    atoms = {str(b) for b in base}
    if n == 0:
        return not isinstance(x, (frozenset, set)) and str(x) in atoms
    return isinstance(x, frozenset) and all(is_tower_element(m, atoms, n - 1) for m in x)


# ---------------------------------------------------------------- hyper sets


class HyperKind(str, Enum):
    CRISP = "Crisp"
    FUZZY = "Fuzzy"
    VAGUE = "Vague"
    NEUTROSOPHIC = "Neutrosophic"
    SUBSET_VALUED_NEUTROSOPHIC = "SubsetValuedNeutrosophic"


_SINGLE = {
    HyperKind.CRISP: Kind.CRISP,
    HyperKind.FUZZY: Kind.FUZZY,
    HyperKind.VAGUE: Kind.VAGUE,
    HyperKind.NEUTROSOPHIC: Kind.NEUTROSOPHIC,
}


def _as_tuple(v) -> tuple:
    return tuple(v) if isinstance(v, tuple) else (v,)


def _norm_grade(kind: HyperKind, v):
    if kind is HyperKind.SUBSET_VALUED_NEUTROSOPHIC:
        return tuple(frozenset(float(x) for x in part) for part in v)
    if kind in (HyperKind.CRISP, HyperKind.FUZZY):
        return float(v[0]) if isinstance(v, tuple) else float(v)
    return tuple(float(x) for x in v)


@dataclass(frozen=True)
class HyperGradedSet:
    """Each element carries a non-empty finite set of grades.

    For the subset-valued neutrosophic kind an element carries a triple
    (T-set, I-set, F-set) instead.
    """

    kind: HyperKind
    universe: tuple
    grades: Mapping[Hashable, frozenset | tuple]
    range: GradeRange = field(default=STANDARD)

    def __post_init__(self):
        kind = HyperKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "universe", tuple(self.universe))
        norm = {}
        for x, vs in self.grades.items():
            if kind is HyperKind.SUBSET_VALUED_NEUTROSOPHIC:
                norm[x] = _norm_grade(kind, vs)
            else:
                norm[x] = frozenset(_norm_grade(kind, v) for v in vs)
        object.__setattr__(self, "grades", norm)

    @property
    def kind_name(self) -> str:
        return "Hyper" + self.kind.value if self.kind is not HyperKind.SUBSET_VALUED_NEUTROSOPHIC else self.kind.value


@dataclass(frozen=True)
class SuperHyperGradedSet:
    """Grades keyed by non-empty level-n tower elements over the universe (sparse)."""

    kind: HyperKind
    universe: tuple
    level: int
    grades: Mapping[frozenset, frozenset]
    range: GradeRange = field(default=STANDARD)

    def __post_init__(self):
        kind = HyperKind(self.kind)
        if kind is HyperKind.SUBSET_VALUED_NEUTROSOPHIC:
            raise KindMismatch("no superhyper subset-valued kind")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(
            self, "grades", {k: frozenset(_norm_grade(kind, v) for v in vs) for k, vs in self.grades.items()}
        )

    @property
    def kind_name(self) -> str:
        return "SuperHyper" + self.kind.value


def _check_point(c: Collector, kind: HyperKind, rng: GradeRange, v, where: str) -> None:
    g = grade(_SINGLE[kind], *_as_tuple(v), ranges=rng)
    c.extend(validate_grade(g), prefix=where)


def _check_svn(c: Collector, rng: GradeRange, parts, where: str) -> None:
    eps = epsilon()
    if len(parts) != 3:
        c.add(f"{where}: expected three component sets, got {len(parts)}")
        return
    for name, part in zip("TIF", parts):
        if not part:
            c.add(f"{where}: {name} set is empty")
            return
        for v in part:
            c.check(rng.contains(v, eps), f"{where}: {name} value {v:g} outside [{rng.lo:g}, {rng.hi:g}]")
    infs = sum(min(p) for p in parts)
    sups = sum(max(p) for p in parts)
    bound = 3 * rng.hi
    c.check(3 * rng.lo - eps <= infs <= sups <= bound + eps, f"{where}: inf-sum {infs:g} / sup-sum {sups:g} outside [{3*rng.lo:g}, {bound:g}]")


def validate_hyper(h: HyperGradedSet | SuperHyperGradedSet, total: bool = False, cap: int = DEFAULT_CAP) -> ValidationReport:
    c = Collector()
    if isinstance(h, HyperGradedSet):
        seen = set()
        for x in h.universe:
            c.check(x in h.grades, f"element {x!r} has no grade set")
            seen.add(x)
        for x in sorted_items(h.grades):
            vs = h.grades[x]
            c.check(x in seen, f"grade set given for {x!r} outside the universe")
            if h.kind is HyperKind.SUBSET_VALUED_NEUTROSOPHIC:
                _check_svn(c, h.range, vs, str(x))
                continue
            if not vs:
                c.add(f"{x}: empty grade set")
            for v in sorted_items(vs):
                _check_point(c, h.kind, h.range, v, str(x))
        return c.report()

    c.check(h.level >= 1, f"superhyper level {h.level} < 1")
    for key in sorted_items(h.grades):
        where = encode(key)
        ok = is_tower_element(key, h.universe, h.level) and bool(key)
        c.check(ok, f"key {where} is not a non-empty level-{h.level} tower element")
        vs = h.grades[key]
        if not vs:
            c.add(f"{where}: empty grade set")
        for v in sorted_items(vs):
            _check_point(c, h.kind, h.range, v, where)
    if total:
        tower = iterated_powerset(h.universe, h.level, cap)
        for el in tower.elements:
            if el and el not in h.grades:
                c.add(f"key {encode(el)} missing under totality")
    return c.report()


def _require(h, kind: HyperKind) -> None:
    if h.kind is not kind:
        raise KindMismatch(f"expected {kind.value}, got {h.kind.value}")


def hyperneutro_to_hyperfuzzy(h: HyperGradedSet) -> HyperGradedSet:
    """Average truth with the complement of falsity, triple by triple."""
    _require(h, HyperKind.NEUTROSOPHIC)
    grades = {x: {(t + (1 - f)) / 2 for t, _, f in vs} for x, vs in h.grades.items()}
    return HyperGradedSet(HyperKind.FUZZY, h.universe, grades, h.range)


def wrap_singletons(kind: HyperKind, values: Mapping[Hashable, object], rng: GradeRange = STANDARD) -> HyperGradedSet:
    return HyperGradedSet(kind, tuple(values), {x: {v} for x, v in values.items()}, rng)


def unwrap_singletons(h: HyperGradedSet) -> dict:
    out = {}
    for x, vs in h.grades.items():
        if len(vs) != 1:
            raise KindMismatch(f"element {x!r} carries {len(vs)} grades")
        (out[x],) = tuple(vs)
    return out


@dataclass(frozen=True)
class HyperPlithogenicSet:
    """Plithogenic set whose appurtenance values are non-empty sets of s-vectors."""

    carrier: tuple
    attribute: AttributeSpec
    dims: int
    hdaf: Mapping[tuple, frozenset]
    dcf: DCFMatrix = field(default_factory=DCFMatrix)
    range: GradeRange = field(default=STANDARD)

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "hdaf", {k: frozenset(tuple(float(x) for x in v) for v in vs) for k, vs in self.hdaf.items()})


def validate_hyperplithogenic(hp: HyperPlithogenicSet) -> ValidationReport:
    eps = epsilon()
    c = Collector()
    for x in hp.carrier:
        for a in hp.attribute.values:
            key = (x, a)
            vs = hp.hdaf.get(key)
            if vs is None:
                c.add(f"HDAF missing for {key!r}")
                continue
            if not vs:
                c.add(f"HDAF {key!r} is empty")
            for vec in sorted_items(vs):
                c.check(len(vec) == hp.dims, f"HDAF {key!r} vector {vec} has {len(vec)} components")
                for v in vec:
                    c.check(hp.range.contains(v, eps), f"HDAF {key!r} value {v:g} out of range")
    for key in sorted_items(hp.hdaf):
        c.check(key[0] in hp.carrier and key[1] in hp.attribute.values, f"HDAF key {key!r} outside carrier x values")
    c.extend(validate_dcf(hp.dcf, hp.attribute.values))
    return c.report()


_BY_DIMS = {1: HyperKind.FUZZY, 2: HyperKind.VAGUE, 3: HyperKind.NEUTROSOPHIC}


def reduce_hyperplithogenic(hp: HyperPlithogenicSet) -> HyperGradedSet:
    """Union the appurtenance sets over every attribute value."""
    if hp.dcf.dims != 1 or hp.dims not in _BY_DIMS:
        raise UnsupportedDims(f"s={hp.dims}, t={hp.dcf.dims}; need s in 1..3 and t = 1")
    kind = _BY_DIMS[hp.dims]
    grades = {}
    for x in hp.carrier:
        acc = set()
        for a in hp.attribute.values:
            acc |= hp.hdaf.get((x, a), frozenset())
        grades[x] = {v[0] if hp.dims == 1 else v for v in acc}
    return HyperGradedSet(kind, hp.carrier, grades, hp.range)


def hyper_to_hyperplithogenic(h: HyperGradedSet, attribute: str = "v", value: Hashable = "v") -> HyperPlithogenicSet:
    dims = {HyperKind.CRISP: 1, HyperKind.FUZZY: 1, HyperKind.VAGUE: 2, HyperKind.NEUTROSOPHIC: 3}[h.kind]
    hdaf = {(x, value): {_as_tuple(v) for v in vs} for x, vs in h.grades.items()}
    return HyperPlithogenicSet(h.universe, AttributeSpec(attribute, (value,)), dims, hdaf, DCFMatrix(1), h.range)


def plithogenic_to_hyperplithogenic(ps: PlithogenicSet) -> HyperPlithogenicSet:
    """Wrap every appurtenance vector in a singleton set."""
    lo = min((r.lo for r in ps.daf.ranges), default=0.0)
    hi = max((r.hi for r in ps.daf.ranges), default=1.0)
    hdaf = {k: {v} for k, v in ps.daf.entries.items()}
    return HyperPlithogenicSet(ps.carrier, ps.attribute, ps.daf.dims, hdaf, ps.dcf, GradeRange(lo, hi))


def lift_pointwise(h: HyperGradedSet, cap: int = DEFAULT_CAP) -> SuperHyperGradedSet:
    """Key every non-empty subset A by the union of its members' grade sets."""
    if h.kind is HyperKind.SUBSET_VALUED_NEUTROSOPHIC:
        raise KindMismatch("subset-valued sets have no superhyper lift")
    n = len(h.universe)
    if 2**n > cap:
        raise CapExceeded(2**n, cap)
    grades = {}
    members = tuple(h.universe)
    for r in range(1, n + 1):
        for combo in combinations(members, r):
            acc = set()
            for x in combo:
                acc |= h.grades[x]
            grades[frozenset(str(x) for x in combo)] = acc
    return SuperHyperGradedSet(h.kind, tuple(str(x) for x in members), 1, grades, h.range)


def restrict_to_singletons(s: SuperHyperGradedSet) -> HyperGradedSet:
    if s.level != 1:
        raise KindMismatch(f"restriction needs level 1, got {s.level}")
    grades = {}
    for x in s.universe:
        key = frozenset([x])
        if key not in s.grades:
            raise BadKey(f"singleton {{{x}}} is not listed")
        grades[x] = s.grades[key]
    return HyperGradedSet(s.kind, s.universe, grades, s.range)


def superneutro_to_supervague(s: SuperHyperGradedSet) -> SuperHyperGradedSet:
    """Normalise (T, F) to sum 1, dropping triples with T + F = 0."""
    _require(s, HyperKind.NEUTROSOPHIC)
    eps = epsilon()
    grades = {}
    for key in sorted_items(s.grades):
        pairs = {(t / (t + f), f / (t + f)) for t, _, f in s.grades[key] if t + f > eps}
        if not pairs:
            raise EmptyAfterNormalization(f"key {encode(key)} has only T + F = 0 triples")
        grades[key] = pairs
    return SuperHyperGradedSet(HyperKind.VAGUE, s.universe, s.level, grades, STANDARD)


def supervague_to_superfuzzy(s: SuperHyperGradedSet) -> SuperHyperGradedSet:
    _require(s, HyperKind.VAGUE)
    return SuperHyperGradedSet(HyperKind.FUZZY, s.universe, s.level, {k: {t for t, _ in vs} for k, vs in s.grades.items()}, s.range)


# ---- pointwise kind changes shared by hyper and superhyper sets


def _fuzzy_to_vague(v):
    return (v, 1 - v)


def _fuzzy_to_neutro(v):
    return (v, 0.0, 1 - v)


def _vague_to_neutro(p):
    t, f = p
    return (t, 1 - t - f, f)


POINTWISE = {
    (HyperKind.CRISP, HyperKind.FUZZY): lambda v: v,
    (HyperKind.FUZZY, HyperKind.VAGUE): _fuzzy_to_vague,
    (HyperKind.FUZZY, HyperKind.NEUTROSOPHIC): _fuzzy_to_neutro,
    (HyperKind.VAGUE, HyperKind.NEUTROSOPHIC): _vague_to_neutro,
}


def convert_pointwise(h: HyperGradedSet | SuperHyperGradedSet, target: HyperKind | str):
    """Apply a single-grade embedding to every grade in every set."""
    target = HyperKind(target)
    fn = POINTWISE.get((h.kind, target))
    if fn is None:
        raise KindMismatch(f"no pointwise map {h.kind.value} -> {target.value}")
    if h.range != STANDARD:
        raise KindMismatch("pointwise kind change is defined on the standard range")
    grades = {k: {fn(v) for v in vs} for k, vs in h.grades.items()}
    if isinstance(h, HyperGradedSet):
        return HyperGradedSet(target, h.universe, grades, h.range)
    return SuperHyperGradedSet(target, h.universe, h.level, grades, h.range)


def hyperfuzzy_to_subset_valued(h: HyperGradedSet) -> HyperGradedSet:
    """T takes the membership set, I and F are fixed to {0}."""
    _require(h, HyperKind.FUZZY)
    grades = {x: (vs, frozenset([0.0]), frozenset([0.0])) for x, vs in h.grades.items()}
    return HyperGradedSet(HyperKind.SUBSET_VALUED_NEUTROSOPHIC, h.universe, grades, h.range)


def subset_valued_as_fuzzy(h: HyperGradedSet) -> HyperGradedSet:
    """Inverse of the embedding above; requires I and F to be {0} everywhere."""
    _require(h, HyperKind.SUBSET_VALUED_NEUTROSOPHIC)
    grades = {}
    for x, (ts, is_, fs) in h.grades.items():
        if is_ != frozenset([0.0]) or fs != frozenset([0.0]):
            raise KindMismatch(f"element {x!r} has non-zero indeterminacy or falsity")
        grades[x] = ts
    return HyperGradedSet(HyperKind.FUZZY, h.universe, grades, h.range)



@dataclass(frozen=True)
class SuperHyperPlithogenicSet:
    """HDAF keyed by (level-n tower element, attribute value); checked structurally only."""

    universe: tuple
    level: int
    attribute: AttributeSpec
    dims: int
    hdaf: Mapping[tuple, frozenset]
    dcf: DCFMatrix = field(default_factory=DCFMatrix)
    range: GradeRange = field(default=STANDARD)

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "hdaf", {k: frozenset(tuple(float(x) for x in v) for v in vs) for k, vs in self.hdaf.items()})


def validate_superhyperplithogenic(sp: SuperHyperPlithogenicSet) -> ValidationReport:
    eps = epsilon()
    c = Collector()
    c.check(sp.level >= 1, f"level {sp.level} < 1")
    for key in sorted(sp.hdaf, key=lambda k: (encode(k[0]), str(k[1]))):
        el, a = key
        where = f"({encode(el)}, {a})"
        c.check(bool(el) and is_tower_element(el, sp.universe, sp.level), f"{where}: not a non-empty level-{sp.level} tower element")
        c.check(a in sp.attribute.values, f"{where}: unknown attribute value")
        vs = sp.hdaf[key]
        if not vs:
            c.add(f"{where}: empty appurtenance set")
        for vec in sorted(vs):
            c.check(len(vec) == sp.dims, f"{where}: vector {vec} has {len(vec)} components")
            for v in vec:
                c.check(sp.range.contains(v, eps), f"{where}: value {v:g} out of range")
    c.extend(validate_dcf(sp.dcf, sp.attribute.values))
    return c.report()


def reduce_superhyperplithogenic(sp: SuperHyperPlithogenicSet) -> SuperHyperGradedSet:
    """Per listed key, union over attribute values (s in 1..3, t = 1)."""
    if sp.dcf.dims != 1 or sp.dims not in _BY_DIMS:
        raise UnsupportedDims(f"s={sp.dims}, t={sp.dcf.dims}; need s in 1..3 and t = 1")
    grades: dict = {}
    for (el, _), vs in sp.hdaf.items():
        grades.setdefault(el, set()).update(v[0] if sp.dims == 1 else v for v in vs)
    return SuperHyperGradedSet(_BY_DIMS[sp.dims], sp.universe, sp.level, grades, sp.range)
