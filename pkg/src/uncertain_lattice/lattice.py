"""Registry of structure kinds and generalization edges, with embed-then-revalidate checks.

Every edge carries a witness: a module operation (plus fixed parameters)
that maps a valid instance of the special kind to a valid instance of the
general kind. `verify_lattice` samples instances and checks that claim.
Reduction edges run the other way and back the CLI `convert` command.
"""

from __future__ import annotations

import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Any, Callable, Iterable, Mapping

from . import graphs as gr
from . import hyperlift as hl
from . import plithogenic as pl
from . import rough as ro
from . import sampling as sm
from . import soft as so
from ._common import (
    Collector,
    KindMismatch,
    LatticeError,
    NoPath,
    UnknownKind,
    UnsupportedDims,
    ValidationReport,
    WitnessFailure,
)
from .grades import (
    GradedSet,
    GradeRange,
    Kind,
    Regime,
    embed_grade,
    map_grades,
    reduce_grade,
    validate_graded_set,
)

# ---------------------------------------------------------------- kinds


@dataclass(frozen=True)
class KindSpec:
    name: str
    family: str
    matches: Callable[[Any], bool]  # structural shape test, no validity
    check: Callable[[Any], ValidationReport]
    sample: Callable[[random.Random], Any] | None = None
    specific: bool = False  # preferred by `kind_of` when several kinds match

    def validate(self, x) -> ValidationReport:
        if not self.matches(x):
            return ValidationReport((f"instance does not have the shape of {self.name}",))
        return self.check(x)


@dataclass(frozen=True)
class LatticeEdge:
    special: str
    general: str
    witness: str
    theorem: str
    fn: Callable[..., Any] = field(compare=False, repr=False)
    params: tuple[str, ...] = ()  # keyword options the witness accepts, e.g. ("mode",)

    @property
    def id(self) -> str:
        return f"{self.special}->{self.general}"


@dataclass(frozen=True)
class KindRegistry:
    kinds: dict[str, KindSpec]
    edges: tuple[LatticeEdge, ...]
    reductions: tuple[LatticeEdge, ...] = ()

    def edge(self, edge_id: str) -> LatticeEdge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    def with_edge(self, edge: LatticeEdge) -> "KindRegistry":
        """Copy with `edge` replacing the edge of the same id (or added)."""
        kept = tuple(e for e in self.edges if e.id != edge.id)
        return replace(self, edges=kept + (edge,))

    def require(self, name: str) -> KindSpec:
        if name not in self.kinds:
            raise UnknownKind(f"unknown kind {name!r}")
        return self.kinds[name]


def validate_registry(reg: KindRegistry) -> ValidationReport:
    c = Collector()
    for e in reg.edges + reg.reductions:
        c.check(e.special in reg.kinds, f"edge {e.id}: {e.special} is not registered")
        c.check(e.general in reg.kinds, f"edge {e.id}: {e.general} is not registered")
    ids = [e.id for e in reg.edges]
    c.check(len(ids) == len(set(ids)), "duplicate edge ids")
    c.check(topological_order(reg) is not None, "generalization edges contain a cycle")
    return c.report()


def topological_order(reg: KindRegistry) -> list[str] | None:
    indeg = {k: 0 for k in reg.kinds}
    out: dict[str, list[str]] = {k: [] for k in reg.kinds}
    for e in reg.edges:
        out.setdefault(e.special, []).append(e.general)
        indeg[e.general] = indeg.get(e.general, 0) + 1
    queue = deque(sorted(k for k, d in indeg.items() if d == 0))
    order = []
    while queue:
        k = queue.popleft()
        order.append(k)
        for g in sorted(out.get(k, ())):
            indeg[g] -= 1
            if indeg[g] == 0:
                queue.append(g)
    return order if len(order) == len(indeg) else None


# ---------------------------------------------------------------- predicates


def _regime_of(ranges: Iterable[GradeRange]) -> Regime | None:
    regimes = {r.regime for r in ranges}
    return regimes.pop() if len(regimes) == 1 else None


def _set_ranges(s: GradedSet):
    return [r for g in s.grades.values() for r in g.ranges]


def _graph_ranges(g: gr.GradedGraph):
    return [r for gt in g.all_grades() for r in gt.ranges]


def _graded_set_spec(kind: Kind, regime: Regime) -> KindSpec:
    def shape(s):
        if not isinstance(s, GradedSet) or any(g.kind is not kind for g in s.grades.values()):
            return False
        if regime is Regime.STANDARD:
            return True
        return bool(s.grades) and _regime_of(_set_ranges(s)) is regime

    name = kind.value if regime is Regime.STANDARD else f"{kind.value}{regime.value}Set"
    return KindSpec(
        name,
        "set",
        shape,
        validate_graded_set,
        lambda rng: sm.sample_graded_set(kind, regime, rng),
        specific=regime is not Regime.STANDARD,
    )


def _graded_graph_spec(kind: Kind, regime: Regime) -> KindSpec:
    def shape(g):
        if not isinstance(g, gr.GradedGraph) or g.kind is not kind:
            return False
        if regime is Regime.STANDARD:
            return True
        ranges = _graph_ranges(g)
        return bool(ranges) and _regime_of(ranges) is regime

    name = f"{kind.value}Graph" if regime is Regime.STANDARD else f"{kind.value}{regime.value}Graph"
    return KindSpec(
        name,
        "graph",
        shape,
        gr.validate_graded_graph,
        lambda rng: sm.sample_graded_graph(kind, regime, rng),
        specific=regime is not Regime.STANDARD,
    )


def _graded_hypergraph_spec(regime: Regime) -> KindSpec:
    def shape(h):
        if not isinstance(h, gr.GradedHypergraph) or h.kind is not Kind.NEUTROSOPHIC:
            return False
        if regime is Regime.STANDARD:
            return True
        ranges = [r for g in list(h.vertex_grades.values()) + list(h.edge_grades.values()) for r in g.ranges]
        return bool(ranges) and _regime_of(ranges) is regime

    name = "NeutrosophicHypergraph" if regime is Regime.STANDARD else f"Neutrosophic{regime.value}Hypergraph"
    return KindSpec(name, "graph", shape, gr.validate_graded_hypergraph, specific=regime is not Regime.STANDARD)


def _hyper_spec(kind: hl.HyperKind, sample: bool) -> KindSpec:
    def shape(h):
        return isinstance(h, hl.HyperGradedSet) and h.kind is kind

    name = hl.HyperGradedSet(kind, (), {}).kind_name
    return KindSpec(name, "hyper", shape, hl.validate_hyper, (lambda rng: sm.sample_hyper(kind, rng)) if sample else None)


def _superhyper_spec(kind: hl.HyperKind) -> KindSpec:
    def shape(h):
        return isinstance(h, hl.SuperHyperGradedSet) and h.kind is kind

    return KindSpec("SuperHyper" + kind.value, "hyper", shape, hl.validate_hyper)


def _isa(cls, pred=lambda x: True):
    return lambda x: isinstance(x, cls) and pred(x)


def _build_kinds() -> dict[str, KindSpec]:
    specs: list[KindSpec] = []
    for k in (Kind.CRISP, Kind.FUZZY, Kind.VAGUE, Kind.INTUITIONISTIC, Kind.NEUTROSOPHIC, Kind.QUAD, Kind.PENTA,
              Kind.HEPTA, Kind.DOUBLE_VALUED, Kind.HYPERBINARY, Kind.HYPERBINARY_NEUTROSOPHIC):
        specs.append(_graded_set_spec(k, Regime.STANDARD))
    for k in (Kind.FUZZY, Kind.VAGUE, Kind.NEUTROSOPHIC):
        for rg in (Regime.OVER, Regime.UNDER, Regime.OFF):
            specs.append(_graded_set_spec(k, rg))

    specs += [
        KindSpec("Plithogenic", "set", _isa(pl.PlithogenicSet), pl.validate_plithogenic, sm.sample_plithogenic),
        KindSpec("MultiPlithogenic", "set", _isa(pl.MultiPlithogenicSet), pl.validate_multiplithogenic, sm.sample_multiplithogenic),
        KindSpec("TreePlithogenic", "set", _isa(pl.TreePlithogenicSet), pl.validate_treeplithogenic),
    ]

    for hk in (hl.HyperKind.CRISP, hl.HyperKind.FUZZY, hl.HyperKind.VAGUE, hl.HyperKind.NEUTROSOPHIC):
        specs.append(_hyper_spec(hk, True))
        specs.append(_superhyper_spec(hk))
    specs.append(_hyper_spec(hl.HyperKind.SUBSET_VALUED_NEUTROSOPHIC, False))
    specs.append(KindSpec("HyperPlithogenic", "hyper", _isa(hl.HyperPlithogenicSet), hl.validate_hyperplithogenic))
    specs.append(KindSpec("SuperHyperPlithogenic", "hyper", _isa(hl.SuperHyperPlithogenicSet), hl.validate_superhyperplithogenic))

    specs += [
        KindSpec("Soft", "soft", _isa(so.SoftSet), so.soft_validate, sm.sample_soft),
        KindSpec("MultiSoft", "soft", _isa(so.MultiSoftSet), so.multisoft_validate, sm.sample_multisoft),
        KindSpec("HyperSoft", "soft", _isa(so.HyperSoftSet), so.hypersoft_validate, sm.sample_hypersoft),
        KindSpec("SuperHyperSoft", "soft", _isa(so.SuperHyperSoftSet), so.superhypersoft_validate),
        KindSpec("SoftExpert", "soft", _isa(so.SoftExpertSet), so.soft_expert_validate),
        KindSpec("TreeSoft", "soft", _isa(so.TreeSoftSet), so.treesoft_validate),
    ]

    specs.append(KindSpec("CrispGraph", "graph", _isa(gr.CrispGraph), gr.validate_crisp_graph, sm.sample_crisp_graph))
    for k in (Kind.FUZZY, Kind.INTUITIONISTIC, Kind.NEUTROSOPHIC, Kind.QUAD, Kind.PENTA, Kind.HEPTA, Kind.DOUBLE_VALUED):
        specs.append(_graded_graph_spec(k, Regime.STANDARD))
    for k in (Kind.FUZZY, Kind.NEUTROSOPHIC):
        for rg in (Regime.OVER, Regime.UNDER, Regime.OFF):
            specs.append(_graded_graph_spec(k, rg))
    for rg in Regime:
        specs.append(_graded_hypergraph_spec(rg))

    specs += [
        KindSpec("PlithogenicGraph", "graph", _isa(gr.PlithogenicGraph, lambda g: not g.general),
                 gr.validate_plithogenic_graph, sm.sample_plithogenic_graph),
        KindSpec("GeneralPlithogenicGraph", "graph", _isa(gr.PlithogenicGraph, lambda g: g.general), gr.validate_plithogenic_graph),
        KindSpec("HyperFuzzyGraph", "graph", _isa(gr.SetValuedGraph, lambda g: g.variant is gr.SetVariant.HYPERFUZZY),
                 gr.validate_set_valued_graph, sm.sample_hyperfuzzy_graph),
        KindSpec("HesitantFuzzyGraph", "graph", _isa(gr.SetValuedGraph, lambda g: g.variant is gr.SetVariant.HESITANT),
                 gr.validate_set_valued_graph),
        KindSpec("Hypergraph", "graph", _isa(gr.Hypergraph), gr.validate_hypergraph, sm.sample_hypergraph),
        KindSpec("SuperHyperGraph", "graph", _isa(gr.SuperHyperGraph), gr.validate_superhypergraph),
        KindSpec("SoftGraph", "graph", _isa(gr.SoftGraph, lambda g: not g.multisoft), gr.soft_graph_validate,
                 lambda rng: sm.sample_soft_graph(rng)),
        KindSpec("MultiSoftGraph", "graph", _isa(gr.SoftGraph, lambda g: g.multisoft), gr.soft_graph_validate,
                 lambda rng: sm.sample_soft_graph(rng, multisoft=True)),
        KindSpec("NeutrosophicSoftGraph", "graph", _isa(gr.NeutroSoftGraph), gr.neutro_soft_graph_validate),
        KindSpec("HyperSoftGraph", "graph", _isa(gr.HyperSoftGraph), gr.hypersoft_graph_validate),
    ]
    for mk in gr.MultiKind:
        specs.append(
            KindSpec(f"{mk.value}Graph", "graph", _isa(gr.MultiGradedGraph, lambda g, mk=mk: g.kind is mk),
                     gr.validate_multigraded_graph, lambda rng, mk=mk: sm.sample_multigraph(mk, rng))
        )
    specs += [
        KindSpec("Partition", "rough", _isa(ro.Partition), ro.validate_partition),
        KindSpec("PartitionFamily", "rough", _isa(ro.PartitionFamily), ro.validate_partition_family),
    ]
    for (role, level), name in gr.ANNOTATED_KINDS.items():
        specs.append(
            KindSpec(name, "graph", _isa(gr.AnnotatedGraph, lambda g, r=role, lv=level: g.role is r and g.level == lv),
                     gr.validate_annotated, lambda rng, r=role, lv=level: sm.sample_annotated(r, lv, rng))
        )
    return {s.name: s for s in specs}


# ---------------------------------------------------------------- witnesses


def _embed_set(target: Kind):
    return lambda s: map_grades(s, lambda g: embed_grade(g, target))


def _reduce_set(target: Kind):
    return lambda s: map_grades(s, lambda g: reduce_grade(g, target))


def _widen_set(lo: float, hi: float):
    return lambda s: map_grades(s, lambda g: g.with_ranges(tuple(r.widen(lo, hi) for r in g.ranges)))


def _widen_graph(lo: float, hi: float):
    return lambda g: gr.map_graph(g, lambda gt: gt.with_ranges(tuple(r.widen(lo, hi) for r in gt.ranges)), g.kind)


def _wrap_set(hk: hl.HyperKind):
    def step(s: GradedSet) -> hl.HyperGradedSet:
        values = {x: (g.values[0] if len(g.values) == 1 else g.values) for x, g in s.grades.items()}
        return hl.wrap_singletons(hk, values)

    return step


def _plith_reduce(kind: Kind):
    def step(ps):
        return pl.reduce_plithogenic(ps, kind=kind)

    return step


def _hyperplith_reduce(hk: hl.HyperKind):
    def step(hp):
        out = hl.reduce_hyperplithogenic(hp)
        if out.kind is not hk:
            raise UnsupportedDims(f"s={hp.dims} reduces to {out.kind_name}, not Hyper{hk.value}")
        return out

    return step


def _graph_reduce(kind: Kind):
    return lambda pg: gr.plithogenic_graph_reduce(pg, kind=kind)


REGIME_WIDEN = {Regime.OVER: (0.0, 2.0), Regime.UNDER: (-1.0, 1.0)}

# Witness and theorem identifiers are descriptive slugs; the decisions ledger
# maps each slug to its source statement.
E = tuple  # (special, general, witness, theorem, fn)


def _set_edges() -> list[E]:
    K = Kind
    out: list[E] = []
    for a, b, thm in [
        (K.CRISP, K.FUZZY, "fuzzy-generalizes-crisp"),
        (K.FUZZY, K.VAGUE, "vague-generalizes-fuzzy"),
        (K.FUZZY, K.INTUITIONISTIC, "intuitionistic-generalizes-fuzzy"),
        (K.FUZZY, K.NEUTROSOPHIC, "neutrosophic-generalizes-fuzzy"),
        (K.VAGUE, K.NEUTROSOPHIC, "neutrosophic-generalizes-vague"),
        (K.INTUITIONISTIC, K.NEUTROSOPHIC, "neutrosophic-generalizes-intuitionistic"),
        (K.NEUTROSOPHIC, K.QUAD, "quadripartitioned-generalizes-neutrosophic"),
        (K.QUAD, K.PENTA, "pentapartitioned-generalizes-quadripartitioned"),
        (K.PENTA, K.HEPTA, "heptapartitioned-generalizes-pentapartitioned"),
        (K.FUZZY, K.HYPERBINARY, "hyperbinary-generalizes-fuzzy"),
        (K.HYPERBINARY, K.HYPERBINARY_NEUTROSOPHIC, "hyperbinary-neutrosophic-generalizes-hyperbinary"),
    ]:
        out.append((a.value, b.value, f"grades.embed_grade(target={b.value})", thm, _embed_set(b)))
    for k in (K.FUZZY, K.VAGUE, K.NEUTROSOPHIC):
        base = k.value
        slug = base.lower()
        for rg, (lo, hi) in REGIME_WIDEN.items():
            out.append((base, f"{base}{rg.value}Set", f"widen-ranges(lo={lo:g}, hi={hi:g})",
                        f"{slug}-{rg.value.lower()}set-contains-{slug}", _widen_set(lo, hi)))
        out.append((f"{base}OverSet", f"{base}OffSet", "widen-ranges(lo=-1, hi=2)",
                    f"{slug}-offset-generalizes-overset", _widen_set(-1.0, 2.0)))
        out.append((f"{base}UnderSet", f"{base}OffSet", "widen-ranges(lo=-1, hi=2)",
                    f"{slug}-offset-generalizes-underset", _widen_set(-1.0, 2.0)))
    for k in (K.FUZZY, K.VAGUE, K.NEUTROSOPHIC, K.QUAD, K.PENTA):
        out.append((k.value, "Plithogenic", "plithogenic.graded_to_plithogenic",
                    "plithogenic-reduces-to-graded", pl.graded_to_plithogenic))
    out.append(("Plithogenic", "MultiPlithogenic", "plithogenic.plithogenic_to_multi",
                "multiplithogenic-generalizes-plithogenic", pl.plithogenic_to_multi))
    out.append(("MultiPlithogenic", "TreePlithogenic", "plithogenic.multi_to_treeplithogenic",
                "treeplithogenic-depth-two-is-multiplithogenic", pl.multi_to_treeplithogenic))
    return out


def _hyper_edges() -> list[E]:
    H = hl.HyperKind
    out: list[E] = []
    for k, hk, thm in [
        (Kind.CRISP, H.CRISP, "hypercrisp-generalizes-crisp"),
        (Kind.FUZZY, H.FUZZY, "hyperfuzzy-generalizes-fuzzy"),
        (Kind.VAGUE, H.VAGUE, "hypervague-generalizes-vague"),
        (Kind.NEUTROSOPHIC, H.NEUTROSOPHIC, "hyperneutrosophic-generalizes-neutrosophic"),
    ]:
        out.append((k.value, "Hyper" + hk.value, f"hyperlift.wrap_singletons(kind={hk.value})", thm, _wrap_set(hk)))
        out.append(("Hyper" + hk.value, "SuperHyper" + hk.value, "hyperlift.lift_pointwise",
                    f"superhyper{hk.value.lower()}-generalizes-hyper{hk.value.lower()}", hl.lift_pointwise, ("cap",)))
    for a, b in [(H.CRISP, H.FUZZY), (H.FUZZY, H.VAGUE), (H.FUZZY, H.NEUTROSOPHIC), (H.VAGUE, H.NEUTROSOPHIC)]:
        out.append(("Hyper" + a.value, "Hyper" + b.value, f"hyperlift.convert_pointwise(target={b.value})",
                    f"hyper{b.value.lower()}-generalizes-hyper{a.value.lower()}",
                    lambda h, b=b: hl.convert_pointwise(h, b)))
    out.append(("HyperFuzzy", "SubsetValuedNeutrosophic", "hyperlift.hyperfuzzy_to_subset_valued",
                "subset-valued-neutrosophic-generalizes-hyperfuzzy", hl.hyperfuzzy_to_subset_valued))
    for hk in (H.FUZZY, H.VAGUE, H.NEUTROSOPHIC):
        out.append(("Hyper" + hk.value, "HyperPlithogenic", "hyperlift.hyper_to_hyperplithogenic",
                    "hyperplithogenic-reduces-to-hyper", hl.hyper_to_hyperplithogenic))
    out.append(("Plithogenic", "HyperPlithogenic", "hyperlift.plithogenic_to_hyperplithogenic",
                "hyperplithogenic-generalizes-plithogenic", hl.plithogenic_to_hyperplithogenic))
    return out


def _soft_edges() -> list[E]:
    return [
        ("Crisp", "Soft", "soft.crisp_to_soft", "soft-generalizes-crisp", so.crisp_to_soft),
        ("Soft", "HyperSoft", "soft.soft_as_hypersoft", "hypersoft-generalizes-soft", so.soft_as_hypersoft),
        ("Soft", "MultiSoft", "soft.soft_to_multisoft", "multisoft-generalizes-soft", so.soft_to_multisoft),
        ("Soft", "SoftExpert", "soft.soft_to_expert", "softexpert-generalizes-soft", so.soft_to_expert),
        ("HyperSoft", "SuperHyperSoft", "soft.superhypersoft_from_hypersoft",
         "superhypersoft-generalizes-hypersoft", so.superhypersoft_from_hypersoft),
        ("Soft", "TreeSoft", "soft.soft_to_treesoft", "treesoft-generalizes-soft", so.soft_to_treesoft),
        ("MultiSoft", "TreeSoft", "soft.multisoft_to_treesoft", "treesoft-depth-two-is-multisoft", so.multisoft_to_treesoft),
    ]


def _graph_edges() -> list[E]:
    K = Kind
    out: list[E] = [
        ("CrispGraph", "FuzzyGraph", "graphs.crisp_to_fuzzy_graph", "fuzzy-graph-generalizes-graph", gr.crisp_to_fuzzy_graph),
    ]
    for a, b, thm in [
        (K.FUZZY, K.INTUITIONISTIC, "intuitionistic-graph-generalizes-fuzzy-graph"),
        (K.FUZZY, K.NEUTROSOPHIC, "neutrosophic-graph-generalizes-fuzzy-graph"),
        (K.INTUITIONISTIC, K.NEUTROSOPHIC, "neutrosophic-graph-generalizes-intuitionistic-graph"),
        (K.PENTA, K.HEPTA, "heptapartitioned-graph-generalizes-pentapartitioned-graph"),
    ]:
        out.append((f"{a.value}Graph", f"{b.value}Graph", f"graphs.embed_graph(target={b.value})", thm,
                    lambda g, b=b: gr.embed_graph(g, b)))
    out.append(("FuzzyGraph", "PlithogenicGraph", "graphs.graded_graph_to_plithogenic(general=False)",
                "plithogenic-graph-generalizes-fuzzy-graph", lambda g: gr.graded_graph_to_plithogenic(g, general=False)))
    for k in (K.INTUITIONISTIC, K.NEUTROSOPHIC, K.QUAD, K.PENTA, K.HEPTA, K.DOUBLE_VALUED):
        out.append((f"{k.value}Graph", "GeneralPlithogenicGraph", "graphs.graded_graph_to_plithogenic(general=True)",
                    f"general-plithogenic-graph-generalizes-{k.value.lower()}-graph",
                    lambda g: gr.graded_graph_to_plithogenic(g, general=True)))
    out.append(("PlithogenicGraph", "GeneralPlithogenicGraph", "graphs.plithogenic_graph_as_general",
                "plithogenic-graph-is-general", gr.plithogenic_graph_as_general))
    for k in (K.FUZZY, K.NEUTROSOPHIC):
        base, slug = k.value, k.value.lower()
        for rg, (lo, hi) in REGIME_WIDEN.items():
            out.append((f"{base}Graph", f"{base}{rg.value}Graph", f"widen-ranges(lo={lo:g}, hi={hi:g})",
                        f"{slug}-{rg.value.lower()}graph-contains-{slug}-graph", _widen_graph(lo, hi)))
        out.append((f"{base}OverGraph", f"{base}OffGraph", "widen-ranges(lo=-1, hi=2)",
                    f"{slug}-offgraph-generalizes-overgraph", _widen_graph(-1.0, 2.0)))
        out.append((f"{base}UnderGraph", f"{base}OffGraph", "widen-ranges(lo=-1, hi=2)",
                    f"{slug}-offgraph-generalizes-undergraph", _widen_graph(-1.0, 2.0)))
    for rg in Regime:
        tag = "" if rg is Regime.STANDARD else rg.value
        out.append((f"Neutrosophic{tag}Graph", f"Neutrosophic{tag}Hypergraph", "graphs.graded_graph_to_hypergraph",
                    f"neutrosophic-{tag.lower() or 'standard'}-hypergraph-generalizes-graph", gr.graded_graph_to_hypergraph))
    out += [
        ("FuzzyGraph", "HyperFuzzyGraph", "graphs.fuzzy_graph_to_set_valued(variant=HyperFuzzy)",
         "hyperfuzzy-graph-generalizes-fuzzy-graph", gr.fuzzy_graph_to_set_valued),
        ("NeutrosophicGraph", "MultiNeutrosophicGraph", "graphs.graded_graph_to_multi",
         "multineutrosophic-graph-generalizes-neutrosophic-graph", gr.graded_graph_to_multi),
        ("QuadripartitionedGraph", "MultiQuadripartitionedGraph", "graphs.graded_graph_to_multi",
         "multiquadripartitioned-graph-generalizes-quadripartitioned-graph", gr.graded_graph_to_multi),
        ("PentapartitionedGraph", "MultiPentapartitionedGraph", "graphs.graded_graph_to_multi",
         "multipentapartitioned-graph-generalizes-pentapartitioned-graph", gr.graded_graph_to_multi),
        ("CrispGraph", "Hypergraph", "graphs.graph_to_hypergraph", "hypergraph-generalizes-graph", gr.graph_to_hypergraph),
        ("Hypergraph", "SuperHyperGraph", "graphs.hypergraph_to_superhypergraph",
         "superhypergraph-generalizes-hypergraph", gr.hypergraph_to_superhypergraph),
        ("SoftGraph", "NeutrosophicSoftGraph", "graphs.soft_graph_to_neutro",
         "neutrosophic-soft-graph-generalizes-soft-graph", gr.soft_graph_to_neutro),
        ("SoftGraph", "MultiSoftGraph", "graphs.soft_graph_to_multisoft",
         "multisoft-graph-generalizes-soft-graph", gr.soft_graph_to_multisoft),
        ("WeightedGraph", "HyperWeightedGraph", "graphs.annotated_lift", "hyperweighted-generalizes-weighted", gr.annotated_lift),
        ("HyperWeightedGraph", "SuperHyperWeightedGraph", "graphs.annotated_lift",
         "superhyperweighted-generalizes-hyperweighted", gr.annotated_lift),
        ("LabelingGraph", "HyperLabelingGraph", "graphs.annotated_lift", "hyperlabeling-generalizes-labeling", gr.annotated_lift),
        ("HyperLabelingGraph", "SuperHyperLabelingGraph", "graphs.annotated_lift",
         "superhyperlabeling-generalizes-hyperlabeling", gr.annotated_lift),
    ]
    return out


def _reduction_edges() -> list[E]:
    K, H = Kind, hl.HyperKind
    out: list[E] = []
    for a, b in [(K.QUAD, K.NEUTROSOPHIC), (K.PENTA, K.QUAD), (K.HEPTA, K.PENTA), (K.HYPERBINARY, K.FUZZY),
                 (K.HYPERBINARY_NEUTROSOPHIC, K.NEUTROSOPHIC)]:
        out.append((a.value, b.value, f"grades.reduce_grade(target={b.value})", "reduction", _reduce_set(b)))
    for k in (K.FUZZY, K.VAGUE, K.NEUTROSOPHIC, K.QUAD, K.PENTA):
        out.append(("Plithogenic", k.value, f"plithogenic.reduce_plithogenic(kind={k.value})", "reduction", _plith_reduce(k)))
    out.append(("Plithogenic", "IntuitionisticFuzzy", "plithogenic.reduce_plithogenic(kind=IntuitionisticFuzzy)",
                "reduction", _plith_reduce(K.INTUITIONISTIC)))
    out.append(("MultiPlithogenic", "Plithogenic", "plithogenic.aggregate_multiplithogenic", "reduction",
                pl.aggregate_multiplithogenic, ("agg", "combined")))
    out.append(("TreePlithogenic", "MultiPlithogenic", "plithogenic.reduce_treeplithogenic(target=MultiPlithogenic)",
                "reduction", lambda t: pl.reduce_treeplithogenic(t, "MultiPlithogenic")))
    out.append(("HyperNeutrosophic", "HyperFuzzy", "hyperlift.hyperneutro_to_hyperfuzzy", "reduction",
                hl.hyperneutro_to_hyperfuzzy))
    for hk in (H.CRISP, H.FUZZY, H.VAGUE, H.NEUTROSOPHIC):
        out.append(("SuperHyper" + hk.value, "Hyper" + hk.value, "hyperlift.restrict_to_singletons", "reduction",
                    hl.restrict_to_singletons))
    for hk in (H.FUZZY, H.VAGUE, H.NEUTROSOPHIC):
        out.append(("HyperPlithogenic", "Hyper" + hk.value, "hyperlift.reduce_hyperplithogenic", "reduction",
                    _hyperplith_reduce(hk)))
    out += [
        ("SuperHyperNeutrosophic", "SuperHyperVague", "hyperlift.superneutro_to_supervague", "reduction",
         hl.superneutro_to_supervague),
        ("SuperHyperVague", "SuperHyperFuzzy", "hyperlift.supervague_to_superfuzzy", "reduction",
         hl.supervague_to_superfuzzy),
        ("SubsetValuedNeutrosophic", "HyperFuzzy", "hyperlift.subset_valued_as_fuzzy", "reduction",
         hl.subset_valued_as_fuzzy),
        ("SuperHyperPlithogenic", "SuperHyperFuzzy", "hyperlift.reduce_superhyperplithogenic", "reduction",
         hl.reduce_superhyperplithogenic),
        ("HyperSoft", "Soft", "soft.hypersoft_as_soft", "reduction", so.hypersoft_as_soft),
        ("SuperHyperSoft", "HyperSoft", "soft.superhypersoft_to_hypersoft", "reduction", so.superhypersoft_to_hypersoft),
        ("SoftExpert", "Soft", "soft.expert_as_soft", "reduction", so.expert_as_soft),
        ("TreeSoft", "MultiSoft", "soft.treesoft_to_multisoft", "reduction", so.treesoft_to_multisoft),
        ("TreeSoft", "Soft", "soft.treesoft_as_soft", "reduction", so.treesoft_as_soft),
        ("QuadripartitionedGraph", "NeutrosophicGraph", "graphs.reduce_graph(target=Neutrosophic)", "reduction",
         lambda g: gr.reduce_graph(g, K.NEUTROSOPHIC)),
        ("PentapartitionedGraph", "QuadripartitionedGraph", "graphs.reduce_graph(target=Quadripartitioned)",
         "reduction", lambda g: gr.reduce_graph(g, K.QUAD)),
        ("HeptapartitionedGraph", "PentapartitionedGraph", "graphs.reduce_graph(target=Pentapartitioned)",
         "reduction", lambda g: gr.reduce_graph(g, K.PENTA)),
        ("MultiPentapartitionedGraph", "MultiQuadripartitionedGraph", "graphs.collapse_multigraph(mode=Merge)",
         "reduction", lambda g: gr.collapse_multigraph(g, "Merge")),
        ("Hypergraph", "CrispGraph", "graphs.hypergraph_to_graph", "reduction", gr.hypergraph_to_graph),
        ("SuperHyperGraph", "Hypergraph", "graphs.superhypergraph_to_hypergraph", "reduction",
         gr.superhypergraph_to_hypergraph),
        ("MultiSoftGraph", "SoftGraph", "graphs.multisoft_graph_to_soft", "reduction", gr.multisoft_graph_to_soft),
        ("NeutrosophicSoftGraph", "NeutrosophicGraph", "graphs.neutro_soft_graph_aggregate", "reduction",
         gr.neutro_soft_graph_aggregate),
        ("NeutrosophicSoftGraph", "SoftGraph", "graphs.neutro_soft_strip", "reduction", gr.neutro_soft_strip),
        ("HyperSoftGraph", "NeutrosophicSoftGraph", "graphs.hypersoft_graph_to_neutro_soft", "reduction",
         gr.hypersoft_graph_to_neutro_soft),
    ]
    for rg in Regime:
        tag = "" if rg is Regime.STANDARD else rg.value
        out.append((f"Neutrosophic{tag}Hypergraph", f"Neutrosophic{tag}Graph", "graphs.graded_hypergraph_to_graph",
                    "reduction", gr.graded_hypergraph_to_graph))
    for mk, k in [(gr.MultiKind.NEUTROSOPHIC, K.NEUTROSOPHIC), (gr.MultiKind.QUAD, K.QUAD), (gr.MultiKind.PENTA, K.PENTA)]:
        out.append((f"{mk.value}Graph", f"{k.value}Graph", "graphs.collapse_multigraph(mode=SingletonOnly)", "reduction",
                    gr.collapse_multigraph, ("mode",)))
    for k in (K.FUZZY, K.INTUITIONISTIC, K.NEUTROSOPHIC, K.QUAD, K.PENTA, K.HEPTA, K.DOUBLE_VALUED):
        out.append(("GeneralPlithogenicGraph", f"{k.value}Graph", f"graphs.plithogenic_graph_reduce(kind={k.value})",
                    "reduction", _graph_reduce(k)))
    out.append(("PlithogenicGraph", "FuzzyGraph", "graphs.plithogenic_graph_reduce(kind=Fuzzy)", "reduction",
                _graph_reduce(K.FUZZY)))
    for a, b in [("HyperWeightedGraph", "WeightedGraph"), ("SuperHyperWeightedGraph", "HyperWeightedGraph"),
                 ("HyperLabelingGraph", "LabelingGraph"), ("SuperHyperLabelingGraph", "HyperLabelingGraph")]:
        out.append((a, b, "graphs.annotated_reduce", "reduction", gr.annotated_reduce))
    return out


@lru_cache(maxsize=1)
def default_registry() -> KindRegistry:
    kinds = _build_kinds()
    edges = tuple(LatticeEdge(*e) for e in _set_edges() + _hyper_edges() + _soft_edges() + _graph_edges())
    reductions = tuple(LatticeEdge(*e) for e in _reduction_edges())
    return KindRegistry(kinds, edges, reductions)


def _reg(registry: KindRegistry | None) -> KindRegistry:
    return default_registry() if registry is None else registry


# ---------------------------------------------------------------- queries


def kind_of(x, registry: KindRegistry | None = None) -> str:
    """The registered kind whose shape `x` has; regime-specific kinds win over their base."""
    reg = _reg(registry)
    hits = [s for s in reg.kinds.values() if s.matches(x)]
    specific = [s for s in hits if s.specific]
    pick = specific or hits
    if len(pick) != 1:
        raise UnknownKind(f"cannot classify instance of {type(x).__name__} ({[s.name for s in hits]})")
    return pick[0].name


def _shortest(edges: Iterable[LatticeEdge], source: str, target: str) -> list[LatticeEdge] | None:
    """Shortest edge path; ties go to the lexicographically smallest sequence of edge ids."""
    edges = list(edges)
    back: dict[str, list[LatticeEdge]] = {}
    for e in edges:
        back.setdefault(e.general, []).append(e)
    dist = {target: 0}
    queue = deque([target])
    while queue:
        k = queue.popleft()
        for e in back.get(k, ()):
            if e.special not in dist:
                dist[e.special] = dist[k] + 1
                queue.append(e.special)
    if source not in dist:
        return None
    fwd: dict[str, list[LatticeEdge]] = {}
    for e in edges:
        fwd.setdefault(e.special, []).append(e)
    path, here = [], source
    while here != target:
        step = min((e for e in fwd.get(here, ()) if dist.get(e.general) == dist[here] - 1), key=lambda e: e.id)
        path.append(step)
        here = step.general
    return path


def is_generalization(special: str, general: str, registry: KindRegistry | None = None) -> bool:
    reg = _reg(registry)
    reg.require(special)
    reg.require(general)
    return _shortest(reg.edges, special, general) is not None


def embedding_path(special: str, general: str, registry: KindRegistry | None = None) -> list[LatticeEdge]:
    reg = _reg(registry)
    reg.require(special)
    reg.require(general)
    path = _shortest(reg.edges, special, general)
    if path is None:
        raise NoPath(f"{general} is not a registered generalization of {special}")
    return path


class UnknownParameter(LatticeError):
    """A conversion parameter that no step on the chosen path accepts."""


def _run(path: list[LatticeEdge], x, reg: KindRegistry, params: Mapping[str, Any] | None = None, wrap: bool = True):
    params = dict(params or {})
    used: set = set()
    for e in path:
        kw = {k: params[k] for k in e.params if k in params}
        used |= set(kw)
        try:
            x = e.fn(x, **kw)
        except LatticeError as err:
            if wrap:
                raise WitnessFailure(e.id, ValidationReport((f"witness raised {type(err).__name__}: {err}",))) from err
            raise
        except Exception as err:  # a crashing witness is a failure of that edge
            raise WitnessFailure(e.id, ValidationReport((f"witness raised {type(err).__name__}: {err}",))) from err
        rep = reg.require(e.general).validate(x)
        if not rep.valid:
            raise WitnessFailure(e.id, rep)
    unused = set(params) - used
    if unused:
        raise UnknownParameter(f"no step on the path accepts {sorted(unused)}")
    return x


def _require_valid(x, source: str, reg: KindRegistry) -> None:
    rep = reg.require(source).validate(x)
    if not rep.valid:
        raise KindMismatch(f"input is not a valid {source}: {'; '.join(rep.violations)}")


def embed(x, target: str, source: str | None = None, registry: KindRegistry | None = None, params=None):
    """Compose witnesses along the shortest path, revalidating after every step."""
    reg = _reg(registry)
    source = source or kind_of(x, reg)
    _require_valid(x, source, reg)
    return _run(embedding_path(source, target, reg), x, reg, params)


def convert(x, target: str, source: str | None = None, registry: KindRegistry | None = None, params=None):
    """Embed when `target` generalizes the source, otherwise follow registered reductions.

    Reduction steps may legitimately refuse an instance (UnsupportedDims,
    NonSingleton, ...); those errors propagate unchanged.
    """
    reg = _reg(registry)
    source = source or kind_of(x, reg)
    reg.require(target)
    if is_generalization(source, target, reg):
        return embed(x, target, source, reg, params)
    path = _shortest(reg.reductions, source, target)
    if path is None:
        raise NoPath(f"no registered conversion {source} -> {target}")
    _require_valid(x, source, reg)
    return _run(path, x, reg, params, wrap=False)


def reachable(source: str, registry: KindRegistry | None = None) -> list[str]:
    reg = _reg(registry)
    reg.require(source)
    return sorted(k for k in reg.kinds if k != source and _shortest(reg.edges, source, k) is not None)


# ---------------------------------------------------------------- verification

PASS = "embedded-and-valid"
EMBED_FAILED = "embed-failed"
VALIDATION_FAILED = "validation-failed"


@dataclass(frozen=True)
class Failure:
    edge_id: str
    verdict: str
    instance: Any
    message: str


@dataclass(frozen=True)
class EdgeResult:
    edge_id: str
    tested: int
    passed: int
    counterexample: Failure | None = None


@dataclass(frozen=True)
class LatticeReport:
    samples: int
    seed: int
    results: tuple[EdgeResult, ...]
    untested: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(r.passed == r.tested for r in self.results)

    @property
    def failures(self) -> list[Failure]:
        return [r.counterexample for r in self.results if r.counterexample is not None]

    def summary(self) -> str:
        lines = [f"edges={len(self.results)} samples={self.samples} seed={self.seed} ok={self.ok}"]
        for r in self.results:
            status = "ok" if r.passed == r.tested else "FAIL"
            lines.append(f"{status} {r.edge_id} {r.passed}/{r.tested}")
            if r.counterexample:
                lines.append(f"  {r.counterexample.verdict}: {r.counterexample.message}")
        return "\n".join(lines)


def _size(x) -> int:
    return len(repr(x))


def check_edge(edge: LatticeEdge, x, reg: KindRegistry) -> Failure | None:
    try:
        y = edge.fn(x)
    except Exception as err:  # any witness crash is a verdict, not an abort
        return Failure(edge.id, EMBED_FAILED, x, f"{type(err).__name__}: {err}")
    rep = reg.require(edge.general).validate(y)
    if not rep.valid:
        return Failure(edge.id, VALIDATION_FAILED, x, "; ".join(rep.violations[:3]))
    return None


def _verify_edge(edge: LatticeEdge, samples: int, seed: int, reg: KindRegistry) -> EdgeResult:
    spec = reg.require(edge.special)
    rng = random.Random(f"{seed}:{edge.id}")
    passed, worst = 0, None
    for _ in range(samples):
        x = spec.sample(rng)
        pre = spec.validate(x)
        if not pre.valid:
            fail = Failure(edge.id, VALIDATION_FAILED, x, "generator produced an invalid instance: " + pre.violations[0])
        else:
            fail = check_edge(edge, x, reg)
        if fail is None:
            passed += 1
        elif worst is None or _size(fail.instance) < _size(worst.instance):
            worst = fail
    return EdgeResult(edge.id, samples, passed, worst)


def verify_lattice(
    samples: int = 200, seed: int = 0, registry: KindRegistry | None = None, workers: int = 1
) -> LatticeReport:
    """Sample valid special-kind instances per edge, embed, revalidate.

    Each edge draws from its own generator seeded by (seed, edge id), so the
    report is reproducible and independent of scheduling. The smallest
    failing instance is kept as the counterexample. Edges without a sampler
    are listed as untested.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    reg = _reg(registry)
    edges = sorted(reg.edges, key=lambda e: e.id)
    tested = [e for e in edges if reg.require(e.special).sample is not None]
    untested = tuple(e.id for e in edges if reg.require(e.special).sample is None)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda e: _verify_edge(e, samples, seed, reg), tested))
    else:
        results = [_verify_edge(e, samples, seed, reg) for e in tested]
    return LatticeReport(samples, seed, tuple(results), untested)


def export_edge_list(registry: KindRegistry | None = None) -> str:
    reg = _reg(registry)
    lines = [f"{e.special} -> {e.general} : {e.theorem}" for e in sorted(reg.edges, key=lambda e: e.id)]
    return "\n".join(lines) + "\n"


def hierarchy_check(x, source: str | None = None, registry: KindRegistry | None = None) -> dict[str, str]:
    """Embed one instance into every reachable kind; map kind -> "ok" or the failure text."""
    reg = _reg(registry)
    source = source or kind_of(x, reg)
    out = {}
    for k in reachable(source, reg):
        try:
            embed(x, k, source, reg)
            out[k] = "ok"
        except (WitnessFailure, KindMismatch) as err:
            out[k] = str(err)
    return out
