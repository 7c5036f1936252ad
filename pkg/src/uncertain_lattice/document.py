"""JSON documents for every registered kind, with a canonical byte-stable emitter.

A document is ``{"kind": ..., "payload": ..., "meta": ...}``. Grade tuples are
objects keyed by component name, ranges are ``{"lo", "hi"}`` objects, tower
elements are nested-set strings such as ``"{a,{b}}"``, and sparse maps are
arrays of ``{"key", "value"}`` records sorted by key. Reals are written with
12 significant digits and object keys are sorted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Mapping

from . import graphs as gr
from . import hyperlift as hl
from . import plithogenic as pl
from . import rough as ro
from . import soft as so
from ._common import AttributeTree, canon_edge, sort_key, sorted_items
from .grades import COMPONENTS, GradedSet, GradeRange, GradeTuple, Kind, MultiGrade, Regime, default_range


class DocumentError(ValueError):
    """Malformed document: bad JSON, unknown kind, or a payload of the wrong shape."""


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Any
    meta: Mapping[str, Any] = field(default_factory=dict)


# ---------------------------------------------------------------- scalars


def _num(x):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        return x
    if isinstance(x, int):
        return x
    return float(f"{x:.12g}") + 0.0


def _real(j) -> float:
    if isinstance(j, bool) or not isinstance(j, (int, float)):
        raise DocumentError(f"expected a number, got {j!r}")
    return float(j)


def _el(x):
    """Plain element: JSON scalar, a list for tuples such as edges, {"set": [...]} for sets."""
    if isinstance(x, tuple):
        return [_el(m) for m in x]
    if isinstance(x, (frozenset, set)):
        return {"set": _elems(x)}
    return _num(x)


def element_json(x):
    """JSON form of a plain element, as used inside documents."""
    return _el(x)


def _unel(j):
    if isinstance(j, list):
        return tuple(_unel(m) for m in j)
    if isinstance(j, dict) and set(j) == {"set"} and isinstance(j["set"], list):
        return frozenset(_unel(m) for m in j["set"])
    if isinstance(j, dict) or j is None:
        raise DocumentError(f"bad element {j!r}")
    return j


def _elems(xs) -> list:
    return [_el(x) for x in sorted_items(xs)]


def _edge(j) -> tuple:
    if not isinstance(j, list) or len(j) != 2:
        raise DocumentError(f"edge must be a two-element list, got {j!r}")
    return canon_edge(_unel(j[0]), _unel(j[1]))


def _sparse(m: Mapping, key: Callable = _el, value: Callable = _el) -> list:
    return [{"key": key(k), "value": value(m[k])} for k in sorted_items(m)]


def _unsparse(j, key: Callable = _unel, value: Callable = _unel) -> dict:
    if not isinstance(j, list):
        raise DocumentError("sparse map must be an array of {key, value} records")
    out = {}
    for rec in j:
        if not isinstance(rec, dict) or set(rec) != {"key", "value"}:
            raise DocumentError(f"bad record {rec!r}")
        k = key(rec["key"])
        if k in out:
            raise DocumentError(f"duplicate key {rec['key']!r}")
        out[k] = value(rec["value"])
    return out


def _tower(x) -> str:
    return hl.encode(x)


def _untower(text, atoms: Mapping[str, Hashable] | None = None):
    if not isinstance(text, str):
        raise DocumentError(f"tower element must be a string, got {text!r}")
    try:
        raw = hl.decode(text)
    except ValueError as err:
        raise DocumentError(str(err)) from None

    def back(x):
        if isinstance(x, frozenset):
            return frozenset(back(m) for m in x)
        return atoms.get(x, x) if atoms else x

    return back(raw)


def _atoms(xs) -> dict:
    return {str(x): x for x in xs}


# ---------------------------------------------------------------- grades


def _rng(r: GradeRange) -> dict:
    return {"lo": _num(r.lo), "hi": _num(r.hi)}


def _unrng(j) -> GradeRange:
    if not isinstance(j, dict) or set(j) != {"lo", "hi"}:
        raise DocumentError(f"range must be {{lo, hi}}, got {j!r}")
    return GradeRange(_real(j["lo"]), _real(j["hi"]))


def _ranges_obj(kind: Kind, ranges) -> dict:
    return {c: _rng(r) for c, r in zip(COMPONENTS[kind], ranges)}


def _default_ranges(kind: Kind) -> tuple:
    return (default_range(kind),) * len(COMPONENTS[kind])


def _grade_values(g: GradeTuple) -> dict:
    return {c: _num(v) for c, v in zip(COMPONENTS[g.kind], g.values)}


def _grades_out(kind: Kind, items: Mapping, key: Callable = _el) -> tuple[list, dict | None]:
    """Records plus a shared ranges object when every grade uses the same non-default ranges."""
    shared = {g.ranges for g in items.values()}
    default = _default_ranges(kind)
    common = next(iter(shared)) if len(shared) == 1 and shared != {default} else None
    recs = []
    for k in sorted_items(items):
        g = items[k]
        val = _grade_values(g)
        if common is None and g.ranges != default:
            val["ranges"] = _ranges_obj(g.kind, g.ranges)
        recs.append({"key": key(k), "value": val})
    return recs, (_ranges_obj(kind, common) if common is not None else None)


def _grade_in(kind: Kind, j, shared: tuple | None) -> GradeTuple:
    if not isinstance(j, dict):
        raise DocumentError(f"grade must be an object keyed by component, got {j!r}")
    names = COMPONENTS[kind]
    body = {k: v for k, v in j.items() if k != "ranges"}
    if set(body) != set(names):
        raise DocumentError(f"{kind.value} grade needs components {list(names)}, got {sorted(body)}")
    ranges = shared or _default_ranges(kind)
    if "ranges" in j:
        ranges = _ranges_in(kind, j["ranges"])
    return GradeTuple(kind, tuple(_real(body[c]) for c in names), ranges)


def _ranges_in(kind: Kind, j) -> tuple:
    names = COMPONENTS[kind]
    if not isinstance(j, dict) or set(j) != set(names):
        raise DocumentError(f"ranges must be keyed by {list(names)}")
    return tuple(_unrng(j[c]) for c in names)


def _grades_field(out: dict, name: str, kind: Kind, items: Mapping, key: Callable = _el) -> None:
    recs, shared = _grades_out(kind, items, key)
    out[name] = recs
    if shared is not None:
        out[name + "_ranges"] = shared


def _grades_from(j: dict, name: str, kind: Kind, key: Callable = _unel) -> dict:
    shared = _ranges_in(kind, j[name + "_ranges"]) if name + "_ranges" in j else None
    return _unsparse(j[name], key, lambda v: _grade_in(kind, v, shared))


# ---------------------------------------------------------------- shared pieces


def _graph(g: gr.CrispGraph) -> dict:
    return {"vertices": _elems(g.vertices), "edges": [_el(e) for e in sorted_items(g.edges)]}


def _ungraph(j) -> gr.CrispGraph:
    return gr.CrispGraph([_unel(v) for v in j["vertices"]], [_edge(e) for e in j["edges"]])


def _attr(a: pl.AttributeSpec) -> dict:
    return {"name": _el(a.name), "values": [_el(v) for v in a.values]}


def _unattr(j) -> pl.AttributeSpec:
    return pl.AttributeSpec(_unel(j["name"]), tuple(_unel(v) for v in j["values"]))


def _vec(v) -> list:
    return [_num(x) for x in v]


def _unvec(j) -> tuple:
    if not isinstance(j, list):
        raise DocumentError(f"expected a number array, got {j!r}")
    return tuple(_real(x) for x in j)


def _daf(d: pl.DAFTable) -> dict:
    return {"dims": d.dims, "entries": _sparse(d.entries, value=_vec), "ranges": [_rng(r) for r in d.ranges]}


def _undaf(j) -> pl.DAFTable:
    return pl.DAFTable(j["dims"], _unsparse(j["entries"], value=_unvec), tuple(_unrng(r) for r in j["ranges"]))


def _dcf(d: pl.DCFMatrix) -> dict:
    return {"dims": d.dims, "entries": _sparse(d.entries, value=_vec)}


def _undcf(j) -> pl.DCFMatrix:
    return pl.DCFMatrix(j["dims"], _unsparse(j["entries"], value=_unvec))


def _tree(t: AttributeTree) -> dict:
    return {"root": _el(t.root), "children": _sparse(t.children, value=lambda kids: [_el(k) for k in kids])}


def _untree(j) -> AttributeTree:
    kids = _unsparse(j["children"], value=lambda ks: tuple(_unel(k) for k in ks))
    return AttributeTree(_unel(j["root"]), kids)


def _fset(xs) -> list:
    return _elems(xs)


def _unfset(j) -> frozenset:
    if not isinstance(j, list):
        raise DocumentError(f"expected an array, got {j!r}")
    return frozenset(_unel(x) for x in j)


# ---------------------------------------------------------------- codecs


@dataclass(frozen=True)
class Codec:
    emit: Callable[[Any], dict]
    parse: Callable[[dict], Any]


def _graded_set_codec(kind: Kind) -> Codec:
    def emit(s: GradedSet) -> dict:
        out = {"universe": [_el(x) for x in s.universe]}
        _grades_field(out, "grades", kind, s.grades)
        return out

    def parse(j) -> GradedSet:
        return GradedSet(tuple(_unel(x) for x in j["universe"]), _grades_from(j, "grades", kind))

    return Codec(emit, parse)


def _plith_emit(p: pl.PlithogenicSet) -> dict:
    return {"carrier": [_el(x) for x in p.carrier], "attribute": _attr(p.attribute), "daf": _daf(p.daf),
            "dcf": _dcf(p.dcf), "general": p.general}


def _plith_parse(j) -> pl.PlithogenicSet:
    return pl.PlithogenicSet(tuple(_unel(x) for x in j["carrier"]), _unattr(j["attribute"]), _undaf(j["daf"]),
                             _undcf(j["dcf"]), bool(j["general"]))


def _multiplith_emit(p: pl.MultiPlithogenicSet) -> dict:
    return {"carrier": [_el(x) for x in p.carrier], "attributes": [_attr(a) for a in p.attributes],
            "dafs": [_daf(d) for d in p.dafs], "dcf": _dcf(p.dcf)}


def _multiplith_parse(j) -> pl.MultiPlithogenicSet:
    return pl.MultiPlithogenicSet(tuple(_unel(x) for x in j["carrier"]), tuple(_unattr(a) for a in j["attributes"]),
                                  tuple(_undaf(d) for d in j["dafs"]), _undcf(j["dcf"]))


def _treeplith_emit(t: pl.TreePlithogenicSet) -> dict:
    return {"carrier": [_el(x) for x in t.carrier], "tree": _tree(t.tree),
            "values": _sparse(t.values, value=lambda vs: [_el(v) for v in vs]),
            "dafs": _sparse(t.dafs, value=_daf), "dcf": _dcf(t.dcf)}


def _treeplith_parse(j) -> pl.TreePlithogenicSet:
    return pl.TreePlithogenicSet(tuple(_unel(x) for x in j["carrier"]), _untree(j["tree"]),
                                 _unsparse(j["values"], value=lambda vs: tuple(_unel(v) for v in vs)),
                                 _unsparse(j["dafs"], value=_undaf), _undcf(j["dcf"]))


# hyper grades: a sorted array of points; a point is a number (crisp/fuzzy)
# or a component object (vague/neutrosophic); subset-valued triples are
# {"T": [...], "I": [...], "F": [...]}
def _hyper_point(kind: hl.HyperKind, p):
    if kind in (hl.HyperKind.CRISP, hl.HyperKind.FUZZY):
        return _num(p)
    return {c: _num(v) for c, v in zip(COMPONENTS[hl._SINGLE[kind]], p)}


def _hyper_unpoint(kind: hl.HyperKind, j):
    if kind in (hl.HyperKind.CRISP, hl.HyperKind.FUZZY):
        return _real(j)
    names = COMPONENTS[hl._SINGLE[kind]]
    if not isinstance(j, dict) or set(j) != set(names):
        raise DocumentError(f"{kind.value} point needs components {list(names)}")
    return tuple(_real(j[c]) for c in names)


def _hyper_value(kind: hl.HyperKind, v):
    if kind is hl.HyperKind.SUBSET_VALUED_NEUTROSOPHIC:
        return {c: sorted(_num(x) for x in part) for c, part in zip("TIF", v)}
    return [_hyper_point(kind, p) for p in sorted(v, key=sort_key)]


def _hyper_unvalue(kind: hl.HyperKind, j):
    if kind is hl.HyperKind.SUBSET_VALUED_NEUTROSOPHIC:
        if not isinstance(j, dict) or set(j) != set("TIF"):
            raise DocumentError("subset-valued grade needs T, I and F arrays")
        return tuple(frozenset(_real(x) for x in j[c]) for c in "TIF")
    if not isinstance(j, list):
        raise DocumentError(f"hyper grade must be an array, got {j!r}")
    return frozenset(_hyper_unpoint(kind, p) for p in j)


def _hyper_codec(kind: hl.HyperKind) -> Codec:
    def emit(h: hl.HyperGradedSet) -> dict:
        return {"universe": [_el(x) for x in h.universe], "range": _rng(h.range),
                "grades": _sparse(h.grades, value=lambda v: _hyper_value(kind, v))}

    def parse(j) -> hl.HyperGradedSet:
        return hl.HyperGradedSet(kind, tuple(_unel(x) for x in j["universe"]),
                                 _unsparse(j["grades"], value=lambda v: _hyper_unvalue(kind, v)), _unrng(j["range"]))

    return Codec(emit, parse)


def _superhyper_codec(kind: hl.HyperKind) -> Codec:
    def emit(h: hl.SuperHyperGradedSet) -> dict:
        recs = [{"key": _tower(k), "value": _hyper_value(kind, h.grades[k])} for k in sorted(h.grades, key=_tower)]
        return {"universe": [_el(x) for x in h.universe], "level": h.level, "range": _rng(h.range), "grades": recs}

    def parse(j) -> hl.SuperHyperGradedSet:
        universe = tuple(_unel(x) for x in j["universe"])
        atoms = _atoms(universe)
        grades = _unsparse(j["grades"], key=lambda k: _untower(k, atoms), value=lambda v: _hyper_unvalue(kind, v))
        return hl.SuperHyperGradedSet(kind, universe, j["level"], grades, _unrng(j["range"]))

    return Codec(emit, parse)


def _hdaf(m: Mapping, key: Callable) -> list:
    recs = [{"key": key(k), "value": [_vec(v) for v in sorted(m[k])]} for k in m]
    return sorted(recs, key=lambda r: json.dumps(r["key"], sort_keys=True))


def _unhdaf(j, key: Callable) -> dict:
    return _unsparse(j, key=key, value=lambda vs: frozenset(_unvec(v) for v in vs))


def _hyperplith_emit(h: hl.HyperPlithogenicSet) -> dict:
    return {"carrier": [_el(x) for x in h.carrier], "attribute": _attr(h.attribute), "dims": h.dims,
            "hdaf": _hdaf(h.hdaf, _el), "dcf": _dcf(h.dcf), "range": _rng(h.range)}


def _hyperplith_parse(j) -> hl.HyperPlithogenicSet:
    return hl.HyperPlithogenicSet(tuple(_unel(x) for x in j["carrier"]), _unattr(j["attribute"]), j["dims"],
                                  _unhdaf(j["hdaf"], _unel), _undcf(j["dcf"]), _unrng(j["range"]))


def _shplith_emit(h: hl.SuperHyperPlithogenicSet) -> dict:
    return {"universe": [_el(x) for x in h.universe], "level": h.level, "attribute": _attr(h.attribute),
            "dims": h.dims, "hdaf": _hdaf(h.hdaf, lambda k: [_tower(k[0]), _el(k[1])]), "dcf": _dcf(h.dcf),
            "range": _rng(h.range)}


def _shplith_parse(j) -> hl.SuperHyperPlithogenicSet:
    universe = tuple(_unel(x) for x in j["universe"])
    atoms = _atoms(universe)

    def key(k):
        if not isinstance(k, list) or len(k) != 2:
            raise DocumentError(f"key must be [tower element, value], got {k!r}")
        return (_untower(k[0], atoms), _unel(k[1]))

    return hl.SuperHyperPlithogenicSet(universe, j["level"], _unattr(j["attribute"]), j["dims"],
                                       _unhdaf(j["hdaf"], key), _undcf(j["dcf"]), _unrng(j["range"]))


# soft family -----------------------------------------------------------------


def _soft_emit(s: so.SoftSet) -> dict:
    return {"universe": _elems(s.universe), "mapping": _sparse(s.mapping, value=_fset)}


def _soft_parse(j) -> so.SoftSet:
    return so.SoftSet(_unfset(j["universe"]), _unsparse(j["mapping"], value=_unfset))


def _multisoft_emit(s: so.MultiSoftSet) -> dict:
    return {"universe": _elems(s.universe), "families": [[_el(e) for e in f] for f in s.families],
            "family_names": [_el(n) for n in s.family_names],
            "mapping": _sparse(s.mapping, key=_fset, value=_fset)}


def _multisoft_parse(j) -> so.MultiSoftSet:
    return so.MultiSoftSet(_unfset(j["universe"]), tuple(tuple(_unel(e) for e in f) for f in j["families"]),
                           _unsparse(j["mapping"], key=_unfset, value=_unfset),
                           tuple(_unel(n) for n in j["family_names"]))


def _domains(ds) -> list:
    return [[_el(v) for v in d] for d in ds]


def _undomains(j) -> tuple:
    return tuple(tuple(_unel(v) for v in d) for d in j)


def _hypersoft_emit(s: so.HyperSoftSet) -> dict:
    return {"universe": _elems(s.universe), "domains": _domains(s.domains), "mapping": _sparse(s.mapping, value=_fset)}


def _hypersoft_parse(j) -> so.HyperSoftSet:
    return so.HyperSoftSet(_unfset(j["universe"]), _undomains(j["domains"]), _unsparse(j["mapping"], value=_unfset))


def _shsoft_emit(s: so.SuperHyperSoftSet) -> dict:
    return {"universe": _elems(s.universe), "domains": _domains(s.domains),
            "mapping": _sparse(s.mapping, key=lambda k: [_fset(part) for part in k], value=_fset)}


def _shsoft_parse(j) -> so.SuperHyperSoftSet:
    def key(k):
        if not isinstance(k, list):
            raise DocumentError(f"key must be an array of subsets, got {k!r}")
        return tuple(_unfset(part) for part in k)

    return so.SuperHyperSoftSet(_unfset(j["universe"]), _undomains(j["domains"]),
                                _unsparse(j["mapping"], key=key, value=_unfset))


def _expert_emit(s: so.SoftExpertSet) -> dict:
    return {"universe": _elems(s.universe), "parameters": _elems(s.parameters), "experts": _elems(s.experts),
            "opinions": _elems(s.opinions), "mapping": _sparse(s.mapping, value=_fset)}


def _expert_parse(j) -> so.SoftExpertSet:
    return so.SoftExpertSet(_unfset(j["universe"]), _unfset(j["parameters"]), _unfset(j["experts"]),
                            _unfset(j["opinions"]), _unsparse(j["mapping"], value=_unfset))


def _treesoft_emit(s: so.TreeSoftSet) -> dict:
    return {"universe": _elems(s.universe), "tree": _tree(s.tree), "bijective": s.bijective,
            "mapping": _sparse(s.mapping, key=_fset, value=_fset)}


def _treesoft_parse(j) -> so.TreeSoftSet:
    return so.TreeSoftSet(_unfset(j["universe"]), _untree(j["tree"]),
                          _unsparse(j["mapping"], key=_unfset, value=_unfset), bool(j["bijective"]))


# graphs ----------------------------------------------------------------------


def _crisp_graph_parse(j) -> gr.CrispGraph:
    return _ungraph(j)


def _graded_graph_codec(kind: Kind) -> Codec:
    def emit(g: gr.GradedGraph) -> dict:
        out = {"graph": _graph(g.base)}
        _grades_field(out, "vertex_grades", kind, g.vertex_grades)
        _grades_field(out, "edge_grades", kind, g.edge_grades)
        return out

    def parse(j) -> gr.GradedGraph:
        return gr.GradedGraph(_ungraph(j["graph"]), kind, _grades_from(j, "vertex_grades", kind),
                              _grades_from(j, "edge_grades", kind, key=_edge))

    return Codec(emit, parse)


def _plith_graph_codec(general: bool) -> Codec:
    def emit(g: gr.PlithogenicGraph) -> dict:
        return {"graph": _graph(g.base), "vertex_attribute": _attr(g.vertex_attribute),
                "edge_attribute": _attr(g.edge_attribute), "adf": _daf(g.adf), "bdf": _daf(g.bdf),
                "acf": _dcf(g.acf), "bcf": _dcf(g.bcf)}

    def parse(j) -> gr.PlithogenicGraph:
        bdf = _undaf(j["bdf"])
        # edge keys arrive as ((u, v), value); endpoints need canonical order
        bdf = pl.DAFTable(bdf.dims, {(canon_edge(*k[0]), k[1]): v for k, v in bdf.entries.items()}, bdf.ranges)
        return gr.PlithogenicGraph(_ungraph(j["graph"]), _unattr(j["vertex_attribute"]), _unattr(j["edge_attribute"]),
                                   _undaf(j["adf"]), bdf, _undcf(j["acf"]), _undcf(j["bcf"]), general)

    return Codec(emit, parse)


def _set_valued_codec(variant: gr.SetVariant) -> Codec:
    def emit(g: gr.SetValuedGraph) -> dict:
        vals = lambda s: sorted(_num(x) for x in s)  # noqa: E731
        return {"graph": _graph(g.base), "range": _rng(g.range),
                "vertex_sets": _sparse(g.vertex_sets, value=vals), "edge_sets": _sparse(g.edge_sets, value=vals)}

    def parse(j) -> gr.SetValuedGraph:
        vals = lambda s: frozenset(_unvec(s))  # noqa: E731
        return gr.SetValuedGraph(_ungraph(j["graph"]), variant, _unsparse(j["vertex_sets"], value=vals),
                                 _unsparse(j["edge_sets"], key=_edge, value=vals), _unrng(j["range"]))

    return Codec(emit, parse)


_MULTI_BASE = {gr.MultiKind.QUAD: Kind.QUAD, gr.MultiKind.PENTA: Kind.PENTA}


def _multigraph_codec(mk: gr.MultiKind) -> Codec:
    def val(x):
        if mk is gr.MultiKind.NEUTROSOPHIC:
            return {"T": _vec(x.truths), "I": _vec(x.indeterminacies), "F": _vec(x.falsities), "range": _rng(x.range)}
        out = []
        for g in x:
            rec = _grade_values(g)
            if g.ranges != _default_ranges(g.kind):
                rec["ranges"] = _ranges_obj(g.kind, g.ranges)
            out.append(rec)
        return out

    def unval(j):
        if mk is gr.MultiKind.NEUTROSOPHIC:
            if not isinstance(j, dict) or set(j) != {"T", "I", "F", "range"}:
                raise DocumentError("multi grade needs T, I, F arrays and a range")
            return MultiGrade(_unvec(j["T"]), _unvec(j["I"]), _unvec(j["F"]), _unrng(j["range"]))
        if not isinstance(j, list):
            raise DocumentError("multi grade must be an array of grade objects")
        return tuple(_grade_in(_MULTI_BASE[mk], g, None) for g in j)

    def emit(g: gr.MultiGradedGraph) -> dict:
        return {"graph": _graph(g.base), "vertex_grades": _sparse(g.vertex_grades, value=val),
                "edge_grades": _sparse(g.edge_grades, value=val)}

    def parse(j) -> gr.MultiGradedGraph:
        return gr.MultiGradedGraph(_ungraph(j["graph"]), mk, _unsparse(j["vertex_grades"], value=unval),
                                   _unsparse(j["edge_grades"], key=_edge, value=unval))

    return Codec(emit, parse)


def _hyperedges(es) -> list:
    return sorted(_tower(e) for e in es)


def _hypergraph_emit(h: gr.Hypergraph) -> dict:
    return {"vertices": _elems(h.vertices), "hyperedges": _hyperedges(h.hyperedges)}


def _hypergraph_parse(j) -> gr.Hypergraph:
    vs = [_unel(v) for v in j["vertices"]]
    atoms = _atoms(vs)
    return gr.Hypergraph(vs, [_untower(e, atoms) for e in j["hyperedges"]])


def _graded_hypergraph_codec(kind: Kind) -> Codec:
    def emit(h: gr.GradedHypergraph) -> dict:
        out = {"hypergraph": _hypergraph_emit(h.hyper)}
        _grades_field(out, "vertex_grades", kind, h.vertex_grades)
        recs, shared = _grades_out(kind, h.edge_grades, key=_tower)
        out["edge_grades"] = sorted(recs, key=lambda r: r["key"])
        if shared is not None:
            out["edge_grades_ranges"] = shared
        return out

    def parse(j) -> gr.GradedHypergraph:
        hyper = _hypergraph_parse(j["hypergraph"])
        atoms = _atoms(hyper.vertices)
        return gr.GradedHypergraph(hyper, kind, _grades_from(j, "vertex_grades", kind),
                                   _grades_from(j, "edge_grades", kind, key=lambda k: _untower(k, atoms)))

    return Codec(emit, parse)


def _superhypergraph_emit(s: gr.SuperHyperGraph) -> dict:
    return {"base": _elems(s.base), "level": s.level, "supervertices": _hyperedges(s.supervertices),
            "superedges": _hyperedges(s.superedges)}


def _superhypergraph_parse(j) -> gr.SuperHyperGraph:
    base = [_unel(v) for v in j["base"]]
    atoms = _atoms(base)
    return gr.SuperHyperGraph(base, j["level"], [_untower(x, atoms) for x in j["supervertices"]],
                              [_untower(x, atoms) for x in j["superedges"]])


def _edges_out(es) -> list:
    return [_el(e) for e in sorted_items(es)]


def _edges_in(j) -> frozenset:
    if not isinstance(j, list):
        raise DocumentError("expected an array of edges")
    return frozenset(_edge(e) for e in j)


def _soft_graph_codec(multisoft: bool) -> Codec:
    key_out = _fset if multisoft else _el
    key_in = _unfset if multisoft else _unel

    def emit(g: gr.SoftGraph) -> dict:
        return {"graph": _graph(g.base), "vertex_map": _sparse(g.vertex_map, key=key_out, value=_fset),
                "edge_map": _sparse(g.edge_map, key=key_out, value=_edges_out)}

    def parse(j) -> gr.SoftGraph:
        return gr.SoftGraph(_ungraph(j["graph"]), _unsparse(j["vertex_map"], key=key_in, value=_unfset),
                            _unsparse(j["edge_map"], key=key_in, value=_edges_in), multisoft)

    return Codec(emit, parse)


def _layers_out(layers: Mapping, key: Callable = _el) -> list:
    return _sparse(layers, key=key, value=lambda m: _grade_layer(m))


def _grade_layer(m: Mapping) -> dict:
    out: dict = {}
    _grades_field(out, "grades", Kind.NEUTROSOPHIC, m)
    return out


def _grade_unlayer(j, key: Callable) -> dict:
    if not isinstance(j, dict):
        raise DocumentError("grade layer must be an object")
    return _grades_from(j, "grades", Kind.NEUTROSOPHIC, key=key)


def _neutro_soft_emit(g: gr.NeutroSoftGraph) -> dict:
    return {"graph": _graph(g.base), "vertex_layers": _layers_out(g.vertex_layers),
            "edge_layers": _layers_out(g.edge_layers)}


def _neutro_soft_parse(j) -> gr.NeutroSoftGraph:
    return gr.NeutroSoftGraph(_ungraph(j["graph"]),
                              _unsparse(j["vertex_layers"], value=lambda v: _grade_unlayer(v, _unel)),
                              _unsparse(j["edge_layers"], value=lambda v: _grade_unlayer(v, _edge)))


def _hypersoft_graph_emit(g: gr.HyperSoftGraph) -> dict:
    return {"graph": _graph(g.base), "domains": _domains(g.domains), "mapping": _sparse(g.mapping, value=_fset),
            "vertex_grades": _layers_out(g.vertex_grades), "edge_grades": _layers_out(g.edge_grades)}


def _hypersoft_graph_parse(j) -> gr.HyperSoftGraph:
    return gr.HyperSoftGraph(_ungraph(j["graph"]), _undomains(j["domains"]), _unsparse(j["mapping"], value=_unfset),
                             _unsparse(j["vertex_grades"], value=lambda v: _grade_unlayer(v, _unel)),
                             _unsparse(j["edge_grades"], value=lambda v: _grade_unlayer(v, _edge)))


def _nested(x, level: int):
    if level == 0:
        return _el(x)
    return sorted((_nested(m, level - 1) for m in x), key=lambda v: json.dumps(v, sort_keys=True))


def _unnested(j, level: int):
    if level == 0:
        return _unel(j)
    if not isinstance(j, list):
        raise DocumentError(f"expected a level-{level} array, got {j!r}")
    return frozenset(_unnested(m, level - 1) for m in j)


def _annotated_codec(role: gr.Role, level: int) -> Codec:
    def emit(g: gr.AnnotatedGraph) -> dict:
        out = {"graph": _graph(g.base), "vertex_values": _sparse(g.vertex_values, value=lambda v: _nested(v, level)),
               "edge_values": _sparse(g.edge_values, value=lambda v: _nested(v, level))}
        if g.vertex_labels is not None:
            out["vertex_labels"] = _elems(g.vertex_labels)
        if g.edge_labels is not None:
            out["edge_labels"] = _elems(g.edge_labels)
        return out

    def parse(j) -> gr.AnnotatedGraph:
        labels = {k: _unfset(j[k]) for k in ("vertex_labels", "edge_labels") if k in j}
        return gr.AnnotatedGraph(_ungraph(j["graph"]), role, level,
                                 _unsparse(j["vertex_values"], value=lambda v: _unnested(v, level)),
                                 _unsparse(j["edge_values"], key=_edge, value=lambda v: _unnested(v, level)), **labels)

    return Codec(emit, parse)


# rough inputs ----------------------------------------------------------------


def _partition_emit(p: ro.Partition) -> dict:
    return {"universe": _elems(p.universe), "blocks": [_elems(b) for b in p.blocks]}


def _partition_parse(j) -> ro.Partition:
    return ro.Partition(_unfset(j["universe"]), [_unfset(b) for b in j["blocks"]])


def _family_emit(f: ro.PartitionFamily) -> dict:
    return {"relations": [_partition_emit(p) for p in f.relations]}


def _family_parse(j) -> ro.PartitionFamily:
    return ro.PartitionFamily(tuple(_partition_parse(p) for p in j["relations"]))


def _build_codecs() -> dict[str, Codec]:
    c: dict[str, Codec] = {}
    for k in Kind:
        c[k.value] = _graded_set_codec(k)
    for k in (Kind.FUZZY, Kind.VAGUE, Kind.NEUTROSOPHIC):
        for rg in (Regime.OVER, Regime.UNDER, Regime.OFF):
            c[f"{k.value}{rg.value}Set"] = _graded_set_codec(k)
    c["Plithogenic"] = Codec(_plith_emit, _plith_parse)
    c["MultiPlithogenic"] = Codec(_multiplith_emit, _multiplith_parse)
    c["TreePlithogenic"] = Codec(_treeplith_emit, _treeplith_parse)
    for hk in hl.HyperKind:
        c[hl.HyperGradedSet(hk, (), {}).kind_name] = _hyper_codec(hk)
        if hk is not hl.HyperKind.SUBSET_VALUED_NEUTROSOPHIC:
            c["SuperHyper" + hk.value] = _superhyper_codec(hk)
    c["HyperPlithogenic"] = Codec(_hyperplith_emit, _hyperplith_parse)
    c["SuperHyperPlithogenic"] = Codec(_shplith_emit, _shplith_parse)
    c["Soft"] = Codec(_soft_emit, _soft_parse)
    c["MultiSoft"] = Codec(_multisoft_emit, _multisoft_parse)
    c["HyperSoft"] = Codec(_hypersoft_emit, _hypersoft_parse)
    c["SuperHyperSoft"] = Codec(_shsoft_emit, _shsoft_parse)
    c["SoftExpert"] = Codec(_expert_emit, _expert_parse)
    c["TreeSoft"] = Codec(_treesoft_emit, _treesoft_parse)
    c["CrispGraph"] = Codec(_graph, _crisp_graph_parse)
    for k in (Kind.FUZZY, Kind.INTUITIONISTIC, Kind.NEUTROSOPHIC, Kind.QUAD, Kind.PENTA, Kind.HEPTA, Kind.DOUBLE_VALUED):
        c[f"{k.value}Graph"] = _graded_graph_codec(k)
    for k in (Kind.FUZZY, Kind.NEUTROSOPHIC):
        for rg in (Regime.OVER, Regime.UNDER, Regime.OFF):
            c[f"{k.value}{rg.value}Graph"] = _graded_graph_codec(k)
    for rg in Regime:
        tag = "" if rg is Regime.STANDARD else rg.value
        c[f"Neutrosophic{tag}Hypergraph"] = _graded_hypergraph_codec(Kind.NEUTROSOPHIC)
    c["PlithogenicGraph"] = _plith_graph_codec(False)
    c["GeneralPlithogenicGraph"] = _plith_graph_codec(True)
    c["HyperFuzzyGraph"] = _set_valued_codec(gr.SetVariant.HYPERFUZZY)
    c["HesitantFuzzyGraph"] = _set_valued_codec(gr.SetVariant.HESITANT)
    c["Hypergraph"] = Codec(_hypergraph_emit, _hypergraph_parse)
    c["SuperHyperGraph"] = Codec(_superhypergraph_emit, _superhypergraph_parse)
    c["SoftGraph"] = _soft_graph_codec(False)
    c["MultiSoftGraph"] = _soft_graph_codec(True)
    c["NeutrosophicSoftGraph"] = Codec(_neutro_soft_emit, _neutro_soft_parse)
    c["HyperSoftGraph"] = Codec(_hypersoft_graph_emit, _hypersoft_graph_parse)
    for mk in gr.MultiKind:
        c[f"{mk.value}Graph"] = _multigraph_codec(mk)
    for (role, level), name in gr.ANNOTATED_KINDS.items():
        c[name] = _annotated_codec(role, level)
    c["Partition"] = Codec(_partition_emit, _partition_parse)
    c["PartitionFamily"] = Codec(_family_emit, _family_parse)
    return c


CODECS = _build_codecs()


# ---------------------------------------------------------------- entry points


def to_json(doc: Document) -> dict:
    if doc.kind not in CODECS:
        raise DocumentError(f"unknown kind {doc.kind!r}")
    out = {"kind": doc.kind, "payload": CODECS[doc.kind].emit(doc.payload)}
    if doc.meta:
        out["meta"] = dict(doc.meta)
    return out


def emit(doc: Document) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_json(doc), sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def from_json(j) -> Document:
    if not isinstance(j, dict) or "kind" not in j or "payload" not in j:
        raise DocumentError('document must be an object with "kind" and "payload"')
    extra = set(j) - {"kind", "payload", "meta"}
    if extra:
        raise DocumentError(f"unexpected top-level fields {sorted(extra)}")
    kind = j["kind"]
    if kind not in CODECS:
        raise DocumentError(f"unknown kind {kind!r}")
    meta = j.get("meta", {})
    if not isinstance(meta, dict):
        raise DocumentError("meta must be an object")
    if not isinstance(j["payload"], dict):
        raise DocumentError("payload must be an object")
    try:
        payload = CODECS[kind].parse(j["payload"])
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError, IndexError) as err:
        raise DocumentError(f"malformed {kind} payload: {type(err).__name__}: {err}") from None
    return Document(kind, payload, meta)


def parse(text: str) -> Document:
    try:
        j = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(f"invalid JSON: {err}") from None
    return from_json(j)


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def document_for(instance, kind: str | None = None, meta: Mapping | None = None) -> Document:
    """Wrap a module instance, classifying it through the lattice when `kind` is omitted."""
    from .lattice import kind_of

    return Document(kind or kind_of(instance), instance, dict(meta or {}))
