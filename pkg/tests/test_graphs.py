import math

import pytest
from hypothesis import given, settings, strategies as st

from uncertain_lattice._common import (
    AmbiguousValue,
    DisconnectedBase,
    KindMismatch,
    NonBinaryEdge,
    NonSingleton,
    NotSingleton,
    UnsupportedDims,
    Unmentioned,
)
from uncertain_lattice.grades import GradeRange, Kind, MultiGrade, grade
from uncertain_lattice.graphs import (
    AnnotatedGraph,
    CrispGraph,
    GradedHypergraph,
    HyperSoftGraph,
    Hypergraph,
    MultiGradedGraph,
    NeutroSoftGraph,
    PlithogenicGraph,
    SetValuedGraph,
    SoftGraph,
    SuperHyperGraph,
    annotated_lift,
    annotated_reduce,
    collapse_multigraph,
    fuzzy_graph_to_set_valued,
    graded_graph,
    graded_graph_to_hypergraph,
    graded_graph_to_multi,
    graded_graph_to_plithogenic,
    graded_hypergraph_to_graph,
    graph_to_hypergraph,
    graph_to_superhypergraph,
    hyperfuzzy_graph_validate,
    hypergraph_to_graph,
    hypersoft_graph_strip,
    hypersoft_graph_to_neutro_soft,
    hypersoft_graph_validate,
    multisoft_graph_to_soft,
    neutro_soft_graph_aggregate,
    neutro_soft_graph_validate,
    plithogenic_graph_reduce,
    reduce_graph,
    soft_graph_to_multisoft,
    soft_graph_validate,
    superhypergraph_to_hypergraph,
    validate_annotated,
    validate_graded_graph,
    validate_graded_hypergraph,
    validate_multigraded_graph,
    validate_plithogenic_graph,
    validate_set_valued_graph,
    validate_superhypergraph,
    widen_graph,
)
from uncertain_lattice.plithogenic import AttributeSpec, DAFTable, DCFMatrix

UV = {("u", "v"): None}


def k2(kind, u, v, e, ranges=None):
    return graded_graph(kind, {"u": u, "v": v}, {("u", "v"): e}, ranges)


# ------------------------------------------------------------ graded graphs


def test_fuzzy_edge_exceeds_min():
    rep = validate_graded_graph(k2("Fuzzy", 0.5, 0.7, 0.6))
    assert not rep.valid and any("mu" in v for v in rep.violations)
    assert validate_graded_graph(k2("Fuzzy", 0.5, 0.7, 0.5)).valid


def test_penta_r_at_max_is_valid():
    u, v = (0.5, 0.4, 0.2, 0.3, 0.1), (0.6, 0.5, 0.3, 0.2, 0.2)
    e = (0.5, 0.4, 0.3, 0.3, 0.2)
    assert validate_graded_graph(k2("Pentapartitioned", u, v, e)).valid
    below = (0.5, 0.4, 0.29, 0.3, 0.2)
    assert not validate_graded_graph(k2("Pentapartitioned", u, v, below)).valid


def test_neutro_overgraph_range():
    tri = ((1.4, 0.2, 0.1), (0.5, 0.2, 0.3), (0.5, 0.2, 0.3))
    over = k2("Neutrosophic", *tri, ranges=GradeRange(0, 1.5))
    assert validate_graded_graph(over).valid
    assert not validate_graded_graph(k2("Neutrosophic", *tri)).valid


def test_quad_reduces_to_neutro():
    g = k2("Quadripartitioned", (0.6, 0.2, 0.3, 0.1), (0.6, 0.2, 0.3, 0.1), (0.6, 0.2, 0.3, 0.1))
    assert validate_graded_graph(g).valid
    n = reduce_graph(g, "Neutrosophic")
    assert n.kind is Kind.NEUTROSOPHIC
    assert all(math.isclose(a, b) for a, b in zip(n.vertex_grades["u"].values, (0.4, 0.3, 0.1)))
    assert validate_graded_graph(n).valid


def test_quad_block_only_in_standard_range():
    bad = k2("Quadripartitioned", (0.5, 0.5, 0.1, 0.1), (0.5, 0.5, 0.1, 0.1), (0.5, 0.5, 0.9, 0.1))
    assert not validate_graded_graph(bad).valid
    assert validate_graded_graph(widen_graph(bad, GradeRange(0, 2))).valid


def test_penta_to_quad_graph_reduction_validates():
    u = (0.5, 0.4, 0.2, 0.3, 0.1)
    g = k2("Pentapartitioned", u, u, u)
    q = reduce_graph(g, "Quadripartitioned")
    assert q.vertex_grades["u"]["U"] == pytest.approx(0.5)
    assert q.vertex_grades["u"].ranges[2] == GradeRange(0, 2)
    assert validate_graded_graph(q).valid


def test_missing_grades_and_foreign_kinds():
    g = graded_graph("Fuzzy", {"u": 0.3}, {})
    g2 = type(g)(CrispGraph({"u", "v"}, [("u", "v")]), "Fuzzy", g.vertex_grades, {})
    rep = validate_graded_graph(g2)
    assert any("vertex 'v'" in v for v in rep.violations) and any("edge" in v for v in rep.violations)
    mixed = type(g)(g.base, "Fuzzy", {"u": grade("Vague", 0.1, 0.2)}, {})
    assert not validate_graded_graph(mixed).valid


def test_self_loop_rejected():
    g = graded_graph("Fuzzy", {"u": 0.3}, {("u", "u"): 0.1})
    assert any("self-loop" in v for v in validate_graded_graph(g).violations)


def test_hepta_block():
    u = (0.5, 0.5, 0.5, 0.2, 0.2, 0.2, 0.2)
    ok = (0.4, 0.4, 0.4, 0.3, 0.3, 0.3, 0.3)
    bad = (0.4, 0.6, 0.4, 0.3, 0.3, 0.3, 0.3)
    assert validate_graded_graph(k2("Heptapartitioned", u, u, ok)).valid
    assert not validate_graded_graph(k2("Heptapartitioned", u, u, bad)).valid


unit = st.floats(0, 1, allow_nan=False)


@settings(max_examples=100)
@given(unit, unit, unit)
def test_fuzzy_graph_validity_matches_min_rule(a, b, m):
    assert validate_graded_graph(k2("Fuzzy", a, b, m)).valid == (m <= min(a, b) + 1e-9)


# ------------------------------------------------------------ plithogenic graphs


def plith_k2(vec_u, vec_v, vec_e, general=False):
    base = CrispGraph({"u", "v"}, [("u", "v")])
    s = len(vec_u)
    return PlithogenicGraph(
        base,
        AttributeSpec("l", ("a",)),
        AttributeSpec("m", (("a", "a"),)),
        DAFTable(s, {("u", "a"): vec_u, ("v", "a"): vec_v}),
        DAFTable(s, {(("u", "v"), ("a", "a")): vec_e}),
        general=general,
    )


def test_plithogenic_graph_edge_appurtenance():
    assert validate_plithogenic_graph(plith_k2((0.5,), (0.7,), (0.5,))).valid
    rep = validate_plithogenic_graph(plith_k2((0.5,), (0.7,), (0.6,)))
    assert any("appurtenance" in v for v in rep.violations)
    assert validate_plithogenic_graph(plith_k2((0.5,), (0.7,), (0.6,), general=True)).valid


def test_plithogenic_graph_contradiction_bound():
    base = CrispGraph({"u"}, [])
    ml = ("a", "b")
    nm = (("a", "a"), ("b", "b"))
    pg = PlithogenicGraph(
        base,
        AttributeSpec("l", ml),
        AttributeSpec("m", nm),
        DAFTable(1, {("u", "a"): (0.3,), ("u", "b"): (0.3,)}),
        DAFTable(1, {}),
        DCFMatrix(1, {("a", "b"): (0.4,)}),
        DCFMatrix(1, {(("a", "a"), ("b", "b")): (0.5,)}),
    )
    assert any("contradiction" in v for v in validate_plithogenic_graph(pg).violations)


def test_plithogenic_graph_positional_reduction():
    g = plithogenic_graph_reduce(plith_k2((0.4, 0.2, 0.3), (0.5, 0.1, 0.2), (0.4, 0.2, 0.3), general=True))
    assert g.kind is Kind.NEUTROSOPHIC and g.edge_grades[("u", "v")].values == (0.4, 0.2, 0.3)
    assert plithogenic_graph_reduce(plith_k2((0.4, 0.2), (0.5, 0.1), (0.4, 0.2))).kind is Kind.INTUITIONISTIC
    with pytest.raises(UnsupportedDims):
        plithogenic_graph_reduce(plith_k2((0.1,) * 6, (0.1,) * 6, (0.1,) * 6))


def test_plithogenic_graph_reduction_errors():
    pg = plith_k2((0.1,), (0.1,), (0.1,))
    two = PlithogenicGraph(
        pg.base, AttributeSpec("l", ("a", "b")), pg.edge_attribute, pg.adf, pg.bdf
    )
    with pytest.raises(AmbiguousValue):
        plithogenic_graph_reduce(two)
    tdim = PlithogenicGraph(pg.base, pg.vertex_attribute, pg.edge_attribute, pg.adf, pg.bdf, DCFMatrix(2), DCFMatrix(2))
    with pytest.raises(UnsupportedDims):
        plithogenic_graph_reduce(tdim)


@pytest.mark.parametrize(
    "kind,u,e",
    [
        ("Fuzzy", 0.6, 0.4),
        ("Neutrosophic", (0.6, 0.2, 0.1), (0.5, 0.2, 0.2)),
        ("Quadripartitioned", (0.6, 0.2, 0.3, 0.1), (0.5, 0.2, 0.2, 0.1)),
        ("Pentapartitioned", (0.6, 0.2, 0.1, 0.1, 0.1), (0.5, 0.2, 0.2, 0.2, 0.2)),
        ("DoubleValued", (0.6, 0.2, 0.1, 0.1), (0.5, 0.2, 0.2, 0.2)),
    ],
)
def test_graded_plithogenic_round_trip(kind, u, e):
    g = k2(kind, u, u, e)
    assert validate_graded_graph(g).valid
    pg = graded_graph_to_plithogenic(g, general=kind != "Fuzzy")
    assert validate_plithogenic_graph(pg).valid
    back = plithogenic_graph_reduce(pg, kind=kind)
    assert back.kind is Kind(kind)
    assert back.vertex_grades == g.vertex_grades and back.edge_grades == g.edge_grades


def test_dv_table_form_defaults():
    g = k2("DoubleValued", (0.6, 0.2, 0.1, 0.1), (0.6, 0.2, 0.1, 0.1), (0.5, 0.2, 0.2, 0.2))
    pg = graded_graph_to_plithogenic(g)
    assert set(pg.vertex_attribute.values) == {"T", "IT", "IF", "F"}
    assert plithogenic_graph_reduce(pg).kind is Kind.DOUBLE_VALUED


# ------------------------------------------------------------ set valued


def test_hyperfuzzy_graph():
    base = CrispGraph({"u", "v"}, [("u", "v")])
    g = SetValuedGraph(base, "HyperFuzzy", {"u": {0.2, 0.4}, "v": {0.5}}, {("u", "v"): {0.1}})
    assert hyperfuzzy_graph_validate(g).valid
    empty = SetValuedGraph(base, "HyperFuzzy", {"u": set(), "v": {0.5}}, {("u", "v"): {0.1}})
    assert not hyperfuzzy_graph_validate(empty).valid
    hes = SetValuedGraph(base, "Hesitant", {"u": set(), "v": {0.5}}, {("u", "v"): {0.1}})
    assert validate_set_valued_graph(hes).valid
    with pytest.raises(KindMismatch):
        hyperfuzzy_graph_validate(hes)
    out = SetValuedGraph(base, "HyperFuzzy", {"u": {1.2}, "v": {0.5}}, {("u", "v"): {0.1}})
    assert not validate_set_valued_graph(out).valid


def test_fuzzy_to_hyperfuzzy_wraps():
    s = fuzzy_graph_to_set_valued(k2("Fuzzy", 0.5, 0.7, 0.4))
    assert s.vertex_sets["u"] == {0.5} and s.edge_sets[("u", "v")] == {0.4}
    assert hyperfuzzy_graph_validate(s).valid


# ------------------------------------------------------------ multi graphs


def test_multi_quad_mean():
    base = CrispGraph({"u"}, [])
    q = lambda t: grade("Quadripartitioned", t, 0.1, 0.1, 0.1)
    mg = MultiGradedGraph(base, "MultiQuadripartitioned", {"u": [q(0.4), q(0.6)]}, {})
    assert validate_multigraded_graph(mg).valid
    g = collapse_multigraph(mg, "Mean")
    assert g.vertex_grades["u"]["T"] == pytest.approx(0.5)
    with pytest.raises(NotSingleton):
        collapse_multigraph(mg, "SingletonOnly")


def test_multi_penta_merge():
    base = CrispGraph({"u"}, [])
    p = grade("Pentapartitioned", 0.3, 0.2, 0.2, 0.1, 0.1)
    mg = MultiGradedGraph(base, "MultiPentapartitioned", {"u": [p]}, {})
    q = collapse_multigraph(mg, "Merge")
    assert q.kind.value == "MultiQuadripartitioned"
    assert q.vertex_grades["u"][0]["U"] == pytest.approx(0.3)
    assert validate_multigraded_graph(q).valid
    with pytest.raises(KindMismatch):
        collapse_multigraph(graded_graph_to_multi(k2("Neutrosophic", (0.5, 0.1, 0.1), (0.5, 0.1, 0.1), (0.4, 0.1, 0.1))), "Merge")


def test_multi_neutro_round_trip():
    g = k2("Neutrosophic", (0.5, 0.1, 0.1), (0.5, 0.1, 0.1), (0.4, 0.1, 0.1))
    m = graded_graph_to_multi(g)
    assert validate_multigraded_graph(m).valid
    assert not validate_multigraded_graph(m, proper=True).valid
    assert collapse_multigraph(m, "SingletonOnly").vertex_grades == g.vertex_grades
    bigger = MultiGradedGraph(g.base, "MultiNeutrosophic", {"u": MultiGrade((0.2, 0.4), (0.1,), (0.3,)), "v": MultiGrade((0.1,), (0.1,), (0.1,))}, {("u", "v"): MultiGrade((0.1,), (0.1,), (0.1,))})
    assert collapse_multigraph(bigger, "Mean").vertex_grades["u"]["T"] == pytest.approx(0.3)


# ------------------------------------------------------------ hypergraphs


def test_hypergraph_to_graph():
    h = Hypergraph({"a", "b", "c"}, [{"a", "b"}, {"b", "c"}])
    g = hypergraph_to_graph(h)
    assert g.edges == {("a", "b"), ("b", "c")}
    assert graph_to_hypergraph(g) == h
    with pytest.raises(NonBinaryEdge):
        hypergraph_to_graph(Hypergraph({"a", "b", "c"}, [{"a", "b", "c"}]))


def test_superhypergraph_k2():
    s = graph_to_superhypergraph(CrispGraph({"u", "v"}, [("u", "v")]))
    assert s.supervertices == {frozenset({"u"}), frozenset({"v"})}
    assert s.superedges == {frozenset({"u", "v"})}
    assert validate_superhypergraph(s).valid
    assert superhypergraph_to_hypergraph(s) == Hypergraph({"u", "v"}, [{"u", "v"}])
    bad = SuperHyperGraph({"u"}, 1, {frozenset({"z"})}, set())
    assert not validate_superhypergraph(bad).valid


def test_graded_hypergraph_offgraph():
    rng = (GradeRange(-0.5, 1.5),) * 3
    h = GradedHypergraph(
        Hypergraph({"a", "b"}, [{"a", "b"}]),
        "Neutrosophic",
        {"a": grade("Neutrosophic", 1.2, 0.1, -0.3, ranges=rng), "b": grade("Neutrosophic", 0.4, 0.1, 0.1, ranges=rng)},
        {frozenset({"a", "b"}): grade("Neutrosophic", 0.3, 0.2, 0.1, ranges=rng)},
    )
    assert validate_graded_hypergraph(h).valid
    g = graded_hypergraph_to_graph(h)
    assert g.edge_grades[("a", "b")]["T"] == 0.3
    assert graded_graph_to_hypergraph(g) == h


# ------------------------------------------------------------ soft graphs


def test_soft_graph_subgraph_condition():
    base = CrispGraph({"a", "b", "c"}, [("a", "b"), ("b", "c")])
    ok = SoftGraph(base, {"e1": {"a", "b"}}, {"e1": [("a", "b")]})
    assert soft_graph_validate(ok).valid
    bad = SoftGraph(base, {"e1": {"a"}}, {"e1": [("a", "b")]})
    assert any("endpoint" in v for v in soft_graph_validate(bad).violations)


def test_multisoft_graph_union_rule():
    base = CrispGraph({"a", "b", "c"}, [("a", "b")])
    msg = SoftGraph(
        base,
        {("e1",): {"a"}, ("e2",): {"b"}, ("e1", "e2"): set()},
        {("e1",): [], ("e2",): [], ("e1", "e2"): []},
        multisoft=True,
    )
    soft = multisoft_graph_to_soft(msg)
    assert soft.vertex_map[frozenset({"e1", "e2"})] == {"a", "b"}
    assert soft_graph_validate(soft).valid
    assert multisoft_graph_to_soft(soft_graph_to_multisoft(soft)).vertex_map[frozenset([frozenset({"e1"})])] == {"a"}


def _oracle_union(msg):
    out = {}
    for a in msg.vertex_map:
        acc = set()
        for b, verts in msg.vertex_map.items():
            if all(x in a for x in b):
                acc |= verts
        out[a] = acc
    return out


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_multisoft_graph_matches_oracle(data):
    params = ["p0", "p1", "p2"]
    verts = ["a", "b", "c", "d"]
    base = CrispGraph(verts, [("a", "b"), ("b", "c"), ("c", "d")])
    subsets = [frozenset(s) for s in data.draw(st.lists(st.sets(st.sampled_from(params), min_size=1), min_size=1, max_size=6, unique_by=frozenset))]
    vmap = {k: data.draw(st.sets(st.sampled_from(verts))) for k in subsets}
    msg = SoftGraph(base, vmap, {k: [] for k in subsets}, multisoft=True)
    assert multisoft_graph_to_soft(msg).vertex_map == _oracle_union(msg)


def test_neutro_soft_aggregate():
    base = CrispGraph({"a", "b"}, [("a", "b")])
    n = lambda t, i, f: grade("Neutrosophic", t, i, f)
    nsg = NeutroSoftGraph(
        base,
        {"e1": {"a": n(0.7, 0.2, 0.3), "b": n(0.5, 0.1, 0.2)}, "e2": {"a": n(0.4, 0.3, 0.1)}},
        {"e1": {("a", "b"): n(0.4, 0.1, 0.3)}, "e2": {}},
    )
    assert neutro_soft_graph_validate(nsg).valid
    g = neutro_soft_graph_aggregate(nsg)
    assert g.vertex_grades["a"].values == (0.7, 0.3, 0.1)
    unmentioned = NeutroSoftGraph(base, {"e1": {"a": n(0.5, 0.1, 0.1)}}, {"e1": {}})
    with pytest.raises(Unmentioned):
        neutro_soft_graph_aggregate(unmentioned)


def test_neutro_soft_subgraph_condition():
    base = CrispGraph({"a", "b"}, [("a", "b")])
    n = grade("Neutrosophic", 0.5, 0.1, 0.1)
    bad = NeutroSoftGraph(base, {"e1": {"a": n}}, {"e1": {("a", "b"): n}})
    assert not neutro_soft_graph_validate(bad).valid


# ------------------------------------------------------------ hypersoft graphs


def path_abc():
    return CrispGraph({"a", "b", "c"}, [("a", "b"), ("b", "c")])


def test_hypersoft_graph_connectivity():
    doms = (("x1", "x2"), ("y1",))
    ok = HyperSoftGraph(path_abc(), doms, {("x1", "y1"): {"a", "b"}, ("x2", "y1"): set()})
    assert hypersoft_graph_validate(ok).valid
    split = HyperSoftGraph(path_abc(), doms, {("x1", "y1"): {"a", "c"}})
    assert any("connected" in v for v in hypersoft_graph_validate(split).violations)
    with pytest.raises(DisconnectedBase):
        hypersoft_graph_validate(HyperSoftGraph(CrispGraph({"a", "b"}, []), doms, {}))


def test_hypersoft_graph_key_checks():
    bad = HyperSoftGraph(path_abc(), (("x",), ("x",)), {("x",): {"a"}})
    rep = hypersoft_graph_validate(bad)
    assert any("overlap" in v for v in rep.violations) and any("arity" in v for v in rep.violations)


def test_hypersoft_neutro_layers():
    n = lambda t: grade("Neutrosophic", t, 0.1, 0.1)
    hsg = HyperSoftGraph(
        path_abc(),
        (("x",), ("y",)),
        {("x", "y"): {"a", "b", "c"}},
        {("x", "y"): {"a": n(0.5), "b": n(0.6), "c": n(0.7)}},
        {("x", "y"): {("a", "b"): n(0.4), ("b", "c"): n(0.5)}},
    )
    assert hypersoft_graph_validate(hsg).valid
    assert hypersoft_graph_validate(hypersoft_graph_strip(hsg)).valid
    agg = neutro_soft_graph_aggregate(hypersoft_graph_to_neutro_soft(hsg))
    assert agg.vertex_grades["c"]["T"] == 0.7
    partial = HyperSoftGraph(hsg.base, hsg.domains, hsg.mapping, {("x", "y"): {"a": n(0.5)}}, {})
    assert not hypersoft_graph_validate(partial).valid


# ------------------------------------------------------------ weighted / labeled


def test_hyperweighted_example():
    base = CrispGraph({"v1", "v2", "v3"}, [("v1", "v2"), ("v2", "v3")])
    g = AnnotatedGraph(base, "weight", 1, edge_values={("v1", "v2"): frozenset({5, 7}), ("v2", "v3"): frozenset({3, 4, 6})})
    assert g.kind_name == "HyperWeightedGraph"
    assert validate_annotated(g).valid
    with pytest.raises(NonSingleton):
        annotated_reduce(g)
    empty = AnnotatedGraph(base, "weight", 1, edge_values={("v1", "v2"): frozenset(), ("v2", "v3"): frozenset({3})})
    assert not validate_annotated(empty).valid


def test_weight_lift_and_reduce():
    base = CrispGraph({"v1", "v2"}, [("v1", "v2")])
    g = AnnotatedGraph(base, "weight", 0, edge_values={("v1", "v2"): 5})
    up = annotated_lift(g)
    assert up.edge_values[("v1", "v2")] == frozenset({5}) and validate_annotated(up).valid
    top = annotated_lift(up)
    assert top.edge_values[("v1", "v2")] == frozenset({frozenset({5})}) and validate_annotated(top).valid
    assert annotated_reduce(annotated_reduce(top)) == g


def test_hyperlabeling_example():
    base = CrispGraph({"v1", "v2"}, [("v1", "v2")])
    g = AnnotatedGraph(
        base, "label", 1,
        {"v1": frozenset({"red", "blue"}), "v2": frozenset({"green"})},
        {("v1", "v2"): frozenset({"x"})},
        {"red", "blue", "green"},
        {"x"},
    )
    assert validate_annotated(g).valid
    wrong = AnnotatedGraph(base, "label", 0, {"v1": "purple", "v2": "red"}, {("v1", "v2"): "x"}, {"red"}, {"x"})
    assert any("purple" in v for v in validate_annotated(wrong).violations)
