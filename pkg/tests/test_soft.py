import pytest
from hypothesis import given, settings, strategies as st

from uncertain_lattice._common import AttributeTree, BadKey, UniverseMismatch, WrongArity, WrongDepth
from uncertain_lattice.grades import grade
from uncertain_lattice.soft import (
    GradedSoftLayer,
    HyperSoftSet,
    MultiSoftSet,
    RankedHyperSoftSet,
    RankedSoftSet,
    SoftExpertSet,
    SoftSet,
    TreeSoftSet,
    bijective_relax,
    bijective_validate,
    graded_soft_strip,
    graded_soft_validate,
    hypersoft_as_soft,
    hypersoft_validate,
    is_full,
    is_null,
    is_soft_subset,
    multisoft_to_treesoft,
    multisoft_validate,
    ranked_validate,
    soft_as_hypersoft,
    soft_expert_validate,
    soft_intersection,
    soft_to_treesoft,
    soft_union,
    superhypersoft_from_hypersoft,
    superhypersoft_to_hypersoft,
    superhypersoft_validate,
    treesoft_as_soft,
    treesoft_to_multisoft,
    treesoft_validate,
)

U = {"a", "b"}


def test_union_cases():
    f = SoftSet(U, {"e1": {"a"}})
    g = SoftSet(U, {"e2": {"b"}})
    assert soft_union(f, g).mapping == {"e1": {"a"}, "e2": {"b"}}
    assert soft_union(f, SoftSet(U, {"e1": {"b"}})).mapping == {"e1": {"a", "b"}}


def test_intersection_idempotent_and_disjoint():
    f = SoftSet(U, {"e1": {"a"}, "e2": {"b"}})
    assert soft_intersection(f, f) == f
    assert soft_intersection(f, SoftSet(U, {"e3": {"a"}})).mapping == {}


def test_subset_and_mismatch():
    assert is_soft_subset(SoftSet(U, {"e1": {"a"}}), SoftSet(U, {"e1": {"a", "b"}}))
    assert not is_soft_subset(SoftSet(U, {"e1": {"a", "b"}}), SoftSet(U, {"e1": {"a"}}))
    with pytest.raises(UniverseMismatch):
        soft_union(SoftSet(U, {}), SoftSet({"a"}, {}))


def test_null_and_full():
    empty = SoftSet(U, {"e1": set(), "e2": set()})
    assert is_null(empty) and not is_full(empty)
    assert is_full(SoftSet(U, {"e1": {"a"}, "e2": {"b"}}))
    assert is_full(SoftSet(U, {"e1": U, "e2": set()}))


def test_hypersoft_reinterpretation():
    h = HyperSoftSet({"x"}, (("a1",),), {("a1",): {"x"}})
    assert hypersoft_validate(h).valid
    assert hypersoft_as_soft(h).mapping == {"a1": {"x"}}
    overlap = HyperSoftSet({"x"}, (("a",), ("a", "b")), {})
    assert any("overlap" in v for v in hypersoft_validate(overlap).violations)
    with pytest.raises(WrongArity):
        hypersoft_as_soft(HyperSoftSet({"x"}, (("a",), ("b",)), {}))


def test_superhypersoft_wrap():
    h = HyperSoftSet({"x"}, (("a1", "a2"), ("b1", "b2")), {("a1", "b2"): {"x"}})
    s = superhypersoft_from_hypersoft(h)
    assert list(s.mapping) == [(frozenset(["a1"]), frozenset(["b2"]))]
    assert superhypersoft_validate(s).valid
    assert superhypersoft_to_hypersoft(s) == h
    assert superhypersoft_from_hypersoft(HyperSoftSet({"x"}, (("a",),), {})).mapping == {}


def depth_two():
    return AttributeTree.from_nested("A", {"A1": ["a", "b"]})


def test_treesoft_flatten():
    t = TreeSoftSet({"x"}, depth_two(), {frozenset(["a"]): {"x"}})
    assert treesoft_validate(t).valid
    m = treesoft_to_multisoft(t)
    assert m.families == (("a", "b"),) and m.mapping == {frozenset(["a"]): {"x"}}
    assert multisoft_validate(m).valid
    assert multisoft_to_treesoft(m) == t


def test_treesoft_errors():
    deep = AttributeTree.from_nested("A", {"A1": {"a": ["z"]}})
    with pytest.raises(WrongDepth):
        treesoft_to_multisoft(TreeSoftSet({"x"}, deep, {}))
    with pytest.raises(BadKey):
        treesoft_to_multisoft(TreeSoftSet({"x"}, depth_two(), {frozenset(["A1"]): {"x"}}))
    bad = TreeSoftSet({"x"}, depth_two(), {frozenset(["nope"]): {"x"}})
    assert not treesoft_validate(bad).valid


def test_bijective_examples():
    assert bijective_validate(SoftSet(U, {"e1": {"a"}, "e2": {"b"}})).valid
    rep = bijective_validate(SoftSet(U, {"e1": {"a"}, "e2": {"a", "b"}}))
    assert any("disjointness" in v for v in rep.violations)
    assert bijective_validate(SoftSet(U, {"e1": U})).valid


def test_bijective_relax():
    tree = AttributeTree.from_nested("A", ["p", "q"])
    bt = TreeSoftSet(U, tree, {frozenset(["p"]): {"a"}, frozenset(["q"]): {"a", "b"}}, bijective=True)
    assert not treesoft_validate(bt).valid
    assert treesoft_validate(bijective_relax(bt)).valid


def test_ranked_examples():
    assert ranked_validate(RankedSoftSet(U, {"t": (set(), {"a"}, {"b"})})).valid
    rep = ranked_validate(RankedSoftSet(U, {"t": (set(), {"a"}, {"a", "b"})}))
    assert any("share" in v for v in rep.violations)
    assert ranked_validate(RankedSoftSet(U, {"t": (U,)})).valid
    rh = RankedHyperSoftSet(U, (("p",), ("q",)), {("p", "q"): (set(), U), ("p",): (U,)})
    assert any("arity" in v for v in ranked_validate(rh).violations)


def test_graded_layer():
    layer = GradedSoftLayer(U, {"e1": ({"a"}, {"a": grade("Neutrosophic", 1, 0, 0)})})
    assert graded_soft_validate(layer).valid
    assert graded_soft_strip(layer) == SoftSet(U, {"e1": {"a"}})
    bad = GradedSoftLayer(U, {"e1": ({"a"}, {"a": grade("Neutrosophic", 1.5, 0, 0)})})
    assert not graded_soft_validate(bad).valid
    assert graded_soft_validate(GradedSoftLayer(U, {"e1": (set(), {})})).valid


def test_graded_layer_multisoft_shape():
    layer = GradedSoftLayer(U, {frozenset(["p", "q"]): ({"b"}, {"b": grade("Neutrosophic", 0.2, 0.3, 0.4)})},
                            "MultiSoft", {"families": [["p"], ["q"]]})
    assert graded_soft_validate(layer).valid
    assert isinstance(graded_soft_strip(layer), MultiSoftSet)


def test_soft_expert():
    base = dict(universe=U, parameters={"e1"}, experts={"expert1"}, opinions={"agree", "disagree"})
    assert soft_expert_validate(SoftExpertSet(**base, mapping={("e1", "expert1", "agree"): {"a"}})).valid
    assert not soft_expert_validate(SoftExpertSet(**base, mapping={("e1", "ghost", "agree"): {"a"}})).valid
    assert soft_expert_validate(SoftExpertSet(**base, mapping={})).valid


# ---- properties

ELEMS = ["u0", "u1", "u2", "u3", "u4"]
PARAMS = ["e0", "e1", "e2", "e3"]
subsets = st.frozensets(st.sampled_from(ELEMS))
softs = st.dictionaries(st.sampled_from(PARAMS), subsets).map(lambda m: SoftSet(ELEMS, m))


@settings(max_examples=60)
@given(softs, softs, softs)
def test_union_commutative_associative(f, g, h):
    assert soft_union(f, g) == soft_union(g, f)
    assert soft_union(soft_union(f, g), h) == soft_union(f, soft_union(g, h))


@settings(max_examples=60)
@given(softs)
def test_union_with_null_on_same_params(f):
    null = SoftSet(ELEMS, {e: set() for e in f.mapping})
    assert soft_union(f, null) == f


@settings(max_examples=60)
@given(softs, softs, softs)
def test_subset_partial_order(f, g, h):
    assert is_soft_subset(f, f)
    if is_soft_subset(f, g) and is_soft_subset(g, f):
        assert f == g
    if is_soft_subset(f, g) and is_soft_subset(g, h):
        assert is_soft_subset(f, h)


@settings(max_examples=60)
@given(softs)
def test_bijective_implies_full_and_unique_membership(f):
    if bijective_validate(f).valid:
        assert is_full(f)
        for x in ELEMS:
            assert sum(x in v for v in f.mapping.values()) == 1


@settings(max_examples=60)
@given(softs)
def test_n1_hypersoft_agrees_with_soft(f):
    h = soft_as_hypersoft(f)
    s = hypersoft_as_soft(h)
    assert s == f
    assert is_null(h) == is_null(f) and is_full(h) == is_full(f)
    for e, v in f.mapping.items():
        assert h.mapping[(e,)] == v


@settings(max_examples=60)
@given(softs)
def test_treesoft_roundtrips(f):
    assert treesoft_as_soft(soft_to_treesoft(f)) == f


@settings(max_examples=60)
@given(st.dictionaries(st.frozensets(st.sampled_from(["a", "b", "c"]), min_size=1), subsets))
def test_depth_two_roundtrip(mapping):
    tree = AttributeTree.from_nested("A", {"A1": ["a", "b"], "A2": ["c"]})
    t = TreeSoftSet(ELEMS, tree, mapping)
    assert multisoft_to_treesoft(treesoft_to_multisoft(t)) == t


@st.composite
def ranked_partitions(draw):
    k = draw(st.integers(0, 3))
    labels = [draw(st.integers(0, k)) for _ in ELEMS]
    return tuple(frozenset(x for x, l in zip(ELEMS, labels) if l == i) for i in range(k + 1))


@settings(max_examples=60)
@given(st.dictionaries(st.sampled_from(PARAMS), ranked_partitions(), min_size=1))
def test_ranked_cardinality_law(mapping):
    r = RankedSoftSet(ELEMS, mapping)
    assert ranked_validate(r).valid
    for blocks in r.mapping.values():
        assert sum(len(b) for b in blocks) == len(ELEMS)
