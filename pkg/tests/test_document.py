import json
import random

import pytest

from uncertain_lattice import graphs as gr
from uncertain_lattice import hyperlift as hl
from uncertain_lattice import rough as ro
from uncertain_lattice.document import CODECS, Document, DocumentError, emit, parse
from uncertain_lattice.grades import Kind, grade, graded_set
from uncertain_lattice.lattice import default_registry
from uncertain_lattice.plithogenic import AttributeSpec, DCFMatrix

REG = default_registry()


def _roundtrip(kind, x):
    text = emit(Document(kind, x))
    doc = parse(text)
    assert doc.kind == kind
    assert emit(doc) == text
    spec = REG.kinds[kind]
    assert spec.validate(doc.payload).valid == spec.validate(x).valid
    return doc


def test_every_registered_kind_has_a_codec():
    assert set(CODECS) == set(REG.kinds)


def _hand_made():
    n = lambda t: grade("Neutrosophic", t, 0.1, 0.1)  # noqa: E731
    base = gr.CrispGraph({"a", "b", "c"}, [("a", "b"), ("b", "c")])
    key = frozenset(["x1", "x2"])
    return [
        ("DoubleValued", graded_set(Kind.DOUBLE_VALUED, {"x": (0.5, 0.2, 0.1, 0.3)})),
        ("HesitantFuzzyGraph", gr.SetValuedGraph(base, gr.SetVariant.HESITANT, {"a": {0.5}, "b": {0.4, 0.6}, "c": set()},
                                                 {("a", "b"): {0.3}, ("b", "c"): set()})),
        ("HyperSoftGraph", gr.HyperSoftGraph(base, (("x",), ("y",)), {("x", "y"): {"a", "b", "c"}},
                                             {("x", "y"): {"a": n(0.5), "b": n(0.6), "c": n(0.7)}},
                                             {("x", "y"): {("a", "b"): n(0.4), ("b", "c"): n(0.5)}})),
        ("SuperHyperPlithogenic", hl.SuperHyperPlithogenicSet(("x1", "x2"), 1, AttributeSpec("c", ("a", "b")), 1,
                                                              {(key, "a"): {(0.2,)}, (key, "b"): {(0.4,)}},
                                                              DCFMatrix(1, {("a", "b"): (0.1,)}))),
        ("Partition", ro.Partition({1, 2, 3}, [{1, 2}, {3}])),
        ("PartitionFamily", ro.PartitionFamily([ro.Partition("ab", [{"a"}, {"b"}]), ro.Partition("ab", ["ab"])])),
        ("SuperHyperGraph", gr.SuperHyperGraph({"a", "b"}, 2, [frozenset([frozenset(["a"]), frozenset(["a", "b"])])],
                                               [frozenset([frozenset(["a"]), frozenset(["a", "b"])])])),
    ]


@pytest.mark.parametrize("kind,x", _hand_made(), ids=[k for k, _ in _hand_made()])
def test_roundtrip_hand_made(kind, x):
    doc = _roundtrip(kind, x)
    assert REG.kinds[kind].validate(doc.payload).valid


def test_roundtrip_sampled_and_embedded():
    # every sampler, plus the image of every edge and reduction
    rng = random.Random(5)
    seen = set()
    for e in REG.edges + REG.reductions:
        spec = REG.kinds[e.special]
        if spec.sample is None:
            continue
        for _ in range(5):
            x = spec.sample(rng)
            _roundtrip(e.special, x)
            seen.add(e.special)
            try:
                y = e.fn(x)
            except Exception:
                continue
            _roundtrip(e.general, y)
            seen.add(e.general)
    assert len(seen) >= 60


def test_reals_use_twelve_significant_digits():
    s = graded_set(Kind.FUZZY, {"x": 0.1 + 0.2, "y": 1 / 3})
    text = emit(Document("Fuzzy", s))
    assert "0.3," not in text and '"mu": 0.3\n' in text
    assert '"mu": 0.333333333333\n' in text


def test_ints_and_mixed_elements_survive():
    s = graded_set(Kind.CRISP, {1: 1, "b": 0})
    doc = _roundtrip("Crisp", s)
    assert doc.payload.universe == (1, "b")


def test_ranges_compaction():
    from uncertain_lattice.grades import GradeRange

    s = graded_set(Kind.FUZZY, {"a": 1.4, "b": 0.2}, ranges=GradeRange(0, 1.5))
    j = json.loads(emit(Document("FuzzyOverSet", s)))
    assert j["payload"]["grades_ranges"] == {"mu": {"lo": 0.0, "hi": 1.5}}
    mixed = graded_set(Kind.FUZZY, {"a": 0.2})
    mixed.grades["b"] = grade("Fuzzy", 1.2, ranges=GradeRange(0, 2))
    mixed = type(mixed)(("a", "b"), mixed.grades)
    j = json.loads(emit(Document("Fuzzy", mixed)))
    recs = {r["key"]: r["value"] for r in j["payload"]["grades"]}
    assert "ranges" not in recs["a"] and recs["b"]["ranges"] == {"mu": {"lo": 0.0, "hi": 2.0}}
    assert parse(emit(Document("Fuzzy", mixed))).payload == mixed


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"kind": "Fuzzy"}',
        '{"kind": "Nope", "payload": {}}',
        '{"kind": "Fuzzy", "payload": {}}',
        '{"kind": "Fuzzy", "payload": {"universe": ["x"], "grades": [{"key": "x", "value": {"T": 1}}]}}',
        '{"kind": "Fuzzy", "payload": {"universe": ["x"], "grades": [{"key": "x", "value": {"mu": "high"}}]}}',
        '{"kind": "Fuzzy", "payload": {"universe": ["x"], "grades": {"x": 1}}}',
        '{"kind": "Fuzzy", "payload": {"universe": ["x"], "grades": []}, "extra": 1}',
        '{"kind": "Hypergraph", "payload": {"vertices": ["a"], "hyperedges": ["{a"]}}',
        '{"kind": "CrispGraph", "payload": {"vertices": ["a"], "edges": [["a", "b", "c"]]}}',
    ],
)
def test_malformed_documents_raise(text):
    with pytest.raises(DocumentError):
        parse(text)


def test_invalid_but_well_formed_parses():
    doc = parse('{"kind": "Fuzzy", "payload": {"universe": ["x"], "grades": [{"key": "x", "value": {"mu": 1.5}}]}}')
    assert not REG.kinds["Fuzzy"].validate(doc.payload).valid


def test_meta_is_preserved():
    s = graded_set(Kind.FUZZY, {"x": 0.5})
    doc = parse(emit(Document("Fuzzy", s, {"note": "ünïcode"})))
    assert doc.meta == {"note": "ünïcode"}
    assert "ünïcode" in emit(doc)
