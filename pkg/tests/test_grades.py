import math

import pytest
from hypothesis import given, settings, strategies as st

from uncertain_lattice._common import ArityMismatch, NoPath, NotSingleton, NoWitness, TooFewEvaluations
from uncertain_lattice.grades import (
    EMBEDDINGS,
    GradeRange,
    GradeTuple,
    Kind,
    MultiCrispGrade,
    MultiGrade,
    Regime,
    arity,
    classify_regime,
    collapse_multi,
    embed_grade,
    grade,
    graded_set,
    multicrisp_to_multineutro,
    reduce_grade,
    split_offset,
    validate_grade,
    validate_graded_set,
    validate_multigrade,
)

TOL = 1e-9


def close(a, b):
    assert len(a) == len(b)
    for x, y in zip(a, b):
        assert math.isclose(x, y, abs_tol=TOL), (a, b)


# ---- fixed values


def test_fuzzy_point_valid():
    assert validate_grade(grade("Fuzzy", 0.2)).valid


def test_neutro_boundary_sum_three():
    assert validate_grade(grade("Neutrosophic", 1, 1, 1)).valid


def test_vague_pair_over_one_rejected():
    rep = validate_grade(grade("Vague", 0.7, 0.5))
    assert not rep.valid
    assert any("sum" in v for v in rep.violations)


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        validate_grade(GradeTuple(Kind.NEUTROSOPHIC, (0.1, 0.2), (GradeRange(),) * 2))


def test_crisp_only_endpoints():
    assert validate_grade(grade("Crisp", 1)).valid
    assert validate_grade(grade("Crisp", 0)).valid
    assert not validate_grade(grade("Crisp", 0.5)).valid


def test_hyperbinary_scale():
    assert validate_grade(grade("HyperBinary", 2)).valid
    assert not validate_grade(grade("HyperBinary", 2.5)).valid


def test_range_invariant():
    with pytest.raises(ValueError):
        GradeRange(0.1, 1.0)
    with pytest.raises(ValueError):
        GradeRange(0.0, 0.9)
    assert GradeRange().is_standard


def test_extended_vague_bound():
    r = GradeRange(0, 1.5)
    assert validate_grade(grade("Vague", 0.7, 0.5, ranges=r)).valid
    assert not validate_grade(grade("Vague", 1.2, 0.5, ranges=r)).valid


def test_classify_examples():
    assert classify_regime(graded_set("Fuzzy", {"x": 0.3, "y": 1.0})) is Regime.STANDARD
    r = GradeRange(-1, 2)
    assert classify_regime(graded_set("Fuzzy", {"x": 1.3, "y": 0.4}, ranges=r)) is Regime.OVER
    assert classify_regime(graded_set("Fuzzy", {"x": 1.3, "y": -0.2}, ranges=r)) is Regime.OFF
    assert classify_regime(graded_set("Fuzzy", {"x": 0.3, "y": -0.2}, ranges=r)) is Regime.UNDER


def test_split_offset_example():
    r = GradeRange(-1, 2)
    s = graded_set("Neutrosophic", {"x": (1.2, 0, 0.1), "y": (0.3, 0, -0.4)}, ranges=r)
    over, under = split_offset(s)
    assert over.universe == ("x",)
    assert under.universe == ("y",)
    assert validate_graded_set(over).valid and validate_graded_set(under).valid
    assert over.grades["x"].ranges[0] == GradeRange(0, 2)
    assert under.grades["y"].ranges[0] == GradeRange(-1, 1)


def test_split_one_sided_and_standard():
    r = GradeRange(0, 2)
    over, under = split_offset(graded_set("Fuzzy", {"x": 1.5, "y": 0.5}, ranges=r))
    assert over.universe == ("x",) and under.universe == ()
    with pytest.raises(NoWitness):
        split_offset(graded_set("Fuzzy", {"x": 0.5}))


def test_split_dual_element_in_both_halves():
    r = GradeRange(-1, 2)
    over, under = split_offset(graded_set("Vague", {"z": (1.4, -0.6)}, ranges=r))
    assert over.universe == ("z",) == under.universe
    assert validate_graded_set(over).valid and validate_graded_set(under).valid


def test_embed_examples():
    assert embed_grade(grade("Crisp", 1), "Fuzzy").values == (1.0,)
    close(embed_grade(grade("Fuzzy", 0.5), "Neutrosophic").values, (0.5, 0, 0.5))
    close(embed_grade(grade("Pentapartitioned", 0.4, 0.1, 0.2, 0.1, 0.1), "Heptapartitioned").values,
          (0.4, 0, 0.1, 0.1, 0.2, 0, 0.1))
    with pytest.raises(NoPath):
        embed_grade(grade("Neutrosophic", 0.1, 0.1, 0.1), "Fuzzy")


def test_embed_vague_width():
    close(embed_grade(grade("Vague", 0.3, 0.5), "Neutrosophic").values, (0.3, 0.2, 0.5))


def test_reduce_examples():
    close(reduce_grade(grade("Quadripartitioned", 0.6, 0.2, 0.3, 0.1), "Neutrosophic").values, (0.4, 0.3, 0.1))
    q = reduce_grade(grade("Pentapartitioned", 0.4, 0.1, 0.2, 0.1, 0.1), "Quadripartitioned")
    close(q.values, (0.4, 0.1, 0.3, 0.1))
    assert q.ranges[2] == GradeRange(0, 2)
    close(reduce_grade(grade("HyperBinaryNeutrosophic", 2, 0, 0), "Neutrosophic").values, (1, 0, 0))


def test_collapse_examples():
    assert collapse_multi(MultiGrade((0.4,), (0.2,), (0.3,)), "SingletonOnly").values == (0.4, 0.2, 0.3)
    assert math.isclose(collapse_multi(MultiGrade((0.4, 0.6), (0.2,), (0.3,)), "Partner"), 0.375)
    assert collapse_multi(MultiGrade((1, 1), (1,), (1,)), "Partner") == 1
    with pytest.raises(NotSingleton):
        collapse_multi(MultiGrade((0.4, 0.6), (0.2,), (0.3,)), "SingletonOnly")


def test_multicrisp_examples():
    m = multicrisp_to_multineutro(MultiCrispGrade((1, 0)))
    assert m.truths == (1, 0) and m.indeterminacies == () and m.falsities == ()
    assert multicrisp_to_multineutro(MultiCrispGrade((1, 1, 1))).truths == (1, 1, 1)
    assert multicrisp_to_multineutro(MultiCrispGrade((0, 0))).truths == (0, 0)
    with pytest.raises(TooFewEvaluations):
        multicrisp_to_multineutro(MultiCrispGrade((1,)))
    assert validate_multigrade(m, proper=True).valid


def test_multigrade_proper_and_offset():
    assert not validate_multigrade(MultiGrade((0.4,), (0.2,), (0.3,)), proper=True).valid
    off = MultiGrade((1.2, -0.1), (0.0,), (0.3,), range=GradeRange(-0.5, 1.5))
    assert validate_multigrade(off).valid
    assert not validate_multigrade(MultiGrade((1.2, 0.9), (0.0,), (0.3,), range=GradeRange(-0.5, 1.5))).valid


# ---- properties

unit = st.floats(0, 1, allow_nan=False)


@st.composite
def valid_grades(draw, kind):
    if kind == "Crisp":
        return grade(kind, draw(st.sampled_from([0, 1])))
    if kind in ("Vague", "IntuitionisticFuzzy"):
        t = draw(unit)
        return grade(kind, t, draw(st.floats(0, 1 - t)))
    return grade(kind, *[draw(unit) for _ in range(arity(Kind(kind)))])


EMBED_SOURCES = sorted({a.value for a, _ in EMBEDDINGS} - {"HyperBinary"})


@settings(max_examples=60)
@given(st.data())
def test_every_embedding_path_validates(data):
    src = data.draw(st.sampled_from(EMBED_SOURCES))
    g = data.draw(valid_grades(src))
    for target in Kind:
        try:
            out = embed_grade(g, target)
        except NoPath:
            continue
        assert validate_grade(out).valid, (src, target, g, out)


@settings(max_examples=60)
@given(st.lists(unit, min_size=5, max_size=5))
def test_penta_hepta_roundtrip(vs):
    g = grade("Pentapartitioned", *vs)
    assert reduce_grade(embed_grade(g, "Heptapartitioned"), "Pentapartitioned") == g


@settings(max_examples=60)
@given(st.lists(unit, min_size=4, max_size=4))
def test_quad_penta_quad_values(vs):
    g = grade("Quadripartitioned", *vs)
    back = reduce_grade(embed_grade(g, "Pentapartitioned"), "Quadripartitioned")
    assert back.values == g.values
    assert validate_grade(back).valid


@settings(max_examples=60)
@given(st.lists(st.floats(-1, 2, allow_nan=False), min_size=1, max_size=6), st.randoms())
def test_regime_order_invariant(vals, rnd):
    r = GradeRange(-1, 2)
    items = {f"x{i}": v for i, v in enumerate(vals)}
    keys = list(items)
    rnd.shuffle(keys)
    a = graded_set("Fuzzy", items, ranges=r)
    b = graded_set("Fuzzy", {k: items[k] for k in keys}, ranges=r)
    assert classify_regime(a) is classify_regime(b)


@settings(max_examples=60)
@given(st.lists(unit, min_size=1, max_size=4), st.lists(unit, min_size=1, max_size=4), st.lists(unit, min_size=1, max_size=4))
def test_partner_in_unit_interval(t, i, f):
    v = collapse_multi(MultiGrade(tuple(t), tuple(i), tuple(f)), "Partner")
    assert -TOL <= v <= 1 + TOL
