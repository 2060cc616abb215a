import pytest
from hypothesis import given, strategies as st

from flatlinks import (
    MINUS,
    PLUS,
    Codeword,
    CrossingAppearsOnce,
    CrossingAppearsThrice,
    DuplicateComponentName,
    FlatLinkCode,
    Letter,
    MalformedToken,
    PositionOutOfRange,
    SamePosition,
    SameSignTwice,
    codes_equivalent_syntactically,
    intersection_number,
    parse_flat_link,
    relabeled,
    render_flat_link,
    total_sign,
    validate,
)
from helpers import codes, eta_oracle


def test_parse_single_knot():
    code = parse_flat_link("a+ b+ a- c- b- c+")
    assert len(code.components) == 1
    cw = code.components[0]
    assert cw.name == "A"
    assert [str(l) for l in cw.letters] == ["a+", "b+", "a-", "c-", "b-", "c+"]


def test_parse_named_components_and_comments():
    code = parse_flat_link("""
        # a two component link
        first: x+ a+ y- a-   # self-crossing a
        second: y+ x-
    """)
    assert code.component_names() == ("first", "second")
    assert len(code.components[0]) == 4
    assert len(code.components[1]) == 2


def test_parse_semicolon_separators_and_empty_component():
    code = parse_flat_link("A: ; c1- c2- c1+ c3+ ; c2+ c3-")
    assert code.component_names() == ("A", "B", "C")
    assert code.components[0].letters == ()


def test_parse_unnamed_blank_segments_are_skipped():
    code = parse_flat_link("a+ a-\n\n")
    assert len(code.components) == 1


def test_parse_rejects_malformed_token():
    with pytest.raises(MalformedToken) as exc:
        parse_flat_link("a+ b* a-")
    assert "b*" in str(exc.value)


def test_parse_rejects_duplicate_component_name():
    with pytest.raises(DuplicateComponentName) as exc:
        parse_flat_link("K: a+ a-\nK: b+ b-")
    assert "K" in str(exc.value)


def test_validate_rejects_single_occurrence():
    with pytest.raises(CrossingAppearsOnce) as exc:
        validate(parse_flat_link("a+ b+ a-"))
    assert "b" in str(exc.value)


def test_validate_rejects_third_occurrence():
    with pytest.raises(CrossingAppearsThrice) as exc:
        validate(parse_flat_link("a+ a- a+ b- b+ a-"))
    assert "a" in str(exc.value)


def test_validate_rejects_equal_signs():
    with pytest.raises(SameSignTwice) as exc:
        validate(parse_flat_link("a+ b+ a+ b-"))
    assert "a" in str(exc.value)


def test_catalog_classifies_ends():
    code = parse_flat_link("A: x+ a+ y- a-\nB: y+ x-")
    catalog = validate(code)
    assert catalog.self_crossings(0) == ("a",)
    assert catalog.pair_crossings(0, 1) == ("x", "y")
    x = catalog.kind("x")
    assert (x.plus_component, x.plus_pos) == (0, 0)
    assert (x.minus_component, x.minus_pos) == (1, 1)


def test_render_round_trip_golden():
    text = "A: x+ a+ y- a- ; B: y+ x-"
    code = parse_flat_link(text)
    assert parse_flat_link(render_flat_link(code)) == code


@given(codes(max_crossings=5))
def test_render_round_trip(code):
    assert parse_flat_link(render_flat_link(code)) == code


def test_intersection_number_golden():
    code = parse_flat_link("a+ b+ a- c- b- c+")
    # forward from a+ (0) to a- (2): just b+
    assert intersection_number(code, 0, 0, 2) == 1
    # wrap from a- (2) to a+ (0): c- b- c+
    assert intersection_number(code, 0, 2, 0) == -1
    assert intersection_number(code, 0, 5, 4) == 0


def test_intersection_number_counts_other_components_ends():
    code = parse_flat_link("A: x+ a+ y- a-\nB: y+ x-")
    # from x+ (0) to y- (2): the a+ letter counts even though a is a
    # self-crossing, and y's end counts even though y touches B
    assert intersection_number(code, 0, 0, 2) == 1
    assert intersection_number(code, 0, 0, 3) == 0


def test_intersection_number_rejects_bad_positions():
    code = parse_flat_link("a+ a-")
    with pytest.raises(SamePosition):
        intersection_number(code, 0, 1, 1)
    with pytest.raises(PositionOutOfRange):
        intersection_number(code, 0, 0, 2)


@given(codes(max_crossings=6), st.data())
def test_intersection_number_matches_oracle(code, data):
    comps = [i for i, cw in enumerate(code.components) if len(cw) >= 2]
    if not comps:
        return
    ci = data.draw(st.sampled_from(comps))
    n = len(code.components[ci])
    p = data.draw(st.integers(0, n - 1))
    q = data.draw(st.integers(0, n - 1).filter(lambda v: v != p))
    assert intersection_number(code, ci, p, q) == eta_oracle(code, ci, p, q)


@given(codes(max_crossings=6))
def test_reciprocity(code):
    # eta(u, v) + eta(v, u) counts everything except the ends
    for ci, cw in enumerate(code.components):
        s = total_sign(code, ci)
        for p in range(len(cw)):
            for q in range(p + 1, len(cw)):
                lhs = (intersection_number(code, ci, p, q)
                       + intersection_number(code, ci, q, p))
                assert lhs == s - cw.letters[p].sign - cw.letters[q].sign


@given(codes(max_crossings=5), st.data())
def test_additivity_through_interior_point(code, data):
    comps = [i for i, cw in enumerate(code.components) if len(cw) >= 3]
    if not comps:
        return
    ci = data.draw(st.sampled_from(comps))
    cw = code.components[ci]
    n = len(cw)
    p = data.draw(st.integers(0, n - 1))
    gap = data.draw(st.integers(2, n - 1))
    q = (p + gap) % n
    w = (p + data.draw(st.integers(1, gap - 1))) % n
    assert intersection_number(code, ci, p, q) == (
        intersection_number(code, ci, p, w)
        + cw.letters[w].sign
        + intersection_number(code, ci, w, q))


def test_total_sign():
    code = parse_flat_link("A: x+ a+ y- a-\nB: y+ x-")
    assert total_sign(code, 0) == 0
    assert total_sign(code, 1) == 0
    code2 = parse_flat_link("A: x+ y+\nB: x- y-")
    assert total_sign(code2, 0) == 2
    assert total_sign(code2, 1) == -2


def test_equivalence_rotation_only():
    c1 = parse_flat_link("a+ b+ a- b-")
    c2 = parse_flat_link("b+ a- b- a+")
    assert codes_equivalent_syntactically(c1, c2)
    assert not codes_equivalent_syntactically(c1, parse_flat_link("a- b+ a+ b-"))


def test_equivalence_needs_matching_names_without_relabel():
    c1 = parse_flat_link("K: a+ a-")
    c2 = parse_flat_link("a+ a-")
    assert not codes_equivalent_syntactically(c1, c2)
    assert codes_equivalent_syntactically(c1, c2, allow_relabel=True)


def test_equivalence_with_relabel_after_rotation():
    # rotating a+ b+ a- b- by one gives b+ a- b- a+, and renaming
    # b -> a, a -> b turns that into a+ b- a- b+
    c1 = parse_flat_link("a+ b+ a- b-")
    c2 = parse_flat_link("a+ b- a- b+")
    assert not codes_equivalent_syntactically(c1, c2)
    assert codes_equivalent_syntactically(c1, c2, allow_relabel=True)


def test_equivalence_distinguishes_interleaving():
    c1 = parse_flat_link("a+ b+ a- b-")
    c2 = parse_flat_link("a+ a- b+ b-")
    assert not codes_equivalent_syntactically(c1, c2, allow_relabel=True)


def test_equivalence_component_order_matters():
    c1 = parse_flat_link("A: a+ a-\nB:")
    c2 = parse_flat_link("A: \nB: a+ a-")
    assert not codes_equivalent_syntactically(c1, c2, allow_relabel=True)


def test_equivalence_relabel_is_one_bijection_across_components():
    # x <-> y works only if applied on both components at once
    c1 = parse_flat_link("A: x+ y+ z-\nB: x- y- z+")
    good = parse_flat_link("A: y+ x+ z-\nB: y- x- z+")
    bad = parse_flat_link("A: y+ x+ z-\nB: x- y- z+")
    assert codes_equivalent_syntactically(c1, good, allow_relabel=True)
    assert not codes_equivalent_syntactically(c1, bad, allow_relabel=True)


@given(codes(max_crossings=5), st.data())
def test_rotation_is_equivalent(code, data):
    rots = tuple(data.draw(st.integers(0, max(len(cw), 1) - 1))
                 for cw in code.components)
    rotated = code
    for i, k in enumerate(rots):
        rotated = rotated.rotated(i, k)
    assert codes_equivalent_syntactically(code, rotated)


def test_relabeled_keeps_unmapped_ids():
    code = parse_flat_link("a+ b+ a- b-")
    new = relabeled(code, {"a": "z"})
    assert render_flat_link(new) == "z+ b+ z- b-"


def test_letter_and_codeword_basics():
    l = Letter("x", PLUS)
    assert str(l) == "x+"
    assert l.partner == Letter("x", MINUS)
    cw = Codeword("A", (l, l.partner))
    assert len(cw) == 2
    assert cw.rotated(1).letters == (l.partner, l)
    code = FlatLinkCode((cw,))
    assert code.crossing_ids() == ("x",)
