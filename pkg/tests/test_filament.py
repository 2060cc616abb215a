import pytest
from hypothesis import given, settings

from flatlinks import (
    Filamentation,
    InstanceTooLarge,
    NonzeroFlatLinking,
    PairNotInPartition,
    PairPartition,
    PartitionNotCovering,
    PartsOverlap,
    brute_force_filamentation,
    component_filamentation,
    elementary_switch,
    greedy_zero_sum_partition,
    link_filamentation,
    link_polynomial,
    parse_flat_link,
    self_polynomial,
    verify_filamentation,
)
from helpers import codes, matching_sum_oracle, zero_matching_exists_oracle


def test_filamentation_is_stored_canonically():
    f = Filamentation(("b", "a"), (("y", "x"), ("c", "d")))
    assert f.monofilaments == ("a", "b")
    assert f.bifilaments == (("c", "d"), ("x", "y"))
    assert list(f.parts()) == [("a",), ("b",), ("c", "d"), ("x", "y")]
    assert f.to_json() == {"mono": ["a", "b"], "bi": [["c", "d"], ["x", "y"]]}


def test_verify_accepts_golden_bifilament():
    code = parse_flat_link("a+ b+ a- b-")
    f = Filamentation((), (("a", "b"),))
    assert verify_filamentation(code, f) == []


def test_verify_accepts_monofilaments():
    code = parse_flat_link("a+ a- b+ b-")
    assert verify_filamentation(code, Filamentation(("a", "b"), ())) == []


def test_verify_rejects_overlap_and_noncover():
    code = parse_flat_link("a+ b+ a- b-")
    with pytest.raises(PartsOverlap):
        verify_filamentation(code, Filamentation(("a",), (("a", "b"),)))
    with pytest.raises(PartitionNotCovering):
        verify_filamentation(code, Filamentation(("a",), ()))
    with pytest.raises(PartitionNotCovering) as exc:
        verify_filamentation(code, Filamentation(("a", "b", "z"), ()))
    assert "z" in str(exc.value)


def test_verify_reports_nonzero_arc_counts():
    code = parse_flat_link("a+ b+ a- b-")
    violations = verify_filamentation(code, Filamentation(("a", "b"), ()))
    assert len(violations) == 2
    assert all("+1" in str(v) or "-1" in str(v) for v in violations)


def test_verify_reports_misaligned_bifilament():
    code = parse_flat_link("A: x+ a+ y- a-\nB: y+ x-")
    violations = verify_filamentation(code, Filamentation(("y",), (("a", "x"),)))
    reasons = {v.part: v.reason for v in violations}
    assert ("a", "x") in reasons and "align" in reasons[("a", "x")]
    assert ("y",) in reasons and "two components" in reasons[("y",)]


def test_component_filamentation_golden():
    code = parse_flat_link("a+ b+ a- b-")
    f = component_filamentation(code, 0)
    assert f == Filamentation((), (("a", "b"),))
    assert verify_filamentation(code, f) == []


def test_component_filamentation_monofilament():
    # adjacent ends: zero letters strictly between them
    code = parse_flat_link("a+ a-")
    assert component_filamentation(code, 0) == Filamentation(("a",), ())


def test_component_filamentation_none_when_poly_nonzero():
    code = parse_flat_link("a+ b+ a- c- b- c+")
    assert not self_polynomial(code, 0).is_zero
    assert component_filamentation(code, 0) is None
    assert brute_force_filamentation(code) is None


@settings(deadline=None)
@given(codes(max_crossings=6, max_components=1))
def test_component_filamentation_iff_zero_poly_iff_brute_force(code):
    found = component_filamentation(code, 0)
    zero = self_polynomial(code, 0).is_zero
    brute = brute_force_filamentation(code)
    assert (found is not None) == zero == (brute is not None)
    if found is not None:
        assert verify_filamentation(code, found) == []
        assert verify_filamentation(code, brute) == []


def test_greedy_zero_sum_partition_golden():
    code = parse_flat_link("A: x1+ y1- x2+ y2-\nB: y1+ x1- y2+ x2-")
    part = greedy_zero_sum_partition(code, 0, 1)
    assert part is not None
    assert part.pairs == (("x1", "y1"), ("x2", "y2"))
    for pair in part.pairs:
        assert matching_sum_oracle(code, 0, 1, [pair]) == 0


def test_greedy_zero_sum_partition_none_when_every_pair_misses():
    # every one of the four candidate pairs has arc-count sum +-1, so
    # no matching exists even though the total coefficient is 0
    code = parse_flat_link("A: x1+ x2+ y1- y2-\nB: y2+ x2- x1- y1+")
    assert greedy_zero_sum_partition(code, 0, 1) is None
    assert link_polynomial(code).is_zero
    assert brute_force_filamentation(code) is None


def test_greedy_zero_sum_partition_requires_balance():
    code = parse_flat_link("A: x+ y+\nB: x- y-")
    with pytest.raises(NonzeroFlatLinking):
        greedy_zero_sum_partition(code, 0, 1)


@settings(deadline=None)
@given(codes(max_crossings=6, min_components=2, max_components=2, balanced=True))
def test_greedy_matches_exhaustive_existence(code):
    part = greedy_zero_sum_partition(code, 0, 1)
    exists = zero_matching_exists_oracle(code, 0, 1)
    assert (part is not None) == exists
    if part is not None:
        for x, y in part.pairs:
            assert matching_sum_oracle(code, 0, 1, [(x, y)]) == 0


def test_link_filamentation_golden():
    code = parse_flat_link("A: x+ a+ y- a-\nB: y+ x-")
    # coeff(A, B) is +1, so no zero-sum pairing of {x, y} can exist
    assert link_filamentation(code) is None
    assert brute_force_filamentation(code) is None


def test_link_filamentation_none_on_nonzero_linking():
    code = parse_flat_link("A: x+ y+\nB: x- y-")
    assert link_filamentation(code) is None
    assert brute_force_filamentation(code) is None


def test_link_filamentation_combines_components_and_pairs():
    code = parse_flat_link("A: a+ a- x+ y-\nB: y+ x-")
    f = link_filamentation(code)
    assert f is not None
    assert verify_filamentation(code, f) == []
    assert ("a",) in f.parts()
    assert ("x", "y") in f.parts()


@settings(deadline=None)
@given(codes(max_crossings=6, balanced=True))
def test_greedy_link_filamentation_matches_brute_force(code):
    greedy = link_filamentation(code)
    brute = brute_force_filamentation(code)
    assert (greedy is None) == (brute is None)
    if greedy is not None:
        assert verify_filamentation(code, greedy) == []
        assert verify_filamentation(code, brute) == []


@settings(deadline=None)
@given(codes(max_crossings=5))
def test_filamentation_forces_zero_invariant(code):
    if brute_force_filamentation(code) is not None:
        assert link_polynomial(code).is_zero


def test_brute_force_cap():
    words = " ".join(f"c{i}+ c{i}-" for i in range(13))
    with pytest.raises(InstanceTooLarge):
        brute_force_filamentation(parse_flat_link(words))
    # a wider explicit cap lifts the limit
    f = brute_force_filamentation(parse_flat_link(words), max_crossings=13)
    assert len(f.monofilaments) == 13


def test_elementary_switch_golden():
    part = PairPartition(0, 1, (("x1", "y1"), ("x2", "y2")))
    switched = elementary_switch(part, ("x1", "y1"), ("x2", "y2"))
    assert switched.pairs == (("x1", "y2"), ("x2", "y1"))
    # switching again is the identity
    back = elementary_switch(switched, ("x1", "y2"), ("x2", "y1"))
    assert back == part


def test_elementary_switch_rejects_bad_pairs():
    part = PairPartition(0, 1, (("x1", "y1"), ("x2", "y2")))
    with pytest.raises(ValueError):
        elementary_switch(part, ("x1", "y1"), ("x1", "y1"))
    with pytest.raises(PairNotInPartition):
        elementary_switch(part, ("x1", "y2"), ("x2", "y2"))


def test_elementary_switch_preserves_total_sum():
    code = parse_flat_link("A: x1+ x2+ y1- y2-\nB: y2+ x2- x1- y1+")
    p1 = PairPartition(0, 1, (("x1", "y1"), ("x2", "y2")))
    p2 = elementary_switch(p1, ("x1", "y1"), ("x2", "y2"))
    assert (matching_sum_oracle(code, 0, 1, p1.pairs)
            == matching_sum_oracle(code, 0, 1, p2.pairs))


def test_elementary_switch_reaches_every_matching():
    # the switch generates all of S_n on the minus side
    start = PairPartition(0, 1, (("a", "p"), ("b", "q"), ("c", "r")))
    seen = {start.pairs}
    frontier = [start]
    while frontier:
        part = frontier.pop()
        pairs = part.pairs
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                nxt = elementary_switch(part, pairs[i], pairs[j])
                if nxt.pairs not in seen:
                    seen.add(nxt.pairs)
                    frontier.append(nxt)
    assert len(seen) == 6
