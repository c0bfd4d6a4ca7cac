from hypothesis import given

import oracles
from conftest import finite_spaces, space_and_subsets
from strongprox.proximity import (INTERIOR_OVERLAP, MIXED_OVERLAP, OVERLAP, PlainProximity, StrongProximity,
                                  Variant, check_axioms, derived_family, generated_opens, is_compatible)
from strongprox.spaces import FiniteSpace, all_topologies


def as_set(space, mask):
    return frozenset(space.labels(mask))


@given(space_and_subsets(2))
def test_interior_overlap_matches_oracle(args):
    space, a, b = args
    opens = {as_set(space, o) for o in space.opens}
    expected = oracles.interior_overlap_near(space.points, opens, as_set(space, a), as_set(space, b))
    assert INTERIOR_OVERLAP.near(space, a, b) == expected


@given(finite_spaces())
def test_generated_opens_match_oracle(space):
    opens = {as_set(space, o) for o in space.opens}

    def near(a, b):
        return oracles.interior_overlap_near(space.points, opens, a, b)

    got = {as_set(space, g) for g in generated_opens(INTERIOR_OVERLAP, space)}
    assert got == oracles.generated_opens(space.points, near)


@given(space_and_subsets(2))
def test_clause_precedence(args):
    space, a, b = args
    for kind in (INTERIOR_OVERLAP, MIXED_OVERLAP):
        assert not kind.near(space, 0, a)
        if a:
            assert kind.near(space, space.full, a)
    # interior overlap implies mixed overlap implies plain overlap away from the special clauses
    if space.point_of(a) is None and space.point_of(b) is None and space.full not in (a, b):
        if INTERIOR_OVERLAP.near(space, a, b):
            assert MIXED_OVERLAP.near(space, a, b)
        if MIXED_OVERLAP.near(space, a, b):
            assert OVERLAP.near(space, a, b)


def test_interior_overlap_satisfies_axioms_on_small_spaces():
    for n in (1, 2, 3):
        for space in all_topologies("abc"[:n]):
            rep = check_axioms(INTERIOR_OVERLAP, space, list(space.all_subsets()))
            assert rep.passed, (space.opens, rep.failing())


def test_planted_asymmetry_is_caught():
    class Asymmetric:
        def near(self, space, a, b):
            if a == 0b01 and b == 0b10:
                return True
            return INTERIOR_OVERLAP.near(space, a, b)

    space = FiniteSpace.discrete("ab")
    rep = check_axioms(Asymmetric(), space, list(space.all_subsets()))
    assert {"N1", "N2", "N6"} <= set(rep.failing())
    assert rep.results["N1"].witness == {"A": 0b01, "B": 0b10}


def test_planted_empty_nearness_is_caught():
    class Greedy:
        def near(self, space, a, b):
            return True

    space = FiniteSpace.discrete("ab")
    assert "N0" in check_axioms(Greedy(), space, list(space.all_subsets())).failing()


def test_every_variant_passes_the_axioms_on_two_points():
    for space in all_topologies("ab"):
        for kind in (OVERLAP, MIXED_OVERLAP, INTERIOR_OVERLAP):
            assert check_axioms(kind, space, list(space.all_subsets())).passed


def test_discrete_spaces_are_compatible():
    for n in (1, 2, 3):
        assert is_compatible(INTERIOR_OVERLAP, FiniteSpace.discrete("abc"[:n]))


def test_only_discrete_spaces_are_compatible_up_to_three_points():
    for n in (1, 2, 3):
        for space in all_topologies("abc"[:n]):
            discrete = len(space.opens) == 1 << n
            assert bool(is_compatible(INTERIOR_OVERLAP, space)) == discrete


def test_indiscrete_generates_a_non_topology():
    res = is_compatible(INTERIOR_OVERLAP, FiniteSpace.indiscrete("ab"))
    assert not res.compatible


def test_closure_overlap_on_sierpinski():
    s = FiniteSpace("ab", [["a"]])
    a, b = s.mask("a"), s.mask("b")
    # cl{a} is everything, so {a} and {b} are plainly near
    assert PlainProximity.CLOSURE_OVERLAP.near(s, a, b)
    assert not PlainProximity.OVERLAP.near(s, a, b)


def test_json_round_trip():
    for kind in (INTERIOR_OVERLAP, MIXED_OVERLAP, OVERLAP):
        assert StrongProximity.from_json(kind.to_json()) == kind
    assert StrongProximity.from_json({"variant": "overlap"}).variant is Variant.OVERLAP


def test_derived_family_is_deduplicated():
    space = FiniteSpace.discrete("abc")
    fam = derived_family(space, [0b001, 0b001, 0b110])
    assert len(fam) == len(set(fam))
    assert 0b111 in fam
