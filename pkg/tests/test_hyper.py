import pytest
from hypothesis import given

import oracles
from conftest import finite_spaces
from strongprox.connect import PreconditionError
from strongprox.hyper import (ClosedSetError, Miss, build_hyper, homeomorphism_sweep, homeomorphism_theorem_check,
                              hyper_map, is_hyper_homeomorphism)
from strongprox.maps import TableMap
from strongprox.proximity import INTERIOR_OVERLAP, PlainProximity
from strongprox.spaces import CapacityError, FiniteSpace


def as_set(space, mask):
    return frozenset(space.labels(mask))


@given(finite_spaces(3))
def test_hyper_topology_matches_oracle(space):
    opens = {as_set(space, o) for o in space.opens}

    def near(a, b):
        return oracles.interior_overlap_near(space.points, opens, a, b)

    members, hopens = oracles.hyper_opens(space.points, opens, near)
    h = build_hyper(space, INTERIOR_OVERLAP, miss=Miss.PLUS)
    got_members = [as_set(space, m) for m in h.members]
    assert set(got_members) == set(members)

    def translate(fam):
        return frozenset(got_members[i] for i in range(len(got_members)) if fam >> i & 1)

    assert {translate(o) for o in h.opens} == {frozenset(members[i] for i in o) for o in hopens}


def test_discrete_two_points():
    # members {a}, {b}, {a,b}; DERIVED by the oracle: 8 open families
    h = build_hyper(FiniteSpace.discrete("ab"), INTERIOR_OVERLAP)
    assert len(h.members) == 3 and len(h.opens) == 8


@given(finite_spaces(3))
def test_plus_plus_is_no_finer_than_closure_far_miss(space):
    plus = build_hyper(space, INTERIOR_OVERLAP, miss=Miss.PLUS)
    pp = build_hyper(space, INTERIOR_OVERLAP, miss=Miss.PLUS_PLUS, plain=PlainProximity.CLOSURE_OVERLAP)
    # E far from X \ A in the closure sense forces E inside A
    for a in space.opens:
        assert pp.misses[a] & ~plus.misses[a] == 0


def test_family_encoding_round_trip():
    space = FiniteSpace("abc", [["a"], ["a", "b"]])
    h = build_hyper(space, INTERIOR_OVERLAP)
    fam = h.family(h.members[:2])
    assert h.closed_sets_of(fam) == h.members[:2]
    js = h.to_json()
    assert js["open_count"] == len(h.opens)
    assert len(js["members"]) == len(h.members)


def test_base_space_bound():
    with pytest.raises(CapacityError):
        build_hyper(FiniteSpace.discrete("abcdef"), INTERIOR_OVERLAP)


def test_hyper_map_requires_closed_images():
    x = FiniteSpace.discrete("ab")
    y = FiniteSpace("pq", [["p"]])
    hx, hy = build_hyper(x, INTERIOR_OVERLAP), build_hyper(y, INTERIOR_OVERLAP)
    with pytest.raises(ClosedSetError):
        hyper_map(TableMap({"a": "p", "b": "q"}), hx, hy)


def test_swap_induces_a_hyper_homeomorphism():
    x = FiniteSpace.discrete("abc")
    f = TableMap({"a": "b", "b": "c", "c": "a"})
    assert homeomorphism_theorem_check(x, x, INTERIOR_OVERLAP, INTERIOR_OVERLAP, f)
    hx = build_hyper(x, INTERIOR_OVERLAP)
    assert is_hyper_homeomorphism(hyper_map(f, hx, hx), hx, hx)
    assert not is_hyper_homeomorphism({0: 0}, hx, hx)


def test_theorem_preconditions():
    x = FiniteSpace.discrete("ab")
    with pytest.raises(PreconditionError):
        homeomorphism_theorem_check(x, x, INTERIOR_OVERLAP, INTERIOR_OVERLAP, TableMap({"a": "a", "b": "a"}))
    ind = FiniteSpace.indiscrete("ab")
    with pytest.raises(PreconditionError):
        homeomorphism_theorem_check(ind, ind, INTERIOR_OVERLAP, INTERIOR_OVERLAP, TableMap({"a": "a", "b": "b"}))


def test_sweep_on_two_points():
    res = homeomorphism_sweep(INTERIOR_OVERLAP, max_points=2)
    # compatible spaces are discrete: 1 + 2 bijections, all s.p.e.
    assert (res.cases, res.passed, res.failures) == (3, 3, [])
