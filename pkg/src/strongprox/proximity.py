"""Strong proximity relations, an axiom harness, and the generated topology.

Relations are evaluated against a carrier (``FiniteSpace`` or ``PixelGrid``);
anything exposing ``near(space, a, b) -> bool`` can be passed where a
proximity is expected, which is how planted or broken relations are tested.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Any, Sequence

from .spaces import CapacityError, FiniteSpace


class Variant(str, enum.Enum):
    OVERLAP = "overlap"
    MIXED_OVERLAP = "mixedOverlap"
    INTERIOR_OVERLAP = "interiorOverlap"


@dataclass(frozen=True)
class StrongProximity:
    """A strong nearness relation selected by variant and special clauses.

    Clause precedence: an empty argument is never near; with ``whole_space``
    the whole carrier is near every nonempty set; with ``singletons`` two
    singletons are near iff equal and ``{x}`` is near ``B`` iff ``x`` lies in
    ``int(B)``; otherwise the variant predicate decides.
    """

    variant: Variant
    whole_space: bool = True
    singletons: bool = True

    def near(self, space, a, b) -> bool:
        if space.is_empty(a) or space.is_empty(b):
            return False
        if self.whole_space:
            full = space.whole()
            if space.equal(a, full) or space.equal(b, full):
                return True
        if self.singletons:
            pa, pb = space.point_of(a), space.point_of(b)
            if pa is not None and pb is not None:
                return pa == pb
            if pa is not None:
                return space.contains(space.interior(b), pa)
            if pb is not None:
                return space.contains(space.interior(a), pb)
        if self.variant is Variant.OVERLAP:
            return not space.is_empty(space.meet(a, b))
        if self.variant is Variant.MIXED_OVERLAP:
            return not (space.is_empty(space.meet(a, space.interior(b)))
                        and space.is_empty(space.meet(space.interior(a), b)))
        return not space.is_empty(space.meet(space.interior(a), space.interior(b)))

    def to_json(self) -> dict:
        return {"variant": self.variant.value, "whole_space": self.whole_space,
                "singletons": self.singletons}

    @classmethod
    def from_json(cls, spec: dict) -> "StrongProximity":
        return cls(Variant(spec["variant"]), bool(spec.get("whole_space", True)),
                   bool(spec.get("singletons", True)))


INTERIOR_OVERLAP = StrongProximity(Variant.INTERIOR_OVERLAP)
MIXED_OVERLAP = StrongProximity(Variant.MIXED_OVERLAP)
# plain intersection, with no provisos
OVERLAP = StrongProximity(Variant.OVERLAP, whole_space=False, singletons=False)


class PlainProximity(str, enum.Enum):
    CLOSURE_OVERLAP = "closureOverlap"
    OVERLAP = "overlap"

    def near(self, space, a, b) -> bool:
        if self is PlainProximity.OVERLAP:
            return not space.is_empty(space.meet(a, b))
        return not space.is_empty(space.meet(space.closure(a), space.closure(b)))


def strongly_near(kind, space, a, b) -> bool:
    return kind.near(space, a, b)


# ---------------------------------------------------------------------------
# axiom harness

AXIOMS = ("N0", "N1", "N2", "N3", "N4", "N5", "N6")


@dataclass
class AxiomResult:
    passed: bool = True
    checked: int = 0
    witness: dict | None = None

    def fail(self, **witness) -> None:
        if self.passed:
            self.passed = False
            self.witness = witness


@dataclass
class AxiomReport:
    results: dict[str, AxiomResult] = field(default_factory=lambda: {a: AxiomResult() for a in AXIOMS})

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failing(self) -> list[str]:
        return [a for a, r in self.results.items() if not r.passed]

    def to_json(self, describe=lambda s: s) -> dict:
        out = {}
        for name, r in self.results.items():
            w = None
            if r.witness is not None:
                w = {k: describe(v) for k, v in r.witness.items()}
            out[name] = {"passed": r.passed, "checked": r.checked, "witness": w}
        return out


def _is_powerset(space, family) -> bool:
    return isinstance(space, FiniteSpace) and len(family) == 1 << space.n and \
        set(family) == set(range(1 << space.n))


def _sample_points(space, s, rng: random.Random, limit: int) -> list:
    pts = list(space.points_in(s))
    if len(pts) > limit:
        pts = rng.sample(pts, limit)
    return pts


def check_axioms(kind, space, family: Sequence, *, seed: int = 0, n3_samples: int = 200,
                 point_samples: int = 16) -> AxiomReport:
    """Test N0-N6 over ``family``, recording the first counterexample per axiom.

    When ``family`` is the full power set of a finite space, N3 is checked
    exactly: a union containing ``B*`` ranges over every superset of ``B*``.
    Otherwise N3 uses all pairs plus seeded subfamilies of up to four members.
    """
    if not family:
        raise ValueError("family must be nonempty")
    rng = random.Random(seed)
    rep = AxiomReport()
    r = rep.results
    near = kind.near
    empty, whole = space.empty(), space.whole()
    nonempty = [a for a in family if not space.is_empty(a)]

    for a in family:
        r["N0"].checked += 1
        if near(space, empty, a):
            r["N0"].fail(A=empty, B=a, reason="empty set is near")
        elif not space.is_empty(a) and not near(space, whole, a):
            r["N0"].fail(A=whole, B=a, reason="whole space is not near a nonempty set")

    for i, a in enumerate(family):
        for b in family[i:]:
            ab = near(space, a, b)
            ba = near(space, b, a)
            r["N1"].checked += 1
            if ab != ba:
                r["N1"].fail(A=a, B=b)
            r["N2"].checked += 1
            if (ab or ba) and space.is_empty(space.meet(a, b)):
                r["N2"].fail(A=a, B=b)
            ia, ib = space.interior(a), space.interior(b)
            r["N4"].checked += 1
            if not space.is_empty(space.meet(ia, ib)) and not (ab and ba):
                r["N4"].fail(A=a, B=b)

    # N3
    n3 = r["N3"]
    with_interior = [b for b in nonempty if not space.is_empty(space.interior(b))]
    if _is_powerset(space, family):
        for a in family:
            for b in with_interior:
                if not near(space, a, b):
                    continue
                rest = space.complement(b)
                sub = rest
                while True:
                    u = b | sub
                    n3.checked += 1
                    if not near(space, a, u):
                        n3.fail(A=a, B_star=b, union=u)
                        break
                    if sub == 0:
                        break
                    sub = (sub - 1) & rest
    else:
        subfamilies = [(b, c) for b in with_interior for c in family]
        for _ in range(n3_samples if len(family) > 1 else 0):
            size = rng.randint(2, min(4, len(family)))
            members = rng.sample(range(len(family)), size)
            subfamilies.append(tuple(family[m] for m in members))
        for sub in subfamilies:
            stars = [b for b in sub if not space.is_empty(space.interior(b))]
            if not stars:
                continue
            u = sub[0]
            for b in sub[1:]:
                u = space.union(u, b)
            for a in family:
                star = next((b for b in stars if near(space, a, b)), None)
                if star is None:
                    continue
                n3.checked += 1
                if not near(space, a, u):
                    n3.fail(A=a, B_star=star, union=u)
                    break

    for a in family:
        for x in _sample_points(space, space.interior(a), rng, point_samples):
            r["N5"].checked += 1
            if not near(space, space.singleton(x), a):
                r["N5"].fail(x=space.singleton(x), A=a)

    if isinstance(space, FiniteSpace):
        pts = list(space.all_points())
        pairs = [(x, y) for x in pts for y in pts]
    else:
        pool = set()
        for a in nonempty:
            pool.update(_sample_points(space, a, rng, 4))
        pool = sorted(pool)
        pairs = [(x, y) for x in pool for y in pool]
    for x, y in pairs:
        r["N6"].checked += 1
        if near(space, space.singleton(x), space.singleton(y)) != (x == y):
            r["N6"].fail(x=space.singleton(x), y=space.singleton(y))
    return rep


def derived_family(space, family: Sequence) -> list:
    """Declared sets plus interiors, closures, complements and pairwise unions (deduplicated)."""
    out, seen = [], set()

    def add(s):
        k = space.key(s)
        if k not in seen:
            seen.add(k)
            out.append(s)

    for s in family:
        add(s)
    for s in list(family):
        add(space.interior(s))
        add(space.closure(s))
        add(space.complement(s))
    base = list(family)
    for i, a in enumerate(base):
        for b in base[i + 1:]:
            add(space.union(a, b))
    return out


# ---------------------------------------------------------------------------
# topology generated by a strong proximity

GENERATED_LIMIT = 8


def _require_small(space) -> None:
    if not isinstance(space, FiniteSpace):
        raise TypeError("exhaustive generation requires a FiniteSpace")
    if space.n > GENERATED_LIMIT:
        raise CapacityError(f"exhaustive subset search is limited to {GENERATED_LIMIT} points")


def generated_opens(kind, space: FiniteSpace) -> set[int]:
    """Sets strongly near each of their own points: ``{A : for all x in A, {x} near A}``."""
    _require_small(space)
    out = set()
    for a in space.all_subsets():
        if all(kind.near(space, 1 << x, a) for x in space.points_in(a)):
            out.add(a)
    return out


def intersection_condition(kind, space: FiniteSpace) -> tuple[bool, tuple | None]:
    """Whether ``x near A`` and ``x near B`` imply ``x near A & B``; first witness if not."""
    _require_small(space)
    subsets = list(space.all_subsets())
    for x in space.all_points():
        sx = 1 << x
        near_sets = [a for a in subsets if kind.near(space, sx, a)]
        for i, a in enumerate(near_sets):
            for b in near_sets[i:]:
                if not kind.near(space, sx, a & b):
                    return False, (x, a, b)
    return True, None


@dataclass
class CompatibilityResult:
    compatible: bool
    is_topology: bool
    generated: frozenset
    witness: Any = None

    def __bool__(self) -> bool:
        return self.compatible


def is_compatible(kind, space: FiniteSpace) -> CompatibilityResult:
    """Compare the proximity-generated topology with the space's own opens."""
    ok, witness = intersection_condition(kind, space)
    gen = generated_opens(kind, space)
    closed = FiniteSpace(space.points, sorted(gen)).opens
    return CompatibilityResult(ok and closed == space.opens, ok, frozenset(closed), witness)
