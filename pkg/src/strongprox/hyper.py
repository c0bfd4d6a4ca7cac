"""Hyperspaces of nonempty closed sets with strongly hit-and-miss topologies.

A family of members of ``CL(X)`` is encoded as a bitmask over member indices,
so the hyperspace topology is itself a ``FiniteSpace`` whose points are the
closed sets.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .maps import TableMap, all_bijections, is_homeomorphism_witness, spc_check
from .proximity import PlainProximity, is_compatible
from .spaces import CapacityError, FiniteSpace, bits

MAX_BASE_POINTS = 5
MAX_OPENS = 1 << 16


class Miss(str, enum.Enum):
    PLUS = "plus"  # E misses X \ A
    PLUS_PLUS = "plusPlus"  # E is far from X \ A


class ClosedSetError(ValueError):
    pass


@dataclass
class HyperSpace:
    base: FiniteSpace
    members: list[int]
    hits: dict[int, int] = field(repr=False)
    misses: dict[int, int] = field(repr=False)
    topology: FiniteSpace = field(repr=False)

    @property
    def subbase(self) -> list[int]:
        return sorted(set(self.hits.values()) | set(self.misses.values()))

    @property
    def opens(self) -> frozenset[int]:
        return self.topology.opens

    def family(self, members) -> int:
        """Encode a collection of closed sets (base-space masks) as a hyper-subset."""
        index = {m: i for i, m in enumerate(self.members)}
        out = 0
        for m in members:
            out |= 1 << index[m]
        return out

    def closed_sets_of(self, fam: int) -> list[int]:
        return [self.members[i] for i in bits(fam)]

    def to_json(self) -> dict:
        lab = self.base.labels
        return {
            "members": [lab(m) for m in self.members],
            "hit": {"|".join(map(str, lab(v))) or "{}": [lab(e) for e in self.closed_sets_of(f)]
                    for v, f in sorted(self.hits.items())},
            "miss": {"|".join(map(str, lab(a))) or "{}": [lab(e) for e in self.closed_sets_of(f)]
                     for a, f in sorted(self.misses.items())},
            "open_count": len(self.opens),
        }


def build_hyper(space: FiniteSpace, kind, plain: PlainProximity = PlainProximity.CLOSURE_OVERLAP,
                miss: Miss = Miss.PLUS) -> HyperSpace:
    """``CL(X)`` with subbase ``{V-hit : V open} | {A-miss : A open}``."""
    if space.n > MAX_BASE_POINTS:
        raise CapacityError(f"hyperspaces are limited to {MAX_BASE_POINTS} base points")
    members = sorted((c for c in space.closed_sets() if c), key=lambda m: (bin(m).count("1"), m))
    hits, misses = {}, {}
    for v in sorted(space.opens):
        fam = 0
        for i, e in enumerate(members):
            if kind.near(space, e, v):
                fam |= 1 << i
        hits[v] = fam
    for a in sorted(space.opens):
        outside = space.complement(a)
        fam = 0
        for i, e in enumerate(members):
            if miss is Miss.PLUS:
                ok = e & outside == 0
            else:
                ok = not plain.near(space, e, outside)
            if ok:
                fam |= 1 << i
        misses[a] = fam
    subbase = set(hits.values()) | set(misses.values())
    topology = FiniteSpace(tuple(range(len(members))), sorted(subbase))
    if len(topology.opens) > MAX_OPENS:
        raise CapacityError("hyperspace topology too large to enumerate")
    return HyperSpace(space, members, hits, misses, topology)


def hyper_map(f: TableMap, hx: HyperSpace, hy: HyperSpace) -> dict[int, int]:
    """``E -> f(E)`` as a map from member indices of ``hx`` to member indices of ``hy``."""
    index = {m: i for i, m in enumerate(hy.members)}
    out = {}
    for i, e in enumerate(hx.members):
        img = f.image(hx.base, hy.base, e)
        if img not in index:
            raise ClosedSetError(f"image of {hx.base.labels(e)} is not closed in the target")
        out[i] = index[img]
    return out


def _map_family(table: dict[int, int], fam: int) -> int:
    out = 0
    for i in bits(fam):
        out |= 1 << table[i]
    return out


def is_hyper_homeomorphism(table: dict[int, int], hx: HyperSpace, hy: HyperSpace) -> bool:
    if sorted(table.values()) != list(range(len(hy.members))) or len(table) != len(hx.members):
        return False
    inv = {v: k for k, v in table.items()}
    return all(_map_family(table, o) in hy.opens for o in hx.opens) and \
        all(_map_family(inv, o) in hx.opens for o in hy.opens)


def homeomorphism_theorem_check(space_x: FiniteSpace, space_y: FiniteSpace, kind_x, kind_y,
                                f: TableMap) -> bool:
    """Bijective s.p.e. between compatible spaces: is the induced hyperspace map a homeomorphism?"""
    from .connect import PreconditionError

    if not f.is_bijective(space_x, space_y):
        raise PreconditionError("map is not bijective")
    if not is_compatible(kind_x, space_x) or not is_compatible(kind_y, space_y):
        raise PreconditionError("proximities are not compatible with the topologies")
    family = list(space_x.all_subsets())
    if not spc_check(f, kind_x, space_x, kind_y, space_y, family).spe:
        raise PreconditionError("map is not a strong proximal equivalence")
    hx = build_hyper(space_x, kind_x, miss=Miss.PLUS)
    hy = build_hyper(space_y, kind_y, miss=Miss.PLUS)
    try:
        table = hyper_map(f, hx, hy)
    except ClosedSetError:
        return False
    return is_hyper_homeomorphism(table, hx, hy)


@dataclass
class SweepResult:
    cases: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)
    skipped: int = 0


def homeomorphism_sweep(kind, max_points: int = 3) -> SweepResult:
    """All bijective s.p.e. maps between compatible topologies on up to ``max_points`` points."""
    from .spaces import all_topologies

    res = SweepResult()
    for n in range(1, max_points + 1):
        pts = "abcde"[:n]
        spaces = [s for s in all_topologies(pts) if is_compatible(kind, s)]
        for sx in spaces:
            fam = list(sx.all_subsets())
            for sy in spaces:
                for f in all_bijections(sx, sy):
                    if not spc_check(f, kind, sx, kind, sy, fam).spe:
                        res.skipped += 1
                        continue
                    res.cases += 1
                    if homeomorphism_theorem_check(sx, sy, kind, kind, f):
                        res.passed += 1
                    else:
                        res.failures.append((sx, sy, f))
    return res


__all__ = [
    "HyperSpace", "Miss", "ClosedSetError", "build_hyper", "hyper_map", "is_hyper_homeomorphism",
    "homeomorphism_theorem_check", "homeomorphism_sweep", "is_homeomorphism_witness",
]
