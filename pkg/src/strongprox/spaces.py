"""Explicit finite topological spaces.

Subsets are encoded as integer bitmasks over point indices: bit ``i`` set means
``points[i]`` is a member.  Every topology on a finite set is Alexandrov, so the
space keeps the minimal open neighbourhood of each point and derives interior,
openness and connectedness from it.
"""

from __future__ import annotations

import itertools
from typing import Hashable, Iterable, Iterator, Sequence

MAX_POINTS = 16


class CapacityError(ValueError):
    """Raised when an enumeration would exceed its safety bound."""


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def union_closure(generators: Iterable[int], limit: int | None = None) -> set[int]:
    """All unions of sub-collections of ``generators`` (the empty union included)."""
    family = {0}
    for g in set(generators):
        if g in family:
            continue
        family |= {f | g for f in family}
        if limit is not None and len(family) > limit:
            raise CapacityError(f"topology has more than {limit} open sets")
    return family


def minimal_neighbourhoods(subbase: Iterable[int], n: int) -> list[int]:
    """Intersection of all subbase members (and the whole set) containing each point."""
    full = (1 << n) - 1
    minimal = [full] * n
    for s in subbase:
        for i in bits(s):
            minimal[i] &= s
    return minimal


class FiniteSpace:
    """A finite set of points together with the topology generated by a basis.

    The basis is treated as a subbase: the opens are all unions of finite
    intersections of its members, together with the empty set and the whole
    space.
    """

    def __init__(self, points: Sequence[Hashable], basis: Iterable[Iterable[Hashable] | int] = ()):
        points = tuple(points)
        if len(points) > MAX_POINTS:
            raise CapacityError(f"{len(points)} points exceeds the {MAX_POINTS}-point cap")
        if len(set(points)) != len(points):
            raise ValueError("duplicate point identifiers")
        self.points = points
        self.index = {p: i for i, p in enumerate(points)}
        self.n = len(points)
        self.full = (1 << self.n) - 1
        self.basis = tuple(b if isinstance(b, int) else self.mask(b) for b in basis)
        for b in self.basis:
            if b & ~self.full:
                raise ValueError("basis element is not a subset of the points")
        self.minimal = tuple(minimal_neighbourhoods(self.basis, self.n))
        self.opens = frozenset(union_closure(self.minimal) | {self.full})
        self._interior: dict[int, int] = {}

    @classmethod
    def discrete(cls, points: Sequence[Hashable]) -> "FiniteSpace":
        return cls(points, [[p] for p in points])

    @classmethod
    def indiscrete(cls, points: Sequence[Hashable]) -> "FiniteSpace":
        return cls(points, [])

    def __repr__(self) -> str:
        opens = sorted(self.opens, key=lambda m: (popcount(m), m))
        return f"FiniteSpace({list(self.points)!r}, opens={[self.labels(o) for o in opens]!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.points == other.points and self.opens == other.opens

    def __hash__(self) -> int:
        return hash((self.points, self.opens))

    # -- subset encoding -------------------------------------------------
    def mask(self, members: Iterable[Hashable]) -> int:
        m = 0
        for p in members:
            try:
                m |= 1 << self.index[p]
            except KeyError:
                raise ValueError(f"unknown point {p!r}") from None
        return m

    def labels(self, mask: int) -> list:
        return [self.points[i] for i in bits(mask)]

    def singleton(self, point_index: int) -> int:
        return 1 << point_index

    def points_in(self, mask: int) -> Iterator[int]:
        return bits(mask)

    def all_points(self) -> range:
        return range(self.n)

    def all_subsets(self) -> range:
        if self.n > 10:
            raise CapacityError("refusing to enumerate the power set of more than 10 points")
        return range(1 << self.n)

    # -- set algebra shared with the pixel grid backend -------------------
    def empty(self) -> int:
        return 0

    def whole(self) -> int:
        return self.full

    @staticmethod
    def union(a: int, b: int) -> int:
        return a | b

    @staticmethod
    def meet(a: int, b: int) -> int:
        return a & b

    def complement(self, a: int) -> int:
        return self.full & ~a

    @staticmethod
    def is_empty(a: int) -> bool:
        return a == 0

    @staticmethod
    def equal(a: int, b: int) -> bool:
        return a == b

    @staticmethod
    def issubset(a: int, b: int) -> bool:
        return a & ~b == 0

    @staticmethod
    def point_of(a: int) -> int | None:
        """The point of a singleton, or ``None`` when ``a`` is not a singleton."""
        if a and a & (a - 1) == 0:
            return a.bit_length() - 1
        return None

    @staticmethod
    def contains(a: int, point: int) -> bool:
        return bool(a >> point & 1)

    @staticmethod
    def size(a: int) -> int:
        return popcount(a)

    def key(self, a: int) -> int:
        return a

    # -- topology ----------------------------------------------------------
    def interior(self, s: int) -> int:
        cached = self._interior.get(s)
        if cached is not None:
            return cached
        out = 0
        for i in bits(s):
            if self.minimal[i] & ~s == 0:
                out |= 1 << i
        self._interior[s] = out
        return out

    def closure(self, s: int) -> int:
        return self.complement(self.interior(self.complement(s)))

    def is_open(self, s: int) -> bool:
        return s in self.opens

    def is_closed(self, s: int) -> bool:
        return self.complement(s) in self.opens

    def is_regular_open(self, s: int) -> bool:
        return s != 0 and self.interior(self.closure(s)) == s

    def is_connected(self, s: int) -> bool:
        """Connectedness of ``s`` as a subspace.

        In a finite space the subspace is connected iff the graph joining ``p``
        and ``q`` whenever one lies in the other's minimal neighbourhood is
        connected on ``s``.
        """
        if s == 0:
            return True
        start = s & -s
        seen = start
        frontier = [start.bit_length() - 1]
        while frontier:
            i = frontier.pop()
            nbrs = self.minimal[i] & s
            for j in bits(s & ~seen):
                if nbrs >> j & 1 or self.minimal[j] >> i & 1:
                    seen |= 1 << j
                    frontier.append(j)
        return seen == s

    def closed_sets(self) -> list[int]:
        return sorted(self.complement(o) for o in self.opens)


def generate_topology(basis: Iterable[Iterable[Hashable]], points: Sequence[Hashable]) -> FiniteSpace:
    return FiniteSpace(points, basis)


def is_connected_bruteforce(space: FiniteSpace, s: int) -> bool:
    """Reference check: no two disjoint nonempty relatively open sets split ``s``."""
    relative = {o & s for o in space.opens}
    for u in relative:
        if u and u != s and (s & ~u) in relative:
            return False
    return True


def _transitive(rel: list[int], n: int) -> bool:
    for i in range(n):
        for j in bits(rel[i]):
            if rel[j] & ~rel[i]:
                return False
    return True


def all_topologies(points: Sequence[Hashable]) -> Iterator[FiniteSpace]:
    """Every topology on ``points`` (labelled), via the preorder correspondence.

    ``rel[i]`` is the minimal open neighbourhood of point ``i``; a family of
    such masks comes from a topology iff it is reflexive and transitive.
    """
    n = len(points)
    if n > 5:
        raise CapacityError("topology enumeration is limited to 5 points")
    others = [[j for j in range(n) if j != i] for i in range(n)]
    choices = []
    for i in range(n):
        opts = []
        for r in range(len(others[i]) + 1):
            for combo in itertools.combinations(others[i], r):
                m = 1 << i
                for j in combo:
                    m |= 1 << j
                opts.append(m)
        choices.append(opts)
    for rel in itertools.product(*choices):
        rel = list(rel)
        if _transitive(rel, n):
            yield FiniteSpace(points, rel)


def _canonical(space: FiniteSpace) -> tuple:
    best = None
    n = space.n
    for perm in itertools.permutations(range(n)):
        relabeled = [0] * n
        for i in range(n):
            m = 0
            for j in bits(space.minimal[i]):
                m |= 1 << perm[j]
            relabeled[perm[i]] = m
        key = tuple(relabeled)
        if best is None or key < best:
            best = key
    return best


def topologies_up_to_homeomorphism(points: Sequence[Hashable]) -> list[FiniteSpace]:
    """One representative topology per homeomorphism class."""
    seen: dict[tuple, FiniteSpace] = {}
    for space in all_topologies(points):
        key = _canonical(space)
        if key not in seen:
            seen[key] = FiniteSpace(points, list(key))
    return list(seen.values())
