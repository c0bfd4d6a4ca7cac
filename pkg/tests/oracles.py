"""Independent reference implementations used to derive expected values.

Everything here works on plain Python sets and loops, without the bitmask,
numpy or scipy machinery of the package, so agreement is meaningful.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable


def powerset(points: Iterable) -> list[frozenset]:
    pts = list(points)
    return [frozenset(c) for r in range(len(pts) + 1) for c in itertools.combinations(pts, r)]


def topology_from_subbase(points, subbase) -> set[frozenset]:
    """Close under finite intersections, then under arbitrary unions."""
    full = frozenset(points)
    inter = {full} | {frozenset(s) for s in subbase}
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(list(inter), 2):
            if a & b not in inter:
                inter.add(a & b)
                changed = True
    # finite unions reduce to repeated pairwise unions
    opens = {frozenset()} | inter
    frontier = set(opens)
    while frontier:
        fresh = {a | b for a in frontier for b in opens} - opens
        opens |= fresh
        frontier = fresh
    return opens


def is_topology(points, family: set[frozenset]) -> bool:
    full = frozenset(points)
    if frozenset() not in family or full not in family:
        return False
    return all(a | b in family and a & b in family for a in family for b in family)


def count_topologies(n: int) -> int:
    """Brute force over all families of subsets (feasible for n <= 3)."""
    pts = range(n)
    subsets = [s for s in powerset(pts) if s and len(s) < n]
    count = 0
    for r in range(len(subsets) + 1):
        for combo in itertools.combinations(subsets, r):
            fam = set(combo) | {frozenset(), frozenset(pts)}
            if is_topology(pts, fam):
                count += 1
    return count


def interior(opens, s: frozenset) -> frozenset:
    return frozenset().union(*[o for o in opens if o <= s])


def closure(points, opens, s: frozenset) -> frozenset:
    full = frozenset(points)
    return full - interior(opens, full - s)


def connected(opens, s: frozenset) -> bool:
    """No split of ``s`` into two nonempty relatively open parts."""
    s = frozenset(s)
    rel = {o & s for o in opens}
    for u in rel:
        if u and u != s and (s - u) in rel:
            return False
    return True


def interior_overlap_near(points, opens, a: frozenset, b: frozenset) -> bool:
    """The interior-overlap strong proximity written out clause by clause."""
    full = frozenset(points)
    if not a or not b:
        return False
    if a == full or b == full:
        return True
    if len(a) == 1 and len(b) == 1:
        return a == b
    if len(a) == 1:
        return next(iter(a)) in interior(opens, b)
    if len(b) == 1:
        return next(iter(b)) in interior(opens, a)
    return bool(interior(opens, a) & interior(opens, b))


def generated_opens(points, near) -> set[frozenset]:
    return {a for a in powerset(points) if all(near(frozenset([x]), a) for x in a)}


def hyper_opens(points, opens, near) -> tuple[list[frozenset], set[frozenset]]:
    """Members of CL(X) and the strongly hit-and-miss topology on them (miss = contained in A)."""
    full = frozenset(points)
    members = [c for c in powerset(points) if c and full - c in opens]
    subbase = []
    for v in opens:
        subbase.append(frozenset(i for i, e in enumerate(members) if near(e, v)))
    for a in opens:
        subbase.append(frozenset(i for i, e in enumerate(members) if e <= a))
    return members, topology_from_subbase(range(len(members)), subbase)


# -- pixels -------------------------------------------------------------------

def erode(rows: list[list[bool]], border: bool = True) -> list[list[bool]]:
    h, w = len(rows), len(rows[0])
    out = [[False] * w for _ in range(h)]
    for j in range(h):
        for i in range(w):
            ok = True
            for dj in (-1, 0, 1):
                for di in (-1, 0, 1):
                    jj, ii = j + dj, i + di
                    v = rows[jj][ii] if 0 <= jj < h and 0 <= ii < w else border
                    ok = ok and v
            out[j][i] = ok
    return out


def components(rows: list[list[bool]], adjacency: int = 8) -> int:
    h, w = len(rows), len(rows[0])
    seen = set()
    steps = [(-1, 0), (1, 0), (0, -1), (0, 1)]
    if adjacency == 8:
        steps += [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    count = 0
    for j in range(h):
        for i in range(w):
            if rows[j][i] and (j, i) not in seen:
                count += 1
                stack = [(j, i)]
                seen.add((j, i))
                while stack:
                    y, x = stack.pop()
                    for dy, dx in steps:
                        q = (y + dy, x + dx)
                        if 0 <= q[0] < h and 0 <= q[1] < w and rows[q[0]][q[1]] and q not in seen:
                            seen.add(q)
                            stack.append(q)
    return count


# -- plane geometry -------------------------------------------------------------

def invert(x: float, y: float, x0: float, y0: float, k: float) -> tuple[float, float]:
    d2 = (x - x0) ** 2 + (y - y0) ** 2
    return x0 + k * k * (x - x0) / d2, y0 + k * k * (y - y0) / d2


def rotate(x: float, y: float, cx: float, cy: float, degrees: float) -> tuple[float, float]:
    t = math.radians(degrees)
    dx, dy = x - cx, y - cy
    return cx + dx * math.cos(t) - dy * math.sin(t), cy + dx * math.sin(t) + dy * math.cos(t)
