"""Strong (delta-hat) connectedness: decompositions, strong chains and theorem harnesses.

Every ``*_check`` function is a theorem harness: it validates the theorem's
hypotheses (raising ``PreconditionError`` when they fail) and returns whether
the conclusion holds on the given instance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .spaces import CapacityError, FiniteSpace

MAX_CANDIDATES = 12


class PreconditionError(ValueError):
    """The inputs do not satisfy the hypotheses of the check."""


@dataclass
class Decomposition:
    pieces: list

    def __len__(self) -> int:
        return len(self.pieces)

    def union(self, space):
        out = space.empty()
        for p in self.pieces:
            out = space.union(out, p)
        return out


@dataclass
class Verification:
    ok: bool
    reason: str | None = None
    index: int | None = None
    diagnostics: list[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _piece_diagnostics(space, piece) -> dict:
    return {
        "nonempty": not space.is_empty(piece),
        "connected": space.is_connected(piece),
        "interior_connected": space.is_connected(space.interior(piece)),
    }


def verify_decomposition(kind, space, target, pieces) -> Verification:
    """Union equals ``target``; each piece and its interior connected; consecutive pieces near."""
    pieces = list(pieces.pieces if isinstance(pieces, Decomposition) else pieces)
    diags = [_piece_diagnostics(space, p) for p in pieces]
    if not pieces:
        return Verification(False, "no pieces", None, diags)
    for i, d in enumerate(diags):
        for cond in ("nonempty", "connected", "interior_connected"):
            if not d[cond]:
                return Verification(False, f"piece {i} fails {cond}", i, diags)
    for i in range(1, len(pieces)):
        near = kind.near(space, pieces[i - 1], pieces[i])
        diags[i]["near_previous"] = near
        if not near:
            return Verification(False, f"pieces {i - 1} and {i} are not strongly near", i, diags)
    union = Decomposition(pieces).union(space)
    if not space.equal(union, target):
        return Verification(False, "union of pieces differs from the target", None, diags)
    return Verification(True, None, None, diags)


def _valid_piece(space, p) -> bool:
    return (not space.is_empty(p) and space.is_connected(p)
            and space.is_connected(space.interior(p)))


def find_decomposition(kind, space, target, candidates: Sequence, max_pieces: int | None = None,
                       *, limit: int = MAX_CANDIDATES) -> Decomposition | None:
    """Lexicographically first ordering of distinct candidates decomposing ``target``.

    Depth-first over the strong-nearness graph of the usable candidates (those
    inside ``target`` that are connected with connected interior).  A state is
    the last piece plus the set of pieces used; failed states are memoised.
    """
    candidates = list(candidates)
    if len(candidates) > limit:
        raise CapacityError(f"{len(candidates)} candidates exceeds the bound of {limit}")
    n = len(candidates)
    max_pieces = n if max_pieces is None else min(max_pieces, n)
    usable = [space.issubset(c, target) and _valid_piece(space, c) for c in candidates]
    if space.is_empty(target) or not any(usable):
        return None
    near = [[usable[i] and usable[j] and i != j and kind.near(space, candidates[i], candidates[j])
             for j in range(n)] for i in range(n)]
    failed: set[tuple[int, int]] = set()
    path: list[int] = []

    def extend(last: int, used: int, covered) -> bool:
        if space.equal(covered, target):
            return True
        if len(path) >= max_pieces or (last, used) in failed:
            return False
        for j in range(n):
            if used >> j & 1 or not near[last][j]:
                continue
            path.append(j)
            if extend(j, used | 1 << j, space.union(covered, candidates[j])):
                return True
            path.pop()
        failed.add((last, used))
        return False

    for i in range(n):
        if not usable[i]:
            continue
        path[:] = [i]
        if extend(i, 1 << i, candidates[i]):
            return Decomposition([candidates[k] for k in path])
    return None


def delta_implies_connected(kind, space, target, d: Decomposition) -> bool:
    if not verify_decomposition(kind, space, target, d):
        raise PreconditionError("decomposition does not verify")
    return space.is_connected(target)


def closure_theorem_check(kind, space, d: Decomposition) -> bool:
    """Regular-open pieces: the closures of the pieces decompose ``cl`` of the union."""
    pieces = list(d.pieces)
    for i, p in enumerate(pieces):
        if not space.is_regular_open(p):
            raise PreconditionError(f"piece {i} is not regular open")
    target = d.union(space)
    if not verify_decomposition(kind, space, target, pieces):
        raise PreconditionError("decomposition does not verify")
    closed = [space.closure(p) for p in pieces]
    return bool(verify_decomposition(kind, space, space.closure(target), closed))


def between_theorem_check(kind, space, d: Decomposition, g) -> bool:
    """A set squeezed between the union and its closure is again decomposable."""
    pieces = list(d.pieces)
    for i, p in enumerate(pieces):
        if not space.is_regular_open(p):
            raise PreconditionError(f"piece {i} is not regular open")
    a = d.union(space)
    if not verify_decomposition(kind, space, a, pieces):
        raise PreconditionError("decomposition does not verify")
    if not (space.issubset(a, g) and space.issubset(g, space.closure(a))):
        raise PreconditionError("G is not between A and cl(A)")
    relative = [space.meet(space.closure(p), g) for p in pieces]
    if verify_decomposition(kind, space, g, relative):
        return True
    return find_decomposition(kind, space, g, relative, limit=max(MAX_CANDIDATES, len(relative))) is not None


@dataclass
class Neighbourhoods:
    """Open neighbourhoods of consecutive points ``x_i``, ``x_{i+1}`` inside a set ``A_i``."""

    first: object
    second: object
    container: object


def countable_criterion_check(kind, space, points: Sequence, witnesses: Sequence[Neighbourhoods],
                              target=None) -> bool:
    """Each consecutive point pair has open neighbourhoods inside a connected set with
    connected interior; those sets, in order, decompose the space (or ``target``)."""
    target = space.whole() if target is None else target
    if len(witnesses) != max(len(points) - 1, 1):
        raise PreconditionError("need one witness per consecutive point pair")
    containers = []
    for i, w in enumerate(witnesses):
        a = w.container
        if not _valid_piece(space, a):
            raise PreconditionError(f"container {i} is not connected with connected interior")
        for u, x in ((w.first, points[i]), (w.second, points[min(i + 1, len(points) - 1)])):
            if space.is_empty(u) or not space.is_open(u):
                raise PreconditionError(f"witness {i}: neighbourhood is empty or not open")
            if not space.issubset(u, a):
                raise PreconditionError(f"witness {i}: neighbourhood not inside its container")
            if not space.contains(u, x):
                raise PreconditionError(f"witness {i}: neighbourhood misses its point")
        containers.append(a)
    if not space.equal(Decomposition(containers).union(space), target):
        raise PreconditionError("containers do not cover the target")
    return bool(verify_decomposition(kind, space, target, containers))


@dataclass
class StrongChain:
    links: list
    indices: list[int]
    a: object
    b: object


def find_strong_chain(kind, space, cover: Sequence, a, b, *, target=None,
                      limit: int = MAX_CANDIDATES) -> StrongChain | None:
    """Lexicographically first strong chain of distinct cover elements from ``a`` to ``b``.

    ``a`` may only lie in the first link and ``b`` only in the last; consecutive
    links, and each link with itself, must be strongly near.
    """
    cover = list(cover)
    if len(cover) > limit:
        raise CapacityError(f"cover of {len(cover)} sets exceeds the bound of {limit}")
    for i, u in enumerate(cover):
        if not space.is_open(u):
            raise PreconditionError(f"cover element {i} is not open")
    target = space.whole() if target is None else target
    union = Decomposition(cover).union(space)
    if not space.issubset(target, union):
        raise PreconditionError("cover does not cover the space")
    n = len(cover)
    has_a = [space.contains(u, a) for u in cover]
    has_b = [space.contains(u, b) for u in cover]
    selfnear = [kind.near(space, u, u) for u in cover]
    near = [[selfnear[i] and selfnear[j] and i != j and kind.near(space, cover[i], cover[j])
             for j in range(n)] for i in range(n)]

    # links that can still reach a b-containing end without passing through a
    reach = [has_b[i] and selfnear[i] for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            if reach[i] or has_b[i] or not selfnear[i]:
                continue
            if any(near[i][j] and reach[j] and not has_a[j] for j in range(n)):
                reach[i] = changed = True

    path: list[int] = []

    def extend(last: int, used: int) -> bool:
        if has_b[last]:
            return True
        for j in range(n):
            if used >> j & 1 or has_a[j] or not near[last][j] or not reach[j]:
                continue
            path.append(j)
            if extend(j, used | 1 << j):
                return True
            path.pop()
        return False

    for i in range(n):
        if not (has_a[i] and selfnear[i] and reach[i]):
            continue
        path[:] = [i]
        if extend(i, 1 << i):
            return StrongChain([cover[k] for k in path], list(path), a, b)
    return None


def image_preservation_check(f, kind_x, space_x, kind_y, space_y, d: Decomposition) -> bool:
    """Image of a decomposition under a homeomorphism that is s.p.c. on its pieces."""
    from .maps import PixelTranslation, TableMap, image, is_homeomorphism_witness, spc_check

    pieces = list(d.pieces)
    target = d.union(space_x)
    if not verify_decomposition(kind_x, space_x, target, pieces):
        raise PreconditionError("decomposition does not verify in the source")
    if isinstance(space_x, FiniteSpace):
        if not isinstance(f, TableMap) or not is_homeomorphism_witness(f, space_x, space_y):
            raise PreconditionError("map is not a homeomorphism")
    elif isinstance(f, PixelTranslation):
        moved = image(f, space_x, space_y, target)
        if space_y.size(moved) != space_x.size(target):
            raise PreconditionError("translation pushes the set out of the window")
    elif type(f).__name__ != "Identity":
        raise PreconditionError("only identities and whole-pixel translations are grid homeomorphisms")
    rep = spc_check(f, kind_x, space_x, kind_y, space_y, pieces)
    if not rep.spc:
        raise PreconditionError("map is not s.p.c. on the pieces")
    return bool(verify_decomposition(kind_y, space_y, image(f, space_x, space_y, target), rep.images))
