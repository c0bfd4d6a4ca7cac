"""Point maps on the plane and on finite spaces, and s.p.c. / open-map checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

import numpy as np

from .geometry import Disk, Shape, Triangle, difference
from .grid import PixelGrid
from .proximity import INTERIOR_OVERLAP, MIXED_OVERLAP, OVERLAP
from .spaces import FiniteSpace, bits


class PoleError(ValueError):
    """A circle inversion was evaluated at its centre."""


class NotInvertibleError(ValueError):
    pass


class PointMap:
    """Base class for plane maps.

    ``apply`` works on ``(..., 2)`` arrays.  Maps that are invertible without a
    domain split also provide ``inverse_apply``; region images go through
    inverse mapping of output pixel centres.
    """

    invertible = True

    def apply(self, xy: np.ndarray) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def inverse_apply(self, xy: np.ndarray) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def to_json(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True)
class Identity(PointMap):
    def apply(self, xy):
        return np.array(xy, dtype=float)

    inverse_apply = apply

    def to_json(self):
        return {"type": "identity"}


@dataclass(frozen=True)
class Rotation(PointMap):
    center: tuple[float, float]
    degrees: float

    def _rotate(self, xy, deg):
        xy = np.asarray(xy, dtype=float)
        t = np.deg2rad(deg)
        c, s = np.cos(t), np.sin(t)
        dx, dy = xy[..., 0] - self.center[0], xy[..., 1] - self.center[1]
        return np.stack([self.center[0] + c * dx - s * dy, self.center[1] + s * dx + c * dy], axis=-1)

    def apply(self, xy):
        return self._rotate(xy, self.degrees)

    def inverse_apply(self, xy):
        return self._rotate(xy, -self.degrees)

    def to_json(self):
        return {"type": "rotation", "center": list(self.center), "degrees": self.degrees}


@dataclass(frozen=True)
class Scaling(PointMap):
    center: tuple[float, float]
    factor: float

    def __post_init__(self):
        if self.factor == 0:
            raise NotInvertibleError("scaling by zero collapses the plane")

    def apply(self, xy):
        xy = np.asarray(xy, dtype=float)
        return np.asarray(self.center) + self.factor * (xy - np.asarray(self.center))

    def inverse_apply(self, xy):
        xy = np.asarray(xy, dtype=float)
        return np.asarray(self.center) + (xy - np.asarray(self.center)) / self.factor

    def to_json(self):
        return {"type": "scaling", "center": list(self.center), "factor": self.factor}


def invert_points(xy: np.ndarray, center, k: float) -> np.ndarray:
    """Circle inversion, vectorised; the centre maps to ``inf``."""
    xy = np.asarray(xy, dtype=float)
    dx, dy = xy[..., 0] - center[0], xy[..., 1] - center[1]
    d2 = dx * dx + dy * dy
    scale = k * k / np.where(d2 > 0, d2, 1.0)
    out = np.stack([center[0] + scale * dx, center[1] + scale * dy], axis=-1)
    return np.where((d2 > 0)[..., None], out, np.inf)


@dataclass(frozen=True)
class Inversion(PointMap):
    """Inversion in the circle ``(center, k)``; identity off ``domain`` when one is given."""

    center: tuple[float, float]
    k: float
    domain: Shape | None = None

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError("inversion radius must be positive")

    @property
    def invertible(self):
        return self.domain is None

    @property
    def circle(self) -> Disk:
        return Disk(self.center, self.k)

    def apply(self, xy):
        xy = np.asarray(xy, dtype=float)
        if self.domain is None:
            return invert_points(xy, self.center, self.k)
        active = self.domain.contains(xy)
        out = xy.copy()
        out[active] = invert_points(xy[active], self.center, self.k)
        return out

    def inverse_apply(self, xy):
        if self.domain is not None:
            raise NotInvertibleError("a domain-restricted inversion has no pointwise inverse")
        return invert_points(xy, self.center, self.k)

    def unrestricted(self) -> "Inversion":
        return Inversion(self.center, self.k)

    def to_json(self):
        out = {"type": "inversion", "center": list(self.center), "k": self.k}
        if self.domain is not None:
            out["domain"] = self.domain.to_json()
        return out


@dataclass(frozen=True)
class Composition(PointMap):
    """``maps[0]`` is applied first."""

    maps: tuple[PointMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))

    @property
    def invertible(self):
        return all(m.invertible for m in self.maps)

    def apply(self, xy):
        out = np.asarray(xy, dtype=float)
        for m in self.maps:
            out = m.apply(out)
        return out

    def inverse_apply(self, xy):
        out = np.asarray(xy, dtype=float)
        for m in reversed(self.maps):
            out = m.inverse_apply(out)
        return out

    def to_json(self):
        return {"type": "composition", "maps": [m.to_json() for m in self.maps]}


@dataclass(frozen=True)
class Piecewise(PointMap):
    """Apply the first piece whose domain contains the point; identity elsewhere."""

    pieces: tuple[tuple[Shape, PointMap], ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple((d, m) for d, m in self.pieces))

    invertible = False

    def apply(self, xy):
        xy = np.asarray(xy, dtype=float)
        out = xy.copy()
        done = np.zeros(xy.shape[:-1], dtype=bool)
        for dom, m in self.pieces:
            sel = dom.contains(xy) & ~done
            if sel.any():
                out[sel] = m.apply(xy[sel])
            done |= sel
        return out

    def to_json(self):
        return {"type": "piecewise",
                "pieces": [{"domain": d.to_json(), "map": m.to_json()} for d, m in self.pieces]}


@dataclass(frozen=True)
class PixelTranslation(PointMap):
    dx: int
    dy: int

    def apply(self, xy):  # world-unit shift is grid dependent; only regions are supported
        raise NotImplementedError("pixel translations act on regions only")

    def to_json(self):
        return {"type": "pixelTranslation", "dx": self.dx, "dy": self.dy}


@dataclass(frozen=True)
class TableMap:
    """A map between finite spaces given point by point (by point identifier)."""

    table: Mapping[Hashable, Hashable] = field(default_factory=dict)

    def image(self, src: FiniteSpace, dst: FiniteSpace, a: int) -> int:
        out = 0
        for i in bits(a):
            out |= 1 << dst.index[self.table[src.points[i]]]
        return out

    def is_bijective(self, src: FiniteSpace, dst: FiniteSpace) -> bool:
        if set(self.table) != set(src.points):
            return False
        values = [self.table[p] for p in src.points]
        return len(set(values)) == len(values) == dst.n and set(values) == set(dst.points)

    def inverse(self) -> "TableMap":
        return TableMap({v: k for k, v in self.table.items()})

    def to_json(self):
        return {"type": "table", "table": {str(k): v for k, v in self.table.items()}}


def apply_point(m: PointMap, p: Sequence[float]) -> tuple[float, float]:
    xy = np.asarray(p, dtype=float)
    if isinstance(m, Inversion) and (m.domain is None or bool(m.domain.contains(xy))):
        if xy[0] == m.center[0] and xy[1] == m.center[1]:
            raise PoleError("inversion evaluated at its centre")
    if isinstance(m, Composition):
        out = tuple(xy)
        for sub in m.maps:
            out = apply_point(sub, out)
        return out
    if isinstance(m, Piecewise):
        for dom, sub in m.pieces:
            if bool(dom.contains(xy)):
                return apply_point(sub, xy)
        return float(xy[0]), float(xy[1])
    out = m.apply(xy)
    return float(out[0]), float(out[1])


def _translate(region: np.ndarray, dx: int, dy: int) -> np.ndarray:
    h, w = region.shape
    out = np.zeros_like(region)
    ys, yd = (slice(0, h - dy), slice(dy, h)) if dy >= 0 else (slice(-dy, h), slice(0, h + dy))
    xs, xd = (slice(0, w - dx), slice(dx, w)) if dx >= 0 else (slice(-dx, w), slice(0, w + dx))
    out[yd, xd] = region[ys, xs]
    return out


def apply_region(m: PointMap, region: np.ndarray, grid: PixelGrid,
                 out_grid: PixelGrid | None = None) -> np.ndarray:
    """Image of a region under ``m`` by inverse mapping of output pixel centres.

    Domain-restricted maps are split into pieces; each piece is mapped on the
    part of the region inside its domain and the results are OR-ed together.
    Non-invertible compositions are applied stage by stage on ``out_grid``.
    """
    out_grid = out_grid or grid
    if isinstance(m, Identity):
        if out_grid == grid:
            return region.copy()
        return grid.lookup(region, out_grid.centers)
    if isinstance(m, PixelTranslation):
        if out_grid != grid:
            raise ValueError("pixel translations keep the grid")
        return _translate(region, m.dx, m.dy)
    if isinstance(m, TableMap):
        raise TypeError("table maps act on finite spaces, not pixel grids")
    if isinstance(m, Inversion) and m.domain is not None:
        m = Piecewise(((m.domain, m.unrestricted()),))
    if isinstance(m, Piecewise):
        rest = region.copy()
        out = np.zeros(out_grid.shape, dtype=bool)
        for dom, sub in m.pieces:
            part = rest & grid.rasterize(dom)
            rest &= ~part
            if part.any():
                out |= apply_region(sub, part, grid, out_grid)
        if rest.any():
            out |= apply_region(Identity(), rest, grid, out_grid)
        return out
    if isinstance(m, Composition) and not m.invertible:
        via = _spanning_grid(grid, out_grid)
        cur, cur_grid = region, grid
        for k, sub in enumerate(m.maps):
            nxt = out_grid if k == len(m.maps) - 1 else via
            cur = apply_region(sub, cur, cur_grid, nxt)
            cur_grid = nxt
        return cur
    if not m.invertible:
        raise NotInvertibleError(f"{type(m).__name__} has no inverse on its domain")
    pre = m.inverse_apply(out_grid.centers)
    return grid.lookup(region, pre)


def _spanning_grid(a: PixelGrid, b: PixelGrid) -> PixelGrid:
    """Grid covering both windows at the finer of the two resolutions."""
    if a == b:
        return a
    win = (min(a.window[0], b.window[0]), min(a.window[1], b.window[1]),
           max(a.window[2], b.window[2]), max(a.window[3], b.window[3]))
    step = min(a.dx, a.dy, b.dx, b.dy)
    w = int(np.ceil((win[2] - win[0]) / step))
    h = int(np.ceil((win[3] - win[1]) / step))
    return PixelGrid(w, h, (win[0], win[1], win[0] + w * step, win[1] + h * step),
                     b.adjacency, b.window_is_space)


def image(f, src, dst, a):
    """Image of a subset under ``f`` for either backend."""
    if isinstance(src, FiniteSpace):
        return f.image(src, dst, a)
    return apply_region(f, a, src, dst)


# ---------------------------------------------------------------------------
# strong proximal continuity


@dataclass
class SpcReport:
    spc: bool
    spe: bool
    pairs_checked: int
    spc_witness: tuple | None = None
    spe_witness: tuple | None = None
    images: list = field(default_factory=list, repr=False)


def spc_check(f, kind_x, space_x, kind_y, space_y, family: Sequence, *, images=None) -> SpcReport:
    """Check ``A near_X B => f(A) near_Y f(B)`` over ordered pairs of ``family``.

    Also decides the equivalence (both directions).  Witnesses are index pairs
    into ``family``.
    """
    imgs = images if images is not None else [image(f, space_x, space_y, a) for a in family]
    spc, spe = True, True
    spc_w = spe_w = None
    checked = 0
    for i, j in itertools.product(range(len(family)), repeat=2):
        nx = kind_x.near(space_x, family[i], family[j])
        ny = kind_y.near(space_y, imgs[i], imgs[j])
        checked += 1
        if nx and not ny and spc:
            spc, spc_w = False, (i, j)
        if nx != ny and spe:
            spe, spe_w = False, (i, j)
    return SpcReport(spc, spe, checked, spc_w, spe_w, imgs)


# ---------------------------------------------------------------------------
# open maps and homeomorphisms


class NotOpenError(ValueError):
    pass


@dataclass
class OpenMapReport:
    passed: bool
    verdicts: list[bool]
    band_pixels: list[int] = field(default_factory=list)

    @property
    def first_failure(self) -> int | None:
        return next((i for i, v in enumerate(self.verdicts) if not v), None)


def open_map_check(f, space_x, space_y, samples: Sequence) -> OpenMapReport:
    """Does ``f`` send each open sample to an open set?

    Finite spaces are decided exactly.  On grids a sample must be regular open
    and its image passes when it has nonempty interior and differs from its
    regularisation ``int(cl(.))`` only within one pixel of the image.
    """
    verdicts, band = [], []
    for s in samples:
        if not space_x.is_open(s):
            raise NotOpenError("sample is not open in the source space")
        img = image(f, space_x, space_y, s)
        if isinstance(space_y, FiniteSpace):
            verdicts.append(space_y.is_open(img))
            continue
        reg = space_y.regularize(img)
        diff = reg ^ img
        within = not (diff & ~(space_y.closure(img) & space_y.closure(reg))).any()
        has_int = not space_y.is_empty(space_y.interior(img)) or space_y.is_empty(img)
        verdicts.append(bool(within and has_int))
        band.append(int(diff.sum()))
    return OpenMapReport(all(verdicts), verdicts, band)


def is_homeomorphism_witness(f: TableMap, space_x: FiniteSpace, space_y: FiniteSpace) -> bool:
    if not f.is_bijective(space_x, space_y):
        return False
    g = f.inverse()
    return all(space_y.is_open(f.image(space_x, space_y, o)) for o in space_x.opens) and \
        all(space_x.is_open(g.image(space_y, space_x, o)) for o in space_y.opens)


def all_maps(src: FiniteSpace, dst: FiniteSpace):
    for values in itertools.product(dst.points, repeat=src.n):
        yield TableMap(dict(zip(src.points, values)))


def all_bijections(src: FiniteSpace, dst: FiniteSpace):
    if src.n != dst.n:
        return
    for values in itertools.permutations(dst.points):
        yield TableMap(dict(zip(src.points, values)))


# ---------------------------------------------------------------------------
# circle-inversion example


@dataclass
class InversionFixture:
    grid_x: PixelGrid
    grid_y: PixelGrid
    names: list[str]
    shapes: list[Shape]
    family: list[np.ndarray]
    f: PointMap
    report: SpcReport


def image_circle(circle: tuple[tuple[float, float], float], inv_center, k) -> tuple[tuple[float, float], float]:
    """Image of a circle (not through the pole) under inversion in ``(inv_center, k)``."""
    (cx, cy), r = circle
    dx, dy = cx - inv_center[0], cy - inv_center[1]
    d = float(np.hypot(dx, dy))
    if abs(d - r) < 1e-15:
        raise PoleError("circle passes through the inversion centre")
    ux, uy = (dx / d, dy / d) if d > 0 else (1.0, 0.0)
    # the two points of the circle on the line through the pole
    t1, t2 = d - r, d + r
    s1, s2 = k * k / t1, k * k / t2
    mid = (s1 + s2) / 2
    return (inv_center[0] + mid * ux, inv_center[1] + mid * uy), abs(s1 - s2) / 2


def inversion_example(width: int = 800, height: int = 400, *, collapse_a2: bool = False,
                      members: Sequence[str] | None = None) -> InversionFixture:
    """Family of disks and the composite inversion ``i3 . i2 . i1``, checked for s.p.c.

    Source family (world units): ``A1`` and ``A3`` are unions of concentric
    closed disks of radii 1 and 1.5 centred at ``(0,0)`` and ``(5,0)``;
    ``A2`` and ``A4`` are open disks of radius 1.5 centred at ``(2.5,0)`` and
    ``(7.5,0)``.  ``i1`` inverts in the circle of radius 2 about the origin on
    the region outside it; ``i2`` inverts in the image circle of ``A2`` on the
    region inside ``i1(A1)`` and outside ``i1(A2)``; ``i3`` inverts in the
    image circle of ``A3'`` on the region inside ``i2(A2)`` and outside
    ``i2(A3)``.  Source proximity is mixed overlap, target interior overlap.
    """
    grid_x = PixelGrid(width, height, (-2.0, -2.0, 10.0, 2.0))
    grid_y = PixelGrid(width, width // 2, (-1.6, -1.6, 4.8, 1.6))
    a1_inner, a1_outer = Disk((0, 0), 1.0), Disk((0, 0), 1.5)
    a3_inner, a3_outer = Disk((5, 0), 1.0), Disk((5, 0), 1.5)
    shapes = {
        "A1": _union(a1_inner, a1_outer),
        "A2": Disk((2.5, 0), 1.5, closed=False),
        "A3": _union(a3_inner, a3_outer),
        "A4": Disk((7.5, 0), 1.5, closed=False),
    }
    c0, k1 = (0.0, 0.0), 2.0
    i1 = Inversion(c0, k1, difference(_whole_plane(), Disk(c0, k1)))

    def after_i1(circle):
        (cx, cy), r = circle
        # circles outside the inversion circle move; circles inside it stay
        if np.hypot(cx - c0[0], cy - c0[1]) - r >= k1:
            return image_circle(circle, c0, k1)
        if np.hypot(cx - c0[0], cy - c0[1]) + r <= k1:
            return circle
        return image_circle(circle, c0, k1)  # orthogonal or crossing: take the inverted circle

    a1_img = after_i1(((0.0, 0.0), 1.5))
    a2_img = after_i1(((2.5, 0.0), 1.5))
    a3p_img = after_i1(((5.0, 0.0), 1.0))
    a3_img = after_i1(((5.0, 0.0), 1.5))
    i2 = Inversion(a2_img[0], a2_img[1],
                   difference(Disk(*a1_img), Disk(*a2_img)))

    def after_i2(circle):
        (cx, cy), r = circle
        d = np.hypot(cx - a2_img[0][0], cy - a2_img[0][1])
        inside_a1 = np.hypot(cx - a1_img[0][0], cy - a1_img[0][1]) + r <= a1_img[1]
        outside_a2 = d - r >= a2_img[1]
        if inside_a1 and outside_a2:
            return image_circle(circle, *a2_img)
        return circle

    a2_img2 = after_i2(a2_img)
    a3p_img2 = after_i2(a3p_img)
    a3_img2 = after_i2(a3_img)
    i3 = Inversion(a3p_img2[0], a3p_img2[1],
                   difference(Disk(*a2_img2), Disk(*a3_img2)))
    f: PointMap = Composition((i1, i2, i3))
    names = list(members or ["A1", "A2", "A3", "A4"])
    if collapse_a2:
        # planted failure: squash A2 to a sliver before the inversions
        squash = Piecewise(((shapes["A2"], Scaling((2.5, 0.0), 0.01)),))
        f = Composition((squash, i1, i2, i3))
    family = [grid_x.rasterize(shapes[n]) for n in names]
    report = spc_check(f, MIXED_OVERLAP, grid_x, INTERIOR_OVERLAP, grid_y, family)
    return InversionFixture(grid_x, grid_y, names, [shapes[n] for n in names], family, f, report)


def _union(*shapes):
    from .geometry import Union

    return Union(tuple(shapes))


def _whole_plane():
    from .geometry import Rectangle

    return Rectangle((-1e9, -1e9), (1e9, 1e9))


# ---------------------------------------------------------------------------
# adjacent triangles rotated about shared vertices

TRIANGLES = (
    ((0.0, 0.0), (3.0, 0.0), (1.5, 2.4)),
    ((3.0, 0.0), (6.0, 0.0), (4.5, 2.4)),
    ((6.0, 0.0), (9.0, 0.0), (7.5, 2.4)),
)
HINGES = ((3.0, 0.0), (6.0, 0.0))


@dataclass
class TriangleFixture:
    grid: PixelGrid
    names: list[str]
    family: list[np.ndarray]
    g: PointMap
    report: SpcReport


def triangle_map(angle: float = 80.0, *, literal_order: bool = False) -> Piecewise:
    """Identity left of ``x1``; ``R(x1)`` between ``x1`` and ``x2``; both rotations beyond ``x2``.

    By default the third strip is turned about ``x2`` first and then about
    ``x1``, which folds it onto the image of the middle strip.  With
    ``literal_order`` the rotation about ``x1`` is applied first.
    """
    from .geometry import Rectangle

    r1, r2 = Rotation(HINGES[0], angle), Rotation(HINGES[1], angle)
    third = Composition((r1, r2)) if literal_order else Composition((r2, r1))
    return Piecewise((
        (Rectangle((HINGES[0][0], -1e9), (HINGES[1][0], 1e9)), r1),
        (Rectangle((HINGES[1][0], -1e9), (1e9, 1e9)), third),
    ))


def triangle_example(width: int = 440, height: int = 240, *, literal_order: bool = False) -> TriangleFixture:
    """``g`` on the three triangles, plain overlap on the source and interior overlap on the target."""
    # offset by half a pixel so the shared vertices land on pixel centres
    grid = PixelGrid(width, height, (-1.0125, -1.0125, 9.9875, 4.9875))
    family = [grid.rasterize(Triangle(t)) for t in TRIANGLES]
    g = triangle_map(literal_order=literal_order)
    report = spc_check(g, OVERLAP, grid, INTERIOR_OVERLAP, grid, family)
    return TriangleFixture(grid, ["A1", "A2", "A3"], family, g, report)


# ---------------------------------------------------------------------------
# identity between mixed and interior overlap


@dataclass
class IdentityFixture:
    grid: PixelGrid
    names: list[str]
    family: list[np.ndarray]
    spc: SpcReport
    open_map: OpenMapReport


def remark_example(width: int = 360, height: int = 200) -> IdentityFixture:
    """Two closed disks whose closures overlap in a lens two pixels wide.

    Each disk meets the other's interior, so they are near under mixed
    overlap, while their interiors are disjoint.  The identity therefore is
    not s.p.c., although it sends every open sample to itself.
    """
    grid = PixelGrid(width, height)
    a = grid.rasterize(Disk((100.9, 100.5), 80.0))
    b = grid.rasterize(Disk((259.1, 100.5), 80.0))
    spc = spc_check(Identity(), MIXED_OVERLAP, grid, INTERIOR_OVERLAP, grid, [a, b])
    samples = [grid.regularize(grid.interior(a)), grid.regularize(grid.interior(b))]
    return IdentityFixture(grid, ["A", "B"], [a, b], spc, open_map_check(Identity(), grid, grid, samples))
