"""Planar shapes in world coordinates and their point-membership tests."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

EPS = 1e-12


class DegenerateShapeError(ValueError):
    pass


def _pt(p) -> tuple[float, float]:
    x, y = p
    return float(x), float(y)


class Shape:
    """Base class.  ``contains`` takes an ``(..., 2)`` array of points."""

    def contains(self, xy: np.ndarray) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def to_json(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True)
class Disk(Shape):
    center: tuple[float, float]
    radius: float
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "center", _pt(self.center))
        if not self.radius > 0:
            raise DegenerateShapeError(f"disk radius must be positive, got {self.radius}")

    def contains(self, xy):
        xy = np.asarray(xy, dtype=float)
        d2 = (xy[..., 0] - self.center[0]) ** 2 + (xy[..., 1] - self.center[1]) ** 2
        r2 = self.radius * self.radius
        return d2 <= r2 + EPS if self.closed else d2 < r2 - EPS

    def to_json(self):
        return {"type": "disk", "center": list(self.center), "radius": self.radius,
                "boundary": "closed" if self.closed else "open"}


@dataclass(frozen=True)
class Triangle(Shape):
    vertices: tuple[tuple[float, float], ...]
    closed: bool = True

    def __post_init__(self):
        vs = tuple(_pt(v) for v in self.vertices)
        if len(vs) != 3:
            raise DegenerateShapeError("a triangle needs exactly 3 vertices")
        object.__setattr__(self, "vertices", vs)
        if abs(self._area2()) < 1e-12:
            raise DegenerateShapeError("triangle vertices are collinear")

    def _area2(self) -> float:
        (ax, ay), (bx, by), (cx, cy) = self.vertices
        return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)

    def contains(self, xy):
        xy = np.asarray(xy, dtype=float)
        vs = self.vertices if self._area2() > 0 else self.vertices[::-1]
        inside = np.ones(xy.shape[:-1], dtype=bool)
        for k in range(3):
            (ax, ay), (bx, by) = vs[k], vs[(k + 1) % 3]
            ex, ey = bx - ax, by - ay
            norm = np.hypot(ex, ey)
            cross = (ex * (xy[..., 1] - ay) - ey * (xy[..., 0] - ax)) / norm
            inside &= cross >= -EPS if self.closed else cross > EPS
        return inside

    def to_json(self):
        return {"type": "triangle", "vertices": [list(v) for v in self.vertices],
                "boundary": "closed" if self.closed else "open"}


@dataclass(frozen=True)
class Rectangle(Shape):
    corner1: tuple[float, float]
    corner2: tuple[float, float]
    closed: bool = True

    def __post_init__(self):
        c1, c2 = _pt(self.corner1), _pt(self.corner2)
        lo = (min(c1[0], c2[0]), min(c1[1], c2[1]))
        hi = (max(c1[0], c2[0]), max(c1[1], c2[1]))
        if hi[0] - lo[0] <= 0 or hi[1] - lo[1] <= 0:
            raise DegenerateShapeError("rectangle has zero area")
        object.__setattr__(self, "corner1", lo)
        object.__setattr__(self, "corner2", hi)

    def contains(self, xy):
        xy = np.asarray(xy, dtype=float)
        (x0, y0), (x1, y1) = self.corner1, self.corner2
        x, y = xy[..., 0], xy[..., 1]
        if self.closed:
            return (x >= x0 - EPS) & (x <= x1 + EPS) & (y >= y0 - EPS) & (y <= y1 + EPS)
        return (x > x0 + EPS) & (x < x1 - EPS) & (y > y0 + EPS) & (y < y1 - EPS)

    def to_json(self):
        return {"type": "rectangle", "corners": [list(self.corner1), list(self.corner2)],
                "boundary": "closed" if self.closed else "open"}


@dataclass(frozen=True)
class Union(Shape):
    shapes: tuple[Shape, ...]

    def __post_init__(self):
        object.__setattr__(self, "shapes", tuple(self.shapes))
        if not self.shapes:
            raise DegenerateShapeError("empty union")

    def contains(self, xy):
        out = self.shapes[0].contains(xy)
        for s in self.shapes[1:]:
            out = out | s.contains(xy)
        return out

    def to_json(self):
        return {"type": "union", "of": [s.to_json() for s in self.shapes]}


@dataclass(frozen=True)
class Intersection(Shape):
    shapes: tuple[Shape, ...]

    def __post_init__(self):
        object.__setattr__(self, "shapes", tuple(self.shapes))
        if not self.shapes:
            raise DegenerateShapeError("empty intersection")

    def contains(self, xy):
        out = self.shapes[0].contains(xy)
        for s in self.shapes[1:]:
            out = out & s.contains(xy)
        return out

    def to_json(self):
        return {"type": "intersection", "of": [s.to_json() for s in self.shapes]}


@dataclass(frozen=True)
class Complement(Shape):
    """Complement relative to whatever window the shape is rasterized in."""

    shape: Shape

    def contains(self, xy):
        return ~self.shape.contains(xy)

    def to_json(self):
        return {"type": "complement", "of": self.shape.to_json()}


def difference(a: Shape, b: Shape) -> Shape:
    return Intersection((a, Complement(b)))


def shape_from_json(spec: dict, named: dict[str, Shape] | None = None) -> Shape:
    """Build a shape from its scene-file form.  Strings refer to ``named`` shapes."""
    named = named or {}
    if isinstance(spec, str):
        try:
            return named[spec]
        except KeyError:
            raise KeyError(f"unknown shape {spec!r}") from None
    kind = spec.get("type")
    closed = spec.get("boundary", "closed") == "closed"
    if spec.get("boundary", "closed") not in ("open", "closed"):
        raise ValueError(f"boundary must be 'open' or 'closed', got {spec['boundary']!r}")
    if kind == "disk":
        return Disk(tuple(spec["center"]), float(spec["radius"]), closed)
    if kind == "triangle":
        return Triangle(tuple(tuple(v) for v in spec["vertices"]), closed)
    if kind == "rectangle":
        c1, c2 = spec["corners"]
        return Rectangle(tuple(c1), tuple(c2), closed)
    if kind == "union":
        return Union(tuple(shape_from_json(s, named) for s in spec["of"]))
    if kind == "intersection":
        return Intersection(tuple(shape_from_json(s, named) for s in spec["of"]))
    if kind == "complement":
        return Complement(shape_from_json(spec["of"], named))
    if kind == "difference":
        a, b = spec["of"]
        return difference(shape_from_json(a, named), shape_from_json(b, named))
    raise ValueError(f"unknown shape type {kind!r}")


def circle_points(center: Sequence[float], radius: float, count: int) -> np.ndarray:
    t = np.linspace(0.0, 2 * np.pi, count, endpoint=False)
    return np.stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)], axis=-1)
