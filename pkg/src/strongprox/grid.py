"""Pixel-lattice carrier with digital interior and closure.

Regions are boolean arrays of shape ``(height, width)``; row ``j`` holds the
pixels whose centres have world y-coordinate ``y0 + (j + 0.5) * dy``.  Interior
is erosion by the 3x3 square, closure is its dual dilation, computed as
``~interior(~S)`` so the duality is exact bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy import ndimage

from .geometry import Shape

STENCIL = np.ones((3, 3), dtype=bool)
_ADJACENCY = {4: ndimage.generate_binary_structure(2, 1), 8: ndimage.generate_binary_structure(2, 2)}


@dataclass(frozen=True, eq=False)
class PixelGrid:
    width: int
    height: int
    window: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    adjacency: int = 8
    window_is_space: bool = True
    _centers: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("grid dimensions must be positive")
        win = self.window
        if win == (0.0, 0.0, 0.0, 0.0):
            win = (0.0, 0.0, float(self.width), float(self.height))
        win = tuple(float(v) for v in win)
        if win[2] <= win[0] or win[3] <= win[1]:
            raise ValueError("window must have positive area")
        object.__setattr__(self, "window", win)
        if self.adjacency not in (4, 8):
            raise ValueError("adjacency must be 4 or 8")
        xs = win[0] + (np.arange(self.width) + 0.5) * self.dx
        ys = win[1] + (np.arange(self.height) + 0.5) * self.dy
        gx, gy = np.meshgrid(xs, ys)
        centers = np.stack([gx, gy], axis=-1)
        centers.setflags(write=False)
        object.__setattr__(self, "_centers", centers)

    def __eq__(self, other):
        if not isinstance(other, PixelGrid):
            return NotImplemented
        return (self.width, self.height, self.window, self.adjacency, self.window_is_space) == (
            other.width, other.height, other.window, other.adjacency, other.window_is_space)

    def __hash__(self):
        return hash((self.width, self.height, self.window, self.adjacency, self.window_is_space))

    @property
    def dx(self) -> float:
        return (self.window[2] - self.window[0]) / self.width

    @property
    def dy(self) -> float:
        return (self.window[3] - self.window[1]) / self.height

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    @property
    def centers(self) -> np.ndarray:
        return self._centers

    def with_adjacency(self, adjacency: int) -> "PixelGrid":
        return PixelGrid(self.width, self.height, self.window, adjacency, self.window_is_space)

    def rasterize(self, shape: Shape) -> np.ndarray:
        return np.asarray(shape.contains(self._centers), dtype=bool)

    def pixel_at(self, x: float, y: float) -> tuple[int, int]:
        """(row, column) of the pixel containing world point ``(x, y)``."""
        i = int(np.floor((x - self.window[0]) / self.dx))
        j = int(np.floor((y - self.window[1]) / self.dy))
        if not (0 <= i < self.width and 0 <= j < self.height):
            raise ValueError(f"point ({x}, {y}) lies outside the window")
        return j, i

    def lookup(self, region: np.ndarray, xy: np.ndarray) -> np.ndarray:
        """Nearest-pixel membership of world points in ``region`` (outside the window is False)."""
        i = np.floor((xy[..., 0] - self.window[0]) / self.dx)
        j = np.floor((xy[..., 1] - self.window[1]) / self.dy)
        ok = np.isfinite(i) & np.isfinite(j)
        ok &= (i >= 0) & (i < self.width) & (j >= 0) & (j < self.height)
        out = np.zeros(xy.shape[:-1], dtype=bool)
        out[ok] = region[j[ok].astype(int), i[ok].astype(int)]
        return out

    # -- set algebra shared with FiniteSpace -------------------------------
    def empty(self) -> np.ndarray:
        return np.zeros(self.shape, dtype=bool)

    def whole(self) -> np.ndarray:
        return np.ones(self.shape, dtype=bool)

    @staticmethod
    def union(a, b):
        return a | b

    @staticmethod
    def meet(a, b):
        return a & b

    @staticmethod
    def complement(a):
        return ~a

    @staticmethod
    def is_empty(a) -> bool:
        return not a.any()

    @staticmethod
    def equal(a, b) -> bool:
        return bool(np.array_equal(a, b))

    @staticmethod
    def issubset(a, b) -> bool:
        return not (a & ~b).any()

    def point_of(self, a) -> tuple[int, int] | None:
        if np.count_nonzero(a) != 1:
            return None
        j, i = np.argwhere(a)[0]
        return int(j), int(i)

    @staticmethod
    def contains(a, point) -> bool:
        return bool(a[point])

    def singleton(self, point) -> np.ndarray:
        out = self.empty()
        out[point] = True
        return out

    @staticmethod
    def points_in(a) -> Iterator[tuple[int, int]]:
        for j, i in np.argwhere(a):
            yield int(j), int(i)

    @staticmethod
    def size(a) -> int:
        return int(np.count_nonzero(a))

    @staticmethod
    def key(a) -> bytes:
        return np.packbits(a).tobytes()

    # -- digital topology --------------------------------------------------
    def interior(self, s: np.ndarray) -> np.ndarray:
        return ndimage.binary_erosion(s, structure=STENCIL, border_value=1 if self.window_is_space else 0)

    def closure(self, s: np.ndarray) -> np.ndarray:
        return ~self.interior(~s)

    def is_regular_open(self, s: np.ndarray) -> bool:
        return bool(s.any()) and self.equal(self.interior(self.closure(s)), s)

    def is_open(self, s: np.ndarray) -> bool:
        """Digital openness: fixed by the regular-open projector ``int . cl``.

        Erosion is not idempotent, so no nonempty proper region equals its own
        interior; regular-openness is the operative notion of an open region.
        """
        return not s.any() or self.equal(self.interior(self.closure(s)), s)

    def components(self, s: np.ndarray) -> tuple[np.ndarray, int]:
        return ndimage.label(s, structure=_ADJACENCY[self.adjacency])

    def is_connected(self, s: np.ndarray) -> bool:
        if not s.any():
            return True
        return self.components(s)[1] == 1

    def regularize(self, s: np.ndarray) -> np.ndarray:
        return self.interior(self.closure(s))


GridRegion = np.ndarray
