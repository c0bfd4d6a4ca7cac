"""Descriptive nearness on colour tessellations.

Points of a tessellated window are described by the set of cell colours they
touch; those colour sets are in turn the points of a small finite space, so
regions of the window can be compared through the topology on descriptors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import ndimage

from .geometry import Rectangle, Shape, Triangle
from .grid import STENCIL, PixelGrid
from .spaces import FiniteSpace, bits

DEFAULT_COLORS = ("g", "r", "b")

# four singleton collections followed by three three-element collections
DEFAULT_BASE = (
    (("g", "r"),),
    (("b", "r"),),
    (("g", "b"),),
    (("r", "g", "b"),),
    (("r", "g", "b"), ("r", "g"), ("r",)),
    (("r", "g", "b"), ("r", "g"), ("g",)),
    (("r", "g", "b"), ("r", "g"), ("b",)),
)


class TessellationError(ValueError):
    pass


class DescriptorSpace:
    """All subsets of a colour set, topologised by a configurable base."""

    def __init__(self, colors: Sequence[str] = DEFAULT_COLORS, base=DEFAULT_BASE):
        self.colors = tuple(colors)
        if len(set(self.colors)) != len(self.colors):
            raise ValueError("duplicate colours")
        self.bit = {c: 1 << i for i, c in enumerate(self.colors)}
        self.base = tuple(tuple(tuple(s) for s in coll) for coll in base)
        labels = [self.label(m) for m in range(1 << len(self.colors))]
        self.carrier = FiniteSpace(labels, [self.collection(coll) for coll in self.base])

    def code(self, colors) -> int:
        """Bitmask of a colour set; it doubles as the carrier point index."""
        out = 0
        for c in colors:
            if c not in self.bit:
                raise ValueError(f"unknown colour {c!r}")
            out |= self.bit[c]
        return out

    def label(self, code: int) -> str:
        return ",".join(self.colors[i] for i in bits(code)) or "{}"

    def colors_of(self, code: int) -> frozenset:
        return frozenset(self.colors[i] for i in bits(code))

    def collection(self, sets) -> int:
        """Carrier subset (bitmask over points) for a collection of colour sets."""
        out = 0
        for s in sets:
            out |= 1 << self.code(s)
        return out

    def describe(self, points: int) -> list[str]:
        return [self.label(p) for p in bits(points)]

    def interior(self, points: int) -> int:
        return self.carrier.interior(points)

    def to_json(self) -> dict:
        return {"colors": list(self.colors), "base": [[list(s) for s in coll] for coll in self.base]}


@dataclass(frozen=True)
class Cell:
    name: str
    color: str
    shape: Shape


@dataclass(eq=False)
class Tessellation:
    """Cells painted in order (later cells overwrite earlier ones) over a grid window."""

    grid: PixelGrid
    cells: list[Cell]
    space: DescriptorSpace = field(default_factory=DescriptorSpace)

    def __post_init__(self):
        label = np.full(self.grid.shape, -1, dtype=int)
        for k, cell in enumerate(self.cells):
            label[self.grid.rasterize(cell.shape)] = k
        if (label < 0).any():
            j, i = np.argwhere(label < 0)[0]
            raise TessellationError(f"pixel ({int(j)}, {int(i)}) is not covered by any cell")
        self.label = label
        desc = np.zeros(self.grid.shape, dtype=int)
        for k, cell in enumerate(self.cells):
            reach = ndimage.binary_dilation(label == k, structure=STENCIL)
            desc[reach] |= self.space.code([cell.color])
        self.descriptors = desc

    def cell_mask(self, name: str) -> np.ndarray:
        ks = [k for k, c in enumerate(self.cells) if c.name == name]
        if not ks:
            raise KeyError(name)
        return np.isin(self.label, ks)

    def boundary(self) -> np.ndarray:
        """Pixels whose 3x3 neighbourhood meets more than one cell."""
        lo = ndimage.minimum_filter(self.label, size=3, mode="nearest")
        hi = ndimage.maximum_filter(self.label, size=3, mode="nearest")
        return lo != hi


def descriptor_of(t: Tessellation, p) -> int:
    """Descriptor code of a pixel ``(row, col)``."""
    return int(t.descriptors[p])


def descriptor_of_point(t: Tessellation, x: float, y: float) -> frozenset:
    return t.space.colors_of(descriptor_of(t, t.grid.pixel_at(x, y)))


def descriptor_image(t: Tessellation, region: np.ndarray) -> int:
    """Carrier subset ``{f(p) : p in region}``."""
    out = 0
    for code in np.unique(t.descriptors[region]):
        out |= 1 << int(code)
    return out


@dataclass
class TimedFamily:
    instant: str
    regions: list[np.ndarray]
    names: list[str] | None = None

    def __post_init__(self):
        if self.names is None:
            self.names = [f"A{i + 1}" for i in range(len(self.regions))]

    def validate(self, t: Tessellation) -> None:
        """At most one region per cell: each region's inner pixels sit in a single cell,
        and no two regions claim the same cell."""
        inner = ~t.boundary()
        claimed = {}
        for name, region in zip(self.names, self.regions):
            cells = {t.cells[k].name for k in np.unique(t.label[region & inner])}
            if len(cells) > 1:
                raise TessellationError(f"region {name} spans cells {sorted(cells)}")
            for c in cells:
                if c in claimed:
                    raise TessellationError(f"regions {claimed[c]} and {name} share cell {c}")
                claimed[c] = name


@dataclass
class DescriptiveReport:
    passed: bool
    pairs_checked: int
    witness: tuple[str, str] | None
    images: dict[str, list[str]]
    interiors: dict[str, list[str]]
    excluded: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"passed": self.passed, "pairs_checked": self.pairs_checked,
                "witness": list(self.witness) if self.witness else None,
                "images": self.images, "interiors": self.interiors, "excluded": self.excluded}


def descriptive_spc_check(d: DescriptorSpace, t: Tessellation, fam: TimedFamily,
                          others: Sequence[TimedFamily] = ()) -> DescriptiveReport:
    """Overlapping regions of one instant must have overlapping descriptor interiors.

    Families from ``others`` (different instants) are not paired with ``fam``;
    the report lists them as excluded.
    """
    fam.validate(t)
    imgs = [descriptor_image(t, r) for r in fam.regions]
    ints = [d.interior(m) for m in imgs]
    checked, witness = 0, None
    for i in range(len(fam.regions)):
        for j in range(i + 1, len(fam.regions)):
            if not (fam.regions[i] & fam.regions[j]).any():
                continue
            checked += 1
            if ints[i] & ints[j] == 0 and witness is None:
                witness = (fam.names[i], fam.names[j])
    excluded = [f"{o.instant}:{n}" for o in others if o.instant != fam.instant for n in o.names]
    return DescriptiveReport(
        witness is None, checked, witness,
        {n: d.describe(m) for n, m in zip(fam.names, imgs)},
        {n: d.describe(m) for n, m in zip(fam.names, ints)},
        excluded,
    )


# ---------------------------------------------------------------------------
# the bundled tessellation

FIG6_WINDOW = (-0.5, 1.0, 5.5, 7.0)
FIG6_POINTS = {"a": (0.0, 6.5), "b": (2.5, 5.5), "c": (2.5, 4.0)}


def fig6_cells() -> list[Cell]:
    tri = Triangle
    return [
        Cell("top-left", "g", Rectangle((-0.5, 4.0), (2.5, 7.0))),
        Cell("top-right", "r", Rectangle((2.5, 4.0), (5.5, 7.0))),
        Cell("bottom-left", "b", Rectangle((-0.5, 1.0), (2.5, 4.0))),
        Cell("left-upper-triangle", "g", tri(((-0.5, 2.5), (2.5, 4.0), (2.5, 2.5)))),
        Cell("left-lower-triangle", "r", tri(((-0.5, 2.5), (2.5, 2.5), (2.5, 1.0)))),
        Cell("bottom-right", "g", Rectangle((2.5, 1.0), (5.5, 4.0))),
        Cell("right-band", "b", Rectangle((2.5, 2.5), (5.5, 4.0))),
        Cell("right-lower-triangle", "r", tri(((5.5, 2.5), (2.5, 2.5), (2.5, 1.0)))),
    ]


def fig6_tessellation(width: int = 120, height: int = 120, space: DescriptorSpace | None = None) -> Tessellation:
    grid = PixelGrid(width, height, FIG6_WINDOW, adjacency=8)
    return Tessellation(grid, fig6_cells(), space or DescriptorSpace())


def fig6_families(t: Tessellation) -> list[TimedFamily]:
    """Two instants: a green and a red region meeting at ``b``, then a green and a
    blue region meeting across the vertical edge below ``c``."""
    g = t.grid
    b_pixel = np.zeros(g.shape, dtype=bool)
    b_pixel[g.pixel_at(*FIG6_POINTS["b"])] = True
    seam = ndimage.binary_dilation(b_pixel, structure=STENCIL) & t.boundary()
    a1 = (t.cell_mask("top-left") & g.rasterize(Rectangle((0.5, 4.75), (2.5, 6.25)))) | seam
    a2 = (t.cell_mask("top-right") & g.rasterize(Rectangle((2.5, 4.75), (4.5, 6.25)))) | seam
    low = np.zeros(g.shape, dtype=bool)
    low[g.pixel_at(2.5, 3.2)] = True
    seam2 = ndimage.binary_dilation(low, structure=STENCIL) & t.boundary()
    a3 = (t.cell_mask("left-upper-triangle") & g.rasterize(Rectangle((1.5, 2.75), (2.5, 3.5)))) | seam2
    a4 = (t.cell_mask("right-band") & g.rasterize(Rectangle((2.5, 2.75), (3.5, 3.5)))) | seam2
    return [TimedFamily("t1", [a1, a2], ["A1", "A2"]), TimedFamily("t2", [a3, a4], ["A3", "A4"])]
