"""Scene files: JSON declarations of carriers, shapes, sets, maps and checks.

A scene is validated and resolved eagerly by ``load_scene``; every problem is
reported as a ``SceneError`` carrying a field path (and a line number for JSON
syntax errors).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from . import descriptive as desc
from .geometry import DegenerateShapeError, Shape, shape_from_json
from .grid import PixelGrid
from .maps import (Composition, Identity, Inversion, Piecewise, PixelTranslation, Rotation, Scaling,
                   TableMap, triangle_map)
from .proximity import INTERIOR_OVERLAP, MIXED_OVERLAP, OVERLAP, PlainProximity, StrongProximity
from .spaces import CapacityError, FiniteSpace

SCENE_VERSION = 1
BUILTIN_PROXIMITIES = {
    "interiorOverlap": INTERIOR_OVERLAP,
    "mixedOverlap": MIXED_OVERLAP,
    "overlap": OVERLAP,
}
PLAIN_PROXIMITIES = {"closureOverlap": PlainProximity.CLOSURE_OVERLAP, "plainOverlap": PlainProximity.OVERLAP}


class SceneError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class Scene:
    name: str
    backend: str
    carriers: dict[str, Any]
    shapes: dict[str, Shape] = field(default_factory=dict)
    sets: dict[str, Any] = field(default_factory=dict)
    set_carrier: dict[str, str] = field(default_factory=dict)
    maps: dict[str, Any] = field(default_factory=dict)
    proximities: dict[str, Any] = field(default_factory=dict)
    families: dict[str, list[str]] = field(default_factory=dict)
    tessellation: desc.Tessellation | None = None
    timed_families: list[desc.TimedFamily] = field(default_factory=list)
    checks: list[dict] = field(default_factory=list)
    render: list[dict] = field(default_factory=list)
    source: dict = field(default_factory=dict, repr=False)

    @property
    def carrier(self):
        return self.carriers["X"]

    def set_names_in(self, carrier: str) -> list[str]:
        return [n for n, c in self.set_carrier.items() if c == carrier]

    def name_of(self, value, carrier: str = "X") -> str | None:
        """Declared name of a set value, if any."""
        space = self.carriers[carrier]
        key = space.key(value)
        for n in self.set_names_in(carrier):
            if space.key(self.sets[n]) == key:
                return n
        return None

    def proximity(self, name: str, where: str):
        if name in self.proximities:
            return self.proximities[name]
        if name in BUILTIN_PROXIMITIES:
            return BUILTIN_PROXIMITIES[name]
        raise SceneError(where, f"unknown proximity {name!r}")

    def get_set(self, ref, where: str, carrier: str = "X"):
        """A declared set, a rasterised named shape, or an inline set declaration."""
        return _build_set(self, ref, where, carrier)

    def get_map(self, ref, where: str):
        if isinstance(ref, str):
            if ref not in self.maps:
                raise SceneError(where, f"unknown map {ref!r}")
            return self.maps[ref]
        return build_map(ref, where, self.shapes)

    def get_family(self, ref, where: str) -> tuple[list[str], list]:
        if isinstance(ref, str):
            if ref not in self.families:
                raise SceneError(where, f"unknown family {ref!r}")
            names = self.families[ref]
        elif isinstance(ref, list):
            names = ref
        else:
            raise SceneError(where, "family must be a name or a list of set names")
        return list(names), [self.get_set(n, where) for n in names]

    def point(self, ref, where: str, carrier: str = "X"):
        space = self.carriers[carrier]
        if isinstance(space, FiniteSpace):
            if ref not in space.index:
                raise SceneError(where, f"unknown point {ref!r}")
            return space.index[ref]
        if not (isinstance(ref, list) and len(ref) == 2):
            raise SceneError(where, "grid points are [x, y] world coordinates")
        try:
            return space.pixel_at(float(ref[0]), float(ref[1]))
        except ValueError as e:
            raise SceneError(where, str(e)) from None


# ---------------------------------------------------------------------------
# loading


def bundled_scenes() -> list[str]:
    root = resources.files("strongprox") / "scenes"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def resolve_path(ref: str) -> Path:
    """A file path, or the name of a bundled scene."""
    p = Path(ref)
    if p.exists():
        return p
    candidate = resources.files("strongprox") / "scenes" / f"{ref.removesuffix('.json')}.json"
    if candidate.is_file():
        return Path(str(candidate))
    raise SceneError("scene", f"no such scene file or bundled scene: {ref}")


def load_scene(ref: str | Path, *, adjacency: int | None = None) -> Scene:
    path = resolve_path(str(ref))
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SceneError(f"line {e.lineno}", e.msg) from None
    return parse_scene(data, adjacency=adjacency, default_name=path.stem)


def _require(d: dict, key: str, where: str, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise SceneError(where, f"missing field {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise SceneError(f"{where}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return v


def _grid(spec: dict, where: str, adjacency: int | None) -> PixelGrid:
    try:
        return PixelGrid(int(_require(spec, "width", where)), int(_require(spec, "height", where)),
                         tuple(spec.get("window", (0, 0, 0, 0))),
                         adjacency or int(spec.get("adjacency", 8)), bool(spec.get("window_is_space", True)))
    except (TypeError, ValueError) as e:
        raise SceneError(where, str(e)) from None


def _finite(spec: dict, where: str) -> FiniteSpace:
    pts = _require(spec, "points", where, list)
    try:
        if spec.get("topology") == "discrete":
            return FiniteSpace.discrete(pts)
        if spec.get("topology") == "indiscrete":
            return FiniteSpace.indiscrete(pts)
        return FiniteSpace(pts, spec.get("basis", []))
    except (KeyError, ValueError, CapacityError) as e:
        raise SceneError(where, f"bad finite space: {e}") from None


def parse_scene(data: Any, *, adjacency: int | None = None, default_name: str = "scene") -> Scene:
    if not isinstance(data, dict):
        raise SceneError("scene", "top level must be an object")
    if _require(data, "version", "scene") != SCENE_VERSION:
        raise SceneError("scene.version", f"unsupported version {data['version']!r}; expected {SCENE_VERSION}")
    backend = data.get("backend", "grid")
    if backend not in ("grid", "finite"):
        raise SceneError("scene.backend", "must be 'grid' or 'finite'")
    carriers = {}
    if backend == "grid":
        carriers["X"] = _grid(_require(data, "grid", "scene", dict), "scene.grid", adjacency)
        for name, spec in data.get("grids", {}).items():
            carriers[name] = _grid(spec, f"scene.grids.{name}", adjacency)
    else:
        carriers["X"] = _finite(_require(data, "space", "scene", dict), "scene.space")
        for name, spec in data.get("spaces", {}).items():
            carriers[name] = _finite(spec, f"scene.spaces.{name}")
    scene = Scene(str(data.get("name", default_name)), backend, carriers, source=data)

    for name, spec in data.get("shapes", {}).items():
        try:
            scene.shapes[name] = shape_from_json(spec, scene.shapes)
        except (KeyError, ValueError, TypeError, DegenerateShapeError) as e:
            raise SceneError(f"scene.shapes.{name}", str(e)) from None

    for name, spec in data.get("proximities", {}).items():
        try:
            scene.proximities[name] = StrongProximity.from_json(spec)
        except (KeyError, ValueError, TypeError) as e:
            raise SceneError(f"scene.proximities.{name}", f"bad proximity: {e}") from None

    for name, spec in data.get("maps", {}).items():
        scene.maps[name] = build_map(spec, f"scene.maps.{name}", scene.shapes, scene.maps)

    tess = data.get("tessellation")
    if tess is not None:
        scene.tessellation = _tessellation(tess, scene, "scene.tessellation")

    for name, spec in data.get("sets", {}).items():
        where = f"scene.sets.{name}"
        carrier = spec.get("in", "X") if isinstance(spec, dict) else "X"
        if carrier not in carriers:
            raise SceneError(where, f"unknown carrier {carrier!r}")
        scene.sets[name] = _build_set(scene, spec, where, carrier)
        scene.set_carrier[name] = carrier

    timed = data.get("timed_families", [])
    if timed:
        if scene.tessellation is None:
            raise SceneError("scene.timed_families", "requires a tessellation")
        scene.timed_families = _timed(timed, scene)

    for name, members in data.get("families", {}).items():
        if not isinstance(members, list):
            raise SceneError(f"scene.families.{name}", "expected a list of set names")
        for m in members:
            if m not in scene.sets:
                raise SceneError(f"scene.families.{name}", f"unknown set {m!r}")
        scene.families[name] = list(members)

    checks = data.get("checks", [])
    if not isinstance(checks, list):
        raise SceneError("scene.checks", "expected a list")
    seen = set()
    for i, c in enumerate(checks):
        where = f"scene.checks[{i}]"
        _require(c, "check", where, str)
        cid = c.get("id", f"{c['check']}-{i}")
        if cid in seen:
            raise SceneError(where, f"duplicate check id {cid!r}")
        seen.add(cid)
        scene.checks.append({**c, "id": cid})
    scene.render = list(data.get("render", []))
    if scene.render and backend != "grid":
        raise SceneError("scene.render", "drawings need the grid backend")
    for i, r in enumerate(scene.render):
        _require(r, "file", f"scene.render[{i}]", str)
        for n in r.get("sets", []):
            if n not in scene.sets:
                raise SceneError(f"scene.render[{i}]", f"unknown set {n!r}")
    from .checks import validate_check

    for i, c in enumerate(scene.checks):
        validate_check(scene, c, f"scene.checks[{i}]")
    return scene


def _tessellation(spec: dict, scene: Scene, where: str) -> desc.Tessellation:
    if scene.backend != "grid":
        raise SceneError(where, "tessellations need the grid backend")
    try:
        space = desc.DescriptorSpace(spec.get("colors", desc.DEFAULT_COLORS), spec.get("base", desc.DEFAULT_BASE))
        if spec.get("preset") == "fig6":
            cells = desc.fig6_cells()
        else:
            cells = [desc.Cell(c["name"], c["color"], shape_from_json(c["shape"], scene.shapes))
                     for c in _require(spec, "cells", where, list)]
        return desc.Tessellation(scene.carrier, cells, space)
    except (KeyError, ValueError, TypeError) as e:
        raise SceneError(where, str(e)) from None


def _timed(spec, scene: Scene) -> list[desc.TimedFamily]:
    where = "scene.timed_families"
    if isinstance(spec, dict) and spec.get("preset") == "fig6":
        fams = desc.fig6_families(scene.tessellation)
        for f in fams:
            for n, r in zip(f.names, f.regions):
                scene.sets[n] = r
                scene.set_carrier[n] = "X"
        return fams
    out = []
    for i, f in enumerate(spec):
        names = _require(f, "regions", f"{where}[{i}]", list)
        regions = [scene.get_set(n, f"{where}[{i}]") for n in names]
        out.append(desc.TimedFamily(str(_require(f, "instant", f"{where}[{i}]")), regions, list(names)))
    return out


# ---------------------------------------------------------------------------
# sets and maps

_OPS = ("union", "intersection", "difference", "complement", "closure", "interior", "regularize")


def _build_set(scene: Scene, spec, where: str, carrier: str):
    space = scene.carriers[carrier]
    finite = isinstance(space, FiniteSpace)
    if isinstance(spec, str):
        if spec in scene.sets:
            return scene.sets[spec]
        if not finite and spec in scene.shapes:
            return space.rasterize(scene.shapes[spec])
        raise SceneError(where, f"unknown set or shape {spec!r}")
    if isinstance(spec, list):
        if not finite:
            raise SceneError(where, "point lists are only valid on finite carriers")
        try:
            return space.mask(spec)
        except KeyError as e:
            raise SceneError(where, f"unknown point {e}") from None
    if not isinstance(spec, dict):
        raise SceneError(where, "set must be a name, a point list or an object")
    if "points" in spec:
        return _build_set(scene, spec["points"], where, carrier)
    if "shape" in spec:
        if finite:
            raise SceneError(where, "shapes need the grid backend")
        ref = spec["shape"]
        try:
            shape = scene.shapes[ref] if isinstance(ref, str) else shape_from_json(ref, scene.shapes)
        except (KeyError, ValueError, TypeError) as e:
            raise SceneError(where, f"bad shape: {e}") from None
        out = space.rasterize(shape)
        return space.regularize(out) if spec.get("regularize") else out
    if "pixels" in spec:
        out = space.empty()
        for p in spec["pixels"]:
            j, i = int(p[0]), int(p[1])
            if not (0 <= j < space.height and 0 <= i < space.width):
                raise SceneError(where, f"pixel {p} outside the grid")
            out[j, i] = True
        return out
    if "cell" in spec:
        if scene.tessellation is None:
            raise SceneError(where, "cell references need a tessellation")
        try:
            return scene.tessellation.cell_mask(spec["cell"])
        except KeyError:
            raise SceneError(where, f"unknown cell {spec['cell']!r}") from None
    if "image" in spec:
        from .maps import image

        src = spec.get("from", "X")
        if src not in scene.carriers:
            raise SceneError(where, f"unknown carrier {src!r}")
        a = scene.get_set(spec["image"], where, src)
        f = scene.get_map(_require(spec, "map", where), where)
        try:
            return image(f, scene.carriers[src], space, a)
        except Exception as e:  # geometry errors surface as scene errors
            raise SceneError(where, f"cannot map set: {e}") from None
    if "op" in spec:
        op = spec["op"]
        if op not in _OPS:
            raise SceneError(where, f"unknown op {op!r}")
        args = [scene.get_set(a, where, carrier) for a in spec.get("args", [spec.get("arg")])]
        if not args or any(a is None for a in args):
            raise SceneError(where, "op needs arguments")
        if op == "union":
            out = args[0]
            for a in args[1:]:
                out = space.union(out, a)
            return out
        if op == "intersection":
            out = args[0]
            for a in args[1:]:
                out = space.meet(out, a)
            return out
        if op == "difference":
            out = args[0]
            for a in args[1:]:
                out = space.meet(out, space.complement(a))
            return out
        if op == "complement":
            return space.complement(args[0])
        if op == "closure":
            return space.closure(args[0])
        if op == "interior":
            return space.interior(args[0])
        if finite:
            return space.interior(space.closure(args[0]))
        return space.regularize(args[0])
    raise SceneError(where, "unrecognised set declaration")


def build_map(spec, where: str, shapes: dict, named: dict | None = None):
    named = named or {}
    if isinstance(spec, str):
        if spec in named:
            return named[spec]
        raise SceneError(where, f"unknown map {spec!r}")
    if not isinstance(spec, dict):
        raise SceneError(where, "map must be a name or an object")
    kind = _require(spec, "type", where, str)

    def pt(key):
        v = _require(spec, key, where)
        if not (isinstance(v, list) and len(v) == 2):
            raise SceneError(f"{where}.{key}", "expected [x, y]")
        return (float(v[0]), float(v[1]))

    def shape(v):
        try:
            return shapes[v] if isinstance(v, str) else shape_from_json(v, shapes)
        except (KeyError, ValueError, TypeError) as e:
            raise SceneError(where, f"bad domain: {e}") from None

    try:
        if kind == "identity":
            return Identity()
        if kind == "rotation":
            return Rotation(pt("center"), float(_require(spec, "degrees", where)))
        if kind == "scaling":
            return Scaling(pt("center"), float(_require(spec, "factor", where)))
        if kind == "inversion":
            dom = spec.get("domain")
            return Inversion(pt("center"), float(_require(spec, "k", where)), shape(dom) if dom is not None else None)
        if kind == "composition":
            return Composition(tuple(build_map(m, f"{where}.maps", shapes, named)
                                     for m in _require(spec, "maps", where, list)))
        if kind == "piecewise":
            return Piecewise(tuple((shape(p["domain"]), build_map(p["map"], f"{where}.pieces", shapes, named))
                                   for p in _require(spec, "pieces", where, list)))
        if kind == "pixelTranslation":
            return PixelTranslation(int(_require(spec, "dx", where)), int(_require(spec, "dy", where)))
        if kind == "table":
            return TableMap(dict(_require(spec, "table", where, dict)))
        if kind == "triangleMap":
            return triangle_map(float(spec.get("degrees", 80.0)), literal_order=bool(spec.get("literal_order", False)))
    except (KeyError, TypeError, ValueError) as e:
        raise SceneError(where, str(e)) from None
    raise SceneError(where, f"unknown map type {kind!r}")


__all__ = ["Scene", "SceneError", "load_scene", "parse_scene", "bundled_scenes", "resolve_path",
           "build_map", "PLAIN_PROXIMITIES", "BUILTIN_PROXIMITIES"]
