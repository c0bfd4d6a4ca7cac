"""Scene checks: each entry in a scene's ``checks`` list becomes one report record."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from . import connect, descriptive as desc, hyper, maps
from .proximity import check_axioms, derived_family, is_compatible
from .scene import PLAIN_PROXIMITIES, Scene, SceneError
from .spaces import CapacityError, FiniteSpace

VERDICTS = ("pass", "fail", "none-found", "error")


@dataclass
class Context:
    seed: int = 0
    max_pieces: int | None = None


def describe(scene: Scene, value, carrier: str = "X"):
    """JSON form of a set: its declared name, point labels, or a pixel summary."""
    name = scene.name_of(value, carrier)
    if name is not None:
        return name
    space = scene.carriers[carrier]
    if isinstance(space, FiniteSpace):
        return space.labels(value)
    idx = np.argwhere(value)
    if idx.size == 0:
        return {"pixels": 0}
    lo, hi = idx.min(axis=0), idx.max(axis=0)
    return {"pixels": int(len(idx)), "rows": [int(lo[0]), int(hi[0])], "cols": [int(lo[1]), int(hi[1])]}


def _point_json(scene: Scene, p, carrier: str = "X"):
    space = scene.carriers[carrier]
    if isinstance(space, FiniteSpace):
        return space.points[p]
    return [int(p[0]), int(p[1])]


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _sets(scene, c, key, where, carrier="X"):
    refs = c.get(key)
    if not isinstance(refs, list):
        raise SceneError(where, f"{key!r} must be a list of set names")
    return list(refs), [scene.get_set(r, where, carrier) for r in refs]


# ---------------------------------------------------------------------------
# check implementations; each returns (verdict, witness, details)


def _axioms(scene, c, ctx, where):
    kind = scene.proximity(c.get("proximity", "interiorOverlap"), where)
    space = scene.carriers[c.get("in", "X")]
    if c.get("family") == "powerset":
        if not isinstance(space, FiniteSpace):
            raise SceneError(where, "powerset families need a finite carrier")
        family = list(space.all_subsets())
    else:
        _, family = scene.get_family(c.get("family", list(scene.set_names_in(c.get("in", "X")))), where)
        if c.get("derived", True):
            family = derived_family(space, family)
    rep = check_axioms(kind, space, family, seed=ctx.seed)
    return _verdict(rep.passed), rep.to_json(lambda s: describe(scene, s, c.get("in", "X"))), \
        {"family_size": len(family), "failing": rep.failing()}


def _near(scene, c, ctx, where):
    kind = scene.proximity(c.get("proximity", "interiorOverlap"), where)
    a, b = scene.get_set(c["a"], where), scene.get_set(c["b"], where)
    v = kind.near(scene.carrier, a, b)
    return _verdict(v), None, {"near": v}


def _is_connected(scene, c, ctx, where):
    s = scene.get_set(c["set"], where)
    v = scene.carrier.is_connected(s)
    return _verdict(v), None, {"connected": v, "interior_connected": scene.carrier.is_connected(scene.carrier.interior(s))}


def _is_compatible(scene, c, ctx, where):
    kind = scene.proximity(c.get("proximity", "interiorOverlap"), where)
    space = scene.carriers[c.get("in", "X")]
    if not isinstance(space, FiniteSpace):
        raise SceneError(where, "compatibility is decided on finite carriers")
    res = is_compatible(kind, space)
    return _verdict(res.compatible), None, {
        "is_topology": res.is_topology,
        "generated_opens": sorted([space.labels(o) for o in res.generated], key=lambda x: (len(x), x)),
    }


def _verify(scene, c, ctx, where):
    kind = scene.proximity(c.get("proximity", "interiorOverlap"), where)
    names, pieces = _sets(scene, c, "pieces", where)
    v = connect.verify_decomposition(kind, scene.carrier, scene.get_set(c["target"], where), pieces)
    return _verdict(v.ok), {"order": names}, {"reason": v.reason, "index": v.index, "pieces": v.diagnostics}


def _find(scene, c, ctx, where):
    kind = scene.proximity(c.get("proximity", "interiorOverlap"), where)
    names, cands = _sets(scene, c, "candidates", where)
    mp = c.get("max_pieces", ctx.max_pieces)
    target = scene.get_set(c["target"], where)
    d = connect.find_decomposition(kind, scene.carrier, target, cands, mp)
    if d is None:
        return "none-found", None, {"candidates": names}
    order = [names[next(i for i, x in enumerate(cands) if x is p)] for p in d.pieces]
    return "pass", {"order": order}, {"connected": scene.carrier.is_connected(target)}


def _delta_connected(scene, c, ctx, where):
    kind = scene.proximity(c.get("proximity", "interiorOverlap"), where)
    names, pieces = _sets(scene, c, "pieces", where)
    v = connect.delta_implies_connected(kind, scene.carrier, scene.get_set(c["target"], where),
                                        connect.Decomposition(pieces))
    return _verdict(v), {"order": names}, {}


def _closure(scene, c, ctx, where):
    kind = scene.proximity(c.get("proximity", "interiorOverlap"), where)
    names, pieces = _sets(scene, c, "pieces", where)
    v = connect.closure_theorem_check(kind, scene.carrier, connect.Decomposition(pieces))
    return _verdict(v), {"order": names}, {}


def _between(scene, c, ctx, where):
    kind = scene.proximity(c.get("proximity", "interiorOverlap"), where)
    names, pieces = _sets(scene, c, "pieces", where)
    v = connect.between_theorem_check(kind, scene.carrier, connect.Decomposition(pieces),
                                      scene.get_set(c["between"], where))
    return _verdict(v), {"order": names}, {}


def _countable(scene, c, ctx, where):
    kind = scene.proximity(c.get("proximity", "interiorOverlap"), where)
    pts = [scene.point(p, where) for p in c["points"]]
    ws = [connect.Neighbourhoods(scene.get_set(w[0], where), scene.get_set(w[1], where), scene.get_set(w[2], where))
          for w in c["witnesses"]]
    target = scene.get_set(c["target"], where) if "target" in c else None
    v = connect.countable_criterion_check(kind, scene.carrier, pts, ws, target)
    return _verdict(v), {"containers": [w[2] for w in c["witnesses"]]}, {}


def _chain(scene, c, ctx, where):
    kind = scene.proximity(c.get("proximity", "interiorOverlap"), where)
    names, cover = _sets(scene, c, "cover", where)
    a, b = scene.point(c["a"], where), scene.point(c["b"], where)
    target = scene.get_set(c["target"], where) if "target" in c else None
    ch = connect.find_strong_chain(kind, scene.carrier, cover, a, b, target=target)
    if ch is None:
        return "none-found", None, {"cover": names}
    return "pass", {"links": [names[i] for i in ch.indices], "a": _point_json(scene, a),
                    "b": _point_json(scene, b)}, {}


def _map_carriers(scene, c, where):
    src, dst = c.get("from", "X"), c.get("to", "X")
    for n in (src, dst):
        if n not in scene.carriers:
            raise SceneError(where, f"unknown carrier {n!r}")
    return src, dst


def _spc(scene, c, ctx, where):
    src, dst = _map_carriers(scene, c, where)
    f = scene.get_map(c["map"], where)
    kx = scene.proximity(c.get("kind_x", c.get("proximity", "interiorOverlap")), where)
    ky = scene.proximity(c.get("kind_y", c.get("proximity", "interiorOverlap")), where)
    names, fam = scene.get_family(c["family"], where)
    rep = maps.spc_check(f, kx, scene.carriers[src], ky, scene.carriers[dst], fam)
    mode = c.get("mode", "spc")
    ok = rep.spc if mode == "spc" else rep.spe
    wit = rep.spc_witness if mode == "spc" else rep.spe_witness
    witness = {"pair": [names[wit[0]], names[wit[1]]]} if wit else None
    return _verdict(ok), witness, {"spc": rep.spc, "spe": rep.spe, "pairs_checked": rep.pairs_checked,
                                   "images": [describe(scene, im, dst) for im in rep.images]}


def _open_map(scene, c, ctx, where):
    src, dst = _map_carriers(scene, c, where)
    f = scene.get_map(c["map"], where)
    names, samples = _sets(scene, c, "samples", where, src)
    rep = maps.open_map_check(f, scene.carriers[src], scene.carriers[dst], samples)
    first = rep.first_failure
    return _verdict(rep.passed), ({"sample": names[first]} if first is not None else None), \
        {"verdicts": rep.verdicts, "band_pixels": rep.band_pixels}


def _image_preservation(scene, c, ctx, where):
    src, dst = _map_carriers(scene, c, where)
    f = scene.get_map(c["map"], where)
    kx = scene.proximity(c.get("kind_x", c.get("proximity", "interiorOverlap")), where)
    ky = scene.proximity(c.get("kind_y", c.get("proximity", "interiorOverlap")), where)
    names, pieces = _sets(scene, c, "pieces", where, src)
    v = connect.image_preservation_check(f, kx, scene.carriers[src], ky, scene.carriers[dst],
                                         connect.Decomposition(pieces))
    return _verdict(v), {"order": names}, {}


def _inversion(scene, c, ctx, where):
    fx = maps.inversion_example(int(c.get("width", 800)), int(c.get("height", 400)),
                                collapse_a2=bool(c.get("collapse", False)), members=c.get("members"))
    r = fx.report
    wit = {"pair": [fx.names[r.spc_witness[0]], fx.names[r.spc_witness[1]]]} if r.spc_witness else None
    return _verdict(r.spc), wit, {"spc": r.spc, "spe": r.spe, "pairs_checked": r.pairs_checked,
                                  "image_pixels": [int(i.sum()) for i in r.images]}


def _hyper(scene, c, ctx, where):
    space = scene.carriers[c.get("in", "X")]
    if not isinstance(space, FiniteSpace):
        raise SceneError(where, "hyperspaces need a finite carrier")
    kind = scene.proximity(c.get("proximity", "interiorOverlap"), where)
    plain = PLAIN_PROXIMITIES.get(c.get("plain", "closureOverlap"))
    if plain is None:
        raise SceneError(where, f"unknown plain proximity {c.get('plain')!r}")
    hs = {m: hyper.build_hyper(space, kind, plain, hyper.Miss(m)) for m in ("plus", "plusPlus")}
    chosen = hs[c.get("miss", "plus")]
    plus, pp = hs["plus"].misses, hs["plusPlus"].misses
    relation = {
        "plus_subset_plusplus": all(plus[a] & ~pp[a] == 0 for a in plus),
        "plusplus_subset_plus": all(pp[a] & ~plus[a] == 0 for a in plus),
    }
    return "pass", None, {"hyperspace": chosen.to_json(), "miss_relation": relation}


def _homeo(scene, c, ctx, where):
    sx, sy = c.get("from", "X"), c.get("to", "X")
    X, Y = scene.carriers[sx], scene.carriers[sy]
    f = scene.get_map(c["map"], where)
    if not isinstance(f, maps.TableMap):
        raise SceneError(where, "homeomorphism checks need a table map")
    kx = scene.proximity(c.get("kind_x", c.get("proximity", "interiorOverlap")), where)
    ky = scene.proximity(c.get("kind_y", c.get("proximity", "interiorOverlap")), where)
    v = hyper.homeomorphism_theorem_check(X, Y, kx, ky, f)
    return _verdict(v), None, {}


def _homeo_witness(scene, c, ctx, where):
    X, Y = scene.carriers[c.get("from", "X")], scene.carriers[c.get("to", "X")]
    f = scene.get_map(c["map"], where)
    if not isinstance(f, maps.TableMap):
        raise SceneError(where, "homeomorphism witnesses need a table map")
    return _verdict(maps.is_homeomorphism_witness(f, X, Y)), None, {}


def _descriptor_of(scene, c, ctx, where):
    t = _tess(scene, where)
    x, y = c["point"]
    got = sorted(desc.descriptor_of_point(t, float(x), float(y)), key=t.space.colors.index)
    want = sorted(c.get("equals", got), key=t.space.colors.index)
    return _verdict(got == want), None, {"descriptor": got}


def _descriptive_spc(scene, c, ctx, where):
    t = _tess(scene, where)
    instant = c.get("instant")
    fams = [f for f in scene.timed_families if instant is None or f.instant == instant]
    if not fams:
        raise SceneError(where, "no timed family matches")
    records = []
    for f in fams:
        others = [o for o in scene.timed_families if o is not f]
        records.append(desc.descriptive_spc_check(t.space, t, f, others))
    ok = all(r.passed for r in records)
    wit = next(({"pair": list(r.witness)} for r in records if r.witness), None)
    return _verdict(ok), wit, {f.instant: r.to_json() for f, r in zip(fams, records)}


def _tess(scene, where):
    if scene.tessellation is None:
        raise SceneError(where, "scene has no tessellation")
    return scene.tessellation


CHECKS: dict[str, tuple[str, Callable]] = {
    "axioms": ("axioms", _axioms),
    "isCompatible": ("axioms", _is_compatible),
    "near": ("near", _near),
    "isConnected": ("connect", _is_connected),
    "verifyDecomposition": ("connect", _verify),
    "findDecomposition": ("connect", _find),
    "deltaImpliesConnected": ("connect", _delta_connected),
    "closureTheorem": ("connect", _closure),
    "betweenTheorem": ("connect", _between),
    "countableCriterion": ("connect", _countable),
    "imagePreservation": ("connect", _image_preservation),
    "findStrongChain": ("chain", _chain),
    "spc": ("spc", _spc),
    "openMap": ("spc", _open_map),
    "inversionExample": ("spc", _inversion),
    "isHomeomorphism": ("hyper", _homeo_witness),
    "hyper": ("hyper", _hyper),
    "homeomorphismTheorem": ("hyper", _homeo),
    "descriptorOf": ("descriptive", _descriptor_of),
    "descriptiveSpc": ("descriptive", _descriptive_spc),
}

_REQUIRED = {
    "near": ("a", "b"), "isConnected": ("set",), "verifyDecomposition": ("target", "pieces"),
    "findDecomposition": ("target", "candidates"), "deltaImpliesConnected": ("target", "pieces"),
    "closureTheorem": ("pieces",), "betweenTheorem": ("pieces", "between"),
    "countableCriterion": ("points", "witnesses"), "imagePreservation": ("map", "pieces"),
    "findStrongChain": ("cover", "a", "b"), "spc": ("map", "family"), "openMap": ("map", "samples"),
    "isHomeomorphism": ("map",), "homeomorphismTheorem": ("map",), "descriptorOf": ("point",),
}


def validate_check(scene: Scene, c: dict, where: str) -> None:
    if c["check"] not in CHECKS:
        raise SceneError(where, f"unknown check {c['check']!r}")
    for key in _REQUIRED.get(c["check"], ()):
        if key not in c:
            raise SceneError(where, f"missing field {key!r}")
    expect = c.get("expect", "pass")
    if expect not in VERDICTS:
        raise SceneError(where, f"expect must be one of {', '.join(VERDICTS)}")
    for key in ("a", "b", "set", "target", "between"):
        if isinstance(c.get(key), str) and c["check"] != "findStrongChain" and c[key] not in scene.sets:
            raise SceneError(where, f"unknown set {c[key]!r}")
    for key in ("pieces", "candidates", "cover", "samples"):
        for n in c.get(key, []) or []:
            if isinstance(n, str) and n not in scene.sets:
                raise SceneError(where, f"unknown set {n!r}")
    for key in ("proximity", "kind_x", "kind_y"):
        if key in c:
            scene.proximity(c[key], where)
    if isinstance(c.get("map"), str) and c["map"] not in scene.maps:
        raise SceneError(where, f"unknown map {c['map']!r}")
    if isinstance(c.get("family"), str) and c["family"] not in ("powerset",) and c["family"] not in scene.families:
        raise SceneError(where, f"unknown family {c['family']!r}")


def category(check: str) -> str:
    return CHECKS[check][0]


def run_check(scene: Scene, c: dict, ctx: Context) -> dict[str, Any]:
    where = f"check {c['id']}"
    fn = CHECKS[c["check"]][1]
    try:
        verdict, witness, details = fn(scene, c, ctx, where)
    except (connect.PreconditionError, CapacityError, maps.PoleError, maps.NotInvertibleError,
            maps.NotOpenError, hyper.ClosedSetError, desc.TessellationError, SceneError) as e:
        verdict, witness, details = "error", None, {"message": str(e), "error": type(e).__name__}
    expect = c.get("expect", "pass")
    return {"id": c["id"], "check": c["check"], "verdict": verdict, "expect": expect,
            "ok": verdict == expect, "witness": witness, "details": details}
