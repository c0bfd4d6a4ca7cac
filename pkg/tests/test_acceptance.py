"""The twelve acceptance criteria, each printing one pass/fail line."""

import itertools
import time

import numpy as np
import pytest
from scipy import ndimage

import oracles
from conftest import record
from strongprox.cli import main, run_scene
from strongprox.connect import Decomposition, closure_theorem_check, find_decomposition, find_strong_chain
from strongprox.connect import _valid_piece, verify_decomposition
from strongprox.descriptive import FIG6_POINTS, descriptive_spc_check, descriptor_of_point, fig6_families
from strongprox.descriptive import fig6_tessellation
from strongprox.geometry import Disk
from strongprox.grid import PixelGrid
from strongprox.hyper import ClosedSetError, build_hyper, homeomorphism_sweep, hyper_map, is_hyper_homeomorphism
from strongprox.maps import (Inversion, all_bijections, all_maps, apply_point, inversion_example, open_map_check,
                             remark_example, spc_check)
from strongprox.proximity import INTERIOR_OVERLAP, check_axioms, is_compatible
from strongprox.scene import bundled_scenes, load_scene
from strongprox.spaces import all_topologies

POINTS = "abcde"


def topologies_up_to(n):
    return [s for k in range(1, n + 1) for s in all_topologies(POINTS[:k])]


def test_1_axioms_exhaustive():
    start = time.perf_counter()
    spaces = topologies_up_to(4)
    failures = [s for s in spaces if not check_axioms(INTERIOR_OVERLAP, s, list(s.all_subsets())).passed]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    assert record(1, ok, f"{len(spaces)} topologies on <=4 points, {len(failures)} failing, {elapsed:.1f}s")


def test_2_spc_implies_open_map():
    spaces = [s for s in topologies_up_to(3) if is_compatible(INTERIOR_OVERLAP, s)]
    cases = passed = 0
    for sx, sy in itertools.product(spaces, repeat=2):
        fam = list(sx.all_subsets())
        opens = sorted(o for o in sx.opens if o)
        for f in all_maps(sx, sy):
            if not spc_check(f, INTERIOR_OVERLAP, sx, INTERIOR_OVERLAP, sy, fam).spc:
                continue
            cases += 1
            passed += open_map_check(f, sx, sy, opens).passed
    ok = cases > 0 and passed == cases
    assert record(2, ok, f"{len(spaces)} compatible spaces, {passed}/{cases} s.p.c. maps open")


def test_3_remark_counterexample():
    fx = remark_example()
    ok = fx.open_map.passed and not fx.spc.spc and fx.spc.spc_witness is not None
    pair = tuple(fx.names[i] for i in fx.spc.spc_witness) if fx.spc.spc_witness else None
    assert record(3, ok, f"open map {fx.open_map.passed}, s.p.c. {fx.spc.spc}, witness {pair}")


def unfiltered_hyper_stats():
    """Same sweep without the compatibility hypothesis, to show it is needed."""
    total = good = not_closed = 0
    for n in (1, 2, 3):
        spaces = list(all_topologies(POINTS[:n]))
        hypers = {id(s): build_hyper(s, INTERIOR_OVERLAP) for s in spaces}
        for sx, sy in itertools.product(spaces, repeat=2):
            fam = list(sx.all_subsets())
            for f in all_bijections(sx, sy):
                if not spc_check(f, INTERIOR_OVERLAP, sx, INTERIOR_OVERLAP, sy, fam).spe:
                    continue
                total += 1
                try:
                    table = hyper_map(f, hypers[id(sx)], hypers[id(sy)])
                except ClosedSetError:
                    not_closed += 1
                    continue
                good += is_hyper_homeomorphism(table, hypers[id(sx)], hypers[id(sy)])
    return total, good, not_closed


def test_4_hyper_homeomorphism():
    start = time.perf_counter()
    res = homeomorphism_sweep(INTERIOR_OVERLAP, max_points=3)
    elapsed = time.perf_counter() - start
    total, good, not_closed = unfiltered_hyper_stats()
    ok = res.cases > 0 and res.passed == res.cases and elapsed < 300
    assert record(4, ok, f"{res.passed}/{res.cases} compatible s.p.e. bijections, {elapsed:.1f}s "
                         f"(without compatibility: {good}/{total}, {not_closed} with non-closed images)")


def finite_decomposition_sweep(max_points):
    targets = found = violations = 0
    for space in topologies_up_to(max_points):
        pieces = [s for s in range(1, space.full + 1) if _valid_piece(space, s)]
        for target in range(1, space.full + 1):
            # proper sub-pieces only, so single-piece answers do not dominate
            cands = [s for s in pieces if s & ~target == 0 and s != target]
            targets += 1
            d = find_decomposition(INTERIOR_OVERLAP, space, target, cands, limit=len(cands))
            if d is None:
                continue
            found += 1
            if not (verify_decomposition(INTERIOR_OVERLAP, space, target, d) and space.is_connected(target)):
                violations += 1
    return targets, found, violations


def grid_decomposition_targets():
    out = []
    for name in bundled_scenes():
        scene = load_scene(name)
        if scene.backend != "grid":
            continue
        rep = {r["id"]: r for r in run_scene(scene).records}
        for c in scene.checks:
            if c["check"] in ("verifyDecomposition", "findDecomposition") and rep[c["id"]]["verdict"] == "pass":
                out.append((name, c["target"], scene.carrier, scene.get_set(c["target"], "target")))
    return out


def test_5_delta_connected_implies_connected():
    targets, found, violations = finite_decomposition_sweep(5)
    grid = grid_decomposition_targets()
    grid_bad = [f"{n}:{t}" for n, t, g, s in grid if not g.is_connected(s)]
    ok = found > 0 and violations == 0 and grid and not grid_bad
    assert record(5, ok, f"finite: {found} decompositions over {targets} targets on <=5 points, "
                         f"{violations} violations; grid: {len(grid)} verified targets, {len(grid_bad)} violations")


def test_6_tangent_disks_not_delta_connected():
    scene = load_scene("fig5_not_delta_connected")
    rep = {r["id"]: r for r in run_scene(scene).records}
    g = scene.carrier
    connected = rep["connected"]["verdict"] == "pass"
    find = rep["find"]["verdict"]
    ok = (g.width, g.height) == (200, 200) and connected and find == "none-found"
    assert record(6, ok, f"200x200: isConnected {connected}, findDecomposition {find}")


def test_7_disjoint_balls_and_crossing_sets():
    r7 = {r["id"]: r["verdict"] for r in run_scene(load_scene("fig7")).records}
    r8 = {r["id"]: r["verdict"] for r in run_scene(load_scene("fig8")).records}
    ok = (r7["verify-A"] == r7["verify-B"] == "pass" and r7["find-AB"] == "none-found"
          and r8["verify-C"] == r8["verify-D"] == "pass" and r8["find-CD"] == "none-found")
    assert record(7, ok, f"balls: A {r7['verify-A']}, B {r7['verify-B']}, union {r7['find-AB']}; "
                         f"C {r8['verify-C']}, D {r8['verify-D']}, C&D {r8['find-CD']}")


def random_disk_chain(rng, grid):
    k = int(rng.integers(2, 5))
    centres, radii = [], []
    c = np.array([30.0, 60.0])
    for i in range(k):
        r = float(rng.uniform(12, 20))
        if i:
            # the next disk overlaps the previous one by at least a few pixels
            step = rng.uniform(0.4, 0.9) * (r + radii[-1])
            angle = rng.uniform(-0.6, 0.6)
            c = c + step * np.array([np.cos(angle), np.sin(angle)])
        centres.append(c.copy())
        radii.append(r)
    return [grid.regularize(grid.rasterize(Disk(tuple(p), r, closed=False))) for p, r in zip(centres, radii)]


def test_8_closure_theorem_random_scenes():
    rng = np.random.default_rng(2024)
    grid = PixelGrid(240, 120)
    passed = 0
    for _ in range(50):
        pieces = random_disk_chain(rng, grid)
        passed += closure_theorem_check(INTERIOR_OVERLAP, grid, Decomposition(pieces))
    assert record(8, passed == 50, f"{passed}/50 seeded disk scenes")


def voronoi_cover(grid, target, k, rng):
    pix = np.argwhere(target)
    seeds = pix[rng.choice(len(pix), size=k, replace=False)]
    jj, ii = np.indices(grid.shape)
    d = (jj[..., None] - seeds[:, 0]) ** 2 + (ii[..., None] - seeds[:, 1]) ** 2
    owner = np.argmin(d, axis=-1)
    cover = []
    for c in range(k):
        cell = ndimage.binary_dilation(owner == c, iterations=3) & target
        cover.append(grid.regularize(cell))
    return [u for u in cover if u.any()]


def test_9_strong_chains():
    rng = np.random.default_rng(9)
    seen, attempts, found, covers = set(), 0, 0, 0
    for name, tname, grid, target in grid_decomposition_targets():
        key = (name, tname)
        if key in seen:
            continue
        seen.add(key)
        for k in range(2, 9):
            cover = voronoi_cover(grid, target, k, rng)
            covers += 1
            pix = np.argwhere(target)
            for _ in range(20):
                a, b = (tuple(int(v) for v in pix[rng.integers(len(pix))]) for _ in range(2))
                attempts += 1
                found += find_strong_chain(INTERIOR_OVERLAP, grid, cover, a, b, target=target) is not None
    ok = attempts > 0 and found == attempts
    assert record(9, ok, f"{len(seen)} targets, {covers} covers of size <=8, {found}/{attempts} chains")


def test_10_inversion():
    rng = np.random.default_rng(10)
    centre, k = (0.7, -0.3), 2.5
    f = Inversion(centre, k)
    pts = rng.uniform(-10, 10, size=(1000, 2))
    pts = pts[np.hypot(pts[:, 0] - centre[0], pts[:, 1] - centre[1]) > 0.05]
    worst = 0.0
    worst_inv = 0.0
    for x, y in pts:
        got = apply_point(f, (x, y))
        want = oracles.invert(x, y, *centre, k)
        worst = max(worst, abs(got[0] - want[0]) / max(1, abs(want[0])), abs(got[1] - want[1]) / max(1, abs(want[1])))
        back = apply_point(f, got)
        worst_inv = max(worst_inv, abs(back[0] - x) / max(1, abs(x)), abs(back[1] - y) / max(1, abs(y)))
    t = rng.uniform(0, 2 * np.pi, 200)
    circle = np.stack([centre[0] + k * np.cos(t), centre[1] + k * np.sin(t)], axis=-1)
    worst_fix = float(np.abs(f.apply(circle) - circle).max())
    fx = inversion_example()
    ok = len(pts) >= 990 and max(worst, worst_inv, worst_fix) <= 1e-9 and fx.report.spc
    assert record(10, ok, f"{len(pts)} points: oracle {worst:.1e}, involution {worst_inv:.1e}, "
                          f"fixed circle {worst_fix:.1e}; fixture s.p.c. {fx.report.spc}")


def test_11_descriptive():
    t = fig6_tessellation()
    got = {p: ",".join(c for c in t.space.colors if c in descriptor_of_point(t, *FIG6_POINTS[p])) for p in "abc"}
    t1, t2 = fig6_families(t)
    rep = descriptive_spc_check(t.space, t, t1, [t2])
    ok = got == {"a": "g", "b": "g,r", "c": "g,r,b"} and rep.passed
    assert record(11, ok, f"f(a)={{{got['a']}}} f(b)={{{got['b']}}} f(c)={{{got['c']}}}, co-temporal family "
                          f"{'pass' if rep.passed else 'fail'}")


def test_12_determinism(tmp_path):
    outs = []
    for run in ("first", "second"):
        out = tmp_path / run
        for name in bundled_scenes():
            assert main(["run", name, "--out", str(out)]) == 0
        outs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    svgs = sum(n.endswith(".svg") for n in outs[0])
    ok = outs[0] == outs[1] and len(outs[0]) > len(bundled_scenes())
    assert record(12, ok, f"{len(bundled_scenes())} scenes, {len(outs[0])} files ({svgs} SVG), "
                          f"{'identical' if outs[0] == outs[1] else 'different'}")
