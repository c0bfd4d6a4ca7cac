"""Command-line front end: ``strongprox run SCENE --out DIR`` and friends."""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .checks import Context, category, run_check
from .render import RenderError, render_scene
from .report import Report
from .scene import Scene, SceneError, bundled_scenes, load_scene

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
CATEGORIES = ("axioms", "near", "connect", "chain", "spc", "hyper", "descriptive")


def run_scene(scene: Scene, *, only: str | None = None, seed: int = 0, max_pieces: int | None = None,
              parallel: bool = False, timing: bool = False) -> Report:
    ctx = Context(seed=seed, max_pieces=max_pieces)
    checks = [c for c in scene.checks if only is None or category(c["check"]) == only]

    def one(c):
        start = time.perf_counter()
        rec = run_check(scene, c, ctx)
        if timing:
            rec["seconds"] = round(time.perf_counter() - start, 6)
        return rec

    if parallel and len(checks) > 1:
        with ThreadPoolExecutor() as pool:
            records = list(pool.map(one, checks))
    else:
        records = [one(c) for c in checks]
    return Report(scene.name, records)


def write_renders(scene: Scene, report: Report, out: Path) -> list[Path]:
    records = {r["id"]: r for r in report.records}
    written = []
    for spec in scene.render:
        path = out / spec["file"]
        path.write_text(render_scene(scene, spec, records), encoding="utf-8")
        written.append(path)
    return written


def _colour(text: str, code: str, stream) -> str:
    if os.environ.get("NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[{code}m{text}\033[0m"


def _print_records(report: Report, stream=None) -> None:
    stream = stream or sys.stdout
    for r in report.records:
        tag = _colour("ok  ", "32", stream) if r["ok"] else _colour("FAIL", "31", stream)
        print(f"{tag} {r['id']}: {r['check']} -> {r['verdict']} (expected {r['expect']})", file=stream)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strongprox", description="Run strong-proximity scenes.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("scene", help="scene file, or the name of a bundled scene")
        sp.add_argument("--out", type=Path, help="directory for the report and SVG files")
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
        sp.add_argument("--max-pieces", type=int, default=None, help="bound on decomposition length")
        sp.add_argument("--adjacency", type=int, choices=(4, 8), default=None,
                        help="override the grid adjacency used for connectivity")
        sp.add_argument("--parallel", action="store_true", help="run independent checks concurrently")
        sp.add_argument("--timing", action="store_true", help="record per-check wall time (not reproducible)")
        sp.add_argument("--json", action="store_true", help="print the report JSON to stdout")

    common(sub.add_parser("run", help="run every check of a scene"))
    common(sub.add_parser("render", help="write the SVG drawings of a scene"))
    for cat in CATEGORIES:
        common(sub.add_parser(cat, help=f"run only the {cat} checks of a scene"))
    sub.add_parser("list", help="list the bundled scenes")
    return p


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list":
        for name in bundled_scenes():
            print(name)
        return EXIT_OK
    try:
        scene = load_scene(args.scene, adjacency=args.adjacency)
    except SceneError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.max_pieces is not None and args.max_pieces < 1:
        print("error: --max-pieces must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "render" and scene.backend == "finite":
        # no drawing for abstract spaces; list the declared sets instead
        for name in scene.sets:
            carrier = scene.set_carrier[name]
            print(f"{name} [{carrier}]: {{{', '.join(map(str, scene.carriers[carrier].labels(scene.sets[name])))}}}")
        return EXIT_OK
    only = args.command if args.command in CATEGORIES else None
    report = run_scene(scene, only=only, seed=args.seed, max_pieces=args.max_pieces,
                       parallel=args.parallel, timing=args.timing)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        if args.command != "render":
            report.write(args.out / f"{scene.name}.report.json")
        if args.command in ("run", "render"):
            try:
                write_renders(scene, report, args.out)
            except RenderError as e:
                print(f"error: {e}", file=sys.stderr)
                return EXIT_INPUT
    if args.json:
        sys.stdout.write(report.dumps())
    elif args.command != "render":
        _print_records(report)
    if args.command == "render":
        return EXIT_OK
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
