"""Deterministic SVG drawings of grid scenes.

Regions are drawn as unions of horizontal pixel runs in pixel units with the
y axis flipped, so world "up" is up on the page.  Witness overlays number the
pieces of a decomposition or the links of a chain, and outline failing pairs.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .grid import PixelGrid

PALETTE = ("#4daf4a", "#ff7f00", "#377eb8", "#984ea3", "#e41a1c", "#a65628", "#f781bf", "#999999")


class RenderError(ValueError):
    pass


def _runs_path(region: np.ndarray) -> str:
    h = region.shape[0]
    parts = []
    for j in range(h):
        row = region[j]
        if not row.any():
            continue
        padded = np.concatenate(([False], row, [False]))
        edges = np.flatnonzero(padded[1:] != padded[:-1])
        y = h - 1 - j
        for start, stop in zip(edges[::2], edges[1::2]):
            parts.append(f"M{start} {y}h{stop - start}v1h{start - stop}z")
    return "".join(parts)


def _centroid(region: np.ndarray) -> tuple[float, float] | None:
    idx = np.argwhere(region)
    if idx.size == 0:
        return None
    # use an actual member pixel nearest the mean so labels sit on the region
    mean = idx.mean(axis=0)
    j, i = idx[np.argmin(((idx - mean) ** 2).sum(axis=1))]
    return float(i) + 0.5, float(region.shape[0] - j) - 0.5


def render_svg(grid: PixelGrid, regions: list[tuple[str, np.ndarray]], *, labels: list[tuple[str, str]] = (),
               highlight: list[str] = (), title: str = "") -> str:
    """``labels`` pairs a region name with the text to place on it; ``highlight`` outlines regions."""
    w, h = grid.width, grid.height
    font = max(6, min(w, h) // 16)
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">']
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff" stroke="#000000" stroke-width="1"/>')
    by_name = dict(regions)
    for k, (name, region) in enumerate(regions):
        colour = PALETTE[k % len(PALETTE)]
        attrs = f'id="region-{escape(name)}" fill="{colour}" fill-opacity="0.5"'
        if name in highlight:
            attrs += ' stroke="#e41a1c" stroke-width="1"'
        path = _runs_path(region)
        body = f'<path d="{path}"/>' if path else ""
        out.append(f"<g {attrs}>{body}</g>")
    for name, text in labels:
        region = by_name.get(name)
        if region is None:
            continue
        c = _centroid(region)
        if c is None:
            continue
        out.append(f'<text x="{c[0]:.1f}" y="{c[1]:.1f}" font-size="{font}" text-anchor="middle" '
                   f'font-family="sans-serif" fill="#000000">{escape(text)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_scene(scene, spec: dict, records: dict[str, dict]) -> str:
    """Draw the sets named in ``spec`` with the overlay of the check ``spec['overlay']``."""
    if not isinstance(scene.carrier, PixelGrid):
        raise RenderError("rendering needs the grid backend")
    names = list(spec.get("sets", []))
    labels, highlight = [], []
    overlay = spec.get("overlay")
    if overlay is not None:
        rec = records.get(overlay)
        if rec is None:
            raise RenderError(f"unknown overlay check {overlay!r}")
        wit = rec.get("witness") or {}
        seq = wit.get("order") or wit.get("links") or []
        for k, n in enumerate(seq, start=1):
            if n not in names:
                names.append(n)
            labels.append((n, str(k)))
        for n in wit.get("pair", []):
            if n not in names and n in scene.sets:
                names.append(n)
            highlight.append(n)
    regions = [(n, scene.sets[n]) for n in names if scene.set_carrier.get(n, "X") == "X"]
    return render_svg(scene.carrier, regions, labels=labels, highlight=highlight,
                      title=spec.get("title", scene.name))
