"""Deterministic renderer for ground-truth diagram fixtures.

A SceneSpec describes a diagram symbolically: labeled points, lines,
circles, and a placement offset for every drawn label.  Rendering is
anti-alias-free (pure threshold masks over pixel centers), so identical
specs produce identical image bytes.  Each fixture ships with its exact
ground-truth scene; the ground-truth relation set is whatever the miners
produce on the exact coordinates, which by construction is the intended
relation list of the diagram.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .config import Tolerances
from .geometry import CircleEnt, LineEnt, Point, Relation, Scene, mine_relations
from .labels import glyph_bitmap
from .raster import RasterImage

POINT_MARKER_RADIUS = 2.5


@dataclass
class SceneSpec:
    name: str
    canvas: tuple[int, int] = (400, 400)
    stroke_width: float = 2.0
    label_scale: float = 0.75
    points: dict[str, tuple[float, float]] = field(default_factory=dict)
    lines: dict[str, tuple[str, str, str]] = field(default_factory=dict)   # kind, p, q
    circles: dict[str, dict] = field(default_factory=dict)
    labels: dict[str, tuple[float, float]] = field(default_factory=dict)   # label -> offset

    def validate(self) -> None:
        for label, (kind, p, q) in self.lines.items():
            if p not in self.points or q not in self.points:
                raise ValueError(f"line {label} references unknown points")
        for label, spec in self.circles.items():
            if "center" in spec and spec["center"] not in self.points:
                raise ValueError(f"circle {label} has unknown center")
            for p in spec.get("points", ()):  # 3-point circles
                if p not in self.points:
                    raise ValueError(f"circle {label} has unknown point {p}")
        for label in self.labels:
            if label not in self.points and label not in self.lines and label not in self.circles:
                raise ValueError(f"label {label} names no object")

    def scaled(self, k: float) -> "SceneSpec":
        """The same diagram at k times the resolution (labels unscaled)."""
        return SceneSpec(
            name=self.name,
            canvas=(round(self.canvas[0] * k), round(self.canvas[1] * k)),
            stroke_width=self.stroke_width,
            label_scale=self.label_scale,
            points={n: (x * k, y * k) for n, (x, y) in self.points.items()},
            lines=dict(self.lines),
            circles={n: dict(c, **({"radius": c["radius"] * k} if "radius" in c else {}))
                     for n, c in self.circles.items()},
            labels={n: (dx * k, dy * k) for n, (dx, dy) in self.labels.items()},
        )

    def scene(self) -> Scene:
        s = Scene()
        for name, (x, y) in self.points.items():
            s.points[name] = Point(float(x), float(y))
        for label, (kind, p, q) in self.lines.items():
            s.lines[label] = LineEnt(kind, p, q)
        for label, spec in self.circles.items():
            if "points" in spec:
                s.circles[label] = CircleEnt(points=tuple(spec["points"]))
            else:
                s.circles[label] = CircleEnt(center=spec["center"], radius=float(spec["radius"]))
        s.validate()
        return s

    def to_json(self) -> dict:
        return {
            "schema": "scenespec/1",
            "name": self.name,
            "canvas": list(self.canvas),
            "stroke_width": self.stroke_width,
            "label_scale": self.label_scale,
            "points": {n: list(xy) for n, xy in self.points.items()},
            "lines": {n: list(spec) for n, spec in self.lines.items()},
            "circles": self.circles,
            "labels": {n: list(off) for n, off in self.labels.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SceneSpec":
        spec = cls(
            name=obj["name"],
            canvas=tuple(obj["canvas"]),
            stroke_width=obj["stroke_width"],
            label_scale=obj.get("label_scale", 0.75),
            points={n: tuple(xy) for n, xy in obj["points"].items()},
            lines={n: tuple(v) for n, v in obj["lines"].items()},
            circles=obj["circles"],
            labels={n: tuple(v) for n, v in obj.get("labels", {}).items()},
        )
        spec.validate()
        return spec


@dataclass
class Rendered:
    image: RasterImage
    scene: Scene
    relations: list[Relation]
    label_boxes: dict[str, tuple[int, int, int, int]]  # label -> (l, t, r, b)


def _stroke_mask(spec: SceneSpec) -> np.ndarray:
    W, H = spec.canvas
    yy, xx = np.mgrid[0:H, 0:W]
    mask = np.zeros((H, W), dtype=bool)
    half = spec.stroke_width / 2

    for kind, pname, qname in spec.lines.values():
        px, py = spec.points[pname]
        qx, qy = spec.points[qname]
        dx, dy = qx - px, qy - py
        L2 = dx * dx + dy * dy
        if L2 == 0:
            continue
        t = ((xx - px) * dx + (yy - py) * dy) / L2
        if kind == "Segment":
            t = np.clip(t, 0.0, 1.0)
        elif kind == "HalfLine":
            t = np.clip(t, 0.0, 100.0)
        else:
            t = np.clip(t, -100.0, 100.0)
        d2 = (xx - (px + t * dx)) ** 2 + (yy - (py + t * dy)) ** 2
        mask |= d2 <= half * half

    for cspec in spec.circles.values():
        if "center" in cspec:
            cx, cy = spec.points[cspec["center"]]
            r = float(cspec["radius"])
        else:
            from .geometry import circumcenter

            a, b, c = (Point(*spec.points[p]) for p in cspec["points"])
            cx, cy, r = circumcenter(a, b, c)
        d = np.abs(np.sqrt((xx - cx) ** 2 + (yy - cy) ** 2) - r)
        mask |= d <= half

    pr = POINT_MARKER_RADIUS
    for (x, y) in spec.points.values():
        d2 = (xx - x) ** 2 + (yy - y) ** 2
        mask |= d2 <= pr * pr
    return mask


def _label_anchor(spec: SceneSpec, label: str) -> tuple[float, float]:
    if label in spec.points:
        return spec.points[label]
    if label in spec.lines:
        _, p, q = spec.lines[label]
        (px, py), (qx, qy) = spec.points[p], spec.points[q]
        return ((px + qx) / 2, (py + qy) / 2)
    cspec = spec.circles[label]
    if "center" in cspec:
        return spec.points[cspec["center"]]
    xs = [spec.points[p][0] for p in cspec["points"]]
    ys = [spec.points[p][1] for p in cspec["points"]]
    return (sum(xs) / 3, sum(ys) / 3)


def render(spec: SceneSpec, tolerances: Tolerances | None = None) -> Rendered:
    """Rasterize a spec and return the image plus exact ground truth.

    Raises when any label's glyph box overlaps a stroke or marker (the
    recognition algorithms assume labels and geometry do not touch).
    """
    spec.validate()
    W, H = spec.canvas
    strokes = _stroke_mask(spec)
    img = np.where(strokes, 0, 255).astype(np.uint8)

    boxes: dict[str, tuple[int, int, int, int]] = {}
    for label, (dx, dy) in spec.labels.items():
        glyph = glyph_bitmap(label[0], spec.label_scale)
        gh, gw = glyph.shape
        ax, ay = _label_anchor(spec, label)
        cx, cy = ax + dx, ay + dy
        l = int(round(cx - gw / 2))
        t = int(round(cy - gh / 2))
        if l < 0 or t < 0 or l + gw > W or t + gh > H:
            raise ValueError(f"label {label} leaves the canvas at ({l},{t})")
        patch = strokes[max(t - 1, 0):t + gh + 1, max(l - 1, 0):l + gw + 1]
        if patch.any():
            raise ValueError(f"label {label} overlaps geometry near ({l},{t})")
        img[t:t + gh, l:l + gw][glyph] = 0
        boxes[label] = (l, t, l + gw, t + gh)

    scene = spec.scene()
    tol = tolerances if tolerances is not None else Tolerances()
    relations = mine_relations(scene, tol.scaled(W, H))
    return Rendered(RasterImage(img), scene, relations, boxes)


# -- the fixture corpus ---------------------------------------------------------------


def fixture_corpus() -> list[SceneSpec]:
    """All checked-in fixture specs, loaded from the packaged JSON files."""
    pkg = resources.files("theoremine") / "fixtures"
    specs = []
    for entry in sorted(pkg.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            specs.append(SceneSpec.from_json(json.loads(entry.read_text())))
    return specs


def load_fixture(name: str) -> SceneSpec:
    for spec in fixture_corpus():
        if spec.name == name:
            return spec
    raise KeyError(f"no fixture named {name!r}")
