#!/usr/bin/env python3
"""Regenerate the checked-in fixture corpus (src/theoremine/fixtures/*.json).

Each fixture is defined here symbolically; label offsets are found by a
deterministic spiral search subject to: the glyph stays on canvas, clears
all strokes and markers, does not touch other glyph boxes, and its center
is decisively nearest to the object it names (so nearest-object binding
recovers the intended assignment).  After placement every fixture is
rendered and its mined-on-exact-coordinates relation set is asserted to
equal the intended one.

Run from the repository root:  python scripts/make_fixtures.py
"""

import json
import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import numpy as np

from theoremine.config import Tolerances
from theoremine.geometry import Point, distance_to_entity, rel
from theoremine.labels import glyph_bitmap
from theoremine.synth import POINT_MARKER_RADIUS, SceneSpec, _label_anchor, _stroke_mask, render

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "theoremine", "fixtures")

BIND_MARGIN = 4.0
STROKE_MARGIN = 2


def spiral_offsets(max_r: float = 95.0, start: float = 12.0):
    r = start
    while r <= max_r:
        n = max(8, int(r))
        for k in range(n):
            t = 2 * math.pi * k / n
            yield (r * math.cos(t), -r * math.sin(t))
        r += 4.0


def anchor_candidates(spec: SceneSpec, label: str):
    """Anchor points to try: the object itself for points, several spots
    along the extent for lines, several arc angles for circles."""
    if label in spec.points:
        yield spec.points[label]
        return
    if label in spec.lines:
        _, p, q = spec.lines[label]
        (px, py), (qx, qy) = spec.points[p], spec.points[q]
        for t in (0.5, 0.35, 0.65, 0.25, 0.75, 0.15, 0.85, 0.45, 0.55, 0.1, 0.9,
                  0.05, 0.95, 0.3, 0.7, 0.2, 0.8, 0.6, 0.4):
            yield (px + t * (qx - px), py + t * (qy - py))
        return
    cspec = spec.circles[label]
    if "center" in cspec:
        cx, cy = spec.points[cspec["center"]]
        r = float(cspec["radius"])
    else:
        from theoremine.geometry import circumcenter
        a, b, c = (Point(*spec.points[p]) for p in cspec["points"])
        cx, cy, r = circumcenter(a, b, c)
    for deg in (135, 225, 45, 315, 90, 180, 270, 0, 110, 160, 200, 250):
        t = math.radians(deg)
        yield (cx + r * math.cos(t), cy - r * math.sin(t))


def place_labels(spec: SceneSpec) -> None:
    """Fill spec.labels with offsets for every point, line, and circle."""
    strokes = _stroke_mask(spec)
    W, H = spec.canvas
    scene = spec.scene()
    taken: list[tuple[int, int, int, int]] = []

    def clear_of_strokes(l, t, gw, gh):
        if l < 2 or t < 2 or l + gw > W - 2 or t + gh > H - 2:
            return False
        patch = strokes[t - STROKE_MARGIN:t + gh + STROKE_MARGIN,
                        l - STROKE_MARGIN:l + gw + STROKE_MARGIN]
        return not patch.any()

    def overlaps_taken(l, t, gw, gh):
        for (l2, t2, r2, b2) in taken:
            if l < r2 + 2 and l + gw > l2 - 2 and t < b2 + 2 and t + gh > t2 - 2:
                return True
        return False

    def binds_correctly(label, cx, cy):
        c = Point(cx, cy)
        if label in spec.points:
            mine = c.dist(scene.points[label])
            others = [c.dist(p) for n, p in scene.points.items() if n != label]
            return not others or mine + BIND_MARGIN < min(others)
        mine = distance_to_entity(scene, c, label)
        others = [distance_to_entity(scene, c, k)
                  for k in list(scene.lines) + list(scene.circles) if k != label]
        return not others or mine + 3.0 < min(others)

    def tightness(label):
        ax, ay = _label_anchor(spec, label)
        a = Point(ax, ay)
        if label in spec.points:
            ds = [a.dist(p) for n, p in scene.points.items() if n != label]
        else:
            ds = [distance_to_entity(scene, a, k)
                  for k in list(scene.lines) + list(scene.circles) if k != label]
        return min(ds) if ds else 1e9

    # points first (their anchor is fixed), then lines and circles which can
    # slide along their extent; tightest binding neighborhoods go first
    labels = (sorted(spec.points, key=tightness)
              + sorted(list(spec.lines) + list(spec.circles), key=tightness))
    placements: dict[str, tuple[float, float]] = {}
    for label in labels:
        glyph = glyph_bitmap(label[0], spec.label_scale)
        gh, gw = glyph.shape
        base_ax, base_ay = _label_anchor(spec, label)
        max_r = 95.0 if label in spec.points else 65.0
        placed = False
        for ax, ay in anchor_candidates(spec, label):
            for dx, dy in spiral_offsets(max_r):
                cx, cy = ax + dx, ay + dy
                l, t = int(round(cx - gw / 2)), int(round(cy - gh / 2))
                if not clear_of_strokes(l, t, gw, gh):
                    continue
                if overlaps_taken(l, t, gw, gh):
                    continue
                if not binds_correctly(label, l + gw / 2, t + gh / 2):
                    continue
                placements[label] = (l + gw / 2 - base_ax, t + gh / 2 - base_ay)
                taken.append((l, t, l + gw, t + gh))
                placed = True
                break
            if placed:
                break
        if not placed:
            raise SystemExit(f"{spec.name}: no valid placement for label {label!r}")
    spec.labels = placements


# -- fixture definitions -----------------------------------------------------------------


def simson():
    spec = SceneSpec(
        name="simson",
        points={"B": (45, 260), "C": (351, 243), "G": (313, 246), "A": (137, 78),
                "F": (262, 174), "H": (311, 212), "E": (163, 37), "I": (182, 0),
                "D": (305, 110), "J": (196, 224), "K": (184, 67), "L": (224, 69)},
        lines={"a": ("Segment", "B", "C"), "b": ("Segment", "A", "C"),
               "c": ("Segment", "E", "G"), "d": ("HalfLine", "B", "I"),
               "e": ("Segment", "E", "D"), "f": ("Segment", "D", "G"),
               "g": ("Segment", "F", "D")},
        circles={"h": {"center": "J", "radius": 157}},
    )
    expected = [
        rel("OnLine", "G", "a"), rel("OnLine", "A", "d"), rel("OnLine", "F", "b"),
        rel("OnLine", "F", "c"), rel("OnLine", "H", "f"), rel("OnLine", "E", "d"),
        rel("OnLine", "K", "c"), rel("OnLine", "L", "e"), rel("OnLine", "H", "b"),
        rel("OnCircle", "B", "h"), rel("OnCircle", "C", "h"), rel("OnCircle", "A", "h"),
        rel("OnCircle", "K", "h"), rel("OnCircle", "L", "h"), rel("OnCircle", "D", "h"),
        rel("Perp", "a", "f"), rel("Perp", "b", "g"), rel("Perp", "d", "e"),
    ]
    return spec, expected


def midline():
    spec = SceneSpec(
        name="midline",
        points={"A": (120, 70), "B": (60, 340), "C": (360, 300),
                "D": (90, 205), "E": (240, 185), "F": (210, 320)},
        lines={"a": ("Segment", "A", "B"), "b": ("Segment", "A", "C"),
               "c": ("Segment", "B", "C"), "d": ("Segment", "D", "E"),
               "e": ("Segment", "E", "F"), "f": ("Segment", "F", "D")},
    )
    expected = [
        rel("OnLine", "D", "a"), rel("OnLine", "E", "b"), rel("OnLine", "F", "c"),
        rel("DEqual", "A", "D", "D", "B"), rel("DEqual", "A", "E", "E", "C"),
        rel("DEqual", "B", "F", "F", "C"),
        rel("Parallel", "d", "c"), rel("Parallel", "e", "a"), rel("Parallel", "f", "b"),
    ]
    return spec, expected


def orthocenter():
    # strongly scalene (48/62/70 degrees): altitude fans at the vertices and
    # at the orthocenter stay clear of the angle-equality tolerance
    A, B, C = (171, 47), (70, 330), (305, 295)
    def foot(p, a, b):
        ax, ay = a
        dx, dy = b[0] - a[0], b[1] - a[1]
        t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / (dx * dx + dy * dy)
        return (ax + t * dx, ay + t * dy)
    D = foot(A, B, C)
    E = foot(B, C, A)
    F = foot(C, A, B)
    # orthocenter via intersection of altitudes AD and BE
    def inter(p1, q1, p2, q2):
        d1 = (q1[0] - p1[0], q1[1] - p1[1])
        d2 = (q2[0] - p2[0], q2[1] - p2[1])
        det = d1[0] * (-d2[1]) - d1[1] * (-d2[0])
        rx, ry = p2[0] - p1[0], p2[1] - p1[1]
        t = (rx * (-d2[1]) - ry * (-d2[0])) / det
        return (p1[0] + t * d1[0], p1[1] + t * d1[1])
    H = inter(A, D, B, E)
    spec = SceneSpec(
        name="orthocenter",
        points={"A": A, "B": B, "C": C, "D": D, "E": E, "F": F, "H": H},
        lines={"a": ("Segment", "A", "B"), "b": ("Segment", "B", "C"),
               "c": ("Segment", "C", "A"), "d": ("Segment", "A", "D"),
               "e": ("Segment", "B", "E"), "f": ("Segment", "C", "F")},
    )
    expected = [
        rel("OnLine", "D", "b"), rel("OnLine", "E", "c"), rel("OnLine", "F", "a"),
        rel("OnLine", "H", "d"), rel("OnLine", "H", "e"), rel("OnLine", "H", "f"),
        rel("Perp", "d", "b"), rel("Perp", "e", "c"), rel("Perp", "f", "a"),
    ]
    return spec, expected


def thales():
    spec = SceneSpec(
        name="thales",
        points={"A": (80, 200), "B": (320, 200), "C": (128, 104),
                "O": (200, 200), "T": (80, 80), "S": (320, 320)},
        lines={"a": ("Segment", "A", "B"), "b": ("Segment", "C", "A"),
               "c": ("Segment", "C", "B"), "d": ("Segment", "A", "T"),
               "e": ("Segment", "B", "S")},
        circles={"k": {"center": "O", "radius": 120}},
    )
    expected = [
        rel("OnCircle", "A", "k"), rel("OnCircle", "B", "k"), rel("OnCircle", "C", "k"),
        rel("OnLine", "O", "a"),
        rel("DEqual", "A", "O", "O", "B"),
        rel("Perp", "b", "c"), rel("Perp", "a", "d"), rel("Perp", "a", "e"),
        rel("Parallel", "d", "e"),
    ]
    return spec, expected


def parallelogram():
    spec = SceneSpec(
        name="parallelogram",
        points={"A": (90, 120), "B": (310, 120), "C": (310, 280), "D": (90, 280),
                "E": (200, 200)},
        lines={"a": ("Segment", "A", "B"), "b": ("Segment", "B", "C"),
               "c": ("Segment", "C", "D"), "d": ("Segment", "D", "A"),
               "e": ("Segment", "A", "C"), "f": ("Segment", "B", "D")},
    )
    expected = [
        rel("Parallel", "a", "c"), rel("Parallel", "b", "d"),
        rel("Perp", "a", "b"), rel("Perp", "b", "c"), rel("Perp", "c", "d"),
        rel("Perp", "d", "a"),
        rel("OnLine", "E", "e"), rel("OnLine", "E", "f"),
        rel("DEqual", "A", "E", "E", "C"), rel("DEqual", "B", "E", "E", "D"),
    ]
    return spec, expected


def pappus():
    A, B, C = (72, 131), (144, 119), (252, 101)
    P, Q, R = (63, 321), (196, 321), (245, 321)

    def inter(p1, q1, p2, q2):
        d1 = (q1[0] - p1[0], q1[1] - p1[1])
        d2 = (q2[0] - p2[0], q2[1] - p2[1])
        det = d1[0] * (-d2[1]) - d1[1] * (-d2[0])
        rx, ry = p2[0] - p1[0], p2[1] - p1[1]
        t = (rx * (-d2[1]) - ry * (-d2[0])) / det
        return (p1[0] + t * d1[0], p1[1] + t * d1[1])

    X = inter(A, Q, B, P)
    Y = inter(A, R, C, P)
    Z = inter(B, R, C, Q)
    # the Pappus line is drawn overlong, with free endpoints U and V, so
    # that X, Y, Z are all interior incidences and the line's label has room
    U = (X[0] - 0.45 * (Z[0] - X[0]), X[1] - 0.45 * (Z[1] - X[1]))
    V = (Z[0] + 0.53 * (Z[0] - X[0]), Z[1] + 0.53 * (Z[1] - X[1]))
    spec = SceneSpec(
        name="pappus",
        points={"A": A, "B": B, "C": C, "P": P, "Q": Q, "R": R,
                "X": X, "Y": Y, "Z": Z, "U": U, "V": V},
        lines={"a": ("Segment", "A", "C"), "b": ("Segment", "P", "R"),
               "c": ("Segment", "A", "Q"), "d": ("Segment", "B", "P"),
               "e": ("Segment", "A", "R"), "f": ("Segment", "C", "P"),
               "g": ("Segment", "B", "R"), "h": ("Segment", "C", "Q"),
               "k": ("Segment", "U", "V")},
    )
    expected = [
        rel("OnLine", "B", "a"), rel("OnLine", "Q", "b"),
        rel("OnLine", "X", "c"), rel("OnLine", "X", "d"),
        rel("OnLine", "Y", "e"), rel("OnLine", "Y", "f"),
        rel("OnLine", "Z", "g"), rel("OnLine", "Z", "h"),
        rel("OnLine", "X", "k"), rel("OnLine", "Y", "k"), rel("OnLine", "Z", "k"),
    ]
    return spec, expected


def anglefan():
    Pt = (200, 235)
    def at(deg, r=150):
        t = math.radians(deg)
        return (Pt[0] + r * math.cos(t), Pt[1] - r * math.sin(t))
    A, B, C, D = at(15), at(48), at(81), at(114)
    spec = SceneSpec(
        name="anglefan",
        points={"P": Pt, "A": A, "B": B, "C": C, "D": D},
        lines={"a": ("Segment", "P", "A"), "b": ("Segment", "P", "B"),
               "c": ("Segment", "P", "C"), "d": ("Segment", "P", "D")},
    )
    expected = [
        rel("AEqual", "A", "P", "B", "B", "P", "C"),
        rel("AEqual", "B", "P", "C", "C", "P", "D"),
        rel("AEqual", "A", "P", "B", "C", "P", "D"),
        rel("AEqual", "A", "P", "C", "B", "P", "D"),
    ]
    return spec, expected


def scrambled():
    spec = SceneSpec(
        name="scrambled",
        points={"A": (214, 52), "B": (68, 347), "C": (352, 289),
                "D": (120, 150), "E": (305, 153), "F": (173, 296)},
        lines={"a": ("Segment", "A", "B"), "b": ("Segment", "A", "C"),
               "c": ("Segment", "B", "C"), "d": ("Segment", "D", "E"),
               "e": ("Segment", "E", "F"), "f": ("Segment", "F", "D")},
    )
    return spec, []


FIXTURES = [simson, midline, orthocenter, thales, parallelogram, pappus, anglefan, scrambled]


def main() -> int:
    os.makedirs(OUT_DIR, exist_ok=True)
    tol = Tolerances()
    for make in FIXTURES:
        spec, expected = make()
        place_labels(spec)
        out = render(spec)
        got = set(out.relations)
        want = set(expected)
        if got != want:
            print(f"{spec.name}: BAD relation set")
            for r in sorted(got - want, key=lambda r: (r.tag, r.args)):
                print("  extra:", r.text(out.scene))
            for r in sorted(want - got, key=lambda r: (r.tag, r.args)):
                print("  missing:", r.text(out.scene))
            return 1
        path = os.path.join(OUT_DIR, f"{spec.name}.json")
        with open(path, "w") as fh:
            json.dump(spec.to_json(), fh, indent=1, sort_keys=True)
        print(f"{spec.name}: {len(spec.points)} pts, {len(spec.lines)} lines, "
              f"{len(spec.circles)} circles, {len(got)} relations, labels ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
