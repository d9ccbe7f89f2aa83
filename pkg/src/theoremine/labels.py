"""Label recognition: masking, block cutting, template matching, binding.

The embedded bitmap font doubles as the template set and as the glyph
source for the synthetic renderer, which makes recognition well-posed
without an OCR dependency: a rendered glyph always agrees perfectly with
its own template after identical rasterization.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .geometry import Point, Scene, distance_to_entity
from .raster import BinaryImage, RasterImage

log = logging.getLogger(__name__)

REFERENCE_SIZE = 32  # similarity comparisons run at this square size


@dataclass(frozen=True)
class GlyphTemplate:
    char: str
    bitmap: np.ndarray  # bool, ink-cropped

    def __post_init__(self):
        if not self.bitmap.any():
            raise ValueError(f"empty glyph bitmap for {self.char!r}")


@dataclass(frozen=True)
class CutWindow:
    l: int
    r: int
    t: int
    b: int

    def __post_init__(self):
        if not (self.l < self.r and self.t < self.b):
            raise ValueError("degenerate cut window")

    def center(self) -> tuple[float, float]:
        return ((self.l + self.r) / 2, (self.t + self.b) / 2)


@dataclass(frozen=True)
class LabelPlacement:
    char: str
    center: tuple[float, float]


_ATLAS_CACHE: dict[str, np.ndarray] | None = None


def load_templates() -> list[GlyphTemplate]:
    """The embedded font atlas as one template per letter."""
    global _ATLAS_CACHE
    if _ATLAS_CACHE is None:
        from PIL import Image

        pkg = resources.files("theoremine") / "fonts"
        meta = json.loads((pkg / "atlas.json").read_text())
        with (pkg / "atlas.png").open("rb") as fh:
            sheet = np.array(Image.open(fh).convert("L")) < 128
        _ATLAS_CACHE = {}
        for ch, (x, y, w, h) in meta["glyphs"].items():
            _ATLAS_CACHE[ch] = sheet[y:y + h, x:x + w].copy()
    return [GlyphTemplate(ch, bm) for ch, bm in _ATLAS_CACHE.items()]


def glyph_bitmap(char: str, scale: float = 1.0) -> np.ndarray:
    """A glyph bitmap at a multiple of the atlas size (nearest neighbor)."""
    load_templates()
    base = _ATLAS_CACHE[char]
    if scale == 1.0:
        return base.copy()
    h = max(3, round(base.shape[0] * scale))
    w = max(3, round(base.shape[1] * scale))
    return scale_nearest(base, (h, w))


def scale_nearest(bits: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    """Center-sampled nearest-neighbor rescale of a boolean bitmap."""
    h, w = bits.shape
    H, W = shape
    yi = np.minimum(((np.arange(H) + 0.5) * h / H).astype(int), h - 1)
    xi = np.minimum(((np.arange(W) + 0.5) * w / W).astype(int), w - 1)
    return bits[np.ix_(yi, xi)]


# -- Step 2: mask recognized geometry ---------------------------------------------


def mask_objects(img: RasterImage, scene: Scene, stroke_width: float,
                 point_radius: float = 3.0) -> RasterImage:
    """Repaint recognized geometry in background color, leaving label ink.

    Erases pixels within (stroke/2 + 2) of any recognized line or circle
    locus and within (point_radius + 2) of any recognized point.
    """
    gray = img.data if img.channels == 1 else np.array(
        np.round(0.299 * img.data[..., 0] + 0.587 * img.data[..., 1]
                 + 0.114 * img.data[..., 2]), dtype=np.uint8)
    out = gray.copy()
    H, W = out.shape
    yy, xx = np.mgrid[0:H, 0:W]
    reach = stroke_width / 2 + 2.0
    erase = np.zeros((H, W), dtype=bool)

    for line in scene.lines.values():
        p, q = scene.points[line.p], scene.points[line.q]
        px, py, qx, qy = p.x, p.y, q.x, q.y
        if line.kind == "Line":
            t_lo, t_hi = -10.0, 11.0
        elif line.kind == "HalfLine":
            t_lo, t_hi = 0.0, 11.0
        else:
            t_lo, t_hi = 0.0, 1.0
        dx, dy = qx - px, qy - py
        L2 = dx * dx + dy * dy
        if L2 == 0:
            continue
        t = ((xx - px) * dx + (yy - py) * dy) / L2
        t = np.clip(t, t_lo, t_hi)
        d2 = (xx - (px + t * dx)) ** 2 + (yy - (py + t * dy)) ** 2
        erase |= d2 <= reach * reach

    for label in scene.circles:
        ccr = scene.circle_center_radius(label)
        if ccr is None:
            continue
        cx, cy, r = ccr
        d = np.abs(np.sqrt((xx - cx) ** 2 + (yy - cy) ** 2) - r)
        erase |= d <= reach

    pr = point_radius + 2.0
    for pt in scene.points.values():
        d2 = (xx - pt.x) ** 2 + (yy - pt.y) ** 2
        erase |= d2 <= pr * pr

    out[erase] = 255
    return RasterImage(out)


# -- Step 3: cut label blocks ---------------------------------------------------------


def _descend(bits: np.ndarray, x: int, y: int) -> int:
    """The five-case pixel walk estimating glyph height from a top pixel.

    Returns the estimated height delta; 0 when the walk breaks immediately
    (some glyph topologies are not covered by the five cases).
    """
    H, W = bits.shape
    w, h = x, y
    while 0 < h < H - 1 and 0 < w < W - 1:
        if bits[h + 1, w]:
            h += 1
        elif bits[h + 1, w - 1]:
            w -= 1
            h += 1
        elif bits[h + 1, w + 1]:
            w += 1
            h += 1
        elif bits[h, w - 1]:
            w -= 1
        else:
            break
    return h - y


def _component_bbox(bits: np.ndarray, x: int, y: int) -> tuple[int, int, int, int]:
    """Bounding box of the 8-connected component containing (x, y)."""
    H, W = bits.shape
    seen = {(x, y)}
    stack = [(x, y)]
    l = r = x
    t = b = y
    while stack:
        cx, cy = stack.pop()
        l, r = min(l, cx), max(r, cx)
        t, b = min(t, cy), max(b, cy)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                nx, ny = cx + dx, cy + dy
                if 0 <= nx < W and 0 <= ny < H and bits[ny, nx] and (nx, ny) not in seen:
                    seen.add((nx, ny))
                    stack.append((nx, ny))
    return l, r, t, b


def cut_label_blocks(img: BinaryImage) -> list[tuple[np.ndarray, CutWindow]]:
    """Minimal disjoint windows around the glyphs of a masked image.

    Seeds scan in row-major order; each seed runs the descent walk to
    estimate the glyph height, then the window grows until its boundary
    rows and columns are ink-free.  When the walk breaks early the window
    falls back to the seed's connected-component bounding box.
    """
    bits = img.bits
    H, W = bits.shape
    claimed = np.zeros_like(bits)
    out: list[tuple[np.ndarray, CutWindow]] = []
    min_height = 3

    for y, x in zip(*np.where(bits)):
        if claimed[y, x]:
            continue
        dh = _descend(bits, x, y)
        if dh < min_height:
            l, r, t, b = _component_bbox(bits, x, y)
            log.debug("descent walk broke at (%d,%d); component fallback", x, y)
        else:
            l, r, t, b = x, x, y, y + dh
        # grow until the boundary columns/rows carry no foreground
        l, r, t, b = max(l - 1, 0), min(r + 1, W - 1), max(t - 1, 0), min(b + 1, H - 1)
        for _ in range(H + W):
            grown = False
            if l > 0 and bits[t:b + 1, l].any():
                l -= 1
                grown = True
            if r < W - 1 and bits[t:b + 1, r].any():
                r += 1
                grown = True
            if t > 0 and bits[t, l:r + 1].any():
                t -= 1
                grown = True
            if b < H - 1 and bits[b, l:r + 1].any():
                b += 1
                grown = True
            if not grown:
                break
        window = CutWindow(l, r + 1, t, b + 1)
        block = bits[t:b + 1, l:r + 1].copy()
        if not block.any():
            continue
        claimed[t:b + 1, l:r + 1] = True
        out.append((block, window))
    return out


# -- Step 4: template matching ----------------------------------------------------------


def _crop_to_ink(bits: np.ndarray) -> np.ndarray | None:
    ys, xs = np.where(bits)
    if len(ys) == 0:
        return None
    return bits[ys.min():ys.max() + 1, xs.min():xs.max() + 1]


def similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Agreement ratio after scaling both bitmaps to the reference size."""
    sa = scale_nearest(a, (REFERENCE_SIZE, REFERENCE_SIZE))
    sb = scale_nearest(b, (REFERENCE_SIZE, REFERENCE_SIZE))
    return float((sa == sb).mean())


def match_template(block: np.ndarray, templates: list[GlyphTemplate],
                   threshold: float = 0.90) -> str | None:
    """Letter of the best-matching template, or None below the threshold."""
    ink = _crop_to_ink(block)
    if ink is None:
        return None
    best_char, best_ratio = None, -1.0
    for tpl in templates:
        r = similarity(ink, tpl.bitmap)
        if r > best_ratio:
            best_char, best_ratio = tpl.char, r
    return best_char if best_ratio >= threshold else None


# -- label assignment -----------------------------------------------------------------


@dataclass
class LabelBindings:
    points: dict[str, str] = field(default_factory=dict)   # letter -> point key
    objects: dict[str, str] = field(default_factory=dict)  # letter -> line/circle key
    unbound: list[str] = field(default_factory=list)


def assign_labels(placements: list[LabelPlacement], points: dict[str, Point],
                  scene: Scene) -> LabelBindings:
    """Uppercase letters bind to their nearest point, lowercase to the
    nearest line or circle.  Ties break toward the earlier object in input
    order; when two labels contend for one object, the nearer label wins
    and the loser is reported unbound.
    """
    bindings = LabelBindings()
    claims: dict[tuple[str, str], tuple[float, str]] = {}
    for pl in placements:
        c = Point(pl.center[0], pl.center[1])
        if pl.char.isupper():
            best = None
            for key, p in points.items():
                d = c.dist(p)
                if best is None or d < best[0]:
                    best = (d, key)
            kind = "point"
        else:
            best = None
            for key in list(scene.lines) + list(scene.circles):
                d = distance_to_entity(scene, c, key)
                if best is None or d < best[0]:
                    best = (d, key)
            kind = "object"
        if best is None:
            bindings.unbound.append(pl.char)
            continue
        d, key = best
        slot = (kind, key)
        if slot in claims and claims[slot][0] <= d:
            bindings.unbound.append(pl.char)
            log.warning("label %s lost %s %s to nearer label %s", pl.char, kind, key, claims[slot][1])
            continue
        if slot in claims:
            bindings.unbound.append(claims[slot][1])
        claims[slot] = (d, pl.char)
        if kind == "point":
            bindings.points = {ch: k for ch, k in bindings.points.items() if k != key}
            bindings.points[pl.char] = key
        else:
            bindings.objects = {ch: k for ch, k in bindings.objects.items() if k != key}
            bindings.objects[pl.char] = key
    return bindings


def _fresh_names(used: set[str], uppercase: bool):
    import string

    letters = string.ascii_uppercase if uppercase else string.ascii_lowercase
    for letter in letters:
        if letter not in used:
            yield letter
    suffix = 1
    while True:
        for letter in letters:
            name = f"{letter}{suffix}"
            if name not in used:
                yield name
        suffix += 1


def autogen_labels(scene: Scene) -> Scene:
    """Fresh uppercase names for unlabeled points, lowercase for unlabeled
    lines and circles, in deterministic scan order."""
    out = scene.copy()
    used_upper = {n for n in out.points}
    used_lower = {n for n in out.lines} | {n for n in out.circles}

    def relabel(mapping: dict, gen) -> dict[str, str]:
        renames = {}
        for key in list(mapping):
            if key.startswith("#"):
                renames[key] = next(gen)
        return renames

    upper_gen = _fresh_names(used_upper, True)
    point_renames = relabel(out.points, upper_gen)
    lower_gen = _fresh_names(used_lower, False)
    line_renames = relabel(out.lines, lower_gen)
    circle_renames = relabel(out.circles, lower_gen)

    if not (point_renames or line_renames or circle_renames):
        return out

    from .geometry import CircleEnt, LineEnt

    def rn_point(p: str) -> str:
        return point_renames.get(p, p)

    new = Scene()
    for name, pt in out.points.items():
        new.points[rn_point(name)] = pt
    for label, line in out.lines.items():
        new.lines[line_renames.get(label, label)] = LineEnt(
            line.kind, rn_point(line.p), rn_point(line.q))
    for label, circ in out.circles.items():
        if circ.points is not None:
            ent = CircleEnt(points=tuple(rn_point(p) for p in circ.points))
        else:
            ent = CircleEnt(center=rn_point(circ.center), radius=circ.radius)
        new.circles[circle_renames.get(label, label)] = ent
    return new
