#!/usr/bin/env python3
"""Regenerate the embedded glyph atlas (fonts/atlas.png + fonts/atlas.json).

Rasterizes A-Z from DejaVu Sans Bold and a-z from DejaVu Sans Bold Oblique
(both bundled with matplotlib) at a fixed pixel size, crops each glyph to
its ink box, and packs them into one monochrome PNG with a JSON index.
The oblique lowercase keeps letter pairs like V/v and S/s structurally
distinct after the matcher's size normalization.

Run from the repository root:  python scripts/make_font_atlas.py
"""

import json
import os
import string
import sys

import matplotlib
import numpy as np
from PIL import Image, ImageDraw, ImageFont

FONT_DIR = os.path.join(os.path.dirname(matplotlib.__file__), "mpl-data", "fonts", "ttf")
UPPER_FONT = os.path.join(FONT_DIR, "DejaVuSans-Bold.ttf")
LOWER_FONT = os.path.join(FONT_DIR, "DejaVuSans-BoldOblique.ttf")
GLYPH_PX = 40
OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "theoremine", "fonts")


def raster_glyph(ch: str, px: int) -> np.ndarray:
    font = ImageFont.truetype(UPPER_FONT if ch.isupper() else LOWER_FONT, px)
    canvas = Image.new("L", (4 * px, 4 * px), 255)
    ImageDraw.Draw(canvas).text((px, px), ch, fill=0, font=font)
    bits = np.array(canvas) < 128
    ys, xs = np.where(bits)
    return bits[ys.min():ys.max() + 1, xs.min():xs.max() + 1]


def main() -> int:
    chars = string.ascii_uppercase + string.ascii_lowercase
    glyphs = {ch: raster_glyph(ch, GLYPH_PX) for ch in chars}

    pad = 2
    height = max(g.shape[0] for g in glyphs.values()) + 2 * pad
    width = sum(g.shape[1] + pad for g in glyphs.values()) + pad
    atlas = np.zeros((height, width), dtype=bool)
    index = {}
    x = pad
    for ch, g in glyphs.items():
        h, w = g.shape
        atlas[pad:pad + h, x:x + w] = g
        index[ch] = [x, pad, w, h]
        x += w + pad

    os.makedirs(OUT_DIR, exist_ok=True)
    img = Image.fromarray(np.where(atlas, 0, 255).astype(np.uint8))
    img.save(os.path.join(OUT_DIR, "atlas.png"))
    meta = {
        "glyph_px": GLYPH_PX,
        "upper_font": os.path.basename(UPPER_FONT),
        "lower_font": os.path.basename(LOWER_FONT),
        "glyphs": index,
    }
    with open(os.path.join(OUT_DIR, "atlas.json"), "w") as fh:
        json.dump(meta, fh, indent=1, sort_keys=True)
    print(f"wrote atlas: {len(chars)} glyphs, {width}x{height} px")
    return 0


if __name__ == "__main__":
    sys.exit(main())
