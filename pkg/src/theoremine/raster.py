"""Raster image containers and file I/O.

Images are thin wrappers over uint8 numpy arrays: ``RasterImage`` carries 1
(gray) or 3 (rgb) channels in row-major order, ``BinaryImage`` a boolean
foreground mask (True = ink).  PNG goes through Pillow; PGM/PPM are written
and parsed directly (binary variants P5/P6).
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from PIL import Image


@dataclass
class RasterImage:
    data: np.ndarray  # (H, W) uint8 or (H, W, 3) uint8

    def __post_init__(self):
        a = np.asarray(self.data, dtype=np.uint8)
        if a.ndim == 2:
            pass
        elif a.ndim == 3 and a.shape[2] == 3:
            pass
        else:
            raise ValueError(f"expected (H,W) or (H,W,3) array, got {a.shape}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError("empty image")
        self.data = a

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return 1 if self.data.ndim == 2 else 3


@dataclass
class BinaryImage:
    bits: np.ndarray  # (H, W) bool, True = foreground

    def __post_init__(self):
        self.bits = np.asarray(self.bits, dtype=bool)
        if self.bits.ndim != 2:
            raise ValueError("binary image must be 2-D")

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]


def read_image(path: str) -> RasterImage:
    """PNG (8-bit gray or RGB) or binary PGM/PPM."""
    with open(path, "rb") as fh:
        head = fh.read(2)
    if head in (b"P5", b"P6"):
        return _read_pnm(path)
    img = Image.open(path)
    if img.mode not in ("L", "RGB"):
        img = img.convert("RGB" if img.mode in ("P", "RGBA", "CMYK") else "L")
    return RasterImage(np.array(img))


def write_image(path: str, img: RasterImage) -> None:
    if path.endswith(".pgm") or path.endswith(".ppm"):
        _write_pnm(path, img)
        return
    Image.fromarray(img.data).save(path)


def _read_pnm(path: str) -> RasterImage:
    with open(path, "rb") as fh:
        data = fh.read()
    fields: list[bytes] = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        fields.append(data[start:pos])
    magic, w, h, maxval = fields[0], int(fields[1]), int(fields[2]), int(fields[3])
    if maxval != 255:
        raise ValueError(f"unsupported maxval {maxval}")
    pos += 1  # single whitespace after maxval
    body = np.frombuffer(data, dtype=np.uint8, offset=pos)
    if magic == b"P5":
        return RasterImage(body[:h * w].reshape(h, w).copy())
    if magic == b"P6":
        return RasterImage(body[:h * w * 3].reshape(h, w, 3).copy())
    raise ValueError(f"unsupported PNM magic {magic!r}")


def _write_pnm(path: str, img: RasterImage) -> None:
    buf = io.BytesIO()
    if img.channels == 1:
        buf.write(f"P5\n{img.width} {img.height}\n255\n".encode())
    else:
        buf.write(f"P6\n{img.width} {img.height}\n255\n".encode())
    buf.write(img.data.tobytes())
    with open(path, "wb") as fh:
        fh.write(buf.getvalue())
