"""Grayscale images: PGM (P2/P5) reading and writing, histograms, synthetic generators."""

from __future__ import annotations

import enum
import hashlib
import re
from dataclasses import dataclass

import numpy as np

from .errors import PgmError
from .stats import IntensityDistribution

SUPPORTED_LEVELS = (2, 256, 65536)


def _dtype_for(levels: int):
    return np.uint8 if levels <= 256 else np.uint16


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Row-major grid of intensities in ``[0, levels - 1]``.

    ``pixels`` is stored as a read-only ``(height, width)`` array.
    """

    pixels: np.ndarray
    levels: int = 256

    def __post_init__(self):
        if self.levels not in SUPPORTED_LEVELS:
            raise ValueError(f"levels must be one of {SUPPORTED_LEVELS}, got {self.levels}")
        arr = np.asarray(self.pixels)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError(f"pixels must be a nonempty 2-D array, got shape {arr.shape}")
        if arr.dtype.kind not in "ui":
            if not np.all(np.equal(np.mod(arr, 1), 0)):
                raise ValueError("pixels must be integers")
        if arr.min() < 0 or arr.max() >= self.levels:
            raise ValueError(f"pixel values must lie in [0, {self.levels - 1}]")
        arr = np.ascontiguousarray(arr, dtype=_dtype_for(self.levels))
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    @property
    def size(self) -> int:
        return self.pixels.size

    def with_pixels(self, pixels) -> GrayImage:
        return GrayImage(pixels, self.levels)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.levels == other.levels and np.array_equal(self.pixels, other.pixels)

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height}, levels={self.levels})"


def histogram(image: GrayImage) -> IntensityDistribution:
    counts = np.bincount(image.pixels.ravel(), minlength=image.levels)
    return IntensityDistribution.from_counts(counts)


# --- PGM -----------------------------------------------------------------

_WS = b" \t\r\n\v\f"


class _HeaderReader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def skip_space(self):
        data = self.data
        while self.pos < len(data):
            c = data[self.pos:self.pos + 1]
            if c in (b"#",):
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            elif c and c in _WS:
                self.pos += 1
            else:
                break

    def integer(self, what: str) -> int:
        self.skip_space()
        m = re.compile(rb"\d+").match(self.data, self.pos)
        if not m:
            raise PgmError(f"expected {what}", self.pos)
        self.pos = m.end()
        return int(m.group())


def read_pgm(data: bytes) -> GrayImage:
    """Parse a P2 (ASCII) or P5 (binary) PGM. 16-bit P5 samples are big-endian."""
    data = bytes(data)
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PgmError(f"bad magic {magic!r}, expected b'P2' or b'P5'", 0)
    hdr = _HeaderReader(data)
    hdr.pos = 2
    width = hdr.integer("width")
    height = hdr.integer("height")
    if width <= 0 or height <= 0:
        raise PgmError(f"bad dimensions {width}x{height}", hdr.pos)
    maxval_pos = hdr.pos
    maxval = hdr.integer("maxval")
    if maxval not in (255, 65535):
        raise PgmError(f"maxval {maxval} not supported (need 255 or 65535)", maxval_pos)
    count = width * height

    if magic == b"P5":
        if hdr.pos >= len(data) or data[hdr.pos:hdr.pos + 1] not in _WS:
            raise PgmError("missing whitespace after maxval", hdr.pos)
        start = hdr.pos + 1
        sample_bytes = 1 if maxval == 255 else 2
        expected = count * sample_bytes
        actual = len(data) - start
        if actual < expected:
            raise PgmError(f"truncated payload: expected {expected} bytes, got {actual}", start)
        dtype = np.uint8 if sample_bytes == 1 else np.dtype(">u2")
        pixels = np.frombuffer(data, dtype=dtype, count=count, offset=start)
        bad = np.flatnonzero(pixels > maxval)
        if bad.size:
            raise PgmError(f"pixel value exceeds maxval {maxval}", start + int(bad[0]) * sample_bytes)
        pixels = pixels.astype(_dtype_for(maxval + 1))
    else:
        values = []
        for _ in range(count):
            hdr.skip_space()
            pos = hdr.pos
            try:
                v = hdr.integer("pixel value")
            except PgmError as exc:
                raise PgmError(f"truncated payload: expected {count} samples, got {len(values)}",
                               exc.offset) from None
            if v > maxval:
                raise PgmError(f"pixel value {v} exceeds maxval {maxval}", pos)
            values.append(v)
        pixels = np.array(values, dtype=_dtype_for(maxval + 1))
    return GrayImage(pixels.reshape(height, width), maxval + 1)


def write_pgm(image: GrayImage, ascii: bool = False) -> bytes:
    """Serialize to P5 (default) or P2. Only 8- and 16-bit images are representable."""
    if image.levels not in (256, 65536):
        raise ValueError(f"PGM output needs 256 or 65536 levels, got {image.levels}")
    maxval = image.levels - 1
    magic = b"P2" if ascii else b"P5"
    header = b"%s\n%d %d\n%d\n" % (magic, image.width, image.height, maxval)
    if ascii:
        rows = (" ".join(map(str, row)) for row in image.pixels.tolist())
        return header + "\n".join(rows).encode("ascii") + b"\n"
    dtype = np.uint8 if maxval == 255 else np.dtype(">u2")
    return header + image.pixels.astype(dtype).tobytes()


def load_pgm(path) -> GrayImage:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def save_pgm(image: GrayImage, path, ascii: bool = False) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(image, ascii=ascii))


def image_bytes(image: GrayImage) -> bytes:
    """Raster-order bytes; 16-bit samples big-endian."""
    if image.levels == 65536:
        return image.pixels.astype(">u2").tobytes()
    return image.pixels.tobytes()


def image_from_bytes(data: bytes, width: int, height: int, levels: int) -> GrayImage:
    dtype = np.dtype(">u2") if levels == 65536 else np.uint8
    arr = np.frombuffer(data, dtype=dtype, count=width * height)
    return GrayImage(arr.reshape(height, width), levels)


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


# --- synthetic images ----------------------------------------------------

class Pattern(str, enum.Enum):
    RAMP = "ramp"
    CHECKER = "checker"
    STRIPES = "stripes"


def synth_iid(levels: int, width: int, height: int, dist: IntensityDistribution,
              seed: int) -> GrayImage:
    """Perfectly shuffled image: every pixel drawn i.i.d. from ``dist``.

    Inverse-CDF sampling of PCG64 uniforms seeded with ``seed``.
    """
    if dist.levels != levels:
        raise ValueError(f"distribution has {dist.levels} levels, image wants {levels}")
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(dist.probs)
    u = rng.random(width * height)
    # Scaling by cdf[-1] keeps every draw strictly inside the support.
    pixels = np.searchsorted(cdf, u * cdf[-1], side="right")
    return GrayImage(pixels.reshape(height, width), levels)


def synth_structured(kind: Pattern | str, levels: int, width: int, height: int,
                     period: int = 4) -> GrayImage:
    """Deterministic structured patterns standing in for ruler/testpat-like images.

    ``ramp``: row-major gradient spanning all levels.
    ``checker``: single-pixel checkerboard of 0 and ``levels - 1``.
    ``stripes``: along each row, runs of ``period // 2`` pixels alternate between
    0 and ``levels - 1`` (so the pattern repeats every ``period`` columns).
    """
    kind = Pattern(kind)
    rows, cols = np.indices((height, width), dtype=np.int64)
    top = levels - 1
    if kind is Pattern.RAMP:
        pixels = (rows * width + cols) * levels // (width * height)
    elif kind is Pattern.CHECKER:
        pixels = ((rows + cols) % 2) * top
    else:
        if period < 2:
            raise ValueError(f"stripe period must be >= 2, got {period}")
        pixels = ((cols % period) >= period // 2) * top
    return GrayImage(pixels, levels)
