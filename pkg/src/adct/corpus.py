"""Grayscale image ingestion, 8x8 tiling, and synthetic corpus generation.

PGM (P2 ASCII and P5 binary, maxval up to 255) is the only file format;
it round-trips bit-exactly for integer-valued images.  The synthetic
generator produces seed-reproducible 512x512 images mixing smooth
gradients, sinusoidal textures, and step edges, so their energy is
concentrated in low spatial frequencies the way natural images are.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadDimensions,
    IoFailure,
    MalformedHeader,
    TruncatedData,
    UnsupportedMaxval,
)


@dataclass(frozen=True)
class GrayImage:
    """8-bit-valued grayscale image; samples are row-major floats in [0, 255]."""

    width: int
    height: int
    samples: np.ndarray

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image dimensions must be positive")
        s = np.array(self.samples, dtype=np.float64).reshape(self.height, self.width)
        if not np.isfinite(s).all():
            raise ValueError("samples must be finite")
        if s.min() < 0 or s.max() > 255:
            raise ValueError("samples must lie in [0, 255]")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)


def _tokens(data: bytes):
    # PGM header tokenizer: whitespace-separated tokens, '#' comments run
    # to end of line.  Yields (token, end_offset).
    i, n = 0, len(data)
    while i < n:
        c = data[i : i + 1]
        if c in b" \t\r\n":
            i += 1
        elif c == b"#":
            while i < n and data[i : i + 1] not in b"\r\n":
                i += 1
        else:
            j = i
            while j < n and data[j : j + 1] not in b" \t\r\n#":
                j += 1
            yield data[i:j], j
            i = j


def read_pgm(path: str | Path) -> GrayImage:
    """Read a P2 or P5 PGM file with maxval at most 255."""
    data = Path(path).read_bytes()
    tok = _tokens(data)
    try:
        magic, _ = next(tok)
    except StopIteration:
        raise MalformedHeader("empty file") from None
    if magic not in (b"P2", b"P5"):
        raise MalformedHeader(f"not a PGM file (magic {magic!r})")
    header = []
    end = 0
    for _ in range(3):
        try:
            t, end = next(tok)
            header.append(int(t))
        except StopIteration:
            raise MalformedHeader("header ended early") from None
        except ValueError:
            raise MalformedHeader(f"non-integer header token {t!r}") from None
    width, height, maxval = header
    if width <= 0 or height <= 0:
        raise MalformedHeader(f"bad dimensions {width}x{height}")
    if not 0 < maxval <= 255:
        raise UnsupportedMaxval(f"maxval {maxval} outside (0, 255]")
    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        raster = data[end + 1 : end + 1 + count]
        if len(raster) < count:
            raise TruncatedData(f"expected {count} bytes, found {len(raster)}")
        samples = np.frombuffer(raster, dtype=np.uint8).astype(np.float64)
    else:
        values = []
        for t, _ in tok:
            try:
                values.append(int(t))
            except ValueError:
                raise MalformedHeader(f"non-integer sample {t!r}") from None
            if len(values) == count:
                break
        if len(values) < count:
            raise TruncatedData(f"expected {count} samples, found {len(values)}")
        samples = np.array(values, dtype=np.float64)
    if samples.max(initial=0) > maxval:
        raise MalformedHeader("sample exceeds declared maxval")
    return GrayImage(width, height, samples)


def write_pgm(image: GrayImage, path: str | Path) -> None:
    """Write binary P5 with maxval 255; samples round half away from zero."""
    rounded = np.floor(image.samples + 0.5).astype(np.uint8)
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    try:
        Path(path).write_bytes(header + rounded.tobytes())
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def tile_blocks(image: GrayImage) -> list[tuple[int, np.ndarray]]:
    """Non-overlapping 8x8 tiles in raster order, as (index, block) pairs."""
    if image.width % 8 or image.height % 8:
        raise BadDimensions(
            f"image dimensions must be divisible by 8, got {image.width}x{image.height}"
        )
    blocks = (
        image.samples.reshape(image.height // 8, 8, image.width // 8, 8)
        .swapaxes(1, 2)
        .reshape(-1, 8, 8)
    )
    return [(i, blocks[i].copy()) for i in range(blocks.shape[0])]


def untile_blocks(
    pairs: list[tuple[int, np.ndarray]], width: int, height: int
) -> GrayImage:
    """Inverse of tile_blocks: reassemble raster-order tiles into an image."""
    if width % 8 or height % 8:
        raise BadDimensions(f"image dimensions must be divisible by 8, got {width}x{height}")
    blocks = np.empty((height // 8 * (width // 8), 8, 8))
    for index, block in pairs:
        blocks[index] = block
    samples = blocks.reshape(height // 8, width // 8, 8, 8).swapaxes(1, 2).reshape(height, width)
    return GrayImage(width, height, samples)


IMAGE_SIZE = 512


def _synthesize_one(rng: np.random.Generator) -> np.ndarray:
    yy, xx = np.mgrid[0:IMAGE_SIZE, 0:IMAGE_SIZE] / (IMAGE_SIZE - 1.0)
    img = np.zeros((IMAGE_SIZE, IMAGE_SIZE))

    gx, gy = rng.uniform(-1.0, 1.0, 2)
    img += 60.0 * (gx * xx + gy * yy)

    for _ in range(int(rng.integers(3, 6))):
        fx, fy = rng.uniform(0.5, 12.0, 2)
        px, py = rng.uniform(0.0, 2.0 * np.pi, 2)
        img += rng.uniform(8.0, 40.0) * np.sin(2 * np.pi * fx * xx + px) * np.sin(
            2 * np.pi * fy * yy + py
        )

    for _ in range(int(rng.integers(1, 3))):
        angle = rng.uniform(0.0, np.pi)
        offset = rng.uniform(0.3, 0.7)
        edge = (np.cos(angle) * xx + np.sin(angle) * yy) > offset
        img += rng.uniform(20.0, 60.0) * edge

    # normalize into [16, 239] to leave clamping headroom
    img -= img.min()
    img *= 223.0 / img.max()
    return img + 16.0


def synthesize_corpus(seed: int, n: int) -> list[GrayImage]:
    """Deterministic stand-in corpus of n natural-image-like test images."""
    if n < 1:
        raise ValueError("corpus size must be at least 1")
    rng = np.random.default_rng(seed)
    return [
        GrayImage(IMAGE_SIZE, IMAGE_SIZE, _synthesize_one(rng)) for _ in range(n)
    ]
