"""Block-compression pipeline: separable 2D transform on 8x8 tiles,
zigzag-ordered coefficient retention, and inverse reconstruction.

The replication pipeline applies no quantization table; compression is
controlled purely by the retention parameter r (keep the first r zigzag
coefficients of each block, zero the rest).  Reconstructed pixels are
clamped to [0, 255] and kept in floating point for metric computation.
The quantization-folding utility is provided separately for
integer-arithmetic deployments: because the forward kernel product can
be computed without the diagonal scaling, the scaling can be absorbed
into the quantization table instead.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import BadDimensions, InvalidRetention, NonPositiveQuantizer
from .kernels import ApproximateTransform, Transform

#: Standard JPEG zigzag scan of an 8x8 block, as flat row-major indices.
ZIGZAG_INDICES: tuple[int, ...] = (
     0,  1,  8, 16,  9,  2,  3, 10,
    17, 24, 32, 25, 18, 11,  4,  5,
    12, 19, 26, 33, 40, 48, 41, 34,
    27, 20, 13,  6,  7, 14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36,
    29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46,
    53, 60, 61, 54, 47, 55, 62, 63,
)


def zigzag_positions() -> tuple[tuple[int, int], ...]:
    """The zigzag scan as (row, col) block positions."""
    return tuple((i // 8, i % 8) for i in ZIGZAG_INDICES)


@lru_cache(maxsize=None)
def retention_mask(r: int) -> np.ndarray:
    """Boolean 8x8 mask selecting the first r zigzag positions."""
    if not 1 <= r <= 64:
        raise InvalidRetention(f"retention count must be in [1, 64], got {r}")
    mask = np.zeros(64, dtype=bool)
    mask[list(ZIGZAG_INDICES[:r])] = True
    mask = mask.reshape(8, 8)
    mask.setflags(write=False)
    return mask


def retain_coefficients(block: np.ndarray, r: int) -> np.ndarray:
    """Zero all but the first r zigzag coefficients of a block."""
    block = np.asarray(block, dtype=np.float64)
    if block.shape != (8, 8):
        raise BadDimensions(f"expected an 8x8 block, got {block.shape}")
    return np.where(retention_mask(r), block, 0.0)


def compression_ratio(r: int) -> float:
    """Percentage of coefficients discarded per block: 100*(64-r)/64."""
    if not 1 <= r <= 64:
        raise InvalidRetention(f"retention count must be in [1, 64], got {r}")
    return 100.0 * (64 - r) / 64


def forward_2d(t: Transform, block: np.ndarray) -> np.ndarray:
    """Separable 2D transform of one block (columns, then rows)."""
    c = t.matrix
    return c @ np.asarray(block, dtype=np.float64) @ c.T


def forward_2d_unscaled(t: ApproximateTransform, block: np.ndarray) -> np.ndarray:
    """2D kernel product without the diagonal scaling.

    Integer-exact for integral blocks; pair with
    fold_scaling_into_quantization to quantize as if scaled.
    """
    k = t.kernel.entries
    return k @ np.asarray(block) @ k.T


def inverse_2d(t: Transform, coeffs: np.ndarray) -> np.ndarray:
    """Inverse 2D transform (transpose-based; exact for orthogonal t)."""
    c = t.matrix
    return c.T @ np.asarray(coeffs, dtype=np.float64) @ c


def fold_scaling_into_quantization(t: ApproximateTransform, q: np.ndarray) -> np.ndarray:
    """Absorb the diagonal scaling into a quantization table.

    Returns q' with q'[i][j] = q[i][j] / (d[i]*d[j]), so dividing
    unscaled coefficients by q' equals dividing scaled coefficients by
    q.  For the proposed transform the correction factors are powers of
    two, so an existing table can be adapted with bit-shifts alone.
    """
    q = np.asarray(q, dtype=np.float64)
    if q.shape != (8, 8):
        raise BadDimensions(f"expected an 8x8 quantization table, got {q.shape}")
    if not (q > 0).all():
        raise NonPositiveQuantizer("quantization steps must be strictly positive")
    d = t.scaling.diag
    return q / np.outer(d, d)


def _tile(image: np.ndarray) -> np.ndarray:
    h, w = image.shape
    return image.reshape(h // 8, 8, w // 8, 8).swapaxes(1, 2).reshape(-1, 8, 8)


def _untile(blocks: np.ndarray, height: int, width: int) -> np.ndarray:
    return (
        blocks.reshape(height // 8, width // 8, 8, 8)
        .swapaxes(1, 2)
        .reshape(height, width)
    )


def coefficient_blocks(t: Transform, image: np.ndarray) -> np.ndarray:
    """Forward-transform every 8x8 tile of an image at once.

    Returns an (n_blocks, 8, 8) array in raster block order.  Computing
    this once and reconstructing at several retention levels is how the
    batch sweeps avoid redundant forward passes.
    """
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2 or image.shape[0] % 8 or image.shape[1] % 8:
        raise BadDimensions(f"image dimensions must be divisible by 8, got {image.shape}")
    c = t.matrix
    return c @ _tile(image) @ c.T


def reconstruct_image(
    t: Transform, coeffs: np.ndarray, r: int, height: int, width: int
) -> np.ndarray:
    """Inverse-transform retained coefficients back to a clamped image."""
    c = t.matrix
    kept = np.where(retention_mask(r), coeffs, 0.0)
    blocks = c.T @ kept @ c
    return np.clip(_untile(blocks, height, width), 0.0, 255.0)


def compress_image(t: Transform, image: np.ndarray, r: int) -> np.ndarray:
    """Retention-only compression round trip over all 8x8 tiles.

    Forward transform, keep the first r zigzag coefficients per block,
    inverse transform, clamp to [0, 255].  Deterministic; blocks are
    independent.
    """
    image = np.asarray(image, dtype=np.float64)
    if not 1 <= r <= 64:
        raise InvalidRetention(f"retention count must be in [1, 64], got {r}")
    coeffs = coefficient_blocks(t, image)
    return reconstruct_image(t, coeffs, r, image.shape[0], image.shape[1])
