"""Multiplierless approximate-DCT transform coding toolkit.

An 8-point integer transform computable in 14 additions (no
multiplications, no bit-shifts), its verified sparse factorization, and
a JPEG-like block-compression harness for benchmarking it against the
exact DCT and published low-complexity approximations.
"""

from .codec import (
    compress_image,
    compression_ratio,
    fold_scaling_into_quantization,
    forward_2d,
    inverse_2d,
    retain_coefficients,
)
from .corpus import GrayImage, read_pgm, synthesize_corpus, write_pgm
from .fast import OpCount, count_operations, fast_forward, stage_matrices
from .kernels import (
    ApproximateTransform,
    DiagonalScaling,
    ExactDct,
    KernelRegistry,
    TransformMatrix,
    apply_forward,
    apply_inverse,
    default_registry,
    derive_scaling,
    exact_dct_matrix,
    proposed_kernel,
    proposed_scaling,
    proposed_transform,
)
from .metrics import CorpusSummary, QualityRecord, ape_vs_dct, mse, psnr, summarize

__version__ = "0.1.0"

__all__ = [
    "ApproximateTransform",
    "CorpusSummary",
    "DiagonalScaling",
    "ExactDct",
    "GrayImage",
    "KernelRegistry",
    "OpCount",
    "QualityRecord",
    "TransformMatrix",
    "ape_vs_dct",
    "apply_forward",
    "apply_inverse",
    "compress_image",
    "compression_ratio",
    "count_operations",
    "default_registry",
    "derive_scaling",
    "exact_dct_matrix",
    "fast_forward",
    "fold_scaling_into_quantization",
    "forward_2d",
    "inverse_2d",
    "mse",
    "proposed_kernel",
    "proposed_scaling",
    "proposed_transform",
    "psnr",
    "read_pgm",
    "retain_coefficients",
    "stage_matrices",
    "summarize",
    "synthesize_corpus",
    "write_pgm",
]
