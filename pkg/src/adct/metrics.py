"""Reconstruction quality metrics and corpus aggregation.

PSNR uses the 8-bit peak of 255.  A zero-MSE reconstruction reports
``math.inf`` as the distinguished lossless marker (it formats as "inf"
in CSV output and compares correctly against finite values).

Averaging conventions: corpus PSNR is the mean of per-image PSNR values;
the percentage-error comparison against the exact DCT is computed on
mean MSE.  ``summarize`` can switch the PSNR convention for regenerating
curves the other way.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from .errors import DimensionMismatch, EmptyGroup

PEAK = 255.0


@dataclass(frozen=True)
class QualityRecord:
    """Quality of one (image, transform, r) compression run."""

    image_id: str
    transform_name: str
    r: int
    mse: float
    psnr: float


@dataclass(frozen=True)
class CorpusSummary:
    """Per-(transform, r) averages over a corpus."""

    transform_name: str
    r: int
    avg_mse: float
    avg_psnr: float
    n_images: int


def mse(original: np.ndarray, reconstructed: np.ndarray) -> float:
    original = np.asarray(original, dtype=np.float64)
    reconstructed = np.asarray(reconstructed, dtype=np.float64)
    if original.shape != reconstructed.shape:
        raise DimensionMismatch(
            f"shape mismatch: {original.shape} vs {reconstructed.shape}"
        )
    return float(np.mean((original - reconstructed) ** 2))


def psnr(mse_value: float) -> float:
    """Peak signal-to-noise ratio in dB; inf marks a lossless result."""
    if mse_value < 0:
        raise ValueError("mse cannot be negative")
    if mse_value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK**2 / mse_value)


def ape_vs_dct(avg_mse_approx: float, avg_mse_dct: float) -> float:
    """Absolute percentage error of an average MSE relative to the DCT's."""
    if avg_mse_dct == 0:
        raise ZeroDivisionError("reference average MSE is zero")
    return 100.0 * abs(avg_mse_approx - avg_mse_dct) / avg_mse_dct


def summarize(
    records: Iterable[QualityRecord], *, psnr_from_avg_mse: bool = False
) -> list[CorpusSummary]:
    """Average records per (transform, r), ordered by that key.

    By default avg_psnr is the mean of per-image PSNRs; with
    ``psnr_from_avg_mse`` it is the PSNR of the mean MSE instead.
    """
    groups: dict[tuple[str, int], list[QualityRecord]] = {}
    for rec in records:
        groups.setdefault((rec.transform_name, rec.r), []).append(rec)
    if not groups:
        raise EmptyGroup("no records to summarize")
    summaries = []
    for (name, r) in sorted(groups):
        members = groups[(name, r)]
        avg_mse = float(np.mean([m.mse for m in members]))
        if psnr_from_avg_mse:
            avg_psnr = psnr(avg_mse)
        else:
            avg_psnr = float(np.mean([m.psnr for m in members]))
        summaries.append(CorpusSummary(name, r, avg_mse, avg_psnr, len(members)))
    return summaries


def format_float(x: float) -> str:
    """Six significant digits; infinities as 'inf'."""
    return format(x, ".6g")


def write_quality_csv(fp: TextIO, records: Iterable[QualityRecord]) -> None:
    """Quality records as CSV, ordered by (transform, r, image)."""
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(["image_id", "transform", "r", "mse", "psnr"])
    for rec in sorted(records, key=lambda m: (m.transform_name, m.r, m.image_id)):
        writer.writerow(
            [rec.image_id, rec.transform_name, rec.r, format_float(rec.mse), format_float(rec.psnr)]
        )


def write_summary_csv(fp: TextIO, summaries: Iterable[CorpusSummary]) -> None:
    """Corpus summaries as CSV, ordered by (transform, r)."""
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(["transform", "r", "avg_mse", "avg_psnr", "n_images"])
    for s in sorted(summaries, key=lambda m: (m.transform_name, m.r)):
        writer.writerow(
            [s.transform_name, s.r, format_float(s.avg_mse), format_float(s.avg_psnr), s.n_images]
        )
