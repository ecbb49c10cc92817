"""Batch experiment driver.

Subcommands:
  complexity  arithmetic-cost table for all transforms
  sweep       corpus compression sweep over a retention range, CSV output
  lena        per-transform PSNR report for one image at one retention
  transform   single-vector demo of the fast path

Exit codes: 0 success, 1 usage/configuration error, 2 I/O error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import codec, corpus, fast, metrics
from .errors import (
    IoFailure,
    MalformedHeader,
    MissingImage,
    TruncatedData,
    UnsupportedMaxval,
)
from .kernels import Transform, default_registry, exact_dct_matrix, proposed_transform

BUILTIN_TRANSFORMS = ("dct", "proposed")


def available_transforms() -> tuple[str, ...]:
    return BUILTIN_TRANSFORMS + default_registry().names()


def resolve_transform(name: str) -> Transform:
    if name == "dct":
        return exact_dct_matrix()
    if name == "proposed":
        return proposed_transform()
    registry = default_registry()
    if name not in registry:
        raise ValueError(
            f"unknown transform {name!r}; available: {', '.join(available_transforms())}"
        )
    return registry.get(name)


@dataclass(frozen=True)
class ExperimentConfig:
    """A corpus sweep: which transforms, which retention range, which images."""

    transforms: tuple[str, ...]
    r_min: int = 2
    r_max: int = 45
    corpus_path: str | None = None
    seed: int = 2012
    n_images: int = 45
    psnr_from_avg_mse: bool = False

    def __post_init__(self) -> None:
        if not self.transforms:
            raise ValueError("at least one transform is required")
        if not (1 <= self.r_min <= self.r_max <= 64):
            raise ValueError(f"retention range [{self.r_min}, {self.r_max}] not within [1, 64]")

    @property
    def r_values(self) -> range:
        return range(self.r_min, self.r_max + 1)


def load_corpus_images(config: ExperimentConfig) -> list[tuple[str, np.ndarray]]:
    """(image_id, samples) pairs, from a PGM directory or the synthesizer."""
    if config.corpus_path is not None:
        paths = sorted(Path(config.corpus_path).glob("*.pgm"))
        if not paths:
            raise MissingImage(f"no .pgm files in {config.corpus_path}")
        return [(p.stem, corpus.read_pgm(p).samples) for p in paths]
    images = corpus.synthesize_corpus(config.seed, config.n_images)
    return [(f"synth-{i:03d}", img.samples) for i, img in enumerate(images)]


def run_sweep(
    config: ExperimentConfig,
    images: list[tuple[str, np.ndarray]] | None = None,
    progress: bool = False,
) -> tuple[list[metrics.QualityRecord], list[metrics.CorpusSummary], dict]:
    """Compress every (image, transform, r) combination and aggregate.

    Returns the per-image records, the per-(transform, r) summaries, and
    a map of (transform, r) -> average-MSE percentage error vs the exact
    DCT (empty when "dct" is not among the swept transforms).
    """
    if images is None:
        images = load_corpus_images(config)
    records = []
    for name in config.transforms:
        t = resolve_transform(name)
        if progress:
            print(f"sweeping {name} over {len(images)} images", file=sys.stderr)
        for image_id, samples in images:
            coeffs = codec.coefficient_blocks(t, samples)
            h, w = samples.shape
            for r in config.r_values:
                recon = codec.reconstruct_image(t, coeffs, r, h, w)
                err = metrics.mse(samples, recon)
                records.append(
                    metrics.QualityRecord(image_id, name, r, err, metrics.psnr(err))
                )
    summaries = metrics.summarize(records, psnr_from_avg_mse=config.psnr_from_avg_mse)
    avg_mse = {(s.transform_name, s.r): s.avg_mse for s in summaries}
    ape = {}
    if "dct" in config.transforms:
        for s in summaries:
            reference = avg_mse[("dct", s.r)]
            if reference > 0:
                ape[(s.transform_name, s.r)] = metrics.ape_vs_dct(s.avg_mse, reference)
            else:
                ape[(s.transform_name, s.r)] = float("nan")
    return records, summaries, ape


def _write_sweep_outputs(out_dir, config, records, summaries, ape):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "records.csv", "w") as fp:
        metrics.write_quality_csv(fp, records)
    with open(out / "summary.csv", "w") as fp:
        fp.write("transform,r,compression_ratio,avg_mse,avg_psnr,ape_vs_dct,n_images\n")
        for s in sorted(summaries, key=lambda m: (m.transform_name, m.r)):
            cells = [
                s.transform_name,
                str(s.r),
                metrics.format_float(codec.compression_ratio(s.r)),
                metrics.format_float(s.avg_mse),
                metrics.format_float(s.avg_psnr),
                metrics.format_float(ape[(s.transform_name, s.r)]) if ape else "",
                str(s.n_images),
            ]
            fp.write(",".join(cells) + "\n")
    meta = asdict(config)
    meta["psnr_convention"] = (
        "psnr_of_avg_mse" if config.psnr_from_avg_mse else "mean_of_per_image_psnr"
    )
    meta["ape_convention"] = "avg_mse"
    with open(out / "run_metadata.json", "w") as fp:
        json.dump(meta, fp, indent=2, sort_keys=True)
        fp.write("\n")


def cmd_complexity(args) -> int:
    registry = default_registry()
    _, measured = fast.fast_forward([0] * 8)
    rows = [("proposed", measured, "measured")]
    rows += [(t.name, t.declared_costs, "declared") for t in registry]
    print(f"{'method':<10} {'add':>4} {'mult':>5} {'shifts':>7} {'total':>6}  source")
    for name, cost, source in rows:
        print(
            f"{name:<10} {cost.additions:>4} {cost.multiplications:>5}"
            f" {cost.shifts:>7} {cost.total:>6}  {source}"
        )
    return 0


def cmd_sweep(args) -> int:
    config = ExperimentConfig(
        transforms=tuple(args.transforms.split(",")),
        r_min=args.r_min,
        r_max=args.r_max,
        corpus_path=args.corpus,
        seed=args.seed,
        n_images=args.n_images,
        psnr_from_avg_mse=args.psnr_from_avg_mse,
    )
    for name in config.transforms:
        resolve_transform(name)
    records, summaries, ape = run_sweep(config, progress=True)
    _write_sweep_outputs(args.out, config, records, summaries, ape)
    print(f"wrote {args.out}/records.csv, summary.csv, run_metadata.json")
    return 0


def cmd_lena(args) -> int:
    path = Path(args.image)
    if not path.exists():
        raise MissingImage(f"image not found: {path}")
    image = corpus.read_pgm(path)
    out_dir = Path(args.out) if args.out else path.parent
    out_dir.mkdir(parents=True, exist_ok=True)
    names = list(BUILTIN_TRANSFORMS) + list(default_registry().names())
    print(f"image={path.name} r={args.r} compression={codec.compression_ratio(args.r):.4f}%")
    print(f"{'transform':<10} {'psnr_dB':>8}")
    for name in names:
        t = resolve_transform(name)
        recon = codec.compress_image(t, image.samples, args.r)
        value = metrics.psnr(metrics.mse(image.samples, recon))
        print(f"{name:<10} {value:>8.2f}")
        recon_image = corpus.GrayImage(image.width, image.height, recon)
        corpus.write_pgm(recon_image, out_dir / f"{path.stem}_{name}_r{args.r}.pgm")
    return 0


def cmd_transform(args) -> int:
    values = [float(v) for v in args.vector.replace(",", " ").split()]
    if len(values) != 8:
        raise ValueError(f"expected 8 values, got {len(values)}")
    if all(v.is_integer() for v in values):
        values = [int(v) for v in values]
    t = resolve_transform(args.transform)
    if args.transform == "proposed":
        out, cost = fast.fast_forward(values)
        print(f"kernel product: {out.tolist()}")
        print(
            f"cost: {cost.additions} add, {cost.multiplications} mult,"
            f" {cost.shifts} shifts (total {cost.total})"
        )
        scaled = proposed_transform().scaling.diag * out
    else:
        scaled = t.matrix @ np.asarray(values, dtype=np.float64)
        print(f"(no fast path for {args.transform!r}; direct matrix product)")
    print("scaled coefficients:", np.array2string(np.asarray(scaled), precision=6))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adct", description="approximate-DCT compression experiments"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complexity", help="arithmetic-cost table")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("sweep", help="corpus compression sweep, CSV output")
    p.add_argument("--transforms", default="dct,proposed", help="comma-separated names")
    p.add_argument("--r-min", type=int, default=2)
    p.add_argument("--r-max", type=int, default=45)
    p.add_argument("--corpus", help="directory of .pgm images (default: synthetic corpus)")
    p.add_argument("--seed", type=int, default=2012, help="synthetic corpus seed")
    p.add_argument("--n-images", type=int, default=45, help="synthetic corpus size")
    p.add_argument("--psnr-from-avg-mse", action="store_true",
                   help="report PSNR of the average MSE instead of averaging per-image PSNR")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lena", help="per-transform PSNR for one image")
    p.add_argument("image", help="path to a PGM image with dimensions divisible by 8")
    p.add_argument("--r", type=int, default=25, help="retained coefficients per block")
    p.add_argument("--out", help="directory for reconstructions (default: alongside input)")
    p.set_defaults(func=cmd_lena)

    p = sub.add_parser("transform", help="single-vector demo")
    p.add_argument("vector", help="8 comma- or space-separated samples")
    p.add_argument("--transform", default="proposed", choices=None)
    p.set_defaults(func=cmd_transform)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (
        MissingImage,
        IoFailure,
        MalformedHeader,
        TruncatedData,
        UnsupportedMaxval,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
