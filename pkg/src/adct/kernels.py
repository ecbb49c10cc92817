"""Transform kernels and their diagonal scalings.

The centerpiece is an 8-point integer kernel whose entries are all 0 or
+-1, obtained by zeroing selected entries of the CB-2011 round-off
kernel.  Scaled row-wise by the diagonal below it becomes an orthogonal
approximation of the 8-point DCT-II that needs no multiplications and no
bit-shifts.  The module also provides the exact DCT-II reference, the
generic row-normalization rule, the direct (slow-path) matrix
application used as the correctness oracle for the fast path, and a
registry of comparison kernels loaded from a checked-in data file.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterator, Union

import numpy as np

from .errors import DuplicateName, NonOrthogonalKernel, ZeroRow
from .fast import OpCount

#: Max absolute deviation from the identity allowed for analytically
#: exact orthonormal constructions.
ORTHOGONALITY_TOL = 1e-12

_ENTRY_UNIVERSE = frozenset({-2, -1, 0, 1, 2})

# The proposed low-complexity kernel.  Entries are restricted to
# {0, +-1}; its Gram matrix is diag(8, 2, 4, 2, 8, 2, 4, 2).
_PROPOSED = np.array(
    [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, 0, 0, 0, 0, 0, 0, -1],
        [1, 0, 0, -1, -1, 0, 0, 1],
        [0, 0, -1, 0, 0, 1, 0, 0],
        [1, -1, -1, 1, 1, -1, -1, 1],
        [0, -1, 0, 0, 0, 0, 1, 0],
        [0, -1, 1, 0, 0, 1, -1, 0],
        [0, 0, 0, -1, 1, 0, 0, 0],
    ],
    dtype=np.int64,
)


@dataclass(frozen=True)
class TransformMatrix:
    """8x8 integer kernel of a low-complexity transform.

    Entries must lie in {-2, -1, 0, 1, 2} (kernels published with +-1/2
    entries are stored doubled; the row normalization absorbs the
    factor).  Every row must be nonzero so a scaling can exist.
    """

    name: str
    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=np.int64)
        if m.shape != (8, 8):
            raise ValueError(f"kernel must be 8x8, got {m.shape}")
        if not set(np.unique(m).tolist()) <= _ENTRY_UNIVERSE:
            raise ValueError("kernel entries must lie in {-2, -1, 0, 1, 2}")
        if (np.count_nonzero(m, axis=1) == 0).any():
            raise ZeroRow(f"kernel {self.name!r} has an all-zero row")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def gram(self) -> np.ndarray:
        """Integer Gram matrix (kernel times its transpose)."""
        return self.entries @ self.entries.T


@dataclass(frozen=True)
class DiagonalScaling:
    """Positive diagonal that row-normalizes a kernel."""

    diag: np.ndarray

    def __post_init__(self) -> None:
        d = np.array(self.diag, dtype=np.float64)
        if d.shape != (8,):
            raise ValueError("scaling must be an 8-vector")
        if not (d > 0).all():
            raise ValueError("scaling entries must be positive")
        d.setflags(write=False)
        object.__setattr__(self, "diag", d)


@dataclass(frozen=True)
class ApproximateTransform:
    """A kernel with its scaling and declared arithmetic cost.

    When ``orthogonal`` is true (the normal case) the scaled matrix is
    verified orthonormal at construction.  The SDCT is the one shipped
    kernel that is not; it uses the customary transpose pseudo-inverse.
    """

    kernel: TransformMatrix
    scaling: DiagonalScaling
    declared_costs: OpCount | None = None
    orthogonal: bool = True

    def __post_init__(self) -> None:
        if self.orthogonal:
            c = self.matrix
            err = np.abs(c @ c.T - np.eye(8)).max()
            if err >= ORTHOGONALITY_TOL:
                raise NonOrthogonalKernel(
                    f"{self.name!r}: scaled kernel deviates from orthonormal by {err:g}"
                )

    @property
    def name(self) -> str:
        return self.kernel.name

    @property
    def matrix(self) -> np.ndarray:
        """The scaled transform matrix (scaling applied to kernel rows)."""
        return self.scaling.diag[:, None] * self.kernel.entries


@dataclass(frozen=True)
class ExactDct:
    """Orthonormal 8-point DCT-II reference."""

    entries: np.ndarray
    name: str = "dct"
    orthogonal: bool = True

    @property
    def matrix(self) -> np.ndarray:
        return self.entries


#: Anything the codec can run: a scaled integer kernel or the exact DCT.
Transform = Union[ApproximateTransform, ExactDct]


def proposed_kernel() -> TransformMatrix:
    """The 14-addition kernel."""
    return TransformMatrix("proposed", _PROPOSED)


def proposed_scaling() -> DiagonalScaling:
    """Diagonal orthonormalizing the proposed kernel.

    Its squared entries are 1/8, 1/2, 1/4, 1/2, 1/8, 1/2, 1/4, 1/2 - all
    negative powers of two, so folding the squared scaling into a
    quantization table costs only bit-shifts.
    """
    s8, s2 = 1 / math.sqrt(8), 1 / math.sqrt(2)
    return DiagonalScaling(np.array([s8, s2, 0.5, s2, s8, s2, 0.5, s2]))


def proposed_transform() -> ApproximateTransform:
    return ApproximateTransform(
        proposed_kernel(), proposed_scaling(), declared_costs=OpCount(additions=14)
    )


@lru_cache(maxsize=1)
def _dct_entries() -> np.ndarray:
    k = np.arange(8, dtype=np.float64).reshape(-1, 1)
    n = np.arange(8, dtype=np.float64).reshape(1, -1)
    c = math.sqrt(2 / 8) * np.cos(np.pi * k * (2 * n + 1) / 16)
    c[0, :] /= math.sqrt(2)
    c.setflags(write=False)
    return c


def exact_dct_matrix() -> ExactDct:
    """The orthonormal 8-point DCT-II matrix."""
    return ExactDct(_dct_entries())


def derive_scaling(kernel: TransformMatrix | np.ndarray) -> DiagonalScaling:
    """Row-normalizing diagonal for a kernel with orthogonal rows.

    Raises ZeroRow if any row vanishes and NonOrthogonalKernel if the
    Gram matrix has a nonzero off-diagonal entry.
    """
    entries = kernel.entries if isinstance(kernel, TransformMatrix) else np.asarray(kernel)
    g = entries @ entries.T
    norms = np.diag(g).astype(np.float64)
    if (norms == 0).any():
        raise ZeroRow("kernel has an all-zero row")
    off = g - np.diag(np.diag(g))
    if np.any(off != 0):
        i, j = np.argwhere(off != 0)[0]
        raise NonOrthogonalKernel(
            f"rows {i} and {j} have inner product {g[i, j]}, expected 0"
        )
    return DiagonalScaling(1.0 / np.sqrt(norms))


def _row_norm_scaling(kernel: TransformMatrix) -> DiagonalScaling:
    # Scaling from the Gram diagonal only; used for flagged kernels whose
    # rows are not mutually orthogonal.
    norms = np.diag(kernel.gram()).astype(np.float64)
    return DiagonalScaling(1.0 / np.sqrt(norms))


def apply_forward(t: ApproximateTransform, x: np.ndarray) -> np.ndarray:
    """Slow-path forward transform: integer kernel product, then scaling.

    This is the oracle the fast path is tested against; the kernel
    product is exact when x is integral.
    """
    x = np.asarray(x)
    return t.scaling.diag * (t.kernel.entries @ x)


def apply_inverse(t: ApproximateTransform, coeffs: np.ndarray) -> np.ndarray:
    """Inverse via the transpose of the scaled kernel.

    Exact round-trip for orthogonal transforms; for a flagged
    non-orthogonal kernel this is the customary pseudo-inverse.
    """
    coeffs = np.asarray(coeffs)
    return t.kernel.entries.T @ (t.scaling.diag * coeffs)


class KernelRegistry:
    """Comparison transforms available to the codec, keyed by name.

    Built once at startup (normally from the packaged data file) and
    treated as read-only afterwards.
    """

    def __init__(self) -> None:
        self._transforms: dict[str, ApproximateTransform] = {}

    def register(
        self,
        kernel: TransformMatrix,
        declared_costs: OpCount,
        *,
        non_orthogonal: bool = False,
    ) -> ApproximateTransform:
        """Register a comparison kernel under its name.

        The kernel must pass derive_scaling unless ``non_orthogonal``
        explicitly acknowledges that its rows are not orthogonal, in
        which case the scaling is taken from the Gram diagonal and the
        transform is marked for pseudo-inverse reconstruction.
        """
        if kernel.name in self._transforms:
            raise DuplicateName(f"transform {kernel.name!r} already registered")
        try:
            scaling = derive_scaling(kernel)
            transform = ApproximateTransform(kernel, scaling, declared_costs)
        except NonOrthogonalKernel:
            if not non_orthogonal:
                raise
            transform = ApproximateTransform(
                kernel, _row_norm_scaling(kernel), declared_costs, orthogonal=False
            )
        self._transforms[kernel.name] = transform
        return transform

    def get(self, name: str) -> ApproximateTransform:
        return self._transforms[name]

    def names(self) -> tuple[str, ...]:
        return tuple(self._transforms)

    def __contains__(self, name: str) -> bool:
        return name in self._transforms

    def __iter__(self) -> Iterator[ApproximateTransform]:
        return iter(self._transforms.values())

    def __len__(self) -> int:
        return len(self._transforms)


def parse_kernel_records(text: str) -> list[tuple[str, np.ndarray, OpCount, bool]]:
    """Parse the plain-text kernel file format.

    A record is a name line (optionally followed by the token
    ``non-orthogonal``), eight rows of eight signed integers, and one
    line of declared costs ``add mult shift``.  Lines starting with ``#``
    and blank lines are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    records = []
    pos = 0
    while pos < len(lines):
        if len(lines) - pos < 10:
            raise ValueError(f"truncated kernel record starting at {lines[pos]!r}")
        head = lines[pos].split()
        name, flags = head[0], head[1:]
        if any(f != "non-orthogonal" for f in flags):
            raise ValueError(f"unknown flag on kernel {name!r}: {flags}")
        rows = [[int(v) for v in lines[pos + 1 + i].split()] for i in range(8)]
        costs = [int(v) for v in lines[pos + 9].split()]
        if len(costs) != 3 or any(len(r) != 8 for r in rows):
            raise ValueError(f"malformed kernel record {name!r}")
        records.append(
            (name, np.array(rows, dtype=np.int64), OpCount(*costs), "non-orthogonal" in flags)
        )
        pos += 10
    return records


def load_registry(path: str | Path | None = None) -> KernelRegistry:
    """Build a registry from a kernel data file (packaged file by default)."""
    if path is None:
        text = resources.files("adct").joinpath("data/kernels.txt").read_text()
    else:
        text = Path(path).read_text()
    registry = KernelRegistry()
    for name, entries, costs, flagged in parse_kernel_records(text):
        registry.register(TransformMatrix(name, entries), costs, non_orthogonal=flagged)
    return registry


@lru_cache(maxsize=1)
def default_registry() -> KernelRegistry:
    """The packaged comparison-kernel registry, loaded once."""
    return load_registry()
