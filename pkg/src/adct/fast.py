"""Fast path for the 14-addition kernel.

The 8-point kernel factors into four sparse stages, applied right to left:
a full input butterfly, a second butterfly on the even half, a final
add/subtract pair producing the DC and Nyquist-like lines, and an output
permutation.  Every stage is expressed as an ordered list of primitive
steps (two-input add/subtract, lane negation, permutation) so the
arithmetic cost can be tallied by instrumentation rather than asserted.

Counting convention: each two-input add or subtract costs one addition;
negations, fan-out, and the permutation are free.  This is the standard
convention for multiplierless transforms and the only one under which the
factorization totals 14 additions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

# Largest magnitude any flow-graph line can reach for 8-bit input in
# [0, 255]: the 4x gain of the DC path gives 4 * 2 * 255 = 2040, which
# fits a signed 12-bit word.
EIGHT_BIT_PEAK = 2040


@dataclass(frozen=True)
class OpCount:
    """Tally of countable arithmetic for one transform execution."""

    additions: int = 0
    multiplications: int = 0
    shifts: int = 0

    @property
    def total(self) -> int:
        return self.additions + self.multiplications + self.shifts

    def __add__(self, other: "OpCount") -> "OpCount":
        return OpCount(
            self.additions + other.additions,
            self.multiplications + other.multiplications,
            self.shifts + other.shifts,
        )


@dataclass(frozen=True)
class Add:
    a: int
    b: int
    dest: int


@dataclass(frozen=True)
class Sub:
    a: int
    b: int
    dest: int


@dataclass(frozen=True)
class Negate:
    lane: int


@dataclass(frozen=True)
class Permute:
    order: tuple[int, ...]


Step = Union[Add, Sub, Negate, Permute]


@dataclass(frozen=True)
class FactorStage:
    """One sparse factor of the kernel, as an ordered list of steps.

    All steps read from the stage input; lanes not written by any step
    pass through unchanged.  A permutation must be the only step of its
    stage (it rebuilds every lane).
    """

    name: str
    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        if any(isinstance(s, Permute) for s in self.steps) and len(self.steps) != 1:
            raise ValueError("a permutation stage cannot contain other steps")

    def apply(self, values: Sequence) -> list:
        out = list(values)
        for step in self.steps:
            if isinstance(step, Add):
                out[step.dest] = values[step.a] + values[step.b]
            elif isinstance(step, Sub):
                out[step.dest] = values[step.a] - values[step.b]
            elif isinstance(step, Negate):
                out[step.lane] = -values[step.lane]
            else:
                out = [values[i] for i in step.order]
        return out

    def matrix(self) -> np.ndarray:
        """8x8 integer matrix realizing this stage."""
        m = np.eye(8, dtype=np.int64)
        for step in self.steps:
            if isinstance(step, Add):
                m[step.dest] = 0
                m[step.dest, step.a] += 1
                m[step.dest, step.b] += 1
            elif isinstance(step, Sub):
                m[step.dest] = 0
                m[step.dest, step.a] += 1
                m[step.dest, step.b] -= 1
            elif isinstance(step, Negate):
                m[step.lane] = -np.eye(8, dtype=np.int64)[step.lane]
            else:
                m = np.eye(8, dtype=np.int64)[list(step.order)]
        return m

    def op_count(self) -> OpCount:
        adds = sum(1 for s in self.steps if isinstance(s, (Add, Sub)))
        return OpCount(additions=adds)


# The four stages, in application order (input side first).
BUTTERFLY = FactorStage(
    "A1",
    (
        Add(0, 7, 0),
        Add(1, 6, 1),
        Add(2, 5, 2),
        Add(3, 4, 3),
        Sub(3, 4, 4),
        Sub(2, 5, 5),
        Sub(1, 6, 6),
        Sub(0, 7, 7),
    ),
)

EVEN_BUTTERFLY = FactorStage(
    "A2",
    (
        Add(0, 3, 0),
        Add(1, 2, 1),
        Sub(1, 2, 2),
        Sub(0, 3, 3),
        Negate(4),
        Negate(5),
        Negate(6),
    ),
)

DC_SPLIT = FactorStage(
    "A3",
    (
        Add(0, 1, 0),
        Sub(0, 1, 1),
        Negate(2),
    ),
)

OUTPUT_ORDER = FactorStage("P", (Permute((0, 7, 3, 5, 1, 6, 2, 4)),))

STAGES: tuple[FactorStage, ...] = (BUTTERFLY, EVEN_BUTTERFLY, DC_SPLIT, OUTPUT_ORDER)

# Stage matrices written out explicitly; the step lists above must
# reproduce them exactly (tested), and their right-to-left product is the
# kernel itself.
_A1 = np.array(
    [
        [1, 0, 0, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, 0, 0, 1, 0],
        [0, 0, 1, 0, 0, 1, 0, 0],
        [0, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, -1, 0, 0, 0],
        [0, 0, 1, 0, 0, -1, 0, 0],
        [0, 1, 0, 0, 0, 0, -1, 0],
        [1, 0, 0, 0, 0, 0, 0, -1],
    ],
    dtype=np.int64,
)
_A2 = np.array(
    [
        [1, 0, 0, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0, 0],
        [0, 1, -1, 0, 0, 0, 0, 0],
        [1, 0, 0, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, -1, 0, 0, 0],
        [0, 0, 0, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, 0, 0, 1],
    ],
    dtype=np.int64,
)
_A3 = np.array(
    [
        [1, 1, 0, 0, 0, 0, 0, 0],
        [1, -1, 0, 0, 0, 0, 0, 0],
        [0, 0, -1, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 1],
    ],
    dtype=np.int64,
)
_P = np.array(
    [
        [1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0],
    ],
    dtype=np.int64,
)


def stage_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The four factor matrices in application order.

    Their right-to-left product (last @ ... @ first) equals the proposed
    kernel entrywise in integer arithmetic.
    """
    return _A1.copy(), _A2.copy(), _A3.copy(), _P.copy()


def count_operations(stages: Sequence[FactorStage] = STAGES) -> OpCount:
    """Total arithmetic cost of a stage list under the counting convention."""
    total = OpCount()
    for stage in stages:
        total = total + stage.op_count()
    return total


def _execute(values: list) -> tuple[list, OpCount, float]:
    """Run the flow graph, tallying executed operations and peak magnitude."""
    additions = 0
    peak = max(abs(v) for v in values)
    for stage in STAGES:
        values = stage.apply(values)
        additions += stage.op_count().additions
        peak = max(peak, max(abs(v) for v in values))
    return values, OpCount(additions=additions), peak


def fast_forward(x: Sequence) -> tuple[np.ndarray, OpCount]:
    """Transform an 8-vector through the flow graph.

    Returns the unscaled kernel product (exact for integral input; the
    diagonal scaling is the caller's choice, typically folded into
    quantization) together with the instrumented operation count, which
    is the same for every input.
    """
    values = [v.item() if isinstance(v, np.generic) else v for v in x]
    if len(values) != 8:
        raise ValueError("expected an 8-vector")
    if not all(math.isfinite(v) for v in values):
        raise ValueError("input must be finite")
    eight_bit = all(0 <= v <= 255 for v in values)
    values, cost, peak = _execute(values)
    if eight_bit:
        assert peak <= EIGHT_BIT_PEAK, f"flow-graph overflow: |{peak}| > {EIGHT_BIT_PEAK}"
    return np.asarray(values), cost


def flow_intermediates(x: Sequence) -> list[list]:
    """Per-stage output vectors, for range analysis and debugging."""
    values = list(x)
    outputs = []
    for stage in STAGES:
        values = stage.apply(values)
        outputs.append(list(values))
    return outputs
