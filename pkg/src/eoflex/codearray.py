"""The code array: a tau*(p-1) x (k+2) grid of fixed-width byte lanes.

A lane is a `bytes` block of the array's lane width; it stands in for one
bit of the construction, with every bit position inside the lane evolving
under the same XOR equations.  Rows tau*(p-1) .. tau*p-1 are *virtual*:
reads of information columns there return the zero lane, which keeps all
subscript arithmetic uniform modulo tau*p.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import IndexOutOfRing, TooManyErasures
from .params import CodeParams

DEFAULT_LANE_WIDTH = 64

Lane = bytes


def zero_lane(width: int) -> Lane:
    return bytes(width)


def xor_lanes(a: Lane, b: Lane, counter=None) -> Lane:
    """Elementwise XOR of two equal-width lanes.

    `counter`, when given, is ticked once per call; it is how measured
    XOR counts are collected without any global state.
    """
    if counter is not None:
        counter.tick()
    return (
        int.from_bytes(a, "little") ^ int.from_bytes(b, "little")
    ).to_bytes(len(a), "little")


def mod_ring(params: CodeParams, x: int) -> int:
    """Canonical representative of x modulo tau*p, in [0, tau*p-1]."""
    return x % params.ring


@dataclass
class CodeArray:
    """Dense row-major grid of lanes; columns 0..k-1 hold information,
    column k row parity, column k+1 diagonal parity.

    Mutated only by encode/decode entry points; distinct arrays are
    independent and may be processed in parallel.
    """

    params: CodeParams
    lane_width: int = DEFAULT_LANE_WIDTH
    cells: list[list[Lane]] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.lane_width < 1:
            raise ValueError(f"lane width must be >= 1, got {self.lane_width}")
        if self.cells is None:
            z = zero_lane(self.lane_width)
            self.cells = [
                [z] * (self.params.k + 2) for _ in range(self.params.rows)
            ]
        else:
            if len(self.cells) != self.params.rows:
                raise ValueError("cell grid row count does not match params")
            for row in self.cells:
                if len(row) != self.params.k + 2:
                    raise ValueError("cell grid column count does not match params")
                for lane in row:
                    if len(lane) != self.lane_width:
                        raise ValueError("lane width mismatch in cell grid")

    # -- accessors ---------------------------------------------------------

    def virtual_read(self, i: int, j: int) -> Lane:
        """Read information cell (i, j) with the virtual-row convention.

        i must already be reduced into [0, tau*p-1]; rows >= tau*(p-1)
        read as the zero lane.
        """
        p = self.params
        if not (0 <= i < p.ring) or not (0 <= j < p.k):
            raise IndexOutOfRing(f"({i},{j}) outside ring {p.ring} x info columns {p.k}")
        if i >= p.rows:
            return zero_lane(self.lane_width)
        return self.cells[i][j]

    def is_virtual(self, i: int) -> bool:
        return i >= self.params.rows

    def get(self, i: int, j: int) -> Lane:
        return self.cells[i][j]

    def set(self, i: int, j: int, value: Lane) -> None:
        if len(value) != self.lane_width:
            raise ValueError("lane width mismatch")
        self.cells[i][j] = value

    def column(self, j: int) -> list[Lane]:
        return [self.cells[i][j] for i in range(self.params.rows)]

    def set_column(self, j: int, lanes: list[Lane]) -> None:
        for i, lane in enumerate(lanes):
            self.set(i, j, lane)

    def copy(self) -> "CodeArray":
        return CodeArray(
            self.params, self.lane_width, [row[:] for row in self.cells]
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, CodeArray):
            return NotImplemented
        return self.params == other.params and self.cells == other.cells

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, params: CodeParams, lane_width: int = DEFAULT_LANE_WIDTH):
        return cls(params, lane_width)

    @classmethod
    def random(
        cls,
        params: CodeParams,
        lane_width: int = DEFAULT_LANE_WIDTH,
        rng: random.Random | None = None,
    ) -> "CodeArray":
        """Array with random information cells and zeroed parity columns."""
        rng = rng or random.Random()
        arr = cls(params, lane_width)
        for i in range(params.rows):
            for j in range(params.k):
                arr.cells[i][j] = rng.randbytes(lane_width)
        return arr


@dataclass(frozen=True)
class ErasurePattern:
    """The set of erased column indices, size 1 or 2."""

    erased: frozenset[int]

    @classmethod
    def of(cls, *columns: int) -> "ErasurePattern":
        return cls(frozenset(columns))

    def validate(self, params: CodeParams) -> None:
        if len(self.erased) > 2:
            raise TooManyErasures(f"cannot recover {len(self.erased)} erased columns")
        if not self.erased:
            raise ValueError("erasure pattern is empty")
        for c in self.erased:
            if not (0 <= c <= params.k + 1):
                raise ValueError(f"column {c} out of range [0, {params.k + 1}]")
