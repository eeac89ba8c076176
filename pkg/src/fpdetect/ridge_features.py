"""Crossing-number classification of binary ridge pixels."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .binarization import BinaryImage
from .errors import ImageShapeError

# (dy, dx) of P1..P8: east first, then counter-clockwise
NEIGHBOR_OFFSETS = ((0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1))

GATE_VALUES = frozenset({1, 3, 4})


@dataclass(frozen=True)
class Neighborhood3x3:
    p: tuple[int, int, int, int, int, int, int, int]
    center: int = 1

    def __post_init__(self) -> None:
        if len(self.p) != 8:
            raise ValueError("a 3x3 neighbourhood has 8 ring pixels")
        if any(v not in (0, 1) for v in self.p) or self.center not in (0, 1):
            raise ValueError("neighbourhood values must be 0 or 1")

    @classmethod
    def at(cls, binary: np.ndarray, y: int, x: int) -> "Neighborhood3x3":
        p = tuple(int(binary[y + dy, x + dx]) for dy, dx in NEIGHBOR_OFFSETS)
        return cls(p, int(binary[y, x]))  # type: ignore[arg-type]


class RidgePixelClass(enum.Enum):
    NON_RIDGE = "non_ridge"
    ENDING = "ending"
    BIFURCATION = "bifurcation"
    CROSSING = "crossing"
    OTHER = "other"


@dataclass(frozen=True, eq=False)
class CandidateMask:
    """Pixels where gradients will be evaluated. Border is always 0."""

    flags: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.flags, dtype=np.uint8, copy=True)
        if arr.ndim != 2:
            raise ImageShapeError("mask must be 2-D")
        arr.setflags(write=False)
        object.__setattr__(self, "flags", arr)

    @property
    def width(self) -> int:
        return int(self.flags.shape[1])

    @property
    def height(self) -> int:
        return int(self.flags.shape[0])

    def count(self) -> int:
        return int(np.count_nonzero(self.flags))

    @classmethod
    def full(cls, width: int, height: int) -> "CandidateMask":
        """Every interior pixel flagged."""
        f = np.zeros((height, width), dtype=np.uint8)
        f[1:-1, 1:-1] = 1
        return cls(f)


def crossing_number(nbh: Neighborhood3x3 | Sequence[int]) -> int:
    """Half the number of value changes around the cyclic ring P1..P8."""
    p = nbh.p if isinstance(nbh, Neighborhood3x3) else tuple(nbh)
    return sum(p[i] != p[(i + 1) % 8] for i in range(8)) // 2


def classify_pixel(center: int, cn: int) -> RidgePixelClass:
    if not 0 <= cn <= 4:
        raise ValueError(f"crossing number {cn} outside 0..4")
    if center == 0:
        return RidgePixelClass.NON_RIDGE
    return {
        1: RidgePixelClass.ENDING,
        3: RidgePixelClass.BIFURCATION,
        4: RidgePixelClass.CROSSING,
    }.get(cn, RidgePixelClass.OTHER)


def candidate_mask(binary: BinaryImage) -> CandidateMask:
    """Flag interior ridge pixels whose crossing number is 1, 3 or 4."""
    if binary.width < 3 or binary.height < 3:
        raise ImageShapeError("candidate mask needs at least 3x3 pixels")
    return CandidateMask(kernels.candidate_mask(binary.pixels))
