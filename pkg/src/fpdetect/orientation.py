"""Masked Sobel gradients, block-averaged squared gradients and ridge angle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .errors import DimensionMismatchError, FieldTooSmallError, ImageShapeError, NoOrientationError
from .imageio import GrayImage
from .ridge_features import CandidateMask

SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.int32)
SOBEL_Y = SOBEL_X.T.copy()


@dataclass(frozen=True, eq=False)
class GradientField:
    gx: np.ndarray
    gy: np.ndarray

    def __post_init__(self) -> None:
        if self.gx.shape != self.gy.shape or self.gx.ndim != 2:
            raise DimensionMismatchError("gx and gy must be 2-D arrays of equal shape")

    @property
    def width(self) -> int:
        return int(self.gx.shape[1])

    @property
    def height(self) -> int:
        return int(self.gx.shape[0])


@dataclass(frozen=True)
class BlockStats:
    """Squared-gradient average of one w x w block.

    ``sum_xx``/``sum_xy`` are the exact integer sums; the averages divide them
    by ``w * w``. ``theta`` is None when both sums vanish.
    """

    block_x: int
    block_y: int
    sum_xx: int
    sum_xy: int
    w: int
    theta: float | None = None

    @property
    def avg_gx2(self) -> float:
        return self.sum_xx / (self.w * self.w)

    @property
    def avg_gy2(self) -> float:
        return self.sum_xy / (self.w * self.w)

    @property
    def has_orientation(self) -> bool:
        return self.sum_xx != 0 or self.sum_xy != 0


def sobel_gradients(img: GrayImage, mask: CandidateMask) -> GradientField:
    """Sobel responses (y grows downward) at masked interior pixels only."""
    if (mask.width, mask.height) != (img.width, img.height):
        raise DimensionMismatchError(
            f"mask {mask.width}x{mask.height} does not match image {img.width}x{img.height}"
        )
    if img.width < 3 or img.height < 3:
        raise ImageShapeError("Sobel needs at least 3x3 pixels")
    gx, gy = kernels.masked_sobel(img.pixels, mask.flags)
    return GradientField(gx, gy)


def block_sum_arrays(field: GradientField, w: int) -> tuple[np.ndarray, np.ndarray]:
    """Integer block sums of (gx^2 - gy^2) and 2 gx gy, shape (rows, cols)."""
    if w < 2:
        raise ValueError(f"block size must be >= 2, got {w}")
    if field.width < w or field.height < w:
        raise FieldTooSmallError(f"{field.width}x{field.height} field holds no {w}x{w} block")
    return kernels.block_sums(field.gx, field.gy, w)


def block_average_gradients(field: GradientField, w: int) -> list[BlockStats]:
    """Non-overlapping w x w blocks in row-major order; partial blocks dropped."""
    sxx, sxy = block_sum_arrays(field, w)
    stats = []
    for (by, bx), a in np.ndenumerate(sxx):
        a = int(a)
        b = int(sxy[by, bx])
        theta = estimate_theta(a, b) if (a or b) else None
        stats.append(BlockStats(bx, by, a, b, w, theta))
    return stats


def estimate_theta(avg_gx2: float, avg_gy2: float) -> float:
    """Ridge angle from an averaged squared-gradient vector.

    With ``a = atan(avg_gy2 / avg_gx2)`` in (-pi/2, pi/2), and the limit
    ``a = sign(avg_gy2) * pi/2`` when ``avg_gx2 == 0``, returns
    ``a/2 + pi/2`` for ``a < 0`` and ``a/2 - pi/2`` otherwise.
    """
    if avg_gx2 == 0 and avg_gy2 == 0:
        raise NoOrientationError("zero gradient vector has no orientation")
    if avg_gx2 == 0:
        a = math.copysign(math.pi / 2, avg_gy2)
    else:
        a = math.atan(avg_gy2 / avg_gx2)
    if a < 0:
        return 0.5 * a + math.pi / 2
    return 0.5 * a - math.pi / 2


def count_feature_blocks(stats: Iterable[BlockStats]) -> int:
    """Number of blocks whose averaged vector is not (0, 0)."""
    return sum(1 for s in stats if s.has_orientation)
