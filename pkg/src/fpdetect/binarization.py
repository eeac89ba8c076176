"""Global thresholding: Otsu's method or a fixed level for large frames."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateHistogramError, ImageShapeError
from .imageio import MIN_SIDE, GrayImage


@dataclass(frozen=True, eq=False)
class BinaryImage:
    """Ridge mask, 1 = ridge (dark foreground)."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.pixels)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ImageShapeError("binary image must be a non-empty 2-D array")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ImageShapeError("binary pixels must be 0 or 1")
        arr = np.array(arr, dtype=np.uint8, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class ThresholdPolicy:
    large_image_pixel_cutoff: int = 131072
    fixed_threshold: int = 125

    def __post_init__(self) -> None:
        if not 100 <= self.fixed_threshold <= 150:
            raise ValueError(f"fixed_threshold {self.fixed_threshold} outside 100..150")
        if self.large_image_pixel_cutoff < MIN_SIDE * MIN_SIDE:
            raise ValueError("large_image_pixel_cutoff is too small")


def _otsu_scan(img: GrayImage) -> tuple[int, int, int]:
    """Best split as (t, numerator, denominator) of the between-class variance.

    For a split {<= t} vs {> t} with n0 pixels summing to s0 out of N pixels
    summing to S, ``N^2 * var_between = (N s0 - S n0)^2 / (n0 (N - n0))``.
    A float pass shortlists near-maximal splits; the winner is then chosen on
    exact integers so ties resolve to the smallest t.
    """
    hist = kernels.histogram(img.pixels)
    if np.count_nonzero(hist) < 2:
        raise DegenerateHistogramError("Otsu needs at least two distinct intensities")
    n0 = np.cumsum(hist)[:255]
    s0 = np.cumsum(hist * np.arange(256, dtype=np.int64))[:255]
    n, s = int(hist.sum()), int(hist @ np.arange(256, dtype=np.int64))
    n1 = n - n0
    valid = (n0 > 0) & (n1 > 0)
    diff = (n * s0.astype(np.float64) - s * n0.astype(np.float64))
    approx = np.where(valid, diff * diff / np.where(valid, n0 * n1, 1).astype(np.float64), -1.0)
    top = approx.max()
    best_t, best_num, best_den = 0, 0, 1
    for t in np.flatnonzero(approx >= top * (1 - 1e-9)).tolist():
        num = (n * int(s0[t]) - s * int(n0[t])) ** 2
        den = int(n0[t]) * int(n1[t])
        if num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den
    return best_t, best_num, best_den


def otsu_threshold(img: GrayImage) -> int:
    """Threshold in 0..254 maximising between-class variance (smallest on ties)."""
    return _otsu_scan(img)[0]


def otsu_variance_ratio(img: GrayImage) -> float:
    """Between-class variance at the Otsu split over the total variance."""
    _, num, den = _otsu_scan(img)
    p = img.pixels.astype(np.float64)
    n = p.size
    total = float(p.var())
    between = num / den / n**2
    return between / total


def binarize(img: GrayImage, t: int) -> BinaryImage:
    return BinaryImage((img.pixels <= t).astype(np.uint8))


def choose_threshold(img: GrayImage, policy: ThresholdPolicy) -> int:
    """Otsu for frames up to the cutoff, the fixed level above it or on flat frames."""
    if img.width * img.height > policy.large_image_pixel_cutoff:
        return policy.fixed_threshold
    try:
        return otsu_threshold(img)
    except DegenerateHistogramError:
        return policy.fixed_threshold
