"""Brightness and histogram based presence checks used for comparison.

None of these are defined precisely anywhere; they are reconstructions from
one-line descriptions, good enough to show how intensity-only tests behave on
noisy frames. Methods 4 and 5 are parameter variants of methods 2 and 1.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .binarization import otsu_variance_ratio
from .errors import DegenerateHistogramError
from .imageio import GrayImage, center_roi

METHOD_NAMES = (
    "method1_segmentation_brightness",
    "method2_brightness_difference",
    "method3_histogram_analysis",
    "method4_zone_brightness",
    "method5_reverse_area",
)


@dataclass(frozen=True)
class BaselineVerdict:
    method_name: str
    present: bool
    score: float
    elapsed: float  # microseconds

    def __post_init__(self) -> None:
        if self.method_name not in METHOD_NAMES:
            raise ValueError(f"unknown baseline {self.method_name!r}")


def _timed(name: str, fn: Callable[[], tuple[bool, float]]) -> BaselineVerdict:
    t0 = time.perf_counter_ns()
    present, score = fn()
    return BaselineVerdict(name, bool(present), float(score), (time.perf_counter_ns() - t0) / 1000.0)


def _range(a: np.ndarray) -> int:
    return int(a.max()) - int(a.min())


def detect_brightness_difference(
    img: GrayImage,
    min_range: int = 80,
    roi_area_fraction: float = 2 / 3,
    *,
    name: str = "method2_brightness_difference",
) -> BaselineVerdict:
    """Present iff max - min intensity over the centre ROI reaches ``min_range``."""

    def run():
        r = _range(center_roi(img, roi_area_fraction).pixels)
        return r >= min_range, r

    return _timed(name, run)


def detect_segmentation_brightness(
    img: GrayImage,
    grid: int = 4,
    min_active_blocks: int = 8,
    min_range: int = 80,
    roi_area_fraction: float = 2 / 3,
    *,
    name: str = "method1_segmentation_brightness",
) -> BaselineVerdict:
    """Split the ROI into grid x grid tiles; count tiles with a wide intensity range."""
    if grid < 2:
        raise ValueError("grid must be >= 2")

    def run():
        p = center_roi(img, roi_area_fraction).pixels
        ys = np.linspace(0, p.shape[0], grid + 1).astype(int)
        xs = np.linspace(0, p.shape[1], grid + 1).astype(int)
        active = 0
        for i in range(grid):
            for j in range(grid):
                tile = p[ys[i] : ys[i + 1], xs[j] : xs[j + 1]]
                if tile.size and _range(tile) >= min_range:
                    active += 1
        return active >= min_active_blocks, active

    return _timed(name, run)


def detect_histogram_analysis(
    img: GrayImage,
    bimodality_min: float = 0.75,
    roi_area_fraction: float = 2 / 3,
    *,
    name: str = "method3_histogram_analysis",
) -> BaselineVerdict:
    """Present iff Otsu's between-class / total variance reaches ``bimodality_min``.

    Any unimodal continuous histogram already scores about 2/π (Gaussian) to
    3/4 (uniform), so the default sits at the uniform level; two-level and
    sinusoidal ridge histograms score above it.
    """

    def run():
        roi = center_roi(img, roi_area_fraction)
        try:
            ratio = otsu_variance_ratio(roi)
        except DegenerateHistogramError:
            return False, 0.0
        return ratio >= bimodality_min, ratio

    return _timed(name, run)


def detect_zone_brightness(img: GrayImage, min_range: int = 80) -> BaselineVerdict:
    """Brightness range over a small central zone (a quarter of the area)."""
    return detect_brightness_difference(img, min_range, 0.25, name="method4_zone_brightness")


def detect_reverse_area(img: GrayImage) -> BaselineVerdict:
    """Fine 8x8 tiling that requires half the tiles to show contrast."""
    return detect_segmentation_brightness(img, grid=8, min_active_blocks=32, name="method5_reverse_area")


BASELINES: dict[str, Callable[[GrayImage], BaselineVerdict]] = {
    "method1_segmentation_brightness": detect_segmentation_brightness,
    "method2_brightness_difference": detect_brightness_difference,
    "method3_histogram_analysis": detect_histogram_analysis,
    "method4_zone_brightness": detect_zone_brightness,
    "method5_reverse_area": detect_reverse_area,
}
